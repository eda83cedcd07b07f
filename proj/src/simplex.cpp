#include "sndrr/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sndrr {

namespace {
constexpr double kFeasTol = 1e-7;
constexpr double kDualTol = 1e-7;
constexpr double kPivotTol = 1e-8;
constexpr double kTieTol = 1e-9;
constexpr int kRefactorEvery = 128;
constexpr long kMaxIterations = 2'000'000;
}  // namespace

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::within_gap: return "within_gap";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::unbounded: return "unbounded";
        case SolveStatus::time_limit: return "time_limit";
        case SolveStatus::error: return "error";
    }
    return "error";
}

BoundedSimplex::BoundedSimplex(const LinearProgram& lp) {
    num_structural_ = lp.num_cols();
    num_rows_ = lp.num_rows();
    cost_ = lp.objective;
    cost_.resize(static_cast<std::size_t>(total_vars()), 0.0);
    lower_ = lp.col_lower;
    upper_ = lp.col_upper;
    lower_.insert(lower_.end(), lp.row_lower.begin(), lp.row_lower.end());
    upper_.insert(upper_.end(), lp.row_upper.begin(), lp.row_upper.end());

    std::vector<int> counts(static_cast<std::size_t>(num_structural_), 0);
    for (const auto& row : lp.rows) {
        for (const auto& [j, v] : row) {
            if (j < 0 || j >= num_structural_) throw std::invalid_argument("row entry out of range");
            if (v != 0.0) ++counts[static_cast<std::size_t>(j)];
        }
    }
    col_start_.assign(static_cast<std::size_t>(num_structural_) + 1, 0);
    for (int j = 0; j < num_structural_; ++j) {
        col_start_[static_cast<std::size_t>(j) + 1] =
            col_start_[static_cast<std::size_t>(j)] + counts[static_cast<std::size_t>(j)];
    }
    col_index_.resize(static_cast<std::size_t>(col_start_.back()));
    col_value_.resize(static_cast<std::size_t>(col_start_.back()));
    std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
    for (int i = 0; i < num_rows_; ++i) {
        for (const auto& [j, v] : lp.rows[static_cast<std::size_t>(i)]) {
            if (v == 0.0) continue;
            const int slot = fill[static_cast<std::size_t>(j)]++;
            col_index_[static_cast<std::size_t>(slot)] = i;
            col_value_[static_cast<std::size_t>(slot)] = v;
        }
    }
    reset_to_logical_basis();
}

double BoundedSimplex::nonbasic_value(int j) const {
    switch (vstat_[static_cast<std::size_t>(j)]) {
        case Status::at_lower: return lower_[static_cast<std::size_t>(j)];
        case Status::at_upper: return upper_[static_cast<std::size_t>(j)];
        case Status::free: return 0.0;
        case Status::basic: break;
    }
    throw std::logic_error("nonbasic_value called on basic variable");
}

void BoundedSimplex::set_col_bounds(int j, double lb, double ub) {
    lower_[static_cast<std::size_t>(j)] = lb;
    upper_[static_cast<std::size_t>(j)] = ub;
    Status& st = vstat_[static_cast<std::size_t>(j)];
    if (st == Status::at_lower && !std::isfinite(lb)) {
        st = std::isfinite(ub) ? Status::at_upper : Status::free;
    } else if (st == Status::at_upper && !std::isfinite(ub)) {
        st = std::isfinite(lb) ? Status::at_lower : Status::free;
    } else if (st == Status::free && std::isfinite(lb)) {
        st = Status::at_lower;
    } else if (st == Status::free && std::isfinite(ub)) {
        st = Status::at_upper;
    }
}

void BoundedSimplex::reset_to_logical_basis() {
    vstat_.assign(static_cast<std::size_t>(total_vars()), Status::at_lower);
    for (int j = 0; j < total_vars(); ++j) {
        if (std::isfinite(lower_[static_cast<std::size_t>(j)])) {
            vstat_[static_cast<std::size_t>(j)] = Status::at_lower;
        } else if (std::isfinite(upper_[static_cast<std::size_t>(j)])) {
            vstat_[static_cast<std::size_t>(j)] = Status::at_upper;
        } else {
            vstat_[static_cast<std::size_t>(j)] = Status::free;
        }
    }
    basis_.resize(static_cast<std::size_t>(num_rows_));
    for (int i = 0; i < num_rows_; ++i) {
        basis_[static_cast<std::size_t>(i)] = num_structural_ + i;
        vstat_[static_cast<std::size_t>(num_structural_ + i)] = Status::basic;
    }
    // Logical columns are -e_i, so the initial basis inverse is -I.
    binv_.assign(static_cast<std::size_t>(num_rows_) * static_cast<std::size_t>(num_rows_), 0.0);
    for (int i = 0; i < num_rows_; ++i) {
        binv_[static_cast<std::size_t>(i) * static_cast<std::size_t>(num_rows_) +
              static_cast<std::size_t>(i)] = -1.0;
    }
    pivots_since_refactor_ = 0;
    recompute_basic_values();
}

void BoundedSimplex::refactorize() {
    if (num_rows_ == 0) return;
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(num_rows_, num_rows_);
    for (int p = 0; p < num_rows_; ++p) {
        const int j = basis_[static_cast<std::size_t>(p)];
        if (j >= num_structural_) {
            basis(j - num_structural_, p) = -1.0;
        } else {
            for (int s = col_start_[static_cast<std::size_t>(j)];
                 s < col_start_[static_cast<std::size_t>(j) + 1]; ++s) {
                basis(col_index_[static_cast<std::size_t>(s)], p) =
                    col_value_[static_cast<std::size_t>(s)];
            }
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
    if (!lu.isInvertible()) throw std::runtime_error("simplex: singular basis during refactorization");
    const Eigen::MatrixXd inverse = lu.inverse();
    for (int i = 0; i < num_rows_; ++i) {
        for (int k = 0; k < num_rows_; ++k) {
            binv_[static_cast<std::size_t>(i) * static_cast<std::size_t>(num_rows_) +
                  static_cast<std::size_t>(k)] = inverse(i, k);
        }
    }
    pivots_since_refactor_ = 0;
}

void BoundedSimplex::recompute_basic_values() {
    std::vector<double> rhs(static_cast<std::size_t>(num_rows_), 0.0);
    for (int j = 0; j < total_vars(); ++j) {
        if (vstat_[static_cast<std::size_t>(j)] == Status::basic) continue;
        const double value = nonbasic_value(j);
        if (value == 0.0) continue;
        if (j >= num_structural_) {
            rhs[static_cast<std::size_t>(j - num_structural_)] += value;  // column -e_i, negated
        } else {
            for (int s = col_start_[static_cast<std::size_t>(j)];
                 s < col_start_[static_cast<std::size_t>(j) + 1]; ++s) {
                rhs[static_cast<std::size_t>(col_index_[static_cast<std::size_t>(s)])] -=
                    col_value_[static_cast<std::size_t>(s)] * value;
            }
        }
    }
    x_basic_.assign(static_cast<std::size_t>(num_rows_), 0.0);
    const std::size_t n = static_cast<std::size_t>(num_rows_);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) sum += binv_[i * n + k] * rhs[k];
        x_basic_[i] = sum;
    }
}

std::vector<double> BoundedSimplex::ftran(int j) const {
    std::vector<double> w(static_cast<std::size_t>(num_rows_), 0.0);
    const std::size_t n = static_cast<std::size_t>(num_rows_);
    if (j >= num_structural_) {
        const std::size_t i0 = static_cast<std::size_t>(j - num_structural_);
        for (std::size_t i = 0; i < n; ++i) w[i] = -binv_[i * n + i0];
    } else {
        for (int s = col_start_[static_cast<std::size_t>(j)];
             s < col_start_[static_cast<std::size_t>(j) + 1]; ++s) {
            const std::size_t row = static_cast<std::size_t>(col_index_[static_cast<std::size_t>(s)]);
            const double value = col_value_[static_cast<std::size_t>(s)];
            for (std::size_t i = 0; i < n; ++i) w[i] += binv_[i * n + row] * value;
        }
    }
    return w;
}

std::vector<double> BoundedSimplex::btran_costs(const std::vector<double>& basic_costs) const {
    std::vector<double> y(static_cast<std::size_t>(num_rows_), 0.0);
    const std::size_t n = static_cast<std::size_t>(num_rows_);
    for (std::size_t p = 0; p < n; ++p) {
        const double c = basic_costs[p];
        if (c == 0.0) continue;
        for (std::size_t k = 0; k < n; ++k) y[k] += c * binv_[p * n + k];
    }
    return y;
}

double BoundedSimplex::reduced_cost(int j, const std::vector<double>& y) const {
    double d = cost_[static_cast<std::size_t>(j)];
    if (j >= num_structural_) {
        d += y[static_cast<std::size_t>(j - num_structural_)];
    } else {
        for (int s = col_start_[static_cast<std::size_t>(j)];
             s < col_start_[static_cast<std::size_t>(j) + 1]; ++s) {
            d -= y[static_cast<std::size_t>(col_index_[static_cast<std::size_t>(s)])] *
                 col_value_[static_cast<std::size_t>(s)];
        }
    }
    return d;
}

void BoundedSimplex::pivot(int entering, int leaving_row, const std::vector<double>& w) {
    const double pivot_value = w[static_cast<std::size_t>(leaving_row)];
    if (std::abs(pivot_value) < 1e-12) throw std::runtime_error("simplex: vanishing pivot");
    const std::size_t n = static_cast<std::size_t>(num_rows_);
    const std::size_t r = static_cast<std::size_t>(leaving_row);
    const double inv = 1.0 / pivot_value;
    for (std::size_t k = 0; k < n; ++k) binv_[r * n + k] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == r) continue;
        const double factor = w[i];
        if (factor == 0.0) continue;
        for (std::size_t k = 0; k < n; ++k) binv_[i * n + k] -= factor * binv_[r * n + k];
    }
    basis_[r] = entering;
    vstat_[static_cast<std::size_t>(entering)] = Status::basic;
    if (++pivots_since_refactor_ >= kRefactorEvery) {
        refactorize();
        recompute_basic_values();
    }
}

SolveStatus BoundedSimplex::primal(bool phase_one) {
    long stall = 0;
    bool use_bland = false;
    for (;;) {
        if (++iterations_ > kMaxIterations) throw std::runtime_error("simplex: iteration limit");

        std::vector<double> basic_costs(static_cast<std::size_t>(num_rows_), 0.0);
        double infeasibility = 0.0;
        for (int p = 0; p < num_rows_; ++p) {
            const int j = basis_[static_cast<std::size_t>(p)];
            const double x = x_basic_[static_cast<std::size_t>(p)];
            if (phase_one) {
                if (x < lower_[static_cast<std::size_t>(j)] - kFeasTol) {
                    basic_costs[static_cast<std::size_t>(p)] = -1.0;
                    infeasibility += lower_[static_cast<std::size_t>(j)] - x;
                } else if (x > upper_[static_cast<std::size_t>(j)] + kFeasTol) {
                    basic_costs[static_cast<std::size_t>(p)] = 1.0;
                    infeasibility += x - upper_[static_cast<std::size_t>(j)];
                }
            } else {
                basic_costs[static_cast<std::size_t>(p)] = cost_[static_cast<std::size_t>(j)];
            }
        }
        if (phase_one && infeasibility <= kFeasTol) return SolveStatus::optimal;

        const std::vector<double> y = btran_costs(basic_costs);

        int entering = -1;
        int direction = 0;
        double best_score = kDualTol;
        for (int j = 0; j < total_vars(); ++j) {
            const Status st = vstat_[static_cast<std::size_t>(j)];
            if (st == Status::basic) continue;
            double d = reduced_cost(j, y);
            if (phase_one) d -= cost_[static_cast<std::size_t>(j)];  // phase-1 cost of nonbasics is 0
            int dir = 0;
            if ((st == Status::at_lower || st == Status::free) && d < -kDualTol) dir = +1;
            else if ((st == Status::at_upper || st == Status::free) && d > kDualTol) dir = -1;
            if (dir == 0) continue;
            if (use_bland) {
                entering = j;
                direction = dir;
                break;
            }
            if (std::abs(d) > best_score) {
                best_score = std::abs(d);
                entering = j;
                direction = dir;
            }
        }
        if (entering < 0) return phase_one ? SolveStatus::infeasible : SolveStatus::optimal;

        const std::vector<double> w = ftran(entering);

        // Bounded ratio test. leaving_row == -1 with a finite limit is a
        // bound flip of the entering variable.
        const double own_range = upper_[static_cast<std::size_t>(entering)] -
                                 lower_[static_cast<std::size_t>(entering)];
        double limit = std::isfinite(own_range) ? own_range : kInfinity;
        int leaving_row = -1;
        int leaving_to_upper = 0;
        double best_pivot_mag = 0.0;
        for (int i = 0; i < num_rows_; ++i) {
            const double rate = -direction * w[static_cast<std::size_t>(i)];
            if (std::abs(rate) < kPivotTol) continue;
            const int jb = basis_[static_cast<std::size_t>(i)];
            const double x = x_basic_[static_cast<std::size_t>(i)];
            const double lb = lower_[static_cast<std::size_t>(jb)];
            const double ub = upper_[static_cast<std::size_t>(jb)];
            double step = kInfinity;
            int to_upper = 0;
            if (phase_one && x < lb - kFeasTol) {
                if (rate > 0.0) {
                    step = (lb - x) / rate;  // blocks on becoming feasible
                    to_upper = 0;
                }
            } else if (phase_one && x > ub + kFeasTol) {
                if (rate < 0.0) {
                    step = (x - ub) / (-rate);
                    to_upper = 1;
                }
            } else if (rate > 0.0) {
                if (std::isfinite(ub)) {
                    step = std::max(0.0, ub - x) / rate;
                    to_upper = 1;
                }
            } else {
                if (std::isfinite(lb)) {
                    step = std::max(0.0, x - lb) / (-rate);
                    to_upper = 0;
                }
            }
            if (!std::isfinite(step)) continue;
            bool take = false;
            if (step < limit - kTieTol) {
                take = true;
            } else if (step <= limit + kTieTol && leaving_row >= 0) {
                const double mag = std::abs(w[static_cast<std::size_t>(i)]);
                if (use_bland) {
                    take = jb < basis_[static_cast<std::size_t>(leaving_row)];
                } else if (mag > best_pivot_mag + 1e-12) {
                    take = true;
                } else if (std::abs(mag - best_pivot_mag) <= 1e-12 &&
                           jb < basis_[static_cast<std::size_t>(leaving_row)]) {
                    take = true;
                }
            }
            // A tie against the entering variable's own range keeps the flip.
            if (take) {
                limit = std::min(limit, std::max(step, 0.0));
                leaving_row = i;
                leaving_to_upper = to_upper;
                best_pivot_mag = std::abs(w[static_cast<std::size_t>(i)]);
            }
        }
        if (!std::isfinite(limit)) {
            if (phase_one) throw std::runtime_error("simplex: unbounded phase-1 direction");
            return SolveStatus::unbounded;
        }

        if (limit <= kTieTol) {
            if (++stall > 2L * (num_rows_ + num_structural_) + 100) use_bland = true;
        } else {
            stall = 0;
            use_bland = false;
        }

        const double entering_value = nonbasic_value(entering) + direction * limit;
        for (int i = 0; i < num_rows_; ++i) {
            x_basic_[static_cast<std::size_t>(i)] +=
                -direction * w[static_cast<std::size_t>(i)] * limit;
        }
        if (leaving_row < 0) {
            vstat_[static_cast<std::size_t>(entering)] =
                direction > 0 ? Status::at_upper : Status::at_lower;
            continue;
        }
        const int leaving = basis_[static_cast<std::size_t>(leaving_row)];
        vstat_[static_cast<std::size_t>(leaving)] =
            leaving_to_upper ? Status::at_upper : Status::at_lower;
        pivot(entering, leaving_row, w);
        if (pivots_since_refactor_ != 0) {
            x_basic_[static_cast<std::size_t>(leaving_row)] = entering_value;
        }
    }
}

bool BoundedSimplex::restore_dual_feasibility() {
    std::vector<double> basic_costs(static_cast<std::size_t>(num_rows_));
    for (int p = 0; p < num_rows_; ++p) {
        basic_costs[static_cast<std::size_t>(p)] =
            cost_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(p)])];
    }
    const std::vector<double> y = btran_costs(basic_costs);
    for (int j = 0; j < total_vars(); ++j) {
        const Status st = vstat_[static_cast<std::size_t>(j)];
        if (st == Status::basic) continue;
        const double d = reduced_cost(j, y);
        if (st == Status::at_lower && d < -kDualTol) {
            if (!std::isfinite(upper_[static_cast<std::size_t>(j)])) return false;
            vstat_[static_cast<std::size_t>(j)] = Status::at_upper;
        } else if (st == Status::at_upper && d > kDualTol) {
            if (!std::isfinite(lower_[static_cast<std::size_t>(j)])) return false;
            vstat_[static_cast<std::size_t>(j)] = Status::at_lower;
        } else if (st == Status::free && std::abs(d) > kDualTol) {
            return false;
        }
    }
    return true;
}

SolveStatus BoundedSimplex::dual(double objective_cutoff) {
    long stall = 0;
    int tiny_pivots = 0;
    bool use_bland = false;
    for (;;) {
        if (++iterations_ > kMaxIterations) throw std::runtime_error("simplex: iteration limit");
        if (std::isfinite(objective_cutoff) && objective_value() > objective_cutoff + 1e-9) {
            return SolveStatus::within_gap;
        }

        int leaving_row = -1;
        double worst = kFeasTol;
        bool below = false;
        for (int i = 0; i < num_rows_; ++i) {
            const int jb = basis_[static_cast<std::size_t>(i)];
            const double x = x_basic_[static_cast<std::size_t>(i)];
            const double viol_lo = lower_[static_cast<std::size_t>(jb)] - x;
            const double viol_hi = x - upper_[static_cast<std::size_t>(jb)];
            if (viol_lo > worst) {
                worst = viol_lo;
                leaving_row = i;
                below = true;
            }
            if (viol_hi > worst) {
                worst = viol_hi;
                leaving_row = i;
                below = false;
            }
        }
        if (leaving_row < 0) return SolveStatus::optimal;

        const std::size_t n = static_cast<std::size_t>(num_rows_);
        const std::size_t r = static_cast<std::size_t>(leaving_row);
        std::vector<double> rho(binv_.begin() + static_cast<long>(r * n),
                                binv_.begin() + static_cast<long>((r + 1) * n));

        std::vector<double> basic_costs(static_cast<std::size_t>(num_rows_));
        for (int p = 0; p < num_rows_; ++p) {
            basic_costs[static_cast<std::size_t>(p)] =
                cost_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(p)])];
        }
        const std::vector<double> y = btran_costs(basic_costs);

        int entering = -1;
        int direction = 0;
        double best_ratio = kInfinity;
        double best_alpha_mag = 0.0;
        for (int j = 0; j < total_vars(); ++j) {
            const Status st = vstat_[static_cast<std::size_t>(j)];
            if (st == Status::basic) continue;
            double alpha;
            if (j >= num_structural_) {
                alpha = -rho[static_cast<std::size_t>(j - num_structural_)];
            } else {
                alpha = 0.0;
                for (int s = col_start_[static_cast<std::size_t>(j)];
                     s < col_start_[static_cast<std::size_t>(j) + 1]; ++s) {
                    alpha += rho[static_cast<std::size_t>(col_index_[static_cast<std::size_t>(s)])] *
                             col_value_[static_cast<std::size_t>(s)];
                }
            }
            if (std::abs(alpha) < kPivotTol) continue;
            int dir = 0;
            if (below) {
                if ((st == Status::at_lower || st == Status::free) && alpha < 0.0) dir = +1;
                else if ((st == Status::at_upper || st == Status::free) && alpha > 0.0) dir = -1;
            } else {
                if ((st == Status::at_lower || st == Status::free) && alpha > 0.0) dir = +1;
                else if ((st == Status::at_upper || st == Status::free) && alpha < 0.0) dir = -1;
            }
            if (dir == 0) continue;
            const double ratio = std::abs(reduced_cost(j, y)) / std::abs(alpha);
            bool take = false;
            if (entering < 0) {
                take = true;
            } else if (use_bland) {
                take = ratio < best_ratio - kTieTol || (ratio <= best_ratio + kTieTol && j < entering);
            } else if (ratio < best_ratio - kTieTol) {
                take = true;
            } else if (ratio <= best_ratio + kTieTol) {
                if (std::abs(alpha) > best_alpha_mag + 1e-12) take = true;
                else if (std::abs(std::abs(alpha) - best_alpha_mag) <= 1e-12 && j < entering) take = true;
            }
            if (take) {
                best_ratio = std::min(best_ratio, ratio);
                best_alpha_mag = std::abs(alpha);
                entering = j;
                direction = dir;
            }
        }
        if (entering < 0) return SolveStatus::infeasible;

        const std::vector<double> w = ftran(entering);
        const double alpha_q = w[r];
        if (std::abs(alpha_q) < 1e-11) {
            refactorize();
            recompute_basic_values();
            if (++tiny_pivots > 10) use_bland = true;
            if (tiny_pivots > 50) return SolveStatus::error;  // caller restarts from scratch
            continue;
        }
        tiny_pivots = 0;

        const int leaving = basis_[r];
        const double target = below ? lower_[static_cast<std::size_t>(leaving)]
                                    : upper_[static_cast<std::size_t>(leaving)];
        // x_B[r](t) = x_B[r] - t * direction * alpha_q must land on `target`.
        const double step = std::max(0.0, (x_basic_[r] - target) / (direction * alpha_q));
        if (step <= kTieTol) {
            if (++stall > 2L * (num_rows_ + num_structural_) + 100) use_bland = true;
        } else {
            stall = 0;
            use_bland = false;
        }

        const double entering_value = nonbasic_value(entering) + direction * step;
        for (int i = 0; i < num_rows_; ++i) {
            x_basic_[static_cast<std::size_t>(i)] -=
                direction * step * w[static_cast<std::size_t>(i)];
        }
        vstat_[static_cast<std::size_t>(leaving)] = below ? Status::at_lower : Status::at_upper;
        pivot(entering, leaving_row, w);
        if (pivots_since_refactor_ != 0) {
            x_basic_[r] = entering_value;
        }
    }
}

SolveStatus BoundedSimplex::solve_from_scratch() {
    reset_to_logical_basis();
    const SolveStatus phase1 = primal(/*phase_one=*/true);
    if (phase1 != SolveStatus::optimal) return phase1;
    return primal(/*phase_one=*/false);
}

SolveStatus BoundedSimplex::resolve_dual(double objective_cutoff) {
    if (!restore_dual_feasibility()) return solve_from_scratch();
    recompute_basic_values();
    SolveStatus status = dual(objective_cutoff);
    if (status == SolveStatus::error) return solve_from_scratch();
    if (status == SolveStatus::optimal) {
        for (int i = 0; i < num_rows_; ++i) {
            const int jb = basis_[static_cast<std::size_t>(i)];
            const double x = x_basic_[static_cast<std::size_t>(i)];
            if (x < lower_[static_cast<std::size_t>(jb)] - 1e-5 ||
                x > upper_[static_cast<std::size_t>(jb)] + 1e-5) {
                return solve_from_scratch();
            }
        }
    }
    return status;
}

double BoundedSimplex::objective_value() const {
    double z = 0.0;
    for (int j = 0; j < total_vars(); ++j) {
        if (vstat_[static_cast<std::size_t>(j)] == Status::basic) continue;
        if (cost_[static_cast<std::size_t>(j)] == 0.0) continue;
        z += cost_[static_cast<std::size_t>(j)] * nonbasic_value(j);
    }
    for (int i = 0; i < num_rows_; ++i) {
        const int jb = basis_[static_cast<std::size_t>(i)];
        z += cost_[static_cast<std::size_t>(jb)] * x_basic_[static_cast<std::size_t>(i)];
    }
    return z;
}

std::vector<double> BoundedSimplex::solution() const {
    std::vector<double> x(static_cast<std::size_t>(num_structural_), 0.0);
    for (int j = 0; j < num_structural_; ++j) {
        if (vstat_[static_cast<std::size_t>(j)] != Status::basic) {
            x[static_cast<std::size_t>(j)] = nonbasic_value(j);
        }
    }
    for (int i = 0; i < num_rows_; ++i) {
        const int jb = basis_[static_cast<std::size_t>(i)];
        if (jb < num_structural_) x[static_cast<std::size_t>(jb)] = x_basic_[static_cast<std::size_t>(i)];
    }
    return x;
}

LpResult solve_lp(const LinearProgram& lp) {
    BoundedSimplex simplex(lp);
    LpResult result;
    result.status = simplex.solve_from_scratch();
    result.iterations = simplex.iterations();
    if (result.status == SolveStatus::optimal) {
        result.objective = simplex.objective_value();
        result.x = simplex.solution();
    }
    return result;
}

}  // namespace sndrr
