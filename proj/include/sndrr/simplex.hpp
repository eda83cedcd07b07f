#ifndef SNDRR_SIMPLEX_HPP
#define SNDRR_SIMPLEX_HPP

#include <vector>

#include "sndrr/lp.hpp"

namespace sndrr {

// Bounded-variable revised simplex over the constraint system Ax - s = 0,
// where the logical s_i carries the row range. The dense basis inverse is
// updated per pivot and refactorized periodically. All tie-breaks are by
// index, so identical inputs replay identical pivot sequences.
class BoundedSimplex {
public:
    explicit BoundedSimplex(const LinearProgram& lp);

    // Reset to the logical basis and run phase 1 + phase 2.
    SolveStatus solve_from_scratch();

    // Re-solve after bound changes, warm-starting from the current basis via
    // the dual simplex (nonbasics are flipped to regain dual feasibility).
    // Falls back to a fresh primal solve when that is not possible. Stops
    // early with status `within_gap` once the objective provably exceeds
    // `objective_cutoff` (pruning hook for branch and bound).
    SolveStatus resolve_dual(double objective_cutoff = kInfinity);

    void set_col_bounds(int j, double lb, double ub);
    double col_lower(int j) const { return lower_[static_cast<std::size_t>(j)]; }
    double col_upper(int j) const { return upper_[static_cast<std::size_t>(j)]; }

    double objective_value() const;
    // Structural solution values, size num_cols().
    std::vector<double> solution() const;
    long iterations() const { return iterations_; }

private:
    enum class Status : std::uint8_t { basic, at_lower, at_upper, free };

    // Problem data (structurals then logicals).
    int num_structural_ = 0;
    int num_rows_ = 0;
    std::vector<double> cost_;
    std::vector<double> lower_, upper_;
    std::vector<int> col_start_;  // CSC over structural columns
    std::vector<int> col_index_;
    std::vector<double> col_value_;

    // Basis state.
    std::vector<int> basis_;       // variable in each basic row position
    std::vector<Status> vstat_;
    std::vector<double> binv_;     // row-major dense basis inverse
    std::vector<double> x_basic_;
    long iterations_ = 0;
    int pivots_since_refactor_ = 0;

    int total_vars() const { return num_structural_ + num_rows_; }
    double nonbasic_value(int j) const;
    void column_times(int j, std::vector<double>& scratch) const;  // scratch += col_j dense
    std::vector<double> ftran(int j) const;                        // B^-1 * col_j
    std::vector<double> btran_costs(const std::vector<double>& basic_costs) const;
    double reduced_cost(int j, const std::vector<double>& y) const;

    void reset_to_logical_basis();
    void refactorize();
    void recompute_basic_values();
    void pivot(int entering, int leaving_row, const std::vector<double>& w);

    SolveStatus primal(bool phase_one);
    SolveStatus dual(double objective_cutoff);
    bool restore_dual_feasibility();

    friend class SimplexTestPeer;
};

// Convenience single-shot LP solve.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace sndrr

#endif  // SNDRR_SIMPLEX_HPP
