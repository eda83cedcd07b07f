#include "sndrr/branch_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <stdexcept>
#include <vector>

#include "sndrr/simplex.hpp"

namespace sndrr {

namespace {

struct BoundChange {
    int col;
    double lower;
    double upper;
    std::shared_ptr<const BoundChange> parent;
};

struct Node {
    std::shared_ptr<const BoundChange> changes;
    double bound;  // parent LP objective, a valid lower bound for the subtree
    long seq;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
        return a.seq < b.seq;                              // newest first: dive
    }
};

int most_fractional(const LinearProgram& lp, const std::vector<double>& x) {
    int best = -1;
    double best_dist = kIntegralityTol;
    for (int j = 0; j < lp.num_cols(); ++j) {
        if (!lp.integer[static_cast<std::size_t>(j)]) continue;
        const double v = x[static_cast<std::size_t>(j)];
        const double dist = std::abs(v - std::round(v));
        if (dist > best_dist + 1e-12) {
            best_dist = dist;
            best = j;
        }
    }
    return best;
}

}  // namespace

MipResult solve_mip(const LinearProgram& lp, const MipOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const auto elapsed = [&start]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    MipResult result;
    BoundedSimplex simplex(lp);

    const SolveStatus root = simplex.solve_from_scratch();
    result.nodes = 1;
    if (root == SolveStatus::infeasible) {
        result.status = SolveStatus::infeasible;
        result.best_bound = kInfinity;
        return result;
    }
    if (root == SolveStatus::unbounded) {
        result.status = SolveStatus::unbounded;
        return result;
    }

    double incumbent = kInfinity;
    std::vector<double> incumbent_x;
    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    long seq = 0;
    open.push({nullptr, simplex.objective_value(), seq++});

    const auto cutoff = [&]() {
        if (!std::isfinite(incumbent)) return kInfinity;
        return incumbent - std::max(1e-9, options.relative_gap * std::abs(incumbent));
    };

    double best_open_bound = -kInfinity;
    bool hit_time_limit = false;
    while (!open.empty()) {
        if (elapsed() > options.time_limit_seconds || result.nodes >= options.node_limit) {
            hit_time_limit = true;
            best_open_bound = open.top().bound;
            break;
        }
        const Node node = open.top();
        best_open_bound = node.bound;
        if (node.bound >= cutoff()) break;  // best-first: everything else is worse
        open.pop();

        // Reinstall this node's bounds.
        for (int j = 0; j < lp.num_cols(); ++j) {
            simplex.set_col_bounds(j, lp.col_lower[static_cast<std::size_t>(j)],
                                   lp.col_upper[static_cast<std::size_t>(j)]);
        }
        for (const BoundChange* c = node.changes.get(); c != nullptr; c = c->parent.get()) {
            // Later changes shadow earlier ones along the chain; apply the
            // tightest combination.
            const double lb = std::max(simplex.col_lower(c->col), c->lower);
            const double ub = std::min(simplex.col_upper(c->col), c->upper);
            simplex.set_col_bounds(c->col, lb, ub);
        }

        ++result.nodes;
        const SolveStatus status = simplex.resolve_dual(cutoff());
        if (status == SolveStatus::infeasible) continue;
        if (status == SolveStatus::within_gap) continue;  // objective passed the cutoff
        if (status == SolveStatus::unbounded) {
            result.status = SolveStatus::unbounded;
            return result;
        }
        const double bound = simplex.objective_value();
        if (bound >= cutoff()) continue;

        const std::vector<double> x = simplex.solution();
        const int branch_col = most_fractional(lp, x);
        if (branch_col < 0) {
            if (bound < incumbent) {
                incumbent = bound;
                incumbent_x = x;
            }
            continue;
        }
        const double value = x[static_cast<std::size_t>(branch_col)];
        const double down = std::floor(value);
        // The nearer child is pushed last so the LIFO tie-break dives into it.
        Node far{nullptr, bound, 0};
        Node near{nullptr, bound, 0};
        far.changes = std::make_shared<const BoundChange>(BoundChange{
            branch_col, down + 1.0, kInfinity, node.changes});
        near.changes = std::make_shared<const BoundChange>(BoundChange{
            branch_col, -kInfinity, down, node.changes});
        if (value - down > 0.5) std::swap(near, far);
        far.seq = seq++;
        near.seq = seq++;
        open.push(std::move(far));
        open.push(std::move(near));
    }

    if (open.empty()) best_open_bound = kInfinity;
    result.best_bound = std::isfinite(incumbent) ? std::min(best_open_bound, incumbent)
                                                 : best_open_bound;
    result.objective = incumbent;
    result.x = std::move(incumbent_x);
    if (!std::isfinite(incumbent)) {
        result.status = hit_time_limit ? SolveStatus::time_limit : SolveStatus::infeasible;
        if (!hit_time_limit) result.best_bound = kInfinity;
        return result;
    }
    result.attained_gap =
        std::max(0.0, (incumbent - result.best_bound) / std::max(1.0, std::abs(incumbent)));
    if (hit_time_limit) {
        result.status = SolveStatus::time_limit;
    } else if (result.attained_gap <= 1e-9) {
        result.status = SolveStatus::optimal;
    } else {
        result.status = SolveStatus::within_gap;
    }
    return result;
}

}  // namespace sndrr
