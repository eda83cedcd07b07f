#ifndef SNDRR_BRANCH_BOUND_HPP
#define SNDRR_BRANCH_BOUND_HPP

#include "sndrr/lp.hpp"

namespace sndrr {

inline constexpr double kIntegralityTol = 1e-6;

// Exact branch-and-bound over the simplex relaxation. Best-first search with
// LIFO tie-breaking (so fresh children are dived into first); branching on
// the most fractional integer variable, ties to the lowest index. Fully
// deterministic for a fixed model and options.
MipResult solve_mip(const LinearProgram& lp, const MipOptions& options = {});

}  // namespace sndrr

#endif  // SNDRR_BRANCH_BOUND_HPP
