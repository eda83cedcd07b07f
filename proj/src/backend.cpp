#include "sndrr/backend.hpp"

#include <cstdlib>
#include <stdexcept>

#include "sndrr/branch_bound.hpp"
#include "sndrr/simplex.hpp"

namespace sndrr {

MipResult SimplexBnbBackend::solve(const LinearProgram& lp, const MipOptions& options) {
    return solve_mip(lp, options);
}

LpResult SimplexBnbBackend::solve_relaxation(const LinearProgram& lp) { return solve_lp(lp); }

std::unique_ptr<SolverBackend> make_backend(const std::string& name) {
    std::string selected = name;
    if (selected.empty()) {
        if (const char* env = std::getenv("SNDRR_BACKEND")) selected = env;
    }
    if (selected.empty() || selected == "simplex-bnb") {
        return std::make_unique<SimplexBnbBackend>();
    }
    throw std::invalid_argument("unknown solver backend: " + selected);
}

}  // namespace sndrr
