#ifndef SNDRR_BACKEND_HPP
#define SNDRR_BACKEND_HPP

#include <memory>
#include <string>

#include "sndrr/lp.hpp"

namespace sndrr {

// Solver contract: solve a model to a requested relative gap under a time
// limit, and solve pure LPs. Implementations must be deterministic for
// identical inputs.
class SolverBackend {
public:
    virtual ~SolverBackend() = default;
    virtual std::string name() const = 0;
    virtual MipResult solve(const LinearProgram& lp, const MipOptions& options) = 0;
    virtual LpResult solve_relaxation(const LinearProgram& lp) = 0;
};

// In-tree backend: bounded-variable simplex plus branch and bound.
class SimplexBnbBackend final : public SolverBackend {
public:
    std::string name() const override { return "simplex-bnb"; }
    MipResult solve(const LinearProgram& lp, const MipOptions& options) override;
    LpResult solve_relaxation(const LinearProgram& lp) override;
};

// Backend by name; empty selects the SNDRR_BACKEND environment variable and
// then the default. Unknown names throw std::invalid_argument.
std::unique_ptr<SolverBackend> make_backend(const std::string& name = "");

}  // namespace sndrr

#endif  // SNDRR_BACKEND_HPP
