#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "sndrr/branch_bound.hpp"
#include "sndrr/rng.hpp"
#include "sndrr/simplex.hpp"

using namespace sndrr;

namespace {

// Exhaustive oracle for pure-integer programs with finite bounds.
struct EnumerationResult {
    bool feasible = false;
    double objective = 0.0;
};

EnumerationResult enumerate_best(const LinearProgram& lp) {
    EnumerationResult best;
    std::vector<int> value(static_cast<std::size_t>(lp.num_cols()));
    const std::function<void(int)> recurse = [&](int j) {
        if (j == lp.num_cols()) {
            double objective = 0.0;
            for (int i = 0; i < lp.num_cols(); ++i) {
                objective += lp.objective[static_cast<std::size_t>(i)] *
                             value[static_cast<std::size_t>(i)];
            }
            for (int r = 0; r < lp.num_rows(); ++r) {
                double activity = 0.0;
                for (const auto& [col, coeff] : lp.rows[static_cast<std::size_t>(r)]) {
                    activity += coeff * value[static_cast<std::size_t>(col)];
                }
                if (activity < lp.row_lower[static_cast<std::size_t>(r)] - 1e-9 ||
                    activity > lp.row_upper[static_cast<std::size_t>(r)] + 1e-9) {
                    return;
                }
            }
            if (!best.feasible || objective < best.objective) {
                best.feasible = true;
                best.objective = objective;
            }
            return;
        }
        const int lo = static_cast<int>(lp.col_lower[static_cast<std::size_t>(j)]);
        const int hi = static_cast<int>(lp.col_upper[static_cast<std::size_t>(j)]);
        for (int v = lo; v <= hi; ++v) {
            value[static_cast<std::size_t>(j)] = v;
            recurse(j + 1);
        }
    };
    recurse(0);
    return best;
}

}  // namespace

TEST_CASE("simplex solves a two-variable box LP") {
    LinearProgram lp;
    const int x = lp.add_col(0.0, 1.0, -1.0);
    const int y = lp.add_col(0.0, 1.0, -1.0);
    lp.add_row(-kInfinity, 1.0, {{x, 1.0}, {y, 1.0}});
    const LpResult result = solve_lp(lp);
    REQUIRE(result.status == SolveStatus::optimal);
    CHECK(result.objective == doctest::Approx(-1.0));
}

TEST_CASE("simplex handles equalities and ranged rows") {
    LinearProgram lp;
    const int x = lp.add_col(0.0, 10.0, 1.0);
    const int y = lp.add_col(0.0, 10.0, 2.0);
    lp.add_row(4.0, 4.0, {{x, 1.0}, {y, 1.0}});   // x + y = 4
    lp.add_row(1.0, 3.0, {{x, 1.0}, {y, -1.0}});  // 1 <= x - y <= 3
    const LpResult result = solve_lp(lp);
    REQUIRE(result.status == SolveStatus::optimal);
    // Cheapest: push x up, y down: x - y = 3 with x + y = 4 -> x = 3.5, y = 0.5.
    CHECK(result.objective == doctest::Approx(4.5));
    CHECK(result.x[static_cast<std::size_t>(x)] == doctest::Approx(3.5));
    CHECK(result.x[static_cast<std::size_t>(y)] == doctest::Approx(0.5));
}

TEST_CASE("simplex detects infeasibility") {
    LinearProgram lp;
    const int x = lp.add_col(0.0, 1.0, 1.0);
    lp.add_row(2.0, kInfinity, {{x, 1.0}});
    CHECK(solve_lp(lp).status == SolveStatus::infeasible);
}

TEST_CASE("simplex detects unboundedness") {
    LinearProgram lp;
    const int x = lp.add_col(0.0, kInfinity, -1.0);
    lp.add_row(0.0, kInfinity, {{x, 1.0}});
    CHECK(solve_lp(lp).status == SolveStatus::unbounded);
}

TEST_CASE("simplex works with free variables") {
    LinearProgram lp;
    const int x = lp.add_col(-kInfinity, kInfinity, 1.0);
    lp.add_row(3.0, kInfinity, {{x, 1.0}});
    const LpResult result = solve_lp(lp);
    REQUIRE(result.status == SolveStatus::optimal);
    CHECK(result.objective == doctest::Approx(3.0));
}

TEST_CASE("an empty-row program optimizes at the bounds") {
    LinearProgram lp;
    lp.add_col(2.0, 5.0, 3.0);
    lp.add_col(-1.0, 4.0, -2.0);
    const LpResult result = solve_lp(lp);
    REQUIRE(result.status == SolveStatus::optimal);
    CHECK(result.objective == doctest::Approx(2.0 * 3.0 - 2.0 * 4.0));
}

TEST_CASE("dual resolve after bound changes matches a fresh solve") {
    Rng rng(98765);
    for (int trial = 0; trial < 60; ++trial) {
        LinearProgram lp;
        const int cols = rng.uniform_int(3, 8);
        const int rows = rng.uniform_int(2, 6);
        for (int j = 0; j < cols; ++j) {
            lp.add_col(0.0, rng.uniform_int(1, 6), rng.uniform_int(-5, 5));
        }
        for (int r = 0; r < rows; ++r) {
            std::vector<std::pair<int, double>> entries;
            for (int j = 0; j < cols; ++j) {
                if (rng.uniform_int(0, 2) == 0) continue;
                entries.emplace_back(j, static_cast<double>(rng.uniform_int(-4, 4)));
            }
            if (entries.empty()) entries.emplace_back(rng.uniform_int(0, cols - 1), 1.0);
            const int sense = rng.uniform_int(0, 2);
            const double rhs = rng.uniform_int(-6, 10);
            if (sense == 0) {
                lp.add_row(-kInfinity, rhs, entries);
            } else if (sense == 1) {
                lp.add_row(rhs, kInfinity, entries);
            } else {
                lp.add_row(rhs, rhs + rng.uniform_int(0, 4), entries);
            }
        }

        BoundedSimplex warm(lp);
        const SolveStatus first = warm.solve_from_scratch();
        for (int change = 0; change < 4; ++change) {
            const int j = rng.uniform_int(0, cols - 1);
            const double lo = rng.uniform_int(0, 3);
            const double hi = lo + rng.uniform_int(0, 3);
            warm.set_col_bounds(j, lo, hi);

            LinearProgram fresh = lp;
            fresh.col_lower = std::vector<double>(lp.col_lower);
            fresh.col_upper = std::vector<double>(lp.col_upper);
            // Mirror all bound changes applied so far.
            for (int c = 0; c < cols; ++c) {
                fresh.col_lower[static_cast<std::size_t>(c)] = warm.col_lower(c);
                fresh.col_upper[static_cast<std::size_t>(c)] = warm.col_upper(c);
            }
            const LpResult expect = solve_lp(fresh);
            const SolveStatus got = first == SolveStatus::unbounded
                                        ? warm.solve_from_scratch()
                                        : warm.resolve_dual();
            if (expect.status == SolveStatus::optimal) {
                REQUIRE(got == SolveStatus::optimal);
                CHECK(warm.objective_value() ==
                      doctest::Approx(expect.objective).epsilon(1e-6));
            } else {
                CHECK(got == expect.status);
            }
        }
    }
}

TEST_CASE("branch and bound matches exhaustive enumeration") {
    Rng rng(123321);
    int nontrivial = 0;
    for (int trial = 0; trial < 80; ++trial) {
        LinearProgram lp;
        const int cols = rng.uniform_int(3, 7);
        long combos = 1;
        for (int j = 0; j < cols; ++j) {
            const int hi = rng.uniform_int(1, 3);
            lp.add_col(0.0, hi, rng.uniform_int(-6, 6), /*is_integer=*/true);
            combos *= hi + 1;
        }
        if (combos > 20000) continue;
        const int rows = rng.uniform_int(1, 5);
        for (int r = 0; r < rows; ++r) {
            std::vector<std::pair<int, double>> entries;
            for (int j = 0; j < cols; ++j) {
                if (rng.uniform_int(0, 1) == 0) continue;
                entries.emplace_back(j, static_cast<double>(rng.uniform_int(-4, 4)));
            }
            if (entries.empty()) entries.emplace_back(0, 1.0);
            const int sense = rng.uniform_int(0, 2);
            const double rhs = rng.uniform_int(-4, 8);
            if (sense == 0) {
                lp.add_row(-kInfinity, rhs, entries);
            } else if (sense == 1) {
                lp.add_row(rhs, kInfinity, entries);
            } else {
                lp.add_row(rhs, rhs + 2.0, entries);
            }
        }

        const EnumerationResult oracle = enumerate_best(lp);
        const MipResult got = solve_mip(lp);
        if (oracle.feasible) {
            REQUIRE(got.status == SolveStatus::optimal);
            CHECK(got.objective == doctest::Approx(oracle.objective).epsilon(1e-7));
            CHECK(got.best_bound == doctest::Approx(oracle.objective).epsilon(1e-7));
            ++nontrivial;
        } else {
            CHECK(got.status == SolveStatus::infeasible);
        }
    }
    CHECK(nontrivial > 20);
}

TEST_CASE("branch and bound respects a positive relative gap") {
    // Knapsack-style: pick items to minimize negative value under a weight cap.
    LinearProgram lp;
    const std::vector<double> value{9, 7, 6, 3};
    const std::vector<double> weight{4, 3, 3, 1};
    std::vector<std::pair<int, double>> row;
    for (int j = 0; j < 4; ++j) {
        lp.add_col(0.0, 1.0, -value[static_cast<std::size_t>(j)], true);
        row.emplace_back(j, weight[static_cast<std::size_t>(j)]);
    }
    lp.add_row(-kInfinity, 7.0, row);
    MipOptions options;
    options.relative_gap = 0.5;
    const MipResult loose = solve_mip(lp, options);
    CHECK((loose.status == SolveStatus::within_gap || loose.status == SolveStatus::optimal));
    CHECK(loose.attained_gap <= 0.5 + 1e-9);
    CHECK(loose.best_bound <= loose.objective + 1e-9);

    const MipResult exact = solve_mip(lp);
    REQUIRE(exact.status == SolveStatus::optimal);
    CHECK(exact.objective == doctest::Approx(-16.0));  // items 0,1,3
}

TEST_CASE("solves are deterministic") {
    Rng rng(24);
    LinearProgram lp;
    for (int j = 0; j < 10; ++j) lp.add_col(0.0, 2.0, rng.uniform_int(-5, 5), true);
    for (int r = 0; r < 6; ++r) {
        std::vector<std::pair<int, double>> entries;
        for (int j = 0; j < 10; ++j) {
            if (rng.uniform_int(0, 1)) entries.emplace_back(j, rng.uniform_int(-3, 3));
        }
        if (entries.empty()) entries.emplace_back(0, 1.0);
        lp.add_row(-kInfinity, rng.uniform_int(0, 6), entries);
    }
    const MipResult a = solve_mip(lp);
    const MipResult b = solve_mip(lp);
    CHECK(a.status == b.status);
    CHECK(a.objective == b.objective);
    CHECK(a.nodes == b.nodes);
    CHECK(a.x == b.x);
}
