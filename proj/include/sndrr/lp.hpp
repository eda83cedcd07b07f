#ifndef SNDRR_LP_HPP
#define SNDRR_LP_HPP

#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace sndrr {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Minimization program: min c'x subject to row_lower <= Ax <= row_upper and
// col_lower <= x <= col_upper, with optional integrality markers.
struct LinearProgram {
    std::vector<double> col_lower, col_upper, objective;
    std::vector<std::uint8_t> integer;
    std::vector<double> row_lower, row_upper;
    std::vector<std::vector<std::pair<int, double>>> rows;

    int num_cols() const { return static_cast<int>(objective.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }

    int add_col(double lb, double ub, double cost, bool is_integer = false) {
        col_lower.push_back(lb);
        col_upper.push_back(ub);
        objective.push_back(cost);
        integer.push_back(is_integer ? 1 : 0);
        return num_cols() - 1;
    }

    int add_row(double lb, double ub, std::vector<std::pair<int, double>> entries) {
        row_lower.push_back(lb);
        row_upper.push_back(ub);
        rows.push_back(std::move(entries));
        return num_rows() - 1;
    }
};

enum class SolveStatus { optimal, within_gap, infeasible, unbounded, time_limit, error };

const char* to_string(SolveStatus status);

struct LpResult {
    SolveStatus status = SolveStatus::error;
    double objective = 0.0;
    std::vector<double> x;
    long iterations = 0;
};

struct MipOptions {
    double relative_gap = 0.0;          // stop once (obj - bound)/max(|obj|,1) <= gap
    double time_limit_seconds = 1e18;
    long node_limit = std::numeric_limits<long>::max();
};

struct MipResult {
    SolveStatus status = SolveStatus::error;
    double objective = 0.0;    // incumbent value (meaningful unless infeasible)
    double best_bound = -kInfinity;
    double attained_gap = 0.0;
    std::vector<double> x;
    long nodes = 0;
};

// CPLEX LP-format text export with caller-supplied names.
void write_lp_format(const LinearProgram& lp, const std::vector<std::string>& col_names,
                     const std::vector<std::string>& row_names, std::ostream& out);

}  // namespace sndrr

#endif  // SNDRR_LP_HPP
