#include "sndrr/lp.hpp"

#include <cmath>
#include <ostream>

namespace sndrr {

namespace {

void write_term(std::ostream& out, double coeff, const std::string& name, bool first) {
    if (coeff >= 0.0) {
        out << (first ? "" : " + ");
    } else {
        out << (first ? "- " : " - ");
    }
    out << std::abs(coeff) << " " << name;
}

}  // namespace

void write_lp_format(const LinearProgram& lp, const std::vector<std::string>& col_names,
                     const std::vector<std::string>& row_names, std::ostream& out) {
    out << "Minimize\n obj:";
    bool first = true;
    for (int j = 0; j < lp.num_cols(); ++j) {
        const double c = lp.objective[static_cast<std::size_t>(j)];
        if (c == 0.0) continue;
        out << " ";
        write_term(out, c, col_names[static_cast<std::size_t>(j)], first);
        first = false;
    }
    if (first) out << " 0 " << (lp.num_cols() > 0 ? col_names[0] : "x0");
    out << "\nSubject To\n";
    for (int i = 0; i < lp.num_rows(); ++i) {
        const double lo = lp.row_lower[static_cast<std::size_t>(i)];
        const double hi = lp.row_upper[static_cast<std::size_t>(i)];
        const auto write_body = [&](const char* rel, double rhs) {
            out << " " << row_names[static_cast<std::size_t>(i)] << ":";
            bool lead = true;
            for (const auto& [j, v] : lp.rows[static_cast<std::size_t>(i)]) {
                if (v == 0.0) continue;
                out << " ";
                write_term(out, v, col_names[static_cast<std::size_t>(j)], lead);
                lead = false;
            }
            out << " " << rel << " " << rhs << "\n";
        };
        if (lo == hi) {
            write_body("=", lo);
        } else {
            if (std::isfinite(hi)) write_body("<=", hi);
            if (std::isfinite(lo)) {
                out << " " << row_names[static_cast<std::size_t>(i)] << "_lo:";
                bool lead = true;
                for (const auto& [j, v] : lp.rows[static_cast<std::size_t>(i)]) {
                    if (v == 0.0) continue;
                    out << " ";
                    write_term(out, v, col_names[static_cast<std::size_t>(j)], lead);
                    lead = false;
                }
                out << " >= " << lo << "\n";
            }
        }
    }
    out << "Bounds\n";
    for (int j = 0; j < lp.num_cols(); ++j) {
        const double lo = lp.col_lower[static_cast<std::size_t>(j)];
        const double hi = lp.col_upper[static_cast<std::size_t>(j)];
        const std::string& name = col_names[static_cast<std::size_t>(j)];
        if (!std::isfinite(lo) && !std::isfinite(hi)) {
            out << " " << name << " free\n";
        } else if (!std::isfinite(hi)) {
            out << " " << lo << " <= " << name << "\n";
        } else if (!std::isfinite(lo)) {
            out << " -inf <= " << name << " <= " << hi << "\n";
        } else {
            out << " " << lo << " <= " << name << " <= " << hi << "\n";
        }
    }
    bool any_integer = false;
    for (int j = 0; j < lp.num_cols(); ++j) {
        if (lp.integer[static_cast<std::size_t>(j)]) {
            if (!any_integer) out << "Generals\n";
            any_integer = true;
            out << " " << col_names[static_cast<std::size_t>(j)] << "\n";
        }
    }
    out << "End\n";
}

}  // namespace sndrr
