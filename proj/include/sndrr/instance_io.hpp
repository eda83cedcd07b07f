#ifndef SNDRR_INSTANCE_IO_HPP
#define SNDRR_INSTANCE_IO_HPP

#include <iosfwd>
#include <string>

#include "sndrr/instance.hpp"

namespace sndrr {

// Instance document: {nodes, arcs, commodities, horizon} plus an optional
// hub block for hub-and-spoke instances. Times and capacities are integers,
// costs and demands decimal strings; emission is byte-deterministic.
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance(const Instance& instance, std::ostream& out);
void write_instance_file(const Instance& instance, const std::string& path);
std::string instance_to_string(const Instance& instance);

// Shortest round-trip decimal rendering of a double (used for cost fields).
std::string format_decimal(double value);

}  // namespace sndrr

#endif  // SNDRR_INSTANCE_IO_HPP
