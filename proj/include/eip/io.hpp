#pragma once

// Plain-text configuration format: one point per line, decimal integers
// separated by single spaces (2 or 3 columns), '#' lines are comments.

#include <iosfwd>
#include <string>

#include "eip/lattice.hpp"

namespace eip {

/// Throws ParseError naming the offending line on malformed input,
/// wrong column count, or a duplicate point.
template <std::size_t D>
Config<D> read_config(std::istream& in);

template <std::size_t D>
Config<D> read_config_file(const std::string& path);

template <std::size_t D>
void write_config(std::ostream& out, const Config<D>& c);

template <std::size_t D>
void write_config_file(const std::string& path, const Config<D>& c);

/// Number of columns on the first non-comment line (0 if none).
int sniff_dimension(std::istream& in);

}  // namespace eip
