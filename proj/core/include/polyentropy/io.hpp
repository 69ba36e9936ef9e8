#pragma once

// Plain-text formats: histograms (`symbol_id,count`), distributions
// (`symbol_id,prob`) and coefficient tables. Reals are written with 17
// significant digits so they round-trip exactly.

#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polyentropy/core.hpp"
#include "polyentropy/polyapprox.hpp"

namespace polyentropy {

/// Reads `symbol_id,count` lines (optional `symbol,count` header, blank lines
/// ignored). Symbols absent from the file get count 0. The alphabet is `k` when
/// given, else the largest id plus one. Throws std::runtime_error with the line
/// number on malformed input, duplicate ids or ids >= k.
Histogram read_histogram(std::istream& in, std::optional<std::size_t> k = std::nullopt);
Histogram read_histogram_file(const std::string& path, std::optional<std::size_t> k = std::nullopt);
void write_histogram(std::ostream& out, const Histogram& h, bool header = true);

/// Same layout with probabilities; the result must satisfy Distribution's checks.
Distribution read_distribution(std::istream& in, std::optional<std::size_t> k = std::nullopt);
Distribution read_distribution_file(const std::string& path,
                                    std::optional<std::size_t> k = std::nullopt);
void write_distribution(std::ostream& out, const Distribution& d, bool header = true);

struct CoefficientTable {
  int degree = 0;
  Interval interval;
  double error = 0.0;
  std::vector<double> coeffs;
};

/// One table:
///   degree,interval_a,interval_b,error
///   <L>,<a>,<b>,<E>
///   m,a_m
///   0,<a_0>
///   ...
/// Consecutive tables are separated by a blank line.
void write_coefficient_table(std::ostream& out, const CoefficientTable& t);
CoefficientTable to_table(const ChebApprox& p);
std::vector<CoefficientTable> read_coefficient_tables(std::istream& in);

/// Opens `path` for writing; throws std::runtime_error naming the path on failure.
std::ofstream open_output(const std::string& path);

/// 17-significant-digit decimal.
std::string format_real(double v);

}  // namespace polyentropy
