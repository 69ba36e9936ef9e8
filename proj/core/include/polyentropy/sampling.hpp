#pragma once

// Synthetic distributions and deterministic samplers.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "polyentropy/core.hpp"
#include "polyentropy/random.hpp"

namespace polyentropy {

struct SyntheticSpec {
  enum class Kind { uniform, zipf, geo_zipf_mix };

  Kind kind = Kind::uniform;
  std::size_t k = 0;
  /// Zipf exponent; ignored by the other kinds.
  double alpha = 1.0;

  /// Parses `uniform`, `zipf:<alpha>` or `mix`. Throws std::invalid_argument.
  static SyntheticSpec parse(std::string_view text, std::size_t k);

  /// Canonical label, inverse of parse (`zipf:1`, `zipf:0.5`, ...).
  std::string label() const;

  /// Throws std::domain_error if the spec is invalid.
  void validate() const;
};

/// uniform: 1/k. zipf: i^-alpha / Z. geo_zipf_mix: first k/2 symbols follow
/// 1/i and the last k/2 follow (1 - 2/k)^(i-1), each half carrying mass 1/2.
Distribution make_distribution(const SyntheticSpec& spec);

/// Multinomial(n, d) histogram via a chain of conditional binomials.
Histogram sample_multinomial(const Distribution& d, std::uint64_t n, Seed seed);

/// Independent Poi(n p_j) counts.
Histogram sample_poissonized(const Distribution& d, double n, Seed seed);

/// Thins each count M_j into N_j ~ Bin(M_j, 1/2) and N'_j = M_j - N_j.
std::pair<Histogram, Histogram> split_histogram(const Histogram& m, Seed seed);

}  // namespace polyentropy
