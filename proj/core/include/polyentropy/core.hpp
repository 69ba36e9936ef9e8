#pragma once

// Domain types and elementary functionals shared by every other module.
// All logarithms are natural; entropies are in nats.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace polyentropy {

__extension__ typedef unsigned __int128 uint128;

/// Probability vector over an alphabet of k symbols.
///
/// Construction validates the entries: every mass must be finite and
/// nonnegative and the total must lie within 1e-12 * k of one. Inputs outside
/// that band are rejected with std::domain_error rather than renormalized.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);

  static Distribution uniform(std::size_t k);
  static Distribution point_mass(std::size_t k, std::size_t symbol = 0);

  std::size_t k() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }

  /// Number of symbols with positive mass.
  std::size_t support_size() const noexcept;

 private:
  std::vector<double> probs_;
};

/// Per-symbol occurrence counts; n is always the sum of the counts.
class Histogram {
 public:
  Histogram() = default;
  explicit Histogram(std::vector<std::uint64_t> counts);

  static Histogram zeros(std::size_t k) { return Histogram(std::vector<std::uint64_t>(k, 0)); }

  std::size_t k() const noexcept { return counts_.size(); }
  std::uint64_t n() const noexcept { return n_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t operator[](std::size_t i) const { return counts_[i]; }

  /// Number of symbols observed at least once.
  std::size_t distinct() const noexcept;

  friend bool operator==(const Histogram&, const Histogram&) = default;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t n_ = 0;
};

/// Histogram of the histogram: multiplicity i -> number of symbols seen exactly i times.
/// Zero counts are not stored.
struct Fingerprint {
  std::map<std::uint64_t, std::uint64_t> h;

  std::uint64_t sample_size() const noexcept;
  std::uint64_t distinct() const noexcept;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

/// x log(1/x), continuously extended with phi(0) = 0. Throws std::domain_error for x < 0 or NaN.
double phi(double x);

/// Shannon entropy sum_i phi(p_i) in nats.
double entropy(const Distribution& d);

Fingerprint fingerprint(const Histogram& h);

/// Exact falling factorial x (x-1) ... (x-m+1); zero when m > x, one when m = 0.
/// Throws std::overflow_error if the product does not fit in 128 bits.
uint128 falling_factorial(std::uint64_t x, std::uint64_t m);

}  // namespace polyentropy
