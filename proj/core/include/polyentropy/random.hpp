#pragma once

// Counter-based random numbers. Every draw is a pure function of
// (seed.base, seed.stream, draw index), so a trial reproduces exactly no matter
// which thread runs it or in what order.

#include <array>
#include <compare>
#include <cstdint>
#include <limits>

namespace polyentropy {

struct Seed {
  std::uint64_t base = 0;
  std::uint64_t stream = 0;

  friend auto operator<=>(const Seed&, const Seed&) = default;
};

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// UniformRandomBitGenerator over the Philox stream keyed by seed.base, with
/// seed.stream in the high counter words and the draw index in the low ones.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(Seed seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_{};
  std::uint64_t stream_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

/// Poisson(mean) variate: sequential inversion below mean 10, transformed
/// rejection with squeeze (PTRS) above. Throws std::domain_error for a
/// negative or non-finite mean.
std::uint64_t poisson_variate(CounterRng& rng, double mean);

/// Binomial(trials, p) variate.
std::uint64_t binomial_variate(CounterRng& rng, std::uint64_t trials, double p);

}  // namespace polyentropy
