#include "polyentropy/core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace polyentropy {

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw std::domain_error("distribution: alphabet must be nonempty");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!std::isfinite(p) || p < 0.0) {
      throw std::domain_error("distribution: invalid mass at symbol " + std::to_string(i));
    }
    total += p;
  }
  const double slack = 1e-12 * static_cast<double>(probs_.size());
  if (std::abs(total - 1.0) > slack) {
    throw std::domain_error("distribution: masses sum to " + std::to_string(total) +
                            ", outside 1 +/- 1e-12*k");
  }
}

Distribution Distribution::uniform(std::size_t k) {
  if (k == 0) {
    throw std::domain_error("distribution: alphabet must be nonempty");
  }
  return Distribution(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

Distribution Distribution::point_mass(std::size_t k, std::size_t symbol) {
  if (symbol >= k) {
    throw std::domain_error("distribution: point-mass symbol outside alphabet");
  }
  std::vector<double> p(k, 0.0);
  p[symbol] = 1.0;
  return Distribution(std::move(p));
}

std::size_t Distribution::support_size() const noexcept {
  std::size_t s = 0;
  for (double p : probs_) {
    s += p > 0.0 ? 1 : 0;
  }
  return s;
}

Histogram::Histogram(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
  for (auto c : counts_) {
    if (c > std::numeric_limits<std::uint64_t>::max() - n_) {
      throw std::overflow_error("histogram: total count overflows 64 bits");
    }
    n_ += c;
  }
}

std::size_t Histogram::distinct() const noexcept {
  std::size_t s = 0;
  for (auto c : counts_) {
    s += c > 0 ? 1 : 0;
  }
  return s;
}

std::uint64_t Fingerprint::sample_size() const noexcept {
  std::uint64_t n = 0;
  for (const auto& [mult, count] : h) {
    n += mult * count;
  }
  return n;
}

std::uint64_t Fingerprint::distinct() const noexcept {
  std::uint64_t s = 0;
  for (const auto& entry : h) {
    s += entry.second;
  }
  return s;
}

double phi(double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("phi: argument must be nonnegative");
  }
  if (x == 0.0) {
    return 0.0;
  }
  return -x * std::log(x);
}

double entropy(const Distribution& d) {
  double h = 0.0;
  for (double p : d.probs()) {
    h += phi(p);
  }
  return h;
}

Fingerprint fingerprint(const Histogram& hist) {
  Fingerprint fp;
  for (auto c : hist.counts()) {
    if (c > 0) {
      ++fp.h[c];
    }
  }
  return fp;
}

uint128 falling_factorial(std::uint64_t x, std::uint64_t m) {
  if (m > x) {
    return 0;
  }
  const uint128 max = ~uint128{0};
  uint128 acc = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    const uint128 factor = x - i;
    if (factor != 0 && acc > max / factor) {
      throw std::overflow_error("falling_factorial: result exceeds 128 bits");
    }
    acc *= factor;
  }
  return acc;
}

}  // namespace polyentropy
