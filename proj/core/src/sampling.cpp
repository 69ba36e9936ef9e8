#include "polyentropy/sampling.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace polyentropy {

SyntheticSpec SyntheticSpec::parse(std::string_view text, std::size_t k) {
  SyntheticSpec spec;
  spec.k = k;
  if (text == "uniform") {
    spec.kind = Kind::uniform;
  } else if (text == "mix") {
    spec.kind = Kind::geo_zipf_mix;
  } else if (text.starts_with("zipf:")) {
    spec.kind = Kind::zipf;
    const std::string_view num = text.substr(5);
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), spec.alpha);
    if (ec != std::errc() || ptr != num.data() + num.size() || num.empty()) {
      throw std::invalid_argument("bad zipf exponent in '" + std::string(text) + "'");
    }
  } else {
    throw std::invalid_argument("unknown distribution '" + std::string(text) +
                                "' (expected uniform, zipf:<alpha> or mix)");
  }
  spec.validate();
  return spec;
}

std::string SyntheticSpec::label() const {
  switch (kind) {
    case Kind::uniform:
      return "uniform";
    case Kind::geo_zipf_mix:
      return "mix";
    case Kind::zipf: {
      std::ostringstream os;
      os << "zipf:" << alpha;
      return os.str();
    }
  }
  return "?";
}

void SyntheticSpec::validate() const {
  if (k == 0) {
    throw std::domain_error("alphabet size must be positive");
  }
  if (kind == Kind::zipf && !(alpha > 0.0 && std::isfinite(alpha))) {
    throw std::domain_error("zipf exponent must be positive");
  }
  if (kind == Kind::geo_zipf_mix && k % 2 != 0) {
    throw std::domain_error("mix requires an even alphabet size");
  }
}

namespace {

void normalize(std::vector<double>& w, std::size_t begin, std::size_t end, double mass) {
  double z = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    z += w[i];
  }
  for (std::size_t i = begin; i < end; ++i) {
    w[i] = mass * w[i] / z;
  }
}

}  // namespace

Distribution make_distribution(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t k = spec.k;
  std::vector<double> p(k);
  switch (spec.kind) {
    case SyntheticSpec::Kind::uniform:
      return Distribution::uniform(k);
    case SyntheticSpec::Kind::zipf:
      for (std::size_t i = 0; i < k; ++i) {
        p[i] = std::pow(static_cast<double>(i + 1), -spec.alpha);
      }
      normalize(p, 0, k, 1.0);
      break;
    case SyntheticSpec::Kind::geo_zipf_mix: {
      const std::size_t half = k / 2;
      const double ratio = 1.0 - 2.0 / static_cast<double>(k);
      double g = 1.0;
      for (std::size_t i = 0; i < half; ++i) {
        p[i] = 1.0 / static_cast<double>(i + 1);
        p[half + i] = g;
        g *= ratio;
      }
      normalize(p, 0, half, 0.5);
      normalize(p, half, k, 0.5);
      break;
    }
  }
  return Distribution(std::move(p));
}

Histogram sample_multinomial(const Distribution& d, std::uint64_t n, Seed seed) {
  const std::size_t k = d.k();
  std::vector<std::uint64_t> counts(k, 0);
  // suffix[j] = p_j + ... + p_{k-1}
  std::vector<double> suffix(k + 1, 0.0);
  for (std::size_t j = k; j-- > 0;) {
    suffix[j] = suffix[j + 1] + d[j];
  }
  CounterRng rng(seed);
  std::uint64_t left = n;
  for (std::size_t j = 0; j < k && left > 0; ++j) {
    if (d[j] == 0.0) {
      continue;
    }
    const bool last = suffix[j + 1] <= 0.0;
    if (last) {
      counts[j] = left;
      break;
    }
    const double q = std::min(1.0, d[j] / suffix[j]);
    const std::uint64_t c = binomial_variate(rng, left, q);
    counts[j] = c;
    left -= c;
  }
  return Histogram(std::move(counts));
}

Histogram sample_poissonized(const Distribution& d, double n, Seed seed) {
  if (!(n >= 0.0) || !std::isfinite(n)) {
    throw std::domain_error("sample_poissonized: n must be finite and nonnegative");
  }
  std::vector<std::uint64_t> counts(d.k(), 0);
  CounterRng rng(seed);
  for (std::size_t j = 0; j < d.k(); ++j) {
    counts[j] = poisson_variate(rng, n * d[j]);
  }
  return Histogram(std::move(counts));
}

std::pair<Histogram, Histogram> split_histogram(const Histogram& m, Seed seed) {
  std::vector<std::uint64_t> a(m.k(), 0);
  std::vector<std::uint64_t> b(m.k(), 0);
  CounterRng rng(seed);
  for (std::size_t j = 0; j < m.k(); ++j) {
    a[j] = binomial_variate(rng, m[j], 0.5);
    b[j] = m[j] - a[j];
  }
  return {Histogram(std::move(a)), Histogram(std::move(b))};
}

}  // namespace polyentropy
