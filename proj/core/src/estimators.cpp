#include "polyentropy/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "polyentropy/detail/double_double.hpp"
#include "polyentropy/sampling.hpp"

namespace polyentropy {
namespace {

using detail::DoubleDouble;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string("estimator config: ") + name + " must be positive");
  }
}

double large_branch(std::uint64_t j, double n) {
  return phi(static_cast<double>(j) / n) + 0.5 / n;
}

}  // namespace

void EstimatorConfig::validate() const {
  require_positive(c0, "c0");
  require_positive(c1, "c1");
  require_positive(c2, "c2");
}

double effective_log(std::uint64_t k, std::uint64_t n, const EstimatorConfig& cfg) {
  const std::uint64_t k_eff = cfg.adaptive ? n : k;
  if (k_eff < 2) {
    throw std::domain_error(cfg.adaptive ? "adaptive estimator needs n >= 2"
                                         : "estimator needs k >= 2");
  }
  return std::log(static_cast<double>(k_eff));
}

int poly_degree(std::uint64_t k, std::uint64_t n, const EstimatorConfig& cfg) {
  cfg.validate();
  return static_cast<int>(std::floor(cfg.c0 * effective_log(k, n, cfg)));
}

double PolyEstimatorTable::implied(double p) const {
  const double nd = static_cast<double>(n);
  return s / nd * eval_monomial(unit_coeffs, nd * p / s) + p * linear;
}

ChebApprox phi_approximation(int degree, RemezOptions opts) {
  return remez([](double x) { return phi(x); }, degree, Interval{0.0, 1.0}, opts);
}

PolyEstimatorTable build_poly_table(std::uint64_t k, std::uint64_t n, const EstimatorConfig& cfg,
                                    std::span<const double> unit_coeffs, double error) {
  cfg.validate();
  if (n == 0) {
    throw std::domain_error("estimator needs n >= 1");
  }
  const double logk = effective_log(k, n, cfg);
  const int degree = static_cast<int>(std::floor(cfg.c0 * logk));
  if (static_cast<int>(unit_coeffs.size()) - 1 != degree) {
    throw std::domain_error("approximation degree " + std::to_string(unit_coeffs.size() - 1) +
                            " does not match floor(c0 log k) = " + std::to_string(degree));
  }
  PolyEstimatorTable t;
  t.degree = degree;
  t.s = cfg.c1 * logk;
  t.n = n;
  t.threshold = cfg.c2 * logk;
  t.source_error = error;
  t.unit_coeffs.assign(unit_coeffs.begin(), unit_coeffs.end());
  if (cfg.adaptive) {
    if (cfg.unseen == EstimatorConfig::UnseenRule::zero_constant_term) {
      auto z = zero_constant_term(unit_coeffs, error);
      t.unit_coeffs = std::move(z.coeffs);
      t.source_error = z.error_bound;
    } else {
      t.zero_unseen = true;
    }
  }
  t.scaled = rescale(t.unit_coeffs, t.s);
  t.linear = std::log(static_cast<double>(n) / t.s);
  return t;
}

PolyEstimatorTable build_poly_table(std::uint64_t k, std::uint64_t n, const EstimatorConfig& cfg,
                                    const ChebApprox& approx) {
  if (!(approx.interval() == Interval{0.0, 1.0})) {
    throw std::domain_error("estimator table needs an approximation on [0, 1]");
  }
  return build_poly_table(k, n, cfg, approx.coeffs(), approx.error());
}

PolyEstimatorTable make_poly_table(std::uint64_t k, std::uint64_t n, const EstimatorConfig& cfg) {
  const int degree = poly_degree(k, n, cfg);
  return build_poly_table(k, n, cfg, phi_approximation(degree));
}

double poly_estimate_term(std::uint64_t j, const PolyEstimatorTable& table) {
  if (j == 0 && table.zero_unseen) {
    return 0.0;
  }
  const DoubleDouble inv_s = DoubleDouble(1.0) / DoubleDouble(table.s);
  const auto& a = table.unit_coeffs;
  DoubleDouble t(table.s);
  DoubleDouble sum;
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (m > j) {
      break;  // (j)_m = 0 from here on
    }
    sum += DoubleDouble(a[m]) * t;
    t = t * DoubleDouble(static_cast<double>(j - m)) * inv_s;
  }
  sum += DoubleDouble(table.linear) * DoubleDouble(static_cast<double>(j));
  return sum.value() / static_cast<double>(table.n);
}

double plugin_entropy(const Histogram& h) {
  if (h.n() == 0) {
    throw std::domain_error("plug-in entropy needs n >= 1");
  }
  const double n = static_cast<double>(h.n());
  double total = 0.0;
  for (const auto& [j, count] : fingerprint(h).h) {
    total += static_cast<double>(count) * phi(static_cast<double>(j) / n);
  }
  return total;
}

double miller_madow(const Histogram& h) {
  const double plug = plugin_entropy(h);
  const double s = static_cast<double>(h.distinct());
  return plug + (s - 1.0) / (2.0 * static_cast<double>(h.n()));
}

double poly_entropy_estimate(const Histogram& counts, const Histogram* selector, std::uint64_t k,
                             std::uint64_t n, const EstimatorConfig& cfg,
                             const PolyEstimatorTable& table) {
  if (n == 0) {
    throw std::domain_error("estimator needs n >= 1");
  }
  if (counts.k() != k) {
    throw std::domain_error("histogram length " + std::to_string(counts.k()) +
                            " does not match k = " + std::to_string(k));
  }
  if (cfg.split && (selector == nullptr || selector->k() != k)) {
    throw std::domain_error("split estimator needs a selector histogram of length k");
  }
  const double nd = static_cast<double>(n);
  // (N_i, N'_i) -> multiplicity; summing in key order makes the result a
  // function of the joint fingerprint only.
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> joint;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t c = counts[i];
    const std::uint64_t sel = cfg.split ? (*selector)[i] : c;
    ++joint[{c, sel}];
  }
  double total = 0.0;
  for (const auto& [key, mult] : joint) {
    const auto [c, sel] = key;
    const double term = static_cast<double>(sel) <= table.threshold ? poly_estimate_term(c, table)
                                                                    : large_branch(c, nd);
    total += static_cast<double>(mult) * term;
  }
  total = std::max(total, 0.0);
  if (cfg.clamp_upper && !cfg.adaptive) {
    total = std::min(total, std::log(static_cast<double>(k)));
  }
  return total;
}

double plugin_bias_probe(const Distribution& d, std::uint64_t n, std::uint64_t trials, Seed seed) {
  if (trials < 100) {
    throw std::domain_error("plugin_bias_probe needs at least 100 trials");
  }
  double sum = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    sum += plugin_entropy(sample_multinomial(d, n, Seed{seed.base, seed.stream + t}));
  }
  return sum / static_cast<double>(trials) - entropy(d);
}

}  // namespace polyentropy
