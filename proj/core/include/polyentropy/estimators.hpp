#pragma once

// Entropy estimators: plug-in, Miller-Madow and the polynomial-approximation
// estimator that replaces phi(p) by an unbiasedly estimable polynomial on the
// small-probability region.

#include <cstdint>
#include <span>
#include <vector>

#include "polyentropy/core.hpp"
#include "polyentropy/polyapprox.hpp"
#include "polyentropy/random.hpp"

namespace polyentropy {

struct EstimatorConfig {
  /// What adaptive mode does to unseen symbols.
  enum class UnseenRule {
    /// Drop a_0 from the approximating polynomial.
    zero_constant_term,
    /// Keep the polynomial, force g_L(0) = 0.
    zero_unseen_only,
  };

  double c0 = 1.6;  // degree L = floor(c0 log k)
  double c1 = 3.5;  // approximation interval [0, c1 log k / n]
  double c2 = 1.6;  // counts <= c2 log k use the polynomial branch
  bool clamp_upper = true;
  /// Use log n in place of log k and clamp only from below.
  bool adaptive = false;
  /// Select the branch with a second, independent histogram.
  bool split = false;
  UnseenRule unseen = UnseenRule::zero_constant_term;

  /// Throws std::domain_error unless c0, c1, c2 are positive and finite.
  void validate() const;
};

/// log k, or log n in adaptive mode. Throws std::domain_error if that is below log 2.
double effective_log(std::uint64_t k, std::uint64_t n, const EstimatorConfig& cfg);

/// floor(c0 * log k_eff).
int poly_degree(std::uint64_t k, std::uint64_t n, const EstimatorConfig& cfg);

/// Ready-to-evaluate form of g_L for one (k, n, config).
struct PolyEstimatorTable {
  int degree = 0;
  /// Right end of the unit-scaled interval, c1 log k_eff.
  double s = 1.0;
  std::uint64_t n = 1;
  /// Polynomial on [0, 1], a_0 already removed when required.
  std::vector<double> unit_coeffs;
  /// b_m = a_m / s^(m-1).
  std::vector<double> scaled;
  /// log(n / s).
  double linear = 0.0;
  /// c2 log k_eff.
  double threshold = 0.0;
  /// g_L(0) forced to zero.
  bool zero_unseen = false;
  /// Uniform error of the source approximant on [0, 1].
  double source_error = 0.0;

  /// P_L(p) = (s/n) p_L(n p / s) + p log(n / s), the expectation of g_L(N)
  /// for N ~ Poi(n p) (before any g_L(0) override).
  double implied(double p) const;
};

/// Best approximation of phi on [0, 1] at the given degree.
ChebApprox phi_approximation(int degree, RemezOptions opts = {});

/// Table from an approximation of phi on [0, 1]. Throws std::domain_error if
/// its degree is not poly_degree(k, n, cfg) or its interval is not [0, 1].
PolyEstimatorTable build_poly_table(std::uint64_t k, std::uint64_t n, const EstimatorConfig& cfg,
                                    const ChebApprox& approx);
PolyEstimatorTable build_poly_table(std::uint64_t k, std::uint64_t n, const EstimatorConfig& cfg,
                                    std::span<const double> unit_coeffs, double error = 0.0);

/// Runs Remez at the configured degree and builds the table.
PolyEstimatorTable make_poly_table(std::uint64_t k, std::uint64_t n, const EstimatorConfig& cfg);

/// g_L(j) = (1/n) [sum_m b_m (j)_m + log(n/s) j], via the recurrence
/// t_0 = s, t_(m+1) = t_m (j - m) / s in double-double arithmetic, so no raw
/// falling factorial is formed and |t_m| stays near s (j/s)^m.
double poly_estimate_term(std::uint64_t j, const PolyEstimatorTable& table);

/// sum_j phi(N_j / n). Throws std::domain_error when n = 0.
double plugin_entropy(const Histogram& h);

/// Plug-in plus (S - 1) / (2n), S the number of distinct observed symbols.
double miller_madow(const Histogram& h);

/// The combined estimator: per symbol, g_L(N_i) if N'_i <= c2 log k_eff,
/// otherwise phi(N_i / n) + 1/(2n); the sum is clamped to [0, log k]
/// (to [0, inf) with clamp_upper off or in adaptive mode).
///
/// `selector` is N' and is used only when cfg.split is set; otherwise N selects
/// its own branch. Throws std::domain_error on length mismatch, n = 0, or a
/// histogram whose length is not k.
double poly_entropy_estimate(const Histogram& counts, const Histogram* selector, std::uint64_t k,
                             std::uint64_t n, const EstimatorConfig& cfg,
                             const PolyEstimatorTable& table);

/// Mean plug-in estimate over `trials` multinomial samples minus the true
/// entropy. Trial t uses stream seed.stream + t. Requires trials >= 100.
double plugin_bias_probe(const Distribution& d, std::uint64_t n, std::uint64_t trials, Seed seed);

}  // namespace polyentropy
