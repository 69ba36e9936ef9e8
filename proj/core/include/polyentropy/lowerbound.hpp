#pragma once

// Constructions behind the minimax lower bound: moment-matched measures from
// the alternation set of the best approximation of log, the change of measure
// to priors on [0, lambda], Poisson-mixture total variation, the two-point
// pair and the variance of Poisson factorial moments.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "polyentropy/core.hpp"
#include "polyentropy/polyapprox.hpp"
#include "polyentropy/random.hpp"

namespace polyentropy {

/// Finitely supported probability measure.
struct DiscreteMeasure {
  std::vector<double> atoms;
  std::vector<double> weights;

  /// sum_i w_i f(x_i)
  double expect(const std::function<double(double)>& f) const;
  /// E[X^j], summed directly.
  double moment(int j) const;
  double total_weight() const;
  /// Throws std::domain_error unless weights are nonnegative, sum to 1 within
  /// 1e-12 and every atom lies in [lo, hi].
  void validate(double lo, double hi) const;
};

/// X and X' on [eta, 1] whose first L moments agree while
/// E[log 1/X] - E[log 1/X'] = 2 E_L(log, [eta, 1]).
struct MomentMatchedPair {
  DiscreteMeasure X;
  DiscreteMeasure Xprime;
  int L = 0;
  double eta = 0.0;
  double separation = 0.0;
  /// E_L(log, [eta, 1]) reported by the exchange.
  double approx_error = 0.0;
  /// Alternation points x_0 < ... < x_(L+1) and the signed weights w_i.
  std::vector<double> alternation;
  std::vector<double> signed_weights;
};

/// Builds the pair from the L+2 alternation points of the best degree-L
/// approximation of log on [eta, 1]: w_i = 2 b_i / sum_j |b_j| with
/// b_i = 1 / prod_(v != i) (x_i - x_v). X collects the atoms where
/// log - p* is negative, X' the others.
///
/// Throws RemezError if the exchange fails and std::domain_error for bad
/// arguments or alternation points closer than 1e-10 (1 - eta).
MomentMatchedPair build_moment_matched_pair(int L, double eta, RemezOptions opts = {});

struct PriorPair {
  DiscreteMeasure U;
  DiscreteMeasure Uprime;
  double alpha = 0.0;
  /// alpha / eta, the right end of the common support.
  double lambda_max = 0.0;
};

/// P_U = (1 - E[eta/X]) delta_0 + (alpha/u) P_(alpha X/eta); atoms at 0 are kept
/// even when their weight is zero.
DiscreteMeasure change_of_measure(const DiscreteMeasure& X, double eta, double alpha);
PriorPair change_of_measure(const MomentMatchedPair& pair, double alpha);

struct MixtureTv {
  double value = 0.0;
  /// Upper bound on the mass dropped by truncating the sum.
  double truncation = 0.0;
};

/// TV between E[Poi(s U)] and E[Poi(s U')], summed until the geometric tail
/// bound of both mixtures is below 1e-15.
MixtureTv poisson_mixture_tv(const DiscreteMeasure& U, const DiscreteMeasure& Uprime, double s);

struct TwoPoint {
  Distribution P;
  Distribution Q;
  double eps = 0.0;
  /// D(P || Q), closed form.
  double kl = 0.0;
  /// H(Q) - H(P).
  double gap = 0.0;
};

/// P = (1/(3(k-1)), ..., 2/3), Q = ((1+eps)/(3(k-1)), ..., (2-eps)/3) with eps = 1/sqrt(n).
/// Throws std::domain_error for k < 2 or n < 2.
TwoPoint two_point_pair(std::uint64_t k, std::uint64_t n);
/// Same with eps given directly, 0 <= eps < 1.
TwoPoint two_point_pair_eps(std::uint64_t k, double eps);

/// var (X)_m for X ~ Poi(lambda): lambda^m m! sum_(i<m) C(m,i) lambda^i / i!.
double factorial_moment_variance(double lambda, int m);

struct PriorDraw {
  /// (U_1/k, ..., U_k/k, 1 - alpha)
  std::vector<double> probs;
  double total_mass = 0.0;
  /// sum of phi over the entries.
  double functional = 0.0;
};

/// k iid draws of U turned into a near-distribution vector.
PriorDraw sample_prior_vector(const PriorPair& pp, std::uint64_t k, Seed seed);

struct ScanRow {
  int L = 0;
  int degree = 0;
  double eta = 0.0;
  double error = 0.0;
};

/// E_(floor(c L))(log, [L^-2, 1]) for each L. c must lie in [0, 1].
std::vector<ScanRow> log_lb_constant_scan(std::span<const int> L_values, double c,
                                          RemezOptions opts = {});

}  // namespace polyentropy
