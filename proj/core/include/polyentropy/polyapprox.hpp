#pragma once

// Best uniform polynomial approximation on a closed interval (Remez exchange)
// together with the helpers the estimator and the lower-bound constructions
// need: rescaling to [0, s], constant-term removal and grid certification.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyentropy {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

using RealFunction = std::function<double(double)>;

struct RemezOptions {
  double tol = 1e-10;
  int max_iters = 100;
};

/// A degree-L approximant on [a, b] with its certified uniform error.
///
/// The polynomial is held in the Chebyshev basis of [a, b] (used for
/// evaluation) and in the monomial basis a_0..a_L of x (the external contract).
/// `error()` is the largest residual magnitude observed at the refined
/// extrema; `lower_bound()` is the smallest magnitude on the alternating set,
/// which bounds the best error from below (de la Vallee Poussin).
class ChebApprox {
 public:
  /// Builds an approximant from Chebyshev coefficients on `interval`.
  /// Alternation data may be empty for hand-made polynomials.
  static ChebApprox from_chebyshev(Interval interval, std::vector<double> chebyshev, double error,
                                   std::vector<double> alternation = {},
                                   std::vector<double> residuals = {}, double lower_bound = 0.0,
                                   int iterations = 0);

  /// Builds an approximant from monomial coefficients on `interval`.
  static ChebApprox from_monomial(Interval interval, std::vector<double> monomial, double error);

  int degree() const noexcept { return static_cast<int>(monomial_.size()) - 1; }
  Interval interval() const noexcept { return interval_; }
  std::span<const double> coeffs() const noexcept { return monomial_; }
  std::span<const double> chebyshev() const noexcept { return chebyshev_; }
  double error() const noexcept { return error_; }
  double lower_bound() const noexcept { return lower_bound_; }
  std::span<const double> alternation() const noexcept { return alternation_; }
  /// f(x_i) - p(x_i) at each alternation point.
  std::span<const double> residuals() const noexcept { return residuals_; }
  int iterations() const noexcept { return iterations_; }

  /// Evaluates p(x) with the Clenshaw recurrence.
  double operator()(double x) const;

 private:
  Interval interval_;
  std::vector<double> chebyshev_;
  std::vector<double> monomial_;
  double error_ = 0.0;
  double lower_bound_ = 0.0;
  std::vector<double> alternation_;
  std::vector<double> residuals_;
  int iterations_ = 0;
};

/// Raised when the exchange does not level within `max_iters`; carries the last
/// iterate and its certified bounds lower <= E_L <= upper.
class RemezError : public std::runtime_error {
 public:
  RemezError(const std::string& what, ChebApprox last, double lower, double upper)
      : std::runtime_error(what), last_(std::move(last)), lower_(lower), upper_(upper) {}

  const ChebApprox& last() const noexcept { return last_; }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  ChebApprox last_;
  double lower_;
  double upper_;
};

/// Best degree-L uniform approximation of f on `interval`.
///
/// Starts from the Chebyshev extreme points, solves for the levelled error on
/// the L+2 references each iteration and exchanges all references for the
/// alternating local extrema of the residual. Stops once the extremal residual
/// magnitudes agree within `tol` relative. Only function values are used, so
/// f may have an unbounded derivative at an endpoint (x log 1/x at 0).
///
/// Throws std::domain_error for invalid arguments or NaN from f, RemezError on
/// non-convergence.
ChebApprox remez(const RealFunction& f, int degree, Interval interval, RemezOptions opts = {});

/// Monomial coefficients of s * p(x / s) for p given on [0, 1]:
/// b_m = a_m / s^(m-1). Throws std::domain_error for s <= 0.
std::vector<double> rescale(std::span<const double> unit_coeffs, double s);
std::vector<double> rescale(const ChebApprox& p, double s);

struct ZeroedApprox {
  std::vector<double> coeffs;
  /// E + |a_0|; at most 2E whenever f vanishes at the left endpoint 0.
  double error_bound = 0.0;
};

/// Drops the constant term: (0, a_1, ..., a_L).
ZeroedApprox zero_constant_term(const ChebApprox& p);
ZeroedApprox zero_constant_term(std::span<const double> coeffs, double error);

/// Evaluates sum_m c_m x^m in double-double arithmetic (compensated Horner).
double eval_monomial(std::span<const double> coeffs, double x);

/// n Chebyshev extreme points of `interval` (endpoints included, ascending).
std::vector<double> chebyshev_grid(Interval interval, std::size_t n);

/// max |f - p| over an n-point Chebyshev grid, p in the monomial basis.
/// Throws std::domain_error if grid_size < 1000.
double sup_error(std::span<const double> coeffs, const RealFunction& f, Interval interval,
                 std::size_t grid_size);
double sup_error(const ChebApprox& p, const RealFunction& f, std::size_t grid_size);

}  // namespace polyentropy
