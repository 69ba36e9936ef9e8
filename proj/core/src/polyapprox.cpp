#include "polyentropy/polyapprox.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "polyentropy/detail/double_double.hpp"

namespace polyentropy {
namespace {

using detail::DoubleDouble;

struct Extremum {
  double x;
  double r;  // f(x) - p(x)
};

double to_unit(Interval iv, double x) { return (2.0 * x - iv.lo - iv.hi) / (iv.hi - iv.lo); }

double clenshaw(std::span<const double> c, double t) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t j = c.size(); j-- > 1;) {
    const double b0 = 2.0 * t * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + c[0];
}

// Monomial coefficients in x of sum_j c_j T_j(alpha x + beta), accumulated in
// double-double so each output is close to correctly rounded.
std::vector<double> chebyshev_to_monomial(std::span<const double> c, Interval iv) {
  const std::size_t n = c.size();
  const DoubleDouble width(iv.hi - iv.lo);
  const DoubleDouble alpha = DoubleDouble(2.0) / width;
  const DoubleDouble beta = -(DoubleDouble(iv.hi) + DoubleDouble(iv.lo)) / width;

  std::vector<DoubleDouble> acc(n);
  std::vector<DoubleDouble> prev(n);  // T_{j-1}
  std::vector<DoubleDouble> cur(n);   // T_j
  prev[0] = DoubleDouble(1.0);
  acc[0] = DoubleDouble(c[0]);
  if (n > 1) {
    cur[0] = beta;
    cur[1] = alpha;
    acc[0] += DoubleDouble(c[1]) * beta;
    acc[1] += DoubleDouble(c[1]) * alpha;
  }
  for (std::size_t j = 2; j < n; ++j) {
    std::vector<DoubleDouble> next(n);
    for (std::size_t m = 0; m < j; ++m) {
      next[m] += DoubleDouble(2.0) * beta * cur[m];
      next[m + 1] += DoubleDouble(2.0) * alpha * cur[m];
    }
    for (std::size_t m = 0; m + 1 < j; ++m) {
      next[m] = next[m] - prev[m];
    }
    for (std::size_t m = 0; m <= j; ++m) {
      acc[m] += DoubleDouble(c[j]) * next[m];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  std::vector<double> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    out[m] = acc[m].value();
  }
  return out;
}

double checked(const RealFunction& f, double x) {
  const double y = f(x);
  if (std::isnan(y)) {
    std::ostringstream msg;
    msg << "remez: function returned NaN at x = " << x;
    throw std::domain_error(msg.str());
  }
  return y;
}

class Residual {
 public:
  Residual(const RealFunction& f, Interval iv, std::span<const double> cheb)
      : f_(f), iv_(iv), cheb_(cheb) {}

  double operator()(double x) const { return checked(f_, x) - clenshaw(cheb_, to_unit(iv_, x)); }

 private:
  const RealFunction& f_;
  Interval iv_;
  std::span<const double> cheb_;
};

// Golden-section maximization of sign * r on [lo, hi].
Extremum refine(const Residual& r, double lo, double hi, double sign, double xtol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = sign * r(x1);
  double f2 = sign * r(x2);
  while (hi - lo > xtol) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = sign * r(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = sign * r(x2);
    }
  }
  const double x = f1 > f2 ? x1 : x2;
  return {x, sign * std::max(f1, f2)};
}

// Local extrema of the residual on the scan grid, refined in abscissa.
std::vector<Extremum> local_extrema(const Residual& r, std::span<const double> grid,
                                    double xtol) {
  std::vector<double> vals(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    vals[g] = r(grid[g]);
  }
  std::vector<Extremum> out;
  const std::size_t last = grid.size() - 1;
  for (std::size_t g = 0; g <= last; ++g) {
    const double v = vals[g];
    if (v == 0.0) {
      continue;
    }
    const double s = v > 0.0 ? 1.0 : -1.0;
    const bool left_ok = g == 0 || s * v >= s * vals[g - 1];
    const bool right_ok = g == last || s * v >= s * vals[g + 1];
    if (!(left_ok && right_ok)) {
      continue;
    }
    if (g == 0 || g == last) {
      out.push_back({grid[g], v});
      continue;
    }
    Extremum e = refine(r, grid[g - 1], grid[g + 1], s, xtol);
    if (s * e.r < s * v) {
      e = {grid[g], v};
    }
    out.push_back(e);
  }
  return out;
}

// Reduces a list of extrema to a sign-alternating sequence, keeping the larger
// magnitude within each same-sign run.
std::vector<Extremum> alternating(const std::vector<Extremum>& ext) {
  std::vector<Extremum> alt;
  for (const auto& e : ext) {
    if (!alt.empty() && (alt.back().r > 0.0) == (e.r > 0.0)) {
      if (std::abs(e.r) > std::abs(alt.back().r)) {
        alt.back() = e;
      }
    } else {
      alt.push_back(e);
    }
  }
  return alt;
}

void trim_to(std::vector<Extremum>& alt, std::size_t target) {
  while (alt.size() > target) {
    if (alt.size() - target == 1) {
      if (std::abs(alt.front().r) < std::abs(alt.back().r)) {
        alt.erase(alt.begin());
      } else {
        alt.pop_back();
      }
      continue;
    }
    auto smallest = std::min_element(alt.begin(), alt.end(), [](const auto& a, const auto& b) {
      return std::abs(a.r) < std::abs(b.r);
    });
    if (smallest == alt.begin() || smallest == alt.end() - 1) {
      alt.erase(smallest);
      continue;
    }
    // Removing an interior point and one neighbour keeps the signs alternating.
    auto left = smallest - 1;
    auto right = smallest + 1;
    if (std::abs(left->r) < std::abs(right->r)) {
      alt.erase(left, smallest + 1);
    } else {
      alt.erase(smallest, right + 1);
    }
  }
}

// Single-point exchange: inserts the global maximizer into the reference set
// while keeping the residual signs alternating.
std::vector<double> single_exchange(const Residual& r, std::vector<double> ref, Extremum top) {
  std::vector<double> sgn(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    sgn[i] = r(ref[i]) >= 0.0 ? 1.0 : -1.0;
  }
  const double s = top.r >= 0.0 ? 1.0 : -1.0;
  const auto pos = std::upper_bound(ref.begin(), ref.end(), top.x) - ref.begin();
  const auto n = static_cast<std::ptrdiff_t>(ref.size());
  if (pos == 0) {
    if (sgn.front() == s) {
      ref.front() = top.x;
    } else {
      ref.pop_back();
      ref.insert(ref.begin(), top.x);
    }
  } else if (pos == n) {
    if (sgn.back() == s) {
      ref.back() = top.x;
    } else {
      ref.erase(ref.begin());
      ref.push_back(top.x);
    }
  } else {
    const auto i = pos - 1;
    if (sgn[static_cast<std::size_t>(i)] == s) {
      ref[static_cast<std::size_t>(i)] = top.x;
    } else {
      ref[static_cast<std::size_t>(pos)] = top.x;
    }
  }
  return ref;
}

std::vector<double> merged_grid(Interval iv, std::size_t n, std::span<const double> ref) {
  std::vector<double> grid = chebyshev_grid(iv, n);
  grid.insert(grid.end(), ref.begin(), ref.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

ChebApprox ChebApprox::from_chebyshev(Interval interval, std::vector<double> chebyshev,
                                      double error, std::vector<double> alternation,
                                      std::vector<double> residuals, double lower_bound,
                                      int iterations) {
  if (!(interval.lo < interval.hi) || chebyshev.empty()) {
    throw std::domain_error("ChebApprox: need a < b and at least one coefficient");
  }
  ChebApprox p;
  p.interval_ = interval;
  p.monomial_ = chebyshev_to_monomial(chebyshev, interval);
  p.chebyshev_ = std::move(chebyshev);
  p.error_ = error;
  p.lower_bound_ = lower_bound;
  p.alternation_ = std::move(alternation);
  p.residuals_ = std::move(residuals);
  p.iterations_ = iterations;
  return p;
}

ChebApprox ChebApprox::from_monomial(Interval interval, std::vector<double> monomial,
                                     double error) {
  if (!(interval.lo < interval.hi) || monomial.empty()) {
    throw std::domain_error("ChebApprox: need a < b and at least one coefficient");
  }
  ChebApprox p;
  p.interval_ = interval;
  p.monomial_ = std::move(monomial);
  p.error_ = error;
  p.lower_bound_ = error;
  return p;
}

double ChebApprox::operator()(double x) const {
  if (chebyshev_.empty()) {
    return eval_monomial(monomial_, x);
  }
  return clenshaw(chebyshev_, to_unit(interval_, x));
}

std::vector<double> chebyshev_grid(Interval iv, std::size_t n) {
  if (n < 2) {
    throw std::domain_error("chebyshev_grid: need at least two points");
  }
  std::vector<double> x(n);
  const double w = iv.width();
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::sin(std::numbers::pi * static_cast<double>(i) /
                              (2.0 * static_cast<double>(n - 1)));
    x[i] = iv.lo + w * s * s;
  }
  x.front() = iv.lo;
  x.back() = iv.hi;
  return x;
}

ChebApprox remez(const RealFunction& f, int degree, Interval iv, RemezOptions opts) {
  if (degree < 0) {
    throw std::domain_error("remez: degree must be nonnegative");
  }
  if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
    throw std::domain_error("remez: interval must satisfy a < b");
  }
  if (!(opts.tol > 0.0) || opts.max_iters < 1) {
    throw std::domain_error("remez: tol must be positive and max_iters at least 1");
  }

  const auto L = static_cast<std::size_t>(degree);
  const std::size_t nref = L + 2;
  const std::size_t scan = 32 * nref;
  const double xtol = 1e-12 * iv.width();

  std::vector<double> ref = chebyshev_grid(iv, nref);
  std::vector<double> cheb(L + 1);
  double lower = 0.0;
  double upper = 0.0;
  std::vector<Extremum> alt;

  Eigen::MatrixXd A(nref, nref);
  Eigen::VectorXd rhs(nref);

  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    for (std::size_t i = 0; i < nref; ++i) {
      const double t = to_unit(iv, ref[i]);
      double tm1 = 1.0;
      double tj = t;
      A(i, 0) = 1.0;
      if (L >= 1) {
        A(i, 1) = t;
      }
      for (std::size_t j = 2; j <= L; ++j) {
        const double next = 2.0 * t * tj - tm1;
        tm1 = tj;
        tj = next;
        A(i, j) = next;
      }
      A(i, L + 1) = (i % 2 == 0) ? 1.0 : -1.0;
      rhs(i) = checked(f, ref[i]);
    }
    const Eigen::VectorXd sol = A.partialPivLu().solve(rhs);
    for (std::size_t j = 0; j <= L; ++j) {
      cheb[j] = sol(j);
    }
    const double levelled = std::abs(sol(L + 1));
    double fmax = 0.0;
    for (std::size_t i = 0; i < nref; ++i) {
      fmax = std::max(fmax, std::abs(rhs(i)));
    }

    const Residual r(f, iv, cheb);
    const std::vector<double> grid = merged_grid(iv, scan, ref);
    const std::vector<Extremum> ext = local_extrema(r, grid, xtol);
    alt = alternating(ext);

    upper = 0.0;
    Extremum top{iv.lo, 0.0};
    for (const auto& e : ext) {
      if (std::abs(e.r) > upper) {
        upper = std::abs(e.r);
        top = e;
      }
    }

    // f is itself (numerically) a polynomial of this degree: the residual is
    // rounding noise and carries no alternation to level.
    if (upper <= 64.0 * std::numeric_limits<double>::epsilon() * fmax) {
      std::vector<double> xs;
      std::vector<double> rs;
      for (const auto& e : alt) {
        xs.push_back(e.x);
        rs.push_back(e.r);
      }
      return ChebApprox::from_chebyshev(iv, cheb, upper, std::move(xs), std::move(rs), 0.0, iter);
    }

    if (alt.size() >= nref) {
      trim_to(alt, nref);
      lower = std::abs(alt.front().r);
      for (const auto& e : alt) {
        lower = std::min(lower, std::abs(e.r));
      }
      const bool has_top = std::any_of(alt.begin(), alt.end(),
                                       [&](const Extremum& e) { return std::abs(e.r) == upper; });
      if (has_top && upper - lower <= opts.tol * upper) {
        std::vector<double> xs;
        std::vector<double> rs;
        for (const auto& e : alt) {
          xs.push_back(e.x);
          rs.push_back(e.r);
        }
        return ChebApprox::from_chebyshev(iv, cheb, upper, std::move(xs), std::move(rs), lower,
                                          iter);
      }
      if (has_top) {
        ref.clear();
        for (const auto& e : alt) {
          ref.push_back(e.x);
        }
        continue;
      }
    }
    lower = levelled;
    ref = single_exchange(r, std::move(ref), top);
  }

  std::vector<double> xs;
  std::vector<double> rs;
  for (const auto& e : alt) {
    xs.push_back(e.x);
    rs.push_back(e.r);
  }
  std::ostringstream msg;
  msg << "remez: no convergence after " << opts.max_iters << " iterations (degree " << degree
      << ", error in [" << lower << ", " << upper << "])";
  throw RemezError(msg.str(),
                   ChebApprox::from_chebyshev(iv, cheb, upper, std::move(xs), std::move(rs), lower,
                                              opts.max_iters),
                   lower, upper);
}

std::vector<double> rescale(std::span<const double> unit_coeffs, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::domain_error("rescale: right endpoint must be positive");
  }
  std::vector<double> out(unit_coeffs.size());
  DoubleDouble scale(s);  // s^(1-m), starting at m = 0
  const DoubleDouble inv = DoubleDouble(1.0) / DoubleDouble(s);
  for (std::size_t m = 0; m < unit_coeffs.size(); ++m) {
    out[m] = (DoubleDouble(unit_coeffs[m]) * scale).value();
    scale *= inv;
  }
  return out;
}

std::vector<double> rescale(const ChebApprox& p, double s) {
  if (p.interval() != Interval{0.0, 1.0}) {
    throw std::domain_error("rescale: approximant must live on [0, 1]");
  }
  return rescale(p.coeffs(), s);
}

ZeroedApprox zero_constant_term(std::span<const double> coeffs, double error) {
  ZeroedApprox z{std::vector<double>(coeffs.begin(), coeffs.end()), error};
  if (!z.coeffs.empty()) {
    z.error_bound = error + std::abs(z.coeffs[0]);
    z.coeffs[0] = 0.0;
  }
  return z;
}

ZeroedApprox zero_constant_term(const ChebApprox& p) {
  return zero_constant_term(p.coeffs(), p.error());
}

double eval_monomial(std::span<const double> coeffs, double x) {
  DoubleDouble acc(0.0);
  const DoubleDouble xx(x);
  for (std::size_t m = coeffs.size(); m-- > 0;) {
    acc = acc * xx + DoubleDouble(coeffs[m]);
  }
  return acc.value();
}

double sup_error(std::span<const double> coeffs, const RealFunction& f, Interval iv,
                 std::size_t grid_size) {
  if (grid_size < 1000) {
    throw std::domain_error("sup_error: grid must have at least 1000 points");
  }
  double worst = 0.0;
  for (double x : chebyshev_grid(iv, grid_size)) {
    worst = std::max(worst, std::abs(f(x) - eval_monomial(coeffs, x)));
  }
  return worst;
}

double sup_error(const ChebApprox& p, const RealFunction& f, std::size_t grid_size) {
  if (grid_size < 1000) {
    throw std::domain_error("sup_error: grid must have at least 1000 points");
  }
  double worst = 0.0;
  for (double x : chebyshev_grid(p.interval(), grid_size)) {
    worst = std::max(worst, std::abs(f(x) - p(x)));
  }
  return worst;
}

}  // namespace polyentropy
