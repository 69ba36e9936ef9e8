#include "polyentropy/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace polyentropy {

double DiscreteMeasure::expect(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    s += weights[i] * f(atoms[i]);
  }
  return s;
}

double DiscreteMeasure::moment(int j) const {
  return expect([j](double x) { return std::pow(x, j); });
}

double DiscreteMeasure::total_weight() const {
  double s = 0.0;
  for (double w : weights) {
    s += w;
  }
  return s;
}

void DiscreteMeasure::validate(double lo, double hi) const {
  if (atoms.size() != weights.size() || atoms.empty()) {
    throw std::domain_error("discrete measure: atoms and weights must be nonempty and aligned");
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(weights[i] >= 0.0)) {
      throw std::domain_error("discrete measure: negative weight");
    }
    if (!(atoms[i] >= lo && atoms[i] <= hi)) {
      throw std::domain_error("discrete measure: atom outside the support interval");
    }
  }
  if (std::abs(total_weight() - 1.0) > 1e-12) {
    throw std::domain_error("discrete measure: weights do not sum to 1");
  }
}

MomentMatchedPair build_moment_matched_pair(int L, double eta, RemezOptions opts) {
  if (L < 1) {
    throw std::domain_error("moment matching needs L >= 1");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::domain_error("moment matching needs 0 < eta < 1");
  }
  const ChebApprox p = remez([](double x) { return std::log(x); }, L, Interval{eta, 1.0}, opts);
  const auto x = p.alternation();
  const auto r = p.residuals();
  const std::size_t n = x.size();
  if (n != static_cast<std::size_t>(L) + 2) {
    throw std::domain_error("moment matching: expected L+2 alternation points");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (x[i] - x[i - 1] < 1e-10 * (1.0 - eta)) {
      std::ostringstream msg;
      msg << "moment matching: alternation points " << x[i - 1] << " and " << x[i]
          << " are too close";
      throw std::domain_error(msg.str());
    }
  }

  // log |b_i| and sign, normalized by the largest magnitude before exponentiating.
  std::vector<double> logmag(n, 0.0);
  std::vector<double> sign(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t v = 0; v < n; ++v) {
      if (v == i) {
        continue;
      }
      logmag[i] -= std::log(std::abs(x[i] - x[v]));
      if (v > i) {
        sign[i] = -sign[i];
      }
    }
  }
  const double top = *std::max_element(logmag.begin(), logmag.end());
  std::vector<double> mag(n);
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mag[i] = std::exp(logmag[i] - top);
    norm += mag[i];
  }

  MomentMatchedPair out;
  out.L = L;
  out.eta = eta;
  out.approx_error = p.error();
  out.alternation.assign(x.begin(), x.end());
  out.signed_weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 2.0 * mag[i] / norm;
    out.signed_weights[i] = sign[i] * w;
    DiscreteMeasure& target = r[i] < 0.0 ? out.X : out.Xprime;
    target.atoms.push_back(x[i]);
    target.weights.push_back(w);
  }
  const auto neg_log = [](double v) { return -std::log(v); };
  out.separation = out.X.expect(neg_log) - out.Xprime.expect(neg_log);
  out.X.validate(eta, 1.0);
  out.Xprime.validate(eta, 1.0);
  return out;
}

DiscreteMeasure change_of_measure(const DiscreteMeasure& X, double eta, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::domain_error("change of measure needs 0 < alpha <= 1");
  }
  if (!(eta > 0.0)) {
    throw std::domain_error("change of measure needs eta > 0");
  }
  DiscreteMeasure U;
  double moved = 0.0;
  for (std::size_t i = 0; i < X.atoms.size(); ++i) {
    const double w = eta / X.atoms[i] * X.weights[i];
    moved += w;
    U.atoms.push_back(alpha * X.atoms[i] / eta);
    U.weights.push_back(w);
  }
  U.atoms.insert(U.atoms.begin(), 0.0);
  U.weights.insert(U.weights.begin(), std::max(0.0, 1.0 - moved));
  return U;
}

PriorPair change_of_measure(const MomentMatchedPair& pair, double alpha) {
  PriorPair pp;
  pp.U = change_of_measure(pair.X, pair.eta, alpha);
  pp.Uprime = change_of_measure(pair.Xprime, pair.eta, alpha);
  pp.alpha = alpha;
  pp.lambda_max = alpha / pair.eta;
  return pp;
}

namespace {

double poisson_pmf(double mean, std::uint64_t j) {
  if (mean == 0.0) {
    return j == 0 ? 1.0 : 0.0;
  }
  const double jd = static_cast<double>(j);
  return std::exp(-mean + jd * std::log(mean) - std::lgamma(jd + 1.0));
}

double mixture_pmf(const DiscreteMeasure& m, double s, std::uint64_t j) {
  double p = 0.0;
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    p += m.weights[i] * poisson_pmf(s * m.atoms[i], j);
  }
  return p;
}

double max_atom(const DiscreteMeasure& m) {
  return m.atoms.empty() ? 0.0 : *std::max_element(m.atoms.begin(), m.atoms.end());
}

}  // namespace

MixtureTv poisson_mixture_tv(const DiscreteMeasure& U, const DiscreteMeasure& Uprime, double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw std::domain_error("mixture TV needs a finite scale s >= 0");
  }
  const double top = s * std::max(max_atom(U), max_atom(Uprime));
  constexpr double kTail = 1e-15;
  double sum = 0.0;
  for (std::uint64_t j = 0;; ++j) {
    const double a = mixture_pmf(U, s, j);
    const double b = mixture_pmf(Uprime, s, j);
    sum += std::abs(a - b);
    // Past the largest mean every atom's pmf ratio is at most r, so the rest
    // of each mixture is at most pmf(j) r / (1 - r).
    const double r = top / static_cast<double>(j + 1);
    if (r < 0.5) {
      const double ta = a * r / (1.0 - r);
      const double tb = b * r / (1.0 - r);
      if (ta < kTail && tb < kTail) {
        return {0.5 * sum, 0.5 * (ta + tb)};
      }
    }
  }
}

TwoPoint two_point_pair_eps(std::uint64_t k, double eps) {
  if (k < 2) {
    throw std::domain_error("two-point pair needs k >= 2");
  }
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw std::domain_error("two-point pair needs 0 <= eps < 1");
  }
  const double km1 = static_cast<double>(k - 1);
  std::vector<double> p(k, 1.0 / (3.0 * km1));
  std::vector<double> q(k, (1.0 + eps) / (3.0 * km1));
  p.back() = 2.0 / 3.0;
  q.back() = (2.0 - eps) / 3.0;
  TwoPoint t{Distribution(std::move(p)), Distribution(std::move(q)), eps, 0.0, 0.0};
  t.kl = 2.0 / 3.0 * std::log(2.0 / (2.0 - eps)) + 1.0 / 3.0 * std::log(1.0 / (1.0 + eps));
  t.gap = entropy(t.Q) - entropy(t.P);
  return t;
}

TwoPoint two_point_pair(std::uint64_t k, std::uint64_t n) {
  if (n < 2) {
    throw std::domain_error("two-point pair needs n >= 2 so that 1/sqrt(n) < 1");
  }
  return two_point_pair_eps(k, 1.0 / std::sqrt(static_cast<double>(n)));
}

double factorial_moment_variance(double lambda, int m) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("factorial moment variance needs finite lambda >= 0");
  }
  if (m < 1) {
    throw std::domain_error("factorial moment variance needs m >= 1");
  }
  // term_i = C(m, i) lambda^i / i!
  double term = 1.0;
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    sum += term;
    term *= static_cast<double>(m - i) / static_cast<double>(i + 1) * lambda /
            static_cast<double>(i + 1);
  }
  double lead = 1.0;
  for (int i = 1; i <= m; ++i) {
    lead *= lambda * static_cast<double>(i);
  }
  return lead * sum;
}

PriorDraw sample_prior_vector(const PriorPair& pp, std::uint64_t k, Seed seed) {
  if (k < 2) {
    throw std::domain_error("prior vector needs k >= 2");
  }
  const auto& U = pp.U;
  std::vector<double> cdf(U.weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    acc += U.weights[i];
    cdf[i] = acc;
  }
  CounterRng rng(seed);
  PriorDraw d;
  d.probs.resize(k + 1);
  const double kd = static_cast<double>(k);
  for (std::uint64_t i = 0; i < k; ++i) {
    const double u = rng.uniform() * acc;
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) {
      --it;
    }
    d.probs[i] = U.atoms[static_cast<std::size_t>(it - cdf.begin())] / kd;
  }
  d.probs[k] = 1.0 - pp.alpha;
  for (double v : d.probs) {
    d.total_mass += v;
    d.functional += phi(v);
  }
  return d;
}

std::vector<ScanRow> log_lb_constant_scan(std::span<const int> L_values, double c,
                                          RemezOptions opts) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::domain_error("constant scan needs c in [0, 1]");
  }
  std::vector<ScanRow> rows;
  for (int L : L_values) {
    if (L < 2) {
      throw std::domain_error("constant scan needs L >= 2");
    }
    ScanRow row;
    row.L = L;
    row.degree = static_cast<int>(std::floor(c * L));
    row.eta = 1.0 / (static_cast<double>(L) * static_cast<double>(L));
    row.error =
        remez([](double x) { return std::log(x); }, row.degree, Interval{row.eta, 1.0}, opts).error();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace polyentropy
