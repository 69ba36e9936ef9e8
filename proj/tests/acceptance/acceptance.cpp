// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails. Arguments select a subset by number.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "polyentropy/core.hpp"
#include "polyentropy/estimators.hpp"
#include "polyentropy/experiment.hpp"
#include "polyentropy/lowerbound.hpp"
#include "polyentropy/polyapprox.hpp"
#include "polyentropy/random.hpp"
#include "polyentropy/sampling.hpp"
#include "support.hpp"

using namespace polyentropy;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures and a short summary.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (failures_++ < 4) {
        fail_ << (fail_.tellp() > 0 ? "; " : "") << what;
      }
    }
  }
  void note(const std::string& s) { note_ << (note_.tellp() > 0 ? ", " : "") << s; }
  Outcome done() const {
    std::string d = note_.str();
    if (!pass_) {
      d += (d.empty() ? "" : " | ") + std::string("failed: ") + fail_.str();
      if (failures_ > 4) {
        d += " (+" + std::to_string(failures_ - 4) + " more)";
      }
    }
    return {pass_, d};
  }

 private:
  bool pass_ = true;
  int failures_ = 0;
  std::ostringstream fail_;
  std::ostringstream note_;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const RealFunction kPhi = [](double x) { return phi(x); };

Outcome equioscillation() {
  Check c;
  for (int L : {6, 18, 30}) {
    const auto p = remez(kPhi, L, Interval{0.0, 1.0});
    const auto r = p.residuals();
    const double E = p.error();
    bool ok = r.size() == static_cast<std::size_t>(L) + 2;
    double worst = 0;
    for (std::size_t i = 0; ok && i < r.size(); ++i) {
      worst = std::max(worst, std::abs(std::abs(r[i]) - E) / E);
      if (i > 0 && r[i] * r[i - 1] >= 0) {
        ok = false;
      }
    }
    c.require(ok, "L=" + std::to_string(L) + " residual signs do not alternate");
    c.require(worst <= 1e-9, "L=" + std::to_string(L) + " levelling " + sci(worst));
    const double grid = sup_error(p, kPhi, 100000);
    c.require(grid <= E * (1 + 1e-7), "L=" + std::to_string(L) + " grid sup exceeds E");
    c.note("L=" + std::to_string(L) + " spread " + sci(worst) + " grid/E-1 " + sci(grid / E - 1));
  }
  return c.done();
}

Outcome constant_term() {
  Check c;
  for (int L : {6, 18, 30}) {
    const auto p = remez(kPhi, L, Interval{0.0, 1.0});
    const double d = std::abs(p.coeffs()[0] - p.error());
    c.require(d <= 1e-9, "L=" + std::to_string(L) + " |a0-E|=" + sci(d));
    c.note("L=" + std::to_string(L) + " |a0-E| " + sci(d));
  }
  return c.done();
}

Outcome approximation_rate() {
  Check c;
  std::vector<double> v;
  for (int L : {10, 20, 40}) {
    v.push_back(L * L * remez(kPhi, L, Interval{0.0, 1.0}).error());
    c.note("L=" + std::to_string(L) + " L^2E " + sci(v.back()));
  }
  const double ratio = *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
  c.require(ratio <= 1.15, "ratio " + sci(ratio));
  c.note("ratio " + sci(ratio));
  return c.done();
}

Outcome unbiasedness() {
  Check c;
  EstimatorConfig cfg;
  const std::uint64_t k = 10000, n = 1000;
  const auto t = make_poly_table(k, n, cfg);
  const double right = t.s / static_cast<double>(n);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const double p = right * i / 49.0;
    const double e = testing_support::expected_poly_term(t, static_cast<double>(n) * p);
    worst = std::max(worst, std::abs(e - t.implied(p)));
  }
  c.require(worst <= 1e-8, "max deviation " + sci(worst));
  c.note("L=" + std::to_string(t.degree) + " max |E g - P_L| " + sci(worst));
  return c.done();
}

Outcome estimator_range() {
  Check c;
  EstimatorConfig cfg;
  std::mt19937_64 gen(2718);
  int cases = 0;
  for (std::uint64_t k : {2u, 3u, 17u, 100u, 5000u}) {
    for (std::uint64_t n : {1u, 7u, 100u, 10000u}) {
      const auto t = make_poly_table(k, n, cfg);
      const double logk = std::log(static_cast<double>(k));
      for (int rep = 0; rep < 40; ++rep) {
        std::vector<std::uint64_t> counts(k, 0);
        switch (rep % 4) {
          case 0:
            break;  // nothing observed
          case 1: {
            std::geometric_distribution<std::uint64_t> g(0.5);
            for (auto& x : counts) {
              x = g(gen);
            }
            break;
          }
          case 2: {
            std::uniform_int_distribution<std::uint64_t> u(0, 3 * n + 50);
            for (auto& x : counts) {
              x = u(gen);
            }
            break;
          }
          default:
            counts[gen() % k] = n;
        }
        const double e = poly_entropy_estimate(Histogram(counts), nullptr, k, n, cfg, t);
        c.require(e >= 0.0 && e <= logk, "k=" + std::to_string(k) + " n=" + std::to_string(n) +
                                             " estimate " + sci(e));
        ++cases;
      }
    }
  }
  c.note(std::to_string(cases) + " histograms");
  return c.done();
}

Outcome plugin_bias() {
  Check c;
  const double b = plugin_bias_probe(Distribution::uniform(100), 1000, 100000, Seed{6, 0});
  const double target = -99.0 / 2000.0;
  const double rel = std::abs(b - target) / std::abs(target);
  c.require(rel <= 0.2, "bias " + sci(b));
  c.note("bias " + sci(b) + " vs " + sci(target) + " (rel " + sci(rel) + ")");
  return c.done();
}

ExperimentSpec desk_sweep(unsigned threads) {
  ExperimentSpec spec;
  spec.k = 10000;
  spec.dists = parse_dists("uniform,zipf:1,zipf:0.5,mix", spec.k);
  spec.n_grid = {100, 300, 500};
  spec.trials = 50;
  spec.methods = {Method::poly, Method::plugin, Method::mm};
  spec.threads = threads;
  return spec;
}

unsigned many_threads() { return std::max(4u, std::thread::hardware_concurrency()); }

Outcome desk_replication() {
  Check c;
  const auto rows = run_experiment(desk_sweep(many_threads()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].method != Method::poly) {
      continue;
    }
    const ResultRow* mm = nullptr;
    for (const auto& r : rows) {
      if (r.dist == rows[i].dist && r.n == rows[i].n && r.method == Method::mm) {
        mm = &r;
      }
    }
    const std::string cell = rows[i].dist + "@" + std::to_string(rows[i].n);
    c.require(mm != nullptr && rows[i].rmse < mm->rmse,
              cell + " poly " + sci(rows[i].rmse) + " >= mm " + sci(mm ? mm->rmse : NAN));
    if (rows[i].dist == "uniform" && rows[i].n == 500) {
      c.require(rows[i].rmse <= 0.5 * mm->rmse, "uniform@500 poly not below half of mm");
      c.note("uniform@500 poly/mm " + sci(rows[i].rmse / mm->rmse));
    }
    if (rows[i].dist == "zipf:1" && rows[i].n == 100) {
      c.note("zipf:1@100 poly/mm " + sci(rows[i].rmse / mm->rmse));
    }
  }
  return c.done();
}

Outcome moment_matching() {
  Check c;
  const auto pair = build_moment_matched_pair(10, 0.01);
  double worst = 0;
  for (int j = 1; j <= 10; ++j) {
    worst = std::max(worst, std::abs(pair.X.moment(j) - pair.Xprime.moment(j)));
  }
  c.require(worst <= 1e-9, "X moments differ by " + sci(worst));
  const double E = remez([](double x) { return std::log(x); }, 10, Interval{0.01, 1.0}).error();
  const double rel = std::abs(pair.separation - 2 * E) / (2 * E);
  c.require(rel <= 1e-8, "separation off by " + sci(rel));
  const auto pp = change_of_measure(pair, 0.5);
  double worst_u = 0;
  for (int j = 1; j <= 11; ++j) {
    const double scale = std::max({1.0, pp.U.moment(j), pp.Uprime.moment(j)});
    worst_u = std::max(worst_u, std::abs(pp.U.moment(j) - pp.Uprime.moment(j)) / scale);
  }
  c.require(worst_u <= 1e-9, "U moments differ by " + sci(worst_u) + " relative");
  const auto phi_fn = [](double u) { return phi(u); };
  const double gap = pp.U.expect(phi_fn) - pp.Uprime.expect(phi_fn);
  c.require(std::abs(gap - 0.5 * pair.separation) <= 1e-9, "phi gap " + sci(gap));
  c.note("X gap " + sci(worst) + ", sep rel " + sci(rel) + ", U rel gap " + sci(worst_u) +
         ", phi gap err " + sci(std::abs(gap - 0.5 * pair.separation)));
  return c.done();
}

Outcome tv_bound() {
  Check c;
  const auto pp = change_of_measure(build_moment_matched_pair(10, 0.01), 0.5);
  const int L = 10;
  for (double frac : {0.1, 0.5}) {
    const double M = frac * L / (2 * std::numbers::e);
    const auto tv = poisson_mixture_tv(pp.U, pp.Uprime, M / pp.lambda_max);
    const double bound = std::pow(2 * std::numbers::e * M / L, L);
    c.require(tv.value <= bound + 1e-12, "M frac " + sci(frac) + " tv " + sci(tv.value));
    c.note("tv " + sci(tv.value) + " <= " + sci(bound));
  }
  return c.done();
}

Outcome two_point() {
  Check c;
  const auto t = two_point_pair(101, 100);
  c.require(std::abs(t.kl - 0.0024254) <= 1e-6, "kl " + sci(t.kl));
  c.require(t.kl <= t.eps * t.eps, "kl above eps^2");
  const double rhs = std::log(2.0 * 100) * t.eps / 3 - t.eps * t.eps;
  c.require(t.gap >= rhs, "gap " + sci(t.gap) + " < " + sci(rhs));
  c.note("kl " + sci(t.kl) + ", gap " + sci(t.gap) + " >= " + sci(rhs));
  return c.done();
}

Outcome factorial_variance() {
  Check c;
  CounterRng rng(Seed{11, 0});
  for (double lam : {0.5, 3.0, 10.0}) {
    std::vector<std::uint64_t> draws(1000000);
    for (auto& x : draws) {
      x = poisson_variate(rng, lam);
    }
    for (int m : {1, 2, 4}) {
      const double closed = factorial_moment_variance(lam, m);
      // exact second moment by a truncated sum
      long double second = 0;
      for (std::uint64_t j = 0; j < 400; ++j) {
        long double ff = 1;
        for (int i = 0; i < m; ++i) {
          ff *= static_cast<long double>(j) - i;
        }
        second += ff * ff * testing_support::poisson_pmf(lam, j);
      }
      const double exact =
          static_cast<double>(second - std::pow(static_cast<long double>(lam), 2 * m));
      c.require(std::abs(closed - exact) <= 1e-9 * exact,
                "lam " + sci(lam) + " m " + std::to_string(m) + " exact-sum mismatch");
      // Monte Carlo: sample variance with its standard error from the 4th central moment.
      long double s1 = 0;
      for (auto x : draws) {
        s1 += static_cast<long double>(falling_factorial(x, static_cast<std::uint64_t>(m)));
      }
      const long double mean = s1 / draws.size();
      long double s2 = 0, s4 = 0;
      for (auto x : draws) {
        const long double d =
            static_cast<long double>(falling_factorial(x, static_cast<std::uint64_t>(m))) - mean;
        s2 += d * d;
        s4 += d * d * d * d;
      }
      const long double N = draws.size();
      const long double var = s2 / (N - 1);
      const long double m4 = s4 / N;
      const double se = static_cast<double>(std::sqrt((m4 - var * var) / N));
      c.require(std::abs(static_cast<double>(var) - closed) <= 5 * se,
                "lam " + sci(lam) + " m " + std::to_string(m) + " Monte Carlo " +
                    sci(static_cast<double>(var)) + " vs " + sci(closed));
    }
  }
  bool monotone = true;
  for (int m : {1, 2, 4}) {
    double prev = -1;
    for (int i = 0; i <= 300; ++i) {
      const double v = factorial_moment_variance(0.05 * i, m);
      monotone = monotone && v >= prev;
      prev = v;
    }
  }
  c.require(monotone, "not monotone in lambda");
  c.note("9 (lambda, m) cells, 10^6 draws each");
  return c.done();
}

Outcome constant_scan() {
  Check c;
  const std::vector<int> Ls{10, 20, 40};
  const auto rows = log_lb_constant_scan(Ls, 0.2);
  double lo = INFINITY, hi = 0;
  for (const auto& r : rows) {
    lo = std::min(lo, r.error);
    hi = std::max(hi, r.error);
    c.note("L=" + std::to_string(r.L) + " " + sci(r.error));
  }
  c.require(lo >= 0.05, "min error " + sci(lo));
  c.require(hi / lo <= 2, "ratio " + sci(hi / lo));
  return c.done();
}

Outcome reproducibility() {
  Check c;
  const auto render = [](unsigned threads) {
    std::ostringstream os;
    write_results(os, run_experiment(desk_sweep(threads)), false);
    return os.str();
  };
  const std::string a = render(1);
  const std::string b = render(many_threads());
  const std::string d = render(many_threads());
  c.require(a == b, "1 worker and " + std::to_string(many_threads()) + " workers differ");
  c.require(b == d, "repeated runs differ");
  c.note(std::to_string(a.size()) + " bytes, workers 1 and " + std::to_string(many_threads()));
  return c.done();
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "remez equioscillation", 5, equioscillation},
      {2, "constant term equals error", 1, constant_term},
      {3, "approximation rate L^2 E_L", 10, approximation_rate},
      {4, "polynomial term unbiasedness", 5, unbiasedness},
      {5, "estimator range", 5, estimator_range},
      {6, "plug-in bias", 30, plugin_bias},
      {7, "desk-scale comparison with Miller-Madow", 120, desk_replication},
      {8, "moment matching and change of measure", 5, moment_matching},
      {9, "Poisson mixture TV bound", 5, tv_bound},
      {10, "two-point pair", 1, two_point},
      {11, "factorial-moment variance", 30, factorial_variance},
      {12, "log lower-bound constant scan", 10, constant_scan},
      {13, "sweep reproducibility", 120, reproducibility},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    only.insert(std::atoi(argv[i]));
  }
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_seconds) {
      o.pass = false;
      o.detail += " | over time budget " + sci(c.budget_seconds) + " s";
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %2d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d failed\n", failed);
  return failed == 0 ? 0 : 1;
}
