// polyentropy command-line tool: simulate, remez, estimate, lowerbound.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "polyentropy/core.hpp"
#include "polyentropy/estimators.hpp"
#include "polyentropy/experiment.hpp"
#include "polyentropy/io.hpp"
#include "polyentropy/lowerbound.hpp"
#include "polyentropy/polyapprox.hpp"
#include "polyentropy/sampling.hpp"

using namespace polyentropy;

namespace {

struct EstimatorFlags {
  double c0 = 1.6;
  double c1 = 3.5;
  double c2 = 1.6;
  bool adaptive = false;
  bool no_clamp_upper = false;
  bool split = false;
  bool unseen_only = false;

  void add(CLI::App* app) {
    app->add_option("--c0", c0, "degree constant, L = floor(c0 log k)")->capture_default_str();
    app->add_option("--c1", c1, "interval constant, [0, c1 log k / n]")->capture_default_str();
    app->add_option("--c2", c2, "threshold constant, c2 log k")->capture_default_str();
    app->add_flag("--adaptive", adaptive, "use log n in place of log k and zero a_0");
    app->add_flag("--no-clamp-upper", no_clamp_upper, "do not clamp the estimate at log k");
    app->add_flag("--split", split, "thin the sample into selection and estimation halves");
    app->add_flag("--zero-unseen-only", unseen_only,
                  "adaptive mode: force g_L(0) = 0 instead of dropping a_0");
  }

  EstimatorConfig config() const {
    EstimatorConfig cfg;
    cfg.c0 = c0;
    cfg.c1 = c1;
    cfg.c2 = c2;
    cfg.adaptive = adaptive;
    cfg.clamp_upper = !no_clamp_upper;
    cfg.split = split;
    cfg.unseen = unseen_only ? EstimatorConfig::UnseenRule::zero_unseen_only
                             : EstimatorConfig::UnseenRule::zero_constant_term;
    cfg.validate();
    return cfg;
  }
};

// Writes to `path`, or standard output for "-".
template <class F>
void emit(const std::string& path, F&& write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  auto out = open_output(path);
  write(out);
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed for '" + path + "'");
  }
}

void write_measure(std::ostream& out, const std::string& name, const DiscreteMeasure& m) {
  out << "measure," << name << "\natom,weight\n";
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    out << format_real(m.atoms[i]) << ',' << format_real(m.weights[i]) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy estimation by best polynomial approximation"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "RMSE sweep over distributions and sample sizes");
  std::uint64_t sim_k = 10000;
  std::string sim_dists = "uniform,zipf:1,zipf:0.5,mix";
  std::string sim_grid = "100,300,500";
  std::uint64_t sim_trials = 50;
  std::string sim_methods = "poly,plugin,mm";
  std::string sim_sampling = "multinomial";
  std::uint64_t sim_seed = 0;
  std::string sim_out = "-";
  unsigned sim_threads = std::max(1u, std::thread::hardware_concurrency());
  bool sim_no_timing = false;
  EstimatorFlags sim_est;
  sim->add_option("--k", sim_k, "alphabet size")->capture_default_str();
  sim->add_option("--dists", sim_dists, "uniform, zipf:<alpha>, mix or file:<path>, comma separated")
      ->capture_default_str();
  sim->add_option("--n-grid", sim_grid, "comma list or geometric lo:hi:points")
      ->capture_default_str();
  sim->add_option("--trials", sim_trials)->capture_default_str();
  sim->add_option("--methods", sim_methods, "subset of poly,plugin,mm")->capture_default_str();
  sim->add_option("--sampling", sim_sampling, "multinomial or poissonized")->capture_default_str();
  sim->add_option("--seed", sim_seed)->capture_default_str();
  sim->add_option("--out", sim_out, "results CSV, - for standard output")->capture_default_str();
  sim->add_option("--threads", sim_threads)->capture_default_str();
  sim->add_flag("--no-timing", sim_no_timing, "write wall_time as 0 for byte-reproducible output");
  sim_est.add(sim);

  // remez
  auto* rz = app.add_subcommand("remez", "emit best-approximation coefficient tables");
  std::string rz_function = "phi";
  int rz_L = 18;
  std::optional<int> rz_L_max;
  std::optional<double> rz_a;
  double rz_b = 1.0;
  double rz_eta = 0.01;
  RemezOptions rz_opts;
  std::string rz_out = "-";
  rz->add_option("--function", rz_function, "phi (x log 1/x) or log")
      ->check(CLI::IsMember({"phi", "log"}))
      ->capture_default_str();
  rz->add_option("--L", rz_L, "degree")->capture_default_str();
  rz->add_option("--L-max", rz_L_max, "emit every degree from --L to this one");
  rz->add_option("--a", rz_a, "left endpoint (default 0 for phi, eta for log)");
  rz->add_option("--b", rz_b, "right endpoint")->capture_default_str();
  rz->add_option("--eta", rz_eta, "left endpoint for log")->capture_default_str();
  rz->add_option("--tol", rz_opts.tol, "relative levelling tolerance")->capture_default_str();
  rz->add_option("--max-iters", rz_opts.max_iters)->capture_default_str();
  rz->add_option("--out", rz_out)->capture_default_str();

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate the entropy of a histogram file");
  std::string est_input;
  std::optional<std::uint64_t> est_k;
  std::optional<std::uint64_t> est_n;
  std::string est_method = "poly";
  std::uint64_t est_seed = 0;
  bool est_bits = false;
  EstimatorFlags est_flags;
  est->add_option("--input", est_input, "histogram file (symbol_id,count)")->required();
  est->add_option("--k", est_k, "alphabet size (default: largest symbol id + 1)");
  est->add_option("--n", est_n, "sample size (default: histogram total)");
  est->add_option("--method", est_method)
      ->check(CLI::IsMember({"poly", "plugin", "mm"}))
      ->capture_default_str();
  est->add_option("--seed", est_seed, "seed for --split thinning")->capture_default_str();
  est->add_flag("--bits", est_bits, "report bits instead of nats");
  est_flags.add(est);

  // lowerbound
  auto* lb = app.add_subcommand("lowerbound", "moment-matched priors and their diagnostics");
  int lb_L = 10;
  double lb_eta = 0.01;
  double lb_alpha = 0.5;
  std::string lb_emit = "pair";
  std::vector<double> lb_M;
  std::vector<int> lb_L_values{10, 20, 40};
  double lb_c = 0.2;
  std::string lb_out = "-";
  lb->add_option("--L", lb_L)->capture_default_str();
  lb->add_option("--eta", lb_eta)->capture_default_str();
  lb->add_option("--alpha", lb_alpha)->capture_default_str();
  lb->add_option("--emit", lb_emit)
      ->check(CLI::IsMember({"pair", "prior", "tv", "scan"}))
      ->capture_default_str();
  lb->add_option("--M", lb_M, "tv: Poisson scale values M = s * lambda (default 0.1, 0.5 of L/(2e))")
      ->delimiter(',');
  lb->add_option("--L-values", lb_L_values, "scan: degrees L")->delimiter(',');
  lb->add_option("--c", lb_c, "scan: degree fraction, errors of E_(cL)(log, [L^-2, 1])")
      ->capture_default_str();
  lb->add_option("--out", lb_out)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      ExperimentSpec spec;
      spec.k = sim_k;
      spec.dists = parse_dists(sim_dists, sim_k);
      spec.n_grid = parse_n_grid(sim_grid);
      spec.trials = sim_trials;
      spec.methods = parse_methods(sim_methods);
      spec.sampling = parse_sampling(sim_sampling);
      spec.seed = sim_seed;
      spec.threads = sim_threads;
      spec.config = sim_est.config();
      const auto rows = run_experiment(spec);
      for (const auto& r : rows) {
        if (!r.error.empty()) {
          std::cerr << "warning: " << r.dist << " n=" << r.n << " " << to_string(r.method)
                    << " failed: " << r.error << '\n';
        }
      }
      emit(sim_out, [&](std::ostream& out) { write_results(out, rows, !sim_no_timing); });
    } else if (*rz) {
      const bool is_phi = rz_function == "phi";
      const Interval iv{rz_a.value_or(is_phi ? 0.0 : rz_eta), rz_b};
      const RealFunction f = is_phi ? RealFunction([](double x) { return phi(x); })
                                    : RealFunction([](double x) { return std::log(x); });
      const int last = rz_L_max.value_or(rz_L);
      if (rz_L < 0 || last < rz_L) {
        throw std::invalid_argument("need 0 <= --L <= --L-max");
      }
      emit(rz_out, [&](std::ostream& out) {
        for (int L = rz_L; L <= last; ++L) {
          if (L > rz_L) {
            out << '\n';
          }
          write_coefficient_table(out, to_table(remez(f, L, iv, rz_opts)));
        }
      });
    } else if (*est) {
      Histogram h = read_histogram_file(est_input, est_k);
      const std::uint64_t k = est_k.value_or(h.k());
      std::uint64_t n = est_n.value_or(h.n());
      const EstimatorConfig cfg = est_flags.config();
      double value = 0.0;
      if (est_method == "plugin") {
        value = plugin_entropy(h);
      } else if (est_method == "mm") {
        value = miller_madow(h);
      } else {
        std::optional<Histogram> selector;
        if (cfg.split) {
          auto halves = split_histogram(h, Seed{est_seed, 0});
          h = std::move(halves.first);
          selector = std::move(halves.second);
          n /= 2;
        }
        const auto table = make_poly_table(k, n, cfg);
        value = poly_entropy_estimate(h, selector ? &*selector : nullptr, k, n, cfg, table);
      }
      std::cout << "method," << (est_bits ? "estimate_bits" : "estimate_nats") << '\n'
                << est_method << ',' << format_real(est_bits ? value / std::numbers::ln2 : value)
                << '\n';
    } else if (*lb) {
      emit(lb_out, [&](std::ostream& out) {
        if (lb_emit == "scan") {
          out << "L,error\n";
          for (const auto& row : log_lb_constant_scan(lb_L_values, lb_c)) {
            out << row.L << ',' << format_real(row.error) << '\n';
          }
          return;
        }
        const auto pair = build_moment_matched_pair(lb_L, lb_eta);
        if (lb_emit == "pair") {
          out << "L,eta,separation,error\n"
              << pair.L << ',' << format_real(pair.eta) << ',' << format_real(pair.separation)
              << ',' << format_real(pair.approx_error) << "\n\n";
          write_measure(out, "X", pair.X);
          out << '\n';
          write_measure(out, "Xprime", pair.Xprime);
          return;
        }
        const auto prior = change_of_measure(pair, lb_alpha);
        if (lb_emit == "prior") {
          out << "alpha,lambda\n"
              << format_real(prior.alpha) << ',' << format_real(prior.lambda_max) << "\n\n";
          write_measure(out, "U", prior.U);
          out << '\n';
          write_measure(out, "Uprime", prior.Uprime);
          return;
        }
        std::vector<double> Ms = lb_M;
        if (Ms.empty()) {
          const double unit = lb_L / (2.0 * std::numbers::e);
          Ms = {0.1 * unit, 0.5 * unit};
        }
        out << "M,scale,tv,truncation,bound\n";
        for (double M : Ms) {
          const double s = M / prior.lambda_max;
          const auto tv = poisson_mixture_tv(prior.U, prior.Uprime, s);
          const double bound = std::pow(2.0 * std::numbers::e * M / lb_L, lb_L);
          out << format_real(M) << ',' << format_real(s) << ',' << format_real(tv.value) << ','
              << format_real(tv.truncation) << ',' << format_real(bound) << '\n';
        }
      });
    }
  } catch (const RemezError& e) {
    std::cerr << "error: " << e.what() << " (bounds " << e.lower() << " <= E <= " << e.upper()
              << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
