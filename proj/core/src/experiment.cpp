#include "polyentropy/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "polyentropy/io.hpp"
#include "polyentropy/sampling.hpp"

namespace polyentropy {
namespace {

std::vector<std::string_view> split_list(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) {
      return out;
    }
    start = pos + 1;
  }
}

template <class T>
T parse_value(std::string_view text, std::string_view what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct TrialResult {
  std::vector<double> estimate;  // per method
  std::vector<double> seconds;   // per method, sampling included
  std::vector<std::string> error;
};

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::poly:
      return "poly";
    case Method::plugin:
      return "plugin";
    case Method::mm:
      return "mm";
  }
  return "?";
}

std::string_view to_string(SamplingModel s) {
  return s == SamplingModel::multinomial ? "multinomial" : "poissonized";
}

Method parse_method(std::string_view text) {
  if (text == "poly") {
    return Method::poly;
  }
  if (text == "plugin") {
    return Method::plugin;
  }
  if (text == "mm") {
    return Method::mm;
  }
  throw std::invalid_argument("unknown method '" + std::string(text) +
                              "' (expected poly, plugin or mm)");
}

SamplingModel parse_sampling(std::string_view text) {
  if (text == "multinomial") {
    return SamplingModel::multinomial;
  }
  if (text == "poissonized") {
    return SamplingModel::poissonized;
  }
  throw std::invalid_argument("unknown sampling model '" + std::string(text) +
                              "' (expected multinomial or poissonized)");
}

void ExperimentSpec::validate() const {
  if (dists.empty()) {
    throw std::domain_error("experiment needs at least one distribution");
  }
  if (n_grid.empty()) {
    throw std::domain_error("experiment needs a nonempty n grid");
  }
  for (auto n : n_grid) {
    if (n == 0) {
      throw std::domain_error("sample sizes must be positive");
    }
  }
  if (trials == 0) {
    throw std::domain_error("experiment needs trials >= 1");
  }
  if (methods.empty()) {
    throw std::domain_error("experiment needs at least one method");
  }
  for (const auto& d : dists) {
    if (d.dist.k() != k) {
      throw std::domain_error("distribution '" + d.label + "' has " +
                              std::to_string(d.dist.k()) + " symbols, expected k = " +
                              std::to_string(k));
    }
  }
  config.validate();
}

Seed derive_seed(std::uint64_t base, std::uint64_t dist_index, std::uint64_t n_index,
                 std::uint64_t trial) {
  if (dist_index >= (1u << 16) || n_index >= (1u << 16) || trial >= (1ull << 32)) {
    throw std::out_of_range("derive_seed: index exceeds its stream field");
  }
  return Seed{base, dist_index << 48 | n_index << 32 | trial};
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const std::size_t nd = spec.dists.size();
  const std::size_t nn = spec.n_grid.size();
  const std::size_t nm = spec.methods.size();
  const std::uint64_t trials = spec.trials;
  const bool split = spec.config.split;

  std::vector<double> truth(nd);
  for (std::size_t d = 0; d < nd; ++d) {
    truth[d] = entropy(spec.dists[d].dist);
  }

  // Estimator sample size and polynomial table per grid point.
  std::vector<std::uint64_t> est_n(nn);
  std::vector<std::optional<PolyEstimatorTable>> tables(nn);
  std::vector<std::string> table_error(nn);
  const bool want_poly = std::find(spec.methods.begin(), spec.methods.end(), Method::poly) !=
                         spec.methods.end();
  for (std::size_t i = 0; i < nn; ++i) {
    est_n[i] = split ? spec.n_grid[i] / 2 : spec.n_grid[i];
    if (!want_poly) {
      continue;
    }
    try {
      tables[i] = make_poly_table(spec.k, std::max<std::uint64_t>(est_n[i], 1), spec.config);
    } catch (const std::exception& e) {
      table_error[i] = e.what();
    }
  }

  const std::size_t tasks = nd * nn * static_cast<std::size_t>(trials);
  std::vector<TrialResult> results(tasks);

  const auto run_task = [&](std::size_t task) {
    const std::size_t d = task / (nn * trials);
    const std::size_t i = (task / trials) % nn;
    const std::uint64_t t = task % trials;
    const Seed seed = derive_seed(spec.seed, d, i, t);
    const Distribution& dist = spec.dists[d].dist;
    const std::uint64_t n = spec.n_grid[i];
    TrialResult& out = results[task];
    out.estimate.assign(nm, std::numeric_limits<double>::quiet_NaN());
    out.seconds.assign(nm, 0.0);
    out.error.assign(nm, {});

    const auto t0 = std::chrono::steady_clock::now();
    Histogram sample = spec.sampling == SamplingModel::multinomial
                           ? sample_multinomial(dist, n, seed)
                           : sample_poissonized(dist, static_cast<double>(n), seed);
    Histogram selector;
    if (split) {
      // The thinning coins use a second key, independent of the sampling draws.
      auto halves = split_histogram(sample, Seed{seed.base ^ 0x5851F42D4C957F2Dull, seed.stream});
      sample = std::move(halves.first);
      selector = std::move(halves.second);
    }
    const double sampling_seconds = seconds_since(t0);

    for (std::size_t m = 0; m < nm; ++m) {
      const auto t1 = std::chrono::steady_clock::now();
      try {
        switch (spec.methods[m]) {
          case Method::poly:
            if (!tables[i]) {
              throw std::runtime_error(table_error[i]);
            }
            out.estimate[m] = poly_entropy_estimate(sample, split ? &selector : nullptr, spec.k,
                                                    est_n[i], spec.config, *tables[i]);
            break;
          case Method::plugin:
            out.estimate[m] = plugin_entropy(sample);
            break;
          case Method::mm:
            out.estimate[m] = miller_madow(sample);
            break;
        }
      } catch (const std::exception& e) {
        out.error[m] = e.what();
      }
      out.seconds[m] = sampling_seconds + seconds_since(t1);
    }
  };

  const auto workers = static_cast<unsigned>(
      std::clamp<std::size_t>(spec.threads, 1, std::max<std::size_t>(tasks, 1)));
  if (workers == 1) {
    for (std::size_t task = 0; task < tasks; ++task) {
      run_task(task);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t task; (task = next.fetch_add(1)) < tasks;) {
          try {
            run_task(task);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
              failure = std::current_exception();
            }
          }
        }
      });
    }
    for (auto& th : pool) {
      th.join();
    }
    if (failure) {
      std::rethrow_exception(failure);
    }
  }

  std::vector<ResultRow> rows;
  rows.reserve(nd * nn * nm);
  for (std::size_t d = 0; d < nd; ++d) {
    for (std::size_t i = 0; i < nn; ++i) {
      for (std::size_t m = 0; m < nm; ++m) {
        ResultRow row;
        row.dist = spec.dists[d].label;
        row.n = spec.n_grid[i];
        row.method = spec.methods[m];
        double sum = 0.0;
        double sq = 0.0;
        // Reduced in trial order so the floating-point result is schedule-independent.
        for (std::uint64_t t = 0; t < trials; ++t) {
          const TrialResult& r = results[(d * nn + i) * trials + t];
          row.wall_time += r.seconds[m];
          if (!r.error[m].empty() && row.error.empty()) {
            row.error = r.error[m];
          }
          const double e = r.estimate[m] - truth[d];
          sum += e;
          sq += e * e;
        }
        const double td = static_cast<double>(trials);
        if (!row.error.empty()) {
          row.rmse = row.bias = row.std = std::numeric_limits<double>::quiet_NaN();
        } else {
          row.bias = sum / td;
          row.rmse = std::sqrt(sq / td);
          const double var_pop = std::max(0.0, sq / td - row.bias * row.bias);
          row.std = trials > 1 ? std::sqrt(var_pop * td / (td - 1.0)) : 0.0;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_results(std::ostream& out, const std::vector<ResultRow>& rows, bool include_timing) {
  out << "dist,n,method,rmse,bias,std,wall_time\n";
  for (const auto& r : rows) {
    out << r.dist << ',' << r.n << ',' << to_string(r.method) << ',' << format_real(r.rmse) << ','
        << format_real(r.bias) << ',' << format_real(r.std) << ','
        << format_real(include_timing ? r.wall_time : 0.0) << '\n';
  }
}

void write_results(const std::vector<ResultRow>& rows, const std::string& path,
                   bool include_timing) {
  auto out = open_output(path);
  write_results(out, rows, include_timing);
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed for '" + path + "'");
  }
}

std::vector<std::uint64_t> parse_n_grid(std::string_view text) {
  std::vector<std::uint64_t> grid;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split_list(text, ':');
    if (parts.size() != 3) {
      throw std::invalid_argument("geometric n grid must be lo:hi:points");
    }
    const double lo = parse_value<double>(parts[0], "grid start");
    const double hi = parse_value<double>(parts[1], "grid end");
    const auto points = parse_value<std::uint64_t>(parts[2], "grid size");
    if (!(lo >= 1.0 && hi >= lo) || points == 0) {
      throw std::invalid_argument("geometric n grid needs 1 <= lo <= hi and points >= 1");
    }
    for (std::uint64_t i = 0; i < points; ++i) {
      const double f = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
      const auto v = static_cast<std::uint64_t>(std::llround(lo * std::pow(hi / lo, f)));
      if (grid.empty() || grid.back() != v) {
        grid.push_back(v);
      }
    }
    return grid;
  }
  for (auto part : split_list(text, ',')) {
    const auto v = parse_value<std::uint64_t>(part, "sample size");
    if (v == 0) {
      throw std::invalid_argument("sample sizes must be positive");
    }
    grid.push_back(v);
  }
  return grid;
}

std::vector<Method> parse_methods(std::string_view text) {
  std::vector<Method> out;
  for (auto part : split_list(text, ',')) {
    out.push_back(parse_method(part));
  }
  return out;
}

std::vector<DistributionEntry> parse_dists(std::string_view text, std::uint64_t k) {
  std::vector<DistributionEntry> out;
  for (auto part : split_list(text, ',')) {
    if (part.starts_with("file:")) {
      const std::string path(part.substr(5));
      out.push_back({std::string(part), read_distribution_file(path, k)});
    } else {
      const auto spec = SyntheticSpec::parse(part, k);
      out.push_back({spec.label(), make_distribution(spec)});
    }
  }
  return out;
}

}  // namespace polyentropy
