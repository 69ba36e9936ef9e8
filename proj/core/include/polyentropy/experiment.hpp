#pragma once

// Monte Carlo harness: RMSE of each estimator over a grid of distributions and
// sample sizes, with deterministic per-trial streams and parallel trials.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "polyentropy/core.hpp"
#include "polyentropy/estimators.hpp"
#include "polyentropy/random.hpp"

namespace polyentropy {

enum class Method { poly, plugin, mm };
enum class SamplingModel { multinomial, poissonized };

std::string_view to_string(Method m);
std::string_view to_string(SamplingModel s);
Method parse_method(std::string_view text);
SamplingModel parse_sampling(std::string_view text);

struct DistributionEntry {
  std::string label;
  Distribution dist;
};

struct ExperimentSpec {
  std::vector<DistributionEntry> dists;
  std::uint64_t k = 10000;
  std::vector<std::uint64_t> n_grid;
  std::uint64_t trials = 50;
  std::vector<Method> methods{Method::poly, Method::plugin, Method::mm};
  SamplingModel sampling = SamplingModel::multinomial;
  std::uint64_t seed = 0;
  EstimatorConfig config;
  unsigned threads = 1;

  /// Throws std::domain_error on an empty grid, zero trials or an alphabet mismatch.
  void validate() const;
};

struct ResultRow {
  std::string dist;
  std::uint64_t n = 0;
  Method method = Method::poly;
  double rmse = 0.0;
  double bias = 0.0;
  /// Sample standard deviation (denominator trials - 1; zero for one trial).
  double std = 0.0;
  /// Seconds spent sampling plus estimating with this method, summed over trials.
  double wall_time = 0.0;
  /// Non-empty when the cell failed; its numbers are then NaN.
  std::string error;
};

/// Runs every (dist, n, method) cell. Trial t of cell (d, i) samples with
/// derive_seed(seed, d, i, t); all methods see the same histogram. Rows come
/// back in (dist, n, method) order of the spec and do not depend on `threads`.
/// With config.split the sample is thinned into two halves and the estimators
/// use n / 2.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

/// stream = dist_index << 48 | n_index << 32 | trial. Throws std::out_of_range
/// when an index does not fit its field.
Seed derive_seed(std::uint64_t base, std::uint64_t dist_index, std::uint64_t n_index,
                 std::uint64_t trial);

/// CSV with header dist,n,method,rmse,bias,std,wall_time and 17 significant
/// digits. With include_timing off, wall_time is written as 0 so identical
/// specs give identical bytes.
void write_results(std::ostream& out, const std::vector<ResultRow>& rows,
                   bool include_timing = true);
void write_results(const std::vector<ResultRow>& rows, const std::string& path,
                   bool include_timing = true);

/// "100,300,500" or geometric "lo:hi:points" (rounded, deduplicated).
std::vector<std::uint64_t> parse_n_grid(std::string_view text);
/// "poly,plugin,mm"
std::vector<Method> parse_methods(std::string_view text);
/// Comma list of uniform, zipf:<alpha>, mix or file:<path> (a distribution file).
std::vector<DistributionEntry> parse_dists(std::string_view text, std::uint64_t k);

}  // namespace polyentropy
