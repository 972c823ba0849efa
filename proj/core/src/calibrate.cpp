#include "msrank/calibrate.hpp"

#include <algorithm>
#include <cmath>

#include "msrank/errors.hpp"
#include "msrank/parallel.hpp"
#include "msrank/rng.hpp"
#include "msrank/version.hpp"

namespace msrank {

std::size_t quantile_order_index(std::size_t replicates, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("alpha must lie in (0,1)");
  if (replicates < 1) throw InvalidArgument("need at least one MC replicate");
  const double scaled = alpha * static_cast<double>(replicates + 1);
  // floor with a snap for decimal alphas that land on integers (0.1 * 1000)
  const auto drop = static_cast<std::size_t>(std::floor(scaled + 1e-9));
  if (drop < 1)
    throw InvalidArgument(
        "quantile undefined: alpha < 1/(B+1); raise alpha or the replicate "
        "count");
  return replicates + 1 - drop;  // = ceil((1-alpha)(B+1))
}

double attainable_level(std::size_t replicates, double alpha) {
  const std::size_t q = quantile_order_index(replicates, alpha);
  return static_cast<double>(replicates + 1 - q) /
         static_cast<double>(replicates + 1);
}

void TestConfig::validate() const {
  (void)quantile_order_index(replicates, alpha);
}

std::vector<double> simulate_null(const CoefficientTable& table,
                                  std::size_t replicates, std::uint64_t seed,
                                  unsigned threads) {
  std::vector<double> samples(replicates);
  const std::size_t n = table.n();
  parallel_for(replicates, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> signs(n);
    for (std::size_t b = begin; b < end; ++b) {
      Rng rng(seed, b);
      rng.fill_signs(signs);
      samples[b] = scan_max(table, signs);
    }
  });
  return samples;
}

double ExactNullDistribution::prob(std::size_t i) const {
  return static_cast<double>(counts[i]) / static_cast<double>(total());
}

double ExactNullDistribution::cdf(double t) const {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < values.size() && values[i] <= t; ++i)
    acc += counts[i];
  return static_cast<double>(acc) / static_cast<double>(total());
}

double ExactNullDistribution::prob_above(double t) const {
  std::uint64_t acc = 0;
  for (std::size_t i = values.size(); i-- > 0 && values[i] > t;)
    acc += counts[i];
  return static_cast<double>(acc) / static_cast<double>(total());
}

double ExactNullDistribution::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) m += values[i] * prob(i);
  return m;
}

double ExactNullDistribution::generalized_quantile(double alpha) const {
  const auto tot = static_cast<double>(total());
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc += counts[i];
    if (static_cast<double>(acc) / tot >= 1.0 - alpha) return values[i];
  }
  return values.back();
}

ExactNullDistribution exact_null_distribution(const CoefficientTable& table,
                                              std::size_t n_limit) {
  const std::size_t n = table.n();
  if (n > n_limit)
    throw InvalidArgument(
        "exact_null_distribution: refusing 2^n enumeration for n = " +
        std::to_string(n) + " > limit " + std::to_string(n_limit));
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> all(count);
  std::vector<double> signs(n);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (std::size_t i = 0; i < n; ++i)
      signs[i] = (mask >> i) & 1u ? 1.0 : -1.0;
    all[mask] = scan_max(table, signs);
  }
  std::sort(all.begin(), all.end());
  ExactNullDistribution dist;
  dist.n_signs = static_cast<unsigned>(n);
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t e = i + 1;
    while (e < all.size() && all[e] == all[i]) ++e;
    dist.values.push_back(all[i]);
    dist.counts.push_back(e - i);
    i = e;
  }
  return dist;
}

double conditional_quantile(std::span<const double> samples, double alpha) {
  if (samples.empty()) throw InvalidArgument("conditional_quantile: no samples");
  const std::size_t q = quantile_order_index(samples.size(), alpha);
  std::vector<double> sorted(samples.begin(), samples.end());
  std::nth_element(sorted.begin(), sorted.begin() + (q - 1), sorted.end());
  return sorted[q - 1];
}

double randomization_p_value(std::span<const double> null_samples,
                             double observed) {
  std::size_t at_least = 0;
  for (const double s : null_samples)
    if (s >= observed) ++at_least;
  return static_cast<double>(1 + at_least) /
         static_cast<double>(null_samples.size() + 1);
}

DetectionSet detect_intervals(const ScanResult& scan_result, double kappa,
                              const Dataset& data, bool one_sided) {
  DetectionSet out;
  for (const WindowRecord& r : scan_result.records) {
    const double stat = one_sided ? r.t : std::abs(r.t);
    if (stat - r.penalty > kappa) {
      out.intervals.push_back({r.j, r.k, data.x()[r.j], data.x()[r.k], r.t,
                               r.penalty, r.excess, r.t >= 0.0 ? +1 : -1});
    }
  }
  // minimal = no other detected interval nested inside; sweep in (k asc,
  // j desc) order, a predecessor with j' >= j is nested
  std::vector<std::size_t> order(out.intervals.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ia = out.intervals[a];
    const auto& ib = out.intervals[b];
    return ia.k != ib.k ? ia.k < ib.k : ia.j > ib.j;
  });
  std::vector<bool> is_minimal(out.intervals.size(), true);
  bool any = false;
  std::uint32_t max_j = 0;
  for (const std::size_t idx : order) {
    const auto& cur = out.intervals[idx];
    if (any && max_j >= cur.j) is_minimal[idx] = false;
    if (!any || cur.j > max_j) max_j = cur.j;
    any = true;
  }
  for (std::size_t i = 0; i < out.intervals.size(); ++i)
    if (is_minimal[i]) out.minimal.push_back(out.intervals[i]);
  return out;
}

CalibrationResult calibrate_from_samples(std::vector<double> samples,
                                         double alpha, double observed_t_n) {
  CalibrationResult out;
  out.kappa = conditional_quantile(samples, alpha);
  out.p_value = randomization_p_value(samples, observed_t_n);
  out.null_samples = std::move(samples);
  return out;
}

CalibrationResult calibrate_null(const CoefficientTable& table,
                                 std::size_t replicates, std::uint64_t seed,
                                 unsigned threads, double alpha,
                                 double observed_t_n) {
  return calibrate_from_samples(simulate_null(table, replicates, seed, threads),
                                alpha, observed_t_n);
}

TestReport run_test(const Dataset& data, const TestConfig& config) {
  config.validate();
  const CoefficientTable table(data, config.kernel, config.policy,
                               config.coeff_budget);
  const std::vector<double> signs = data.sign_y();
  TestReport report;
  report.method = "signed-rank";
  report.version = std::string(kVersion);
  report.n = data.size();
  report.alpha = config.alpha;
  report.replicates = config.replicates;
  report.seed = config.seed;
  report.kernel = config.kernel;
  report.policy = config.policy;
  report.min_window = config.policy.min_window;
  report.one_sided = config.one_sided;
  report.observed = scan(table, signs, /*keep_records=*/true);
  report.t_n = report.observed.t_n;
  CalibrationResult calib =
      calibrate_null(table, config.replicates, config.seed, config.threads,
                     config.alpha, report.t_n);
  report.kappa = calib.kappa;
  report.p_value = calib.p_value;
  report.null_samples = std::move(calib.null_samples);
  report.reject = report.t_n > report.kappa;
  report.detection =
      detect_intervals(report.observed, report.kappa, data, config.one_sided);
  return report;
}

}  // namespace msrank
