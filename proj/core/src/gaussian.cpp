#include "msrank/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "msrank/errors.hpp"
#include "msrank/parallel.hpp"
#include "msrank/rng.hpp"
#include "msrank/version.hpp"

namespace msrank {

void GaussianConfig::validate() const {
  (void)quantile_order_index(replicates, alpha);
  if (sigma && !(*sigma > 0.0))
    throw InvalidArgument("gaussian test: sigma must be positive");
}

WeightTable::WeightTable(std::vector<double> design, const Kernel& kernel,
                         const WindowPolicy& policy, std::size_t coeff_budget)
    : kernel_(kernel), policy_(policy), x_(std::move(design)) {
  if (x_.size() < 2)
    throw InvalidArgument("weight table: need at least 2 design points");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i - 1] < x_[i]))
      throw InvalidArgument("weight table: design must be strictly increasing");
  windows_ = enumerate_windows(x_.size(), policy);
  if (windows_.empty())
    throw InvalidArgument("weight table: window policy yields no windows");
  const std::size_t n = x_.size();
  penalties_.resize(windows_.size());
  denominators_.resize(windows_.size());
  std::size_t total = 0;
  for (std::size_t w = 0; w < windows_.size(); ++w) {
    penalties_[w] = penalty(n, windows_[w].j, windows_[w].k);
    total += windows_[w].k - windows_[w].j + 1;
  }
  const bool materialize = total <= coeff_budget;
  if (materialize) {
    offsets_.resize(windows_.size());
    std::size_t off = 0;
    for (std::size_t w = 0; w < windows_.size(); ++w) {
      offsets_[w] = off;
      off += windows_[w].k - windows_[w].j + 1;
    }
    weights_.resize(total);
  }
  for (std::size_t w = 0; w < windows_.size(); ++w) {
    const WindowSpan win = windows_[w];
    const double xs = x_[win.j];
    const double xt = x_[win.k];
    double ss = 0.0;
    for (std::size_t t = 0; t <= static_cast<std::size_t>(win.k - win.j); ++t) {
      const double v = kernel_.rescaled(xs, xt, x_[win.j + t]);
      if (materialize) weights_[offsets_[w] + t] = v;
      ss += v * v;
    }
    denominators_[w] = std::sqrt(ss);
  }
}

double gaussian_local(std::span<const double> weights,
                      std::span<const double> y, double sigma) {
  if (weights.empty() || weights.size() != y.size())
    throw InvalidArgument(
        "gaussian_local: weight and response slices must be nonempty and of "
        "equal length");
  if (!(sigma > 0.0)) throw InvalidArgument("gaussian_local: sigma <= 0");
  double num = 0.0;
  double ss = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    num += weights[i] * y[i];
    ss += weights[i] * weights[i];
  }
  return ss > 0.0 ? num / (sigma * std::sqrt(ss)) : 0.0;
}

ScanResult gaussian_scan(const WeightTable& table, std::span<const double> y,
                         double sigma, bool keep_records) {
  if (y.size() != table.n())
    throw InvalidArgument("gaussian_scan: response length must equal n");
  if (!(sigma > 0.0)) throw InvalidArgument("gaussian_scan: sigma <= 0");
  ScanResult res;
  res.t_n = -std::numeric_limits<double>::infinity();
  if (keep_records) res.records.reserve(table.window_count());
  for (std::size_t w = 0; w < table.windows_.size(); ++w) {
    const WindowSpan win = table.windows_[w];
    const std::size_t m = win.k - win.j + 1;
    double num = 0.0;
    if (table.precomputed()) {
      const double* c = table.weights_.data() + table.offsets_[w];
      const double* v = y.data() + win.j;
      for (std::size_t t = 0; t < m; ++t) num += c[t] * v[t];
    } else {
      const double xs = table.x_[win.j];
      const double xt = table.x_[win.k];
      for (std::size_t t = 0; t < m; ++t)
        num += table.kernel_.rescaled(xs, xt, table.x_[win.j + t]) *
               y[win.j + t];
    }
    const double den = table.denominators_[w];
    const double t = den > 0.0 ? num / (sigma * den) : 0.0;
    const double pen = table.penalties_[w];
    const double excess = std::abs(t) - pen;
    if (excess > res.t_n) res.t_n = excess;
    if (keep_records) res.records.push_back({win.j, win.k, t, pen, excess});
  }
  return res;
}

std::vector<double> gaussian_null_samples(const WeightTable& table,
                                          std::size_t replicates,
                                          std::uint64_t seed,
                                          unsigned threads) {
  std::vector<double> samples(replicates);
  const std::size_t n = table.n();
  parallel_for(replicates, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> y(n);
    for (std::size_t b = begin; b < end; ++b) {
      Rng rng(seed, b);
      for (std::size_t i = 0; i < n; ++i) y[i] = rng.next_normal();
      samples[b] = gaussian_scan(table, y, 1.0, /*keep_records=*/false).t_n;
    }
  });
  return samples;
}

double gaussian_calibrate(const WeightTable& table, std::size_t replicates,
                          double alpha, std::uint64_t seed, unsigned threads) {
  const std::vector<double> samples =
      gaussian_null_samples(table, replicates, seed, threads);
  return conditional_quantile(samples, alpha);
}

double first_difference_scale(std::span<const double> y) {
  if (y.size() < 2)
    throw InvalidArgument("first_difference_scale: need at least 2 values");
  std::vector<double> d(y.size() - 1);
  for (std::size_t i = 0; i + 1 < y.size(); ++i)
    d[i] = std::abs(y[i + 1] - y[i]);
  std::sort(d.begin(), d.end());
  const std::size_t m = d.size();
  const double med =
      m % 2 == 1 ? d[m / 2] : 0.5 * (d[m / 2 - 1] + d[m / 2]);
  const double scale = 1.4826 * med / std::sqrt(2.0);
  if (!(scale > 0.0))
    throw DataError(
        "first_difference_scale: estimated scale is zero (constant data?)");
  return scale;
}

TestReport gaussian_test(const Dataset& data, const GaussianConfig& config) {
  config.validate();
  const WeightTable table(data.x(), config.kernel, config.policy,
                          config.coeff_budget);
  const double sigma =
      config.sigma ? *config.sigma : first_difference_scale(data.y());
  TestReport report;
  report.method = "gaussian";
  report.version = std::string(kVersion);
  report.n = data.size();
  report.alpha = config.alpha;
  report.replicates = config.replicates;
  report.seed = config.seed;
  report.kernel = config.kernel;
  report.policy = config.policy;
  report.min_window = config.policy.min_window;
  report.one_sided = config.one_sided;
  report.sigma = sigma;
  report.observed = gaussian_scan(table, data.y(), sigma, /*keep_records=*/true);
  report.t_n = report.observed.t_n;
  CalibrationResult calib = calibrate_from_samples(
      gaussian_null_samples(table, config.replicates, config.seed,
                            config.threads),
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
