#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "msrank/calibrate.hpp"
#include "msrank/dataset.hpp"
#include "msrank/kernel.hpp"
#include "msrank/statistic.hpp"

namespace msrank {

// Configuration of the Gaussian-calibrated reference test: same windows,
// penalty and kernels as the signed-rank test, but the local statistic
// standardizes the raw responses by a noise scale, and the critical value is
// calibrated unconditionally by simulating i.i.d. standard normal responses
// on the same design.
struct GaussianConfig {
  double alpha = 0.1;
  std::size_t replicates = 999;
  std::uint64_t seed = 1;
  Kernel kernel = Kernel::epanechnikov();
  WindowPolicy policy{};
  // Noise standard deviation used for standardization; nullopt = estimate
  // from the data by the first-difference robust scale.
  std::optional<double> sigma = 1.0;
  bool one_sided = false;
  unsigned threads = 0;
  std::size_t coeff_budget = CoefficientTable::kDefaultCoeffBudget;

  void validate() const;
};

// Kernel weights psi_jk(x_i) per window with denominators sqrt(sum psi^2);
// rank-free analogue of CoefficientTable on a fixed design.
class WeightTable {
 public:
  WeightTable(std::vector<double> design, const Kernel& kernel,
              const WindowPolicy& policy,
              std::size_t coeff_budget = CoefficientTable::kDefaultCoeffBudget);

  std::size_t n() const { return x_.size(); }
  const Kernel& kernel() const { return kernel_; }
  const WindowPolicy& policy() const { return policy_; }
  bool precomputed() const { return !weights_.empty(); }

  std::size_t window_count() const { return windows_.size(); }
  const std::vector<WindowSpan>& windows() const { return windows_; }
  double penalty_of(std::size_t w) const { return penalties_[w]; }
  double denominator(std::size_t w) const { return denominators_[w]; }
  const std::vector<double>& design() const { return x_; }

  friend ScanResult gaussian_scan(const WeightTable& table,
                                  std::span<const double> y, double sigma,
                                  bool keep_records);

 private:
  Kernel kernel_;
  WindowPolicy policy_;
  std::vector<double> x_;
  std::vector<WindowSpan> windows_;
  std::vector<double> penalties_;
  std::vector<double> denominators_;
  std::vector<std::size_t> offsets_;  // empty if not materialized
  std::vector<double> weights_;       // empty if not materialized
};

// One window: sum(w_i y_i) / (sigma sqrt(sum w_i^2)); 0 when the denominator
// vanishes (same convention as the signed-rank statistic).
double gaussian_local(std::span<const double> weights,
                      std::span<const double> y, double sigma);

ScanResult gaussian_scan(const WeightTable& table, std::span<const double> y,
                         double sigma, bool keep_records = true);

// Penalized maxima of B synthetic standard normal datasets on the table's
// design; replicate b draws from stream (seed, b).
std::vector<double> gaussian_null_samples(const WeightTable& table,
                                          std::size_t replicates,
                                          std::uint64_t seed,
                                          unsigned threads = 1);

// Generalized (1-alpha) quantile of the unconditional Gaussian calibration.
double gaussian_calibrate(const WeightTable& table, std::size_t replicates,
                          double alpha, std::uint64_t seed,
                          unsigned threads = 1);

// Robust noise scale from first differences: 1.4826 median|y_{i+1}-y_i|/sqrt(2).
double first_difference_scale(std::span<const double> y);

// Full reference test with the same report shape as run_test.
TestReport gaussian_test(const Dataset& data, const GaussianConfig& config);

}  // namespace msrank
