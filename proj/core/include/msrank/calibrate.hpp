#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msrank/dataset.hpp"
#include "msrank/kernel.hpp"
#include "msrank/statistic.hpp"

namespace msrank {

struct TestConfig {
  double alpha = 0.1;
  std::size_t replicates = 999;  // Monte Carlo sample count B
  std::uint64_t seed = 1;
  Kernel kernel = Kernel::epanechnikov();
  WindowPolicy policy{};
  bool one_sided = false;
  unsigned threads = 0;  // 0 = all hardware threads
  std::size_t coeff_budget = CoefficientTable::kDefaultCoeffBudget;

  // Throws InvalidArgument unless 0 < alpha < 1, B >= 1 and the quantile
  // order index ceil((1-alpha)(B+1)) is at most B.
  void validate() const;
};

// 1-based order index ceil((1-alpha)(B+1)) of the generalized (1-alpha)
// conditional quantile among B Monte Carlo samples.
std::size_t quantile_order_index(std::size_t replicates, double alpha);

// Largest p with "p-value <= p implies rejection" under this (alpha, B):
// (B + 1 - ceil((1-alpha)(B+1))) / (B+1). Equals alpha when alpha(B+1) is an
// integer, e.g. B = 999, alpha = 0.1.
double attainable_level(std::size_t replicates, double alpha);

// Monte Carlo draw of the conditional null: replicate b replaces the data
// signs by independent Rademacher signs from stream (seed, b) and rescans
// the fixed coefficient table. Output order is by replicate index and is
// bit-identical for a fixed seed under any thread count.
std::vector<double> simulate_null(const CoefficientTable& table,
                                  std::size_t replicates, std::uint64_t seed,
                                  unsigned threads = 1);

// Exact conditional null law of T_n for small n: all 2^n sign vectors,
// deduplicated values with dyadic probability masses.
struct ExactNullDistribution {
  std::vector<double> values;        // ascending, unique
  std::vector<std::uint64_t> counts;  // counts[i] of 2^n sign vectors
  unsigned n_signs = 0;

  std::uint64_t total() const { return std::uint64_t{1} << n_signs; }
  double prob(std::size_t i) const;
  double cdf(double t) const;         // P(T_n <= t)
  double prob_above(double t) const;  // P(T_n > t)
  double mean() const;
  // smallest atom q with P(T_n <= q) >= 1 - alpha
  double generalized_quantile(double alpha) const;
};

ExactNullDistribution exact_null_distribution(const CoefficientTable& table,
                                              std::size_t n_limit = 12);

// ceil((1-alpha)(B+1))-th smallest sample.
double conditional_quantile(std::span<const double> samples, double alpha);

// (1 + #{b : samples[b] >= observed}) / (B + 1); ties count toward the
// numerator.
double randomization_p_value(std::span<const double> null_samples,
                             double observed);

struct DetectedInterval {
  std::uint32_t j;  // 0-based window endpoints
  std::uint32_t k;
  double x_lo;
  double x_hi;
  double t;
  double penalty;
  double excess;
  int direction;  // +1 or -1, the sign of T_jk

  bool operator==(const DetectedInterval&) const = default;
};

// Windows whose statistic clears penalty + kappa, plus the minimal ones
// (those containing no other detected window as an index range).
struct DetectionSet {
  std::vector<DetectedInterval> intervals;
  std::vector<DetectedInterval> minimal;
};

// Two-sided by default: a window is detected when |T_jk| - penalty > kappa,
// annotated with the sign of T_jk. With one_sided only T_jk - penalty >
// kappa counts (the set is then no longer equivalent to rejection).
DetectionSet detect_intervals(const ScanResult& scan_result, double kappa,
                              const Dataset& data, bool one_sided = false);

struct CalibrationResult {
  double kappa = 0.0;
  std::vector<double> null_samples;
  double p_value = 1.0;
};

// Quantile + p-value against a given Monte Carlo sample set.
CalibrationResult calibrate_from_samples(std::vector<double> samples,
                                         double alpha, double observed_t_n);

// Rank-conditional calibration: simulate_null + generalized quantile +
// randomization p-value in one step.
CalibrationResult calibrate_null(const CoefficientTable& table,
                                 std::size_t replicates, std::uint64_t seed,
                                 unsigned threads, double alpha,
                                 double observed_t_n);

struct TestReport {
  std::string method;  // "signed-rank" or "gaussian"
  std::string version;
  std::size_t n = 0;
  double alpha = 0.0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  Kernel kernel = Kernel::epanechnikov();
  WindowPolicy policy{};
  std::size_t min_window = 2;
  bool one_sided = false;
  double t_n = 0.0;
  double kappa = 0.0;
  double p_value = 1.0;
  bool reject = false;
  DetectionSet detection;
  std::optional<double> sigma;      // gaussian method: standardization scale
  std::optional<double> timing_ms;  // filled only when timing is requested

  // Not serialized: full per-window records and the Monte Carlo sample set.
  ScanResult observed;
  std::vector<double> null_samples;
};

// The conditional test end to end: build the coefficient table, scan the
// observed signs, calibrate kappa by rank-conditional Monte Carlo, decide
// reject = (t_n > kappa), and collect the detected intervals against kappa.
TestReport run_test(const Dataset& data, const TestConfig& config);

}  // namespace msrank
