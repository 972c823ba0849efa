#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "msrank/dataset.hpp"
#include "msrank/kernel.hpp"
#include "msrank/ranks.hpp"

namespace msrank {

// Window of indices [j, k], 0-based, j < k.
struct WindowSpan {
  std::uint32_t j;
  std::uint32_t k;
};

enum class WindowPolicyKind { Exhaustive, Dyadic };

// Which windows the scan visits.
//
// exhaustive: every pair j < k with k-j+1 >= min_window; this is the
// statistic as defined. dyadic: window sizes on a geometric grid with ratio
// sqrt(2) (always including the full span), left endpoints strided by
// size/8; an approximation intended for large n.
struct WindowPolicy {
  WindowPolicyKind kind = WindowPolicyKind::Exhaustive;
  std::size_t min_window = 2;

  static WindowPolicy exhaustive(std::size_t min_window = 2) {
    return {WindowPolicyKind::Exhaustive, min_window};
  }
  static WindowPolicy dyadic(std::size_t min_window = 2) {
    return {WindowPolicyKind::Dyadic, min_window};
  }

  std::string spec() const;
  static WindowPolicy parse(std::string_view spec, std::size_t min_window = 2);

  bool operator==(const WindowPolicy&) const = default;
};

// Windows in canonical order: sorted by (j, k).
std::vector<WindowSpan> enumerate_windows(std::size_t n,
                                          const WindowPolicy& policy);

// Scale penalty sqrt(2 log(n / (k-j))), with the gap k-j (0-based indices
// give the same gap as the 1-based definition).
double penalty(std::size_t n, std::size_t j, std::size_t k);

// One window's statistic: sum(c_i s_i) / sqrt(sum c_i^2), or 0 when the
// denominator vanishes.
double local_statistic(std::span<const double> coeffs,
                       std::span<const double> signs);

struct WindowRecord {
  std::uint32_t j;
  std::uint32_t k;
  double t;        // T_jk
  double penalty;  // sqrt(2 log(n/(k-j)))
  double excess;   // |t| - penalty
};

struct ScanResult {
  double t_n = 0.0;  // max excess over all scanned windows
  std::vector<WindowRecord> records;
};

// Per-window coefficients c_i = psi_jk(x_i) * R_jk(i) together with their
// denominators sqrt(sum c_i^2) and penalties. The coefficients depend on y
// only through the midranks of |y|, so the table is fixed under the
// rank-conditional null and every Monte Carlo replicate reuses it.
//
// When the total coefficient count exceeds the budget the flat coefficient
// array is not materialized and scans recompute coefficients on the fly
// (identical results, more work per scan); precomputed() reports which mode
// is active. Denominators and penalties are always precomputed.
class CoefficientTable {
 public:
  static constexpr std::size_t kDefaultCoeffBudget = 20'000'000;

  CoefficientTable(const Dataset& data, const Kernel& kernel,
                   const WindowPolicy& policy,
                   std::size_t coeff_budget = kDefaultCoeffBudget);

  std::size_t n() const { return x_.size(); }
  const Kernel& kernel() const { return kernel_; }
  const WindowPolicy& policy() const { return policy_; }
  bool precomputed() const { return !coefficients_.empty(); }

  std::size_t window_count() const { return windows_.size(); }
  const std::vector<WindowSpan>& windows() const { return windows_; }
  WindowSpan window(std::size_t w) const { return windows_[w]; }
  double penalty_of(std::size_t w) const { return penalties_[w]; }
  double denominator(std::size_t w) const { return denominators_[w]; }
  const std::vector<double>& design() const { return x_; }

  // Coefficient vector of window w; recomputed when not materialized.
  std::vector<double> compute_coefficients(std::size_t w) const;

  friend ScanResult scan(const CoefficientTable& table,
                         std::span<const double> signs, bool keep_records);

 private:
  template <class PerWindow>
  void for_each_window_streaming(PerWindow&& fn) const;

  Kernel kernel_;
  WindowPolicy policy_;
  std::vector<double> x_;
  std::vector<double> abs_y_;
  AbsOrderIndex order_;
  std::vector<WindowSpan> windows_;
  std::vector<double> penalties_;
  std::vector<double> denominators_;
  std::vector<std::size_t> offsets_;      // empty if not materialized
  std::vector<double> coefficients_;      // empty if not materialized
};

// Evaluates every window of the table against a full-length sign vector and
// returns the penalized maximum; records are emitted in canonical window
// order when keep_records is set.
ScanResult scan(const CoefficientTable& table, std::span<const double> signs,
                bool keep_records = true);

inline double scan_max(const CoefficientTable& table,
                       std::span<const double> signs) {
  return scan(table, signs, /*keep_records=*/false).t_n;
}

}  // namespace msrank
