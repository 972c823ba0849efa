#include "msrank/statistic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "msrank/errors.hpp"

namespace msrank {

std::string WindowPolicy::spec() const {
  return kind == WindowPolicyKind::Exhaustive ? "exhaustive" : "dyadic";
}

WindowPolicy WindowPolicy::parse(std::string_view spec, std::size_t min_window) {
  if (spec == "exhaustive") return exhaustive(min_window);
  if (spec == "dyadic") return dyadic(min_window);
  throw InvalidArgument("unknown window policy '" + std::string(spec) +
                        "' (expected exhaustive | dyadic)");
}

std::vector<WindowSpan> enumerate_windows(std::size_t n,
                                          const WindowPolicy& policy) {
  if (policy.min_window < 2)
    throw InvalidArgument("window policy: min_window must be >= 2");
  std::vector<WindowSpan> out;
  if (policy.min_window > n) return out;
  if (policy.kind == WindowPolicyKind::Exhaustive) {
    for (std::size_t j = 0; j + policy.min_window <= n; ++j)
      for (std::size_t k = j + policy.min_window - 1; k < n; ++k)
        out.push_back({static_cast<std::uint32_t>(j),
                       static_cast<std::uint32_t>(k)});
    return out;
  }
  // dyadic: sizes on a geometric sqrt(2) grid plus the full span
  std::vector<std::size_t> sizes;
  for (std::size_t m = policy.min_window; m < n;
       m = std::max(m + 1, static_cast<std::size_t>(
                               std::llround(static_cast<double>(m) *
                                            std::sqrt(2.0)))))
    sizes.push_back(m);
  sizes.push_back(n);
  for (const std::size_t m : sizes) {
    const std::size_t stride = std::max<std::size_t>(1, m / 8);
    const std::size_t last = n - m;
    for (std::size_t j = 0; j <= last; j += stride)
      out.push_back({static_cast<std::uint32_t>(j),
                     static_cast<std::uint32_t>(j + m - 1)});
    if (last % stride != 0)
      out.push_back({static_cast<std::uint32_t>(last),
                     static_cast<std::uint32_t>(n - 1)});
  }
  std::sort(out.begin(), out.end(), [](const WindowSpan& a, const WindowSpan& b) {
    return a.j != b.j ? a.j < b.j : a.k < b.k;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const WindowSpan& a, const WindowSpan& b) {
                          return a.j == b.j && a.k == b.k;
                        }),
            out.end());
  return out;
}

double penalty(std::size_t n, std::size_t j, std::size_t k) {
  if (j >= k || k >= n)
    throw InvalidArgument("penalty: window indices must satisfy j < k < n");
  return std::sqrt(2.0 * std::log(static_cast<double>(n) /
                                  static_cast<double>(k - j)));
}

double local_statistic(std::span<const double> coeffs,
                       std::span<const double> signs) {
  if (coeffs.empty() || coeffs.size() != signs.size())
    throw InvalidArgument(
        "local_statistic: coefficient and sign vectors must be nonempty and "
        "of equal length");
  double num = 0.0;
  double ss = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    num += coeffs[i] * signs[i];
    ss += coeffs[i] * coeffs[i];
  }
  return ss > 0.0 ? num / std::sqrt(ss) : 0.0;
}

// ---------------------------------------------------------------------------
// CoefficientTable
// ---------------------------------------------------------------------------

// Walks windows in canonical order grouped by left endpoint, feeding each
// window's midranks from one incremental stream per group. fn(w, j, k, ranks)
// sees midranks()[t] for window element j+t. Both the builder and the
// on-the-fly scan run through here, so coefficient values agree bit for bit
// between the two storage modes.
template <class PerWindow>
void CoefficientTable::for_each_window_streaming(PerWindow&& fn) const {
  std::size_t g = 0;
  while (g < windows_.size()) {
    const std::uint32_t j = windows_[g].j;
    std::size_t gend = g;
    while (gend < windows_.size() && windows_[gend].j == j) ++gend;
    WindowRankStream stream(order_, j);
    std::size_t w = g;
    const std::uint32_t kmax = windows_[gend - 1].k;
    for (std::uint32_t k = j + 1; k <= kmax; ++k) {
      stream.extend();
      if (w < gend && windows_[w].k == k) {
        fn(w, j, k, stream.midranks());
        ++w;
      }
    }
    assert(w == gend);
    g = gend;
  }
}

CoefficientTable::CoefficientTable(const Dataset& data, const Kernel& kernel,
                                   const WindowPolicy& policy,
                                   std::size_t coeff_budget)
    : kernel_(kernel),
      policy_(policy),
      x_(data.x()),
      abs_y_(data.abs_y()),
      order_(abs_y_),
      windows_(enumerate_windows(data.size(), policy)) {
  if (windows_.empty())
    throw InvalidArgument(
        "coefficient table: window policy yields no windows (min_window "
        "exceeds n?)");
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
    coefficients_.resize(total);
  }
  for_each_window_streaming([&](std::size_t w, std::uint32_t j, std::uint32_t k,
                                std::span<const double> ranks) {
    const double xs = x_[j];
    const double xt = x_[k];
    double ss = 0.0;
    if (materialize) {
      double* dst = coefficients_.data() + offsets_[w];
      for (std::size_t t = 0; t <= static_cast<std::size_t>(k - j); ++t) {
        const double c = kernel_.rescaled(xs, xt, x_[j + t]) * ranks[t];
        dst[t] = c;
        ss += c * c;
      }
    } else {
      for (std::size_t t = 0; t <= static_cast<std::size_t>(k - j); ++t) {
        const double c = kernel_.rescaled(xs, xt, x_[j + t]) * ranks[t];
        ss += c * c;
      }
    }
    denominators_[w] = std::sqrt(ss);
  });
}

std::vector<double> CoefficientTable::compute_coefficients(std::size_t w) const {
  const WindowSpan win = windows_[w];
  const std::size_t m = win.k - win.j + 1;
  std::vector<double> out(m);
  if (precomputed()) {
    std::copy_n(coefficients_.data() + offsets_[w], m, out.data());
    return out;
  }
  WindowRankStream stream(order_, win.j);
  for (std::uint32_t k = win.j + 1; k <= win.k; ++k) stream.extend();
  const auto ranks = stream.midranks();
  for (std::size_t t = 0; t < m; ++t)
    out[t] = kernel_.rescaled(x_[win.j], x_[win.k], x_[win.j + t]) * ranks[t];
  return out;
}

ScanResult scan(const CoefficientTable& table, std::span<const double> signs,
                bool keep_records) {
  if (signs.size() != table.n())
    throw InvalidArgument("scan: sign vector length must equal n");
  ScanResult res;
  res.t_n = -std::numeric_limits<double>::infinity();
  if (keep_records) res.records.reserve(table.window_count());
  const auto emit = [&](std::size_t w, double num) {
    const double den = table.denominators_[w];
    const double t = den > 0.0 ? num / den : 0.0;
    const double pen = table.penalties_[w];
    const double excess = std::abs(t) - pen;
    if (excess > res.t_n) res.t_n = excess;
    if (keep_records)
      res.records.push_back(
          {table.windows_[w].j, table.windows_[w].k, t, pen, excess});
  };
  if (table.precomputed()) {
    for (std::size_t w = 0; w < table.windows_.size(); ++w) {
      const WindowSpan win = table.windows_[w];
      const double* c = table.coefficients_.data() + table.offsets_[w];
      const double* s = signs.data() + win.j;
      const std::size_t m = win.k - win.j + 1;
      double num = 0.0;
      for (std::size_t t = 0; t < m; ++t) num += c[t] * s[t];
      emit(w, num);
    }
  } else {
    table.for_each_window_streaming([&](std::size_t w, std::uint32_t j,
                                        std::uint32_t k,
                                        std::span<const double> ranks) {
      const double xs = table.x_[j];
      const double xt = table.x_[k];
      double num = 0.0;
      for (std::size_t t = 0; t <= static_cast<std::size_t>(k - j); ++t) {
        const double c =
            table.kernel_.rescaled(xs, xt, table.x_[j + t]) * ranks[t];
        num += c * signs[j + t];
      }
      emit(w, num);
    });
  }
  return res;
}

}  // namespace msrank
