#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "msrank/dataset.hpp"
#include "msrank/kernel.hpp"
#include "msrank/rng.hpp"
#include "msrank/statistic.hpp"

// Independent oracle implementations for the test suites. Everything here
// deliberately avoids the library's incremental structures: ranks come from a
// direct double loop over the counting formula, scans from a naive
// per-window recomputation, and integrals from fixed-grid Simpson.
namespace testutil {

// midranks by brute-force counting: #{v_l < v_i} + #{v_l = v_i}/2 + 1/2
inline std::vector<double> naive_midranks(std::span<const double> v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double below = 0.0;
    double equal = 0.0;
    for (std::size_t l = 0; l < v.size(); ++l) {
      if (v[l] < v[i]) below += 1.0;
      if (v[l] == v[i]) equal += 1.0;
    }
    r[i] = below + 0.5 * equal + 0.5;
  }
  return r;
}

inline msrank::ScanResult naive_scan(const msrank::Dataset& d,
                                     const msrank::Kernel& kern,
                                     std::span<const double> signs,
                                     std::size_t min_window = 2) {
  const std::size_t n = d.size();
  const std::vector<double> absy = d.abs_y();
  msrank::ScanResult res;
  res.t_n = -1e300;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      if (k - j + 1 < min_window) continue;
      const std::vector<double> slice(absy.begin() + j, absy.begin() + k + 1);
      const std::vector<double> ranks = naive_midranks(slice);
      double num = 0.0;
      double ss = 0.0;
      for (std::size_t i = j; i <= k; ++i) {
        const double c =
            kern.rescaled(d.x()[j], d.x()[k], d.x()[i]) * ranks[i - j];
        num += c * signs[i];
        ss += c * c;
      }
      const double t = ss > 0.0 ? num / std::sqrt(ss) : 0.0;
      const double pen = std::sqrt(
          2.0 * std::log(static_cast<double>(n) / static_cast<double>(k - j)));
      const double excess = std::abs(t) - pen;
      res.records.push_back({static_cast<std::uint32_t>(j),
                             static_cast<std::uint32_t>(k), t, pen, excess});
      if (excess > res.t_n) res.t_n = excess;
    }
  }
  return res;
}

// fixed-grid composite Simpson (panels must be even)
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int panels) {
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i)
    acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// recursive adaptive Simpson, independent of the library integrator; the
// first `force` levels subdivide unconditionally so that concentrated
// integrands on wide ranges are not mistaken for zero
inline double adaptive_quad(const std::function<double(double)>& f, double a,
                            double b, double tol, int depth = 60,
                            int force = 12) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const std::function<double(double, double, double, double, double, double,
                             double, int, int)>
      rec = [&](double lo, double hi, double flo, double fmid, double fhi,
                double acc, double t, int d, int fo) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
    const double fl = f(lmid), fr = f(rmid);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi);
    const double delta = left + right - acc;
    if (fo <= 0 && (d <= 0 || std::abs(delta) <= 15.0 * t))
      return left + right + delta / 15.0;
    return rec(lo, mid, flo, fl, fmid, left, 0.5 * t, d - 1, fo - 1) +
           rec(mid, hi, fmid, fr, fhi, right, 0.5 * t, d - 1, fo - 1);
  };
  return rec(a, b, fa, fm, fb, whole, tol, depth, force);
}

inline msrank::Kernel random_kernel(msrank::Rng& rng) {
  switch (rng.next_u64() % 3) {
    case 0:
      return msrank::Kernel::rectangular();
    case 1:
      return msrank::Kernel::epanechnikov();
    default:
      return msrank::Kernel::holder(0.05 + 0.95 * rng.next_unit());
  }
}

inline msrank::Dataset random_dataset(msrank::Rng& rng, std::size_t n,
                                      bool with_ties) {
  std::vector<double> x(n);
  std::vector<double> y(n);
  double pos = rng.next_unit();
  for (std::size_t i = 0; i < n; ++i) {
    pos += 0.01 + rng.next_unit();
    x[i] = pos;
    y[i] = rng.next_normal();
    if (with_ties && rng.next_unit() < 0.3)
      y[i] = std::round(y[i] * 2.0) / 2.0;  // coarse grid produces ties/zeros
  }
  return msrank::Dataset(std::move(x), std::move(y));
}

// mean over all 2^m sign vectors of (sum c_i xi_i)^2, Kahan-summed
inline double rademacher_second_moment(std::span<const double> coeffs) {
  const std::size_t m = coeffs.size();
  double sum = 0.0;
  double carry = 0.0;
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      s += (mask >> i) & 1u ? coeffs[i] : -coeffs[i];
    const double term = s * s - carry;
    const double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return sum / static_cast<double>(total);
}

}  // namespace testutil
