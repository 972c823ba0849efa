#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace msrank {

enum class KernelKind { Rectangular, Epanechnikov, Holder };

// Weight function on [0,1], rescalable onto any window [s,t].
//
// rectangular      1
// epanechnikov     1 - (2x-1)^2
// holder(beta)     1 - |2x-1|^beta,  0 < beta <= 1
//
// The Holder kernel is the rescaled minimizer of the L2 norm over the Holder
// ball with unit value at the origin; only beta <= 1 has a closed form, and
// larger beta is rejected. None of the kernels carries a normalizing factor:
// the scan statistic divides out any positive multiple of the kernel.
class Kernel {
 public:
  static Kernel rectangular() { return Kernel(KernelKind::Rectangular, 0.0); }
  static Kernel epanechnikov() { return Kernel(KernelKind::Epanechnikov, 0.0); }
  static Kernel holder(double beta);

  KernelKind kind() const { return kind_; }
  double beta() const { return beta_; }

  // Evaluation at x in [0,1].
  double operator()(double x) const;

  // Evaluation at x in [s,t] of the kernel rescaled onto [s,t].
  double rescaled(double s, double t, double x) const;

  // Textual form used by the CLI and in reports: "rect", "epa", "holder:<b>".
  std::string spec() const;
  static Kernel parse(std::string_view spec);

  bool operator==(const Kernel&) const = default;

 private:
  Kernel(KernelKind kind, double beta) : kind_(kind), beta_(beta) {}
  KernelKind kind_;
  double beta_;
};

Kernel make_kernel(KernelKind kind, std::optional<double> beta = std::nullopt);

double rescale_eval(const Kernel& k, double s, double t, double x);

// ||gamma_beta||_2^2 = int_{-1}^{1} (1-|x|^beta)^2 dx
//                    = 2 (1 - 2/(beta+1) + 1/(2 beta+1)),  0 < beta <= 1.
double gamma_norm_sq(double beta);

}  // namespace msrank
