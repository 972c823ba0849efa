#include "msrank/kernel.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "msrank/errors.hpp"

namespace msrank {

Kernel Kernel::holder(double beta) {
  if (!(beta > 0.0))
    throw InvalidArgument("holder kernel: beta must be positive");
  if (beta > 1.0)
    throw InvalidArgument(
        "holder kernel: no closed form for beta > 1; only beta in (0,1] is "
        "supported");
  return Kernel(KernelKind::Holder, beta);
}

double Kernel::operator()(double x) const {
  assert(x >= 0.0 && x <= 1.0);
  switch (kind_) {
    case KernelKind::Rectangular:
      return 1.0;
    case KernelKind::Epanechnikov: {
      const double u = 2.0 * x - 1.0;
      return 1.0 - u * u;
    }
    case KernelKind::Holder:
      return 1.0 - std::pow(std::abs(2.0 * x - 1.0), beta_);
  }
  return 0.0;  // unreachable
}

double Kernel::rescaled(double s, double t, double x) const {
  if (!(s < t)) throw InvalidArgument("rescale: degenerate window, s >= t");
  return (*this)((x - s) / (t - s));
}

std::string Kernel::spec() const {
  switch (kind_) {
    case KernelKind::Rectangular:
      return "rect";
    case KernelKind::Epanechnikov:
      return "epa";
    case KernelKind::Holder: {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "holder:%.17g", beta_);
      return buf;
    }
  }
  return {};
}

Kernel Kernel::parse(std::string_view spec) {
  if (spec == "rect" || spec == "rectangular") return rectangular();
  if (spec == "epa" || spec == "epanechnikov") return epanechnikov();
  constexpr std::string_view prefix = "holder:";
  if (spec.substr(0, prefix.size()) == prefix) {
    const std::string_view num = spec.substr(prefix.size());
    double beta = 0.0;
    const auto [ptr, ec] =
        std::from_chars(num.data(), num.data() + num.size(), beta);
    if (ec != std::errc{} || ptr != num.data() + num.size())
      throw InvalidArgument("kernel spec: cannot parse beta in '" +
                            std::string(spec) + "'");
    return holder(beta);
  }
  throw InvalidArgument("unknown kernel spec '" + std::string(spec) +
                        "' (expected rect | epa | holder:<beta>)");
}

Kernel make_kernel(KernelKind kind, std::optional<double> beta) {
  switch (kind) {
    case KernelKind::Rectangular:
    case KernelKind::Epanechnikov:
      if (beta)
        throw InvalidArgument("beta is only meaningful for the holder kernel");
      return kind == KernelKind::Rectangular ? Kernel::rectangular()
                                             : Kernel::epanechnikov();
    case KernelKind::Holder:
      if (!beta) throw InvalidArgument("holder kernel requires beta");
      return Kernel::holder(*beta);
  }
  throw InvalidArgument("unknown kernel kind");
}

double rescale_eval(const Kernel& k, double s, double t, double x) {
  return k.rescaled(s, t, x);
}

double gamma_norm_sq(double beta) {
  if (!(beta > 0.0) || beta > 1.0)
    throw InvalidArgument("gamma_norm_sq: beta must lie in (0,1]");
  return 2.0 * (1.0 - 2.0 / (beta + 1.0) + 1.0 / (2.0 * beta + 1.0));
}

}  // namespace msrank
