#include "msrank/theory.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "msrank/errors.hpp"
#include "msrank/kernel.hpp"

namespace msrank {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTailMass = 1e-12;

double require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw InvalidArgument(std::string(what) + " must be positive and finite");
  return v;
}

// log normalizing constant of the unit-scale Student-t density
double student_log_c(double nu) {
  return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
         0.5 * std::log(nu * kPi);
}

// force > 0 keeps subdividing regardless of the error estimate; long
// integration ranges with sharply concentrated integrands otherwise look
// flat-zero to the first coarse probes and get accepted prematurely.
double simpson_recurse(const std::function<double(double)>& f, double a,
                       double b, double fa, double fm, double fb, double whole,
                       double tol, int depth, int force) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (force <= 0 && (depth <= 0 || std::abs(delta) <= 15.0 * tol))
    return left + right + delta / 15.0;
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                         force - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                         force - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol) {
  if (!(a < b)) throw InvalidArgument("adaptive_simpson: need a < b");
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_recurse(f, a, b, fa, fm, fb, whole, abs_tol, 64, 10);
}

ErrorLaw ErrorLaw::normal(double sigma) {
  return {ErrorFamily::Normal, require_positive(sigma, "normal sigma")};
}
ErrorLaw ErrorLaw::laplace(double lambda) {
  return {ErrorFamily::Laplace, require_positive(lambda, "laplace lambda")};
}
ErrorLaw ErrorLaw::logistic(double scale) {
  return {ErrorFamily::Logistic, require_positive(scale, "logistic scale")};
}
ErrorLaw ErrorLaw::student_t(double nu) {
  require_positive(nu, "student-t degrees of freedom");
  if (nu < 1.0)
    throw InvalidArgument("student-t degrees of freedom must be >= 1");
  return {ErrorFamily::StudentT, nu};
}

double ErrorLaw::density(double x) const {
  switch (family) {
    case ErrorFamily::Normal: {
      const double z = x / param;
      return std::exp(-0.5 * z * z) / (param * std::sqrt(2.0 * kPi));
    }
    case ErrorFamily::Laplace:
      return 0.5 * param * std::exp(-param * std::abs(x));
    case ErrorFamily::Logistic: {
      const double e = std::exp(-std::abs(x) / param);
      const double d = 1.0 + e;
      return e / (param * d * d);
    }
    case ErrorFamily::StudentT: {
      const double nu = param;
      return std::exp(student_log_c(nu) -
                      0.5 * (nu + 1.0) * std::log1p(x * x / nu));
    }
  }
  return 0.0;
}

double ErrorLaw::score(double x) const {
  switch (family) {
    case ErrorFamily::Normal:
      return -x / (param * param);
    case ErrorFamily::Laplace:
      return x >= 0.0 ? -param : param;
    case ErrorFamily::Logistic: {
      const double t = std::tanh(0.5 * x / param);
      return -t / param;
    }
    case ErrorFamily::StudentT: {
      const double nu = param;
      return -(nu + 1.0) * x / (nu + x * x);
    }
  }
  return 0.0;
}

std::string ErrorLaw::spec() const {
  const char* name = "";
  switch (family) {
    case ErrorFamily::Normal:
      name = "normal";
      break;
    case ErrorFamily::Laplace:
      name = "laplace";
      break;
    case ErrorFamily::Logistic:
      name = "logistic";
      break;
    case ErrorFamily::StudentT:
      name = "student";
      break;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s:%.17g", name, param);
  return buf;
}

ErrorLaw ErrorLaw::parse(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  double value = 1.0;
  if (colon != std::string_view::npos) {
    const std::string_view num = spec.substr(colon + 1);
    const auto [ptr, ec] =
        std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc{} || ptr != num.data() + num.size())
      throw InvalidArgument("error law: cannot parse parameter in '" +
                            std::string(spec) + "'");
  }
  if (name == "normal" || name == "gaussian") return normal(value);
  if (name == "laplace") return laplace(value);
  if (name == "logistic") return logistic(value);
  if (name == "student" || name == "t" || name == "student_t")
    return student_t(value);
  throw InvalidArgument("unknown error law '" + std::string(spec) +
                        "' (expected normal|laplace|logistic|student[:p])");
}

double tail_cutoff(const ErrorLaw& law) {
  switch (law.family) {
    case ErrorFamily::Normal:
      return 9.0 * law.param;  // 2 Phi(-9) ~ 2e-19
    case ErrorFamily::Laplace:
      return 29.0 / law.param;  // exp(-29) ~ 2.5e-13
    case ErrorFamily::Logistic:
      return 30.0 * law.param;  // 2 exp(-30) ~ 1.9e-13
    case ErrorFamily::StudentT: {
      const double nu = law.param;
      const double c = std::exp(student_log_c(nu));
      double t = 64.0;
      while (t < 1e12) {
        double surv;
        if (nu > 1.0) {
          // P(X > t) <= C nu / (t (nu-1)) (1 + t^2/nu)^(-(nu-1)/2)
          surv = c * nu / (t * (nu - 1.0)) *
                 std::exp(-0.5 * (nu - 1.0) * std::log1p(t * t / nu));
        } else {
          surv = 0.5 - std::atan(t) / kPi;  // exact for nu = 1
        }
        if (2.0 * surv < kTailMass) break;
        t *= 2.0;
      }
      return t;
    }
  }
  return 64.0;
}

double fisher_information(const ErrorLaw& law) {
  switch (law.family) {
    case ErrorFamily::Normal:
      return 1.0 / (law.param * law.param);
    case ErrorFamily::Laplace:
      return law.param * law.param;
    case ErrorFamily::Logistic:
      return 1.0 / (3.0 * law.param * law.param);
    case ErrorFamily::StudentT: {
      if (!(law.param > 1.0))
        throw InvalidArgument(
            "fisher_information: student-t requires nu > 1");
      const double t = tail_cutoff(law);
      return adaptive_simpson(
          [&](double x) {
            const double s = law.score(x);
            return s * s * law.density(x);
          },
          -t, t, 1e-9);
    }
  }
  throw InvalidArgument("fisher_information: unsupported family");
}

double density_l2(const ErrorLaw& law) {
  switch (law.family) {
    case ErrorFamily::Normal:
      return 1.0 / (2.0 * law.param * std::sqrt(kPi));
    case ErrorFamily::Laplace:
      return 0.25 * law.param;
    case ErrorFamily::Logistic:
      return 1.0 / (6.0 * law.param);
    case ErrorFamily::StudentT: {
      const double t = tail_cutoff(law);
      return adaptive_simpson(
          [&](double x) {
            const double f = law.density(x);
            return f * f;
          },
          -t, t, 1e-9);
    }
  }
  throw InvalidArgument("density_l2: unsupported family");
}

double efficiency_ratio(const ErrorLaw& law) {
  const double l2 = density_l2(law);
  return 12.0 * l2 * l2 / fisher_information(law);
}

DetectionBounds detection_constants(double beta, double holder_l,
                                    const ErrorLaw& law) {
  if (!(beta > 0.0) || beta > 1.0)
    throw InvalidArgument("detection_constants: beta must lie in (0,1]");
  require_positive(holder_l, "Holder constant L");
  const double gamma_sq = gamma_norm_sq(beta);
  const double expo = beta / (2.0 * beta + 1.0);
  const double numer = 2.0 * std::pow(holder_l, 1.0 / beta);
  const double fisher = fisher_information(law);
  const double l2 = density_l2(law);
  const double lower =
      std::pow(numer / ((2.0 * beta + 1.0) * fisher * gamma_sq), expo);
  const double upper = std::pow(
      numer / ((2.0 * beta + 1.0) * 12.0 * l2 * l2 * gamma_sq), expo);
  return {lower, upper};
}

double rate_rho(std::size_t n, double beta) {
  if (n < 2) throw InvalidArgument("rate_rho: need n >= 2");
  if (!(beta > 0.0)) throw InvalidArgument("rate_rho: beta must be positive");
  const double nn = static_cast<double>(n);
  return std::pow(std::log(nn) / nn, beta / (2.0 * beta + 1.0));
}

}  // namespace msrank
