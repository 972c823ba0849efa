#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace msrank {

enum class ErrorFamily { Normal, Laplace, Logistic, StudentT };

// Symmetric error law. The single parameter is the family's natural one:
// standard deviation (normal), rate (Laplace), scale (logistic), degrees of
// freedom (Student-t).
struct ErrorLaw {
  ErrorFamily family = ErrorFamily::Normal;
  double param = 1.0;

  static ErrorLaw normal(double sigma);
  static ErrorLaw laplace(double lambda);
  static ErrorLaw logistic(double scale);
  static ErrorLaw student_t(double nu);

  double density(double x) const;
  // f'(x)/f(x), almost everywhere.
  double score(double x) const;

  // "normal:1", "laplace:2", "logistic:0.5", "student:3"
  std::string spec() const;
  static ErrorLaw parse(std::string_view spec);

  bool operator==(const ErrorLaw&) const = default;
};

// I(f) = int (f'/f)^2 f. Closed forms: normal sigma^-2, Laplace lambda^2,
// logistic 1/(3 s^2); Student-t (nu > 1 required) by adaptive quadrature.
double fisher_information(const ErrorLaw& law);

// int f^2. Closed forms: normal 1/(2 sigma sqrt(pi)), Laplace lambda/4,
// logistic 1/(6 s); Student-t by quadrature.
double density_l2(const ErrorLaw& law);

// 12 (int f^2)^2 / I(f): sample-size ratio of the signed-rank test against
// the sup-norm-optimal test. 3/pi for any normal, 1 for any logistic, 3/4
// for any Laplace.
double efficiency_ratio(const ErrorLaw& law);

struct DetectionBounds {
  double lower;  // d_*: no test can detect below this boundary
  double upper;  // d^*: the signed-rank test detects above this boundary
};

// d_*   = (2 L^(1/beta) / ((2 beta + 1) I(f)        ||gamma_beta||_2^2))^(beta/(2 beta+1))
// d^*   = (2 L^(1/beta) / ((2 beta + 1) 12 (int f^2)^2 ||gamma_beta||_2^2))^(beta/(2 beta+1))
DetectionBounds detection_constants(double beta, double holder_l,
                                    const ErrorLaw& law);

// rho_n = ((log n)/n)^(beta/(2 beta + 1)), natural log.
double rate_rho(std::size_t n, double beta);

// Adaptive Simpson quadrature with absolute tolerance; exposed because the
// simulation and test layers reuse it.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol);

// Integration cutoff T with P(|X| > T) < 1e-12 under the law.
double tail_cutoff(const ErrorLaw& law);

}  // namespace msrank
