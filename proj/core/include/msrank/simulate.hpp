#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "msrank/calibrate.hpp"
#include "msrank/dataset.hpp"
#include "msrank/gaussian.hpp"
#include "msrank/theory.hpp"

namespace msrank {

// Design distribution: points are placed at the quantiles X_i = H^{-1}(i/n).
// The density must be strictly positive and continuous on [0,1].
struct DesignDensity {
  enum class Kind { Uniform, Linear, CustomQuantile };

  Kind kind = Kind::Uniform;
  double slope = 0.0;  // linear: h(x) proportional to 1 + slope * x
  std::function<double(double)> custom_quantile;
  std::function<double(double)> custom_density;

  static DesignDensity uniform() { return {}; }
  // slope > -1 keeps the density positive on [0,1]
  static DesignDensity linear(double slope);
  static DesignDensity custom(std::function<double(double)> quantile,
                              std::function<double(double)> density);

  double quantile_at(double u) const;  // H^{-1}(u), u in (0,1]
  double density_at(double x) const;   // h(x), x in [0,1]

  std::string spec() const;
  static DesignDensity parse(std::string_view spec);
};

std::vector<double> gen_design(std::size_t n, const DesignDensity& dd);

// Regression function under the alternative. The bump shape is
// A * gamma_beta((x-x0)/w) with gamma_beta(u) = (1-|u|^beta) on |u| <= 1 and
// 0 outside; two_bump places bumps of opposite sign at two centers. With
// over_sqrt_h set, emitted values are l(x)/sqrt(h(x)).
struct SignalSpec {
  enum class Kind { Zero, Constant, Bump, TwoBump, CustomSamples };

  Kind kind = Kind::Zero;
  double amplitude = 0.0;
  double center = 0.5;
  double center2 = 0.75;
  double halfwidth = 0.1;
  double shape_beta = 1.0;
  std::vector<double> samples;  // custom, one value per design point
  bool over_sqrt_h = false;

  static SignalSpec zero() { return {}; }
  static SignalSpec constant(double a);
  static SignalSpec bump(double amplitude, double center, double halfwidth,
                         double shape_beta);
  static SignalSpec two_bump(double amplitude, double center_pos,
                             double center_neg, double halfwidth,
                             double shape_beta);
  static SignalSpec custom(std::vector<double> samples);

  // Same shape with the amplitude replaced; used for power grids.
  SignalSpec with_amplitude(double a) const;

  double eval(double x, std::size_t i, const DesignDensity& dd) const;
};

// Noise scale profile sigma(x) > 0 on [0,1].
struct NoiseProfile {
  enum class Kind { Constant, Linear, CustomSamples };

  Kind kind = Kind::Constant;
  double a = 1.0;  // constant scale, or intercept of a + b x
  double b = 0.0;
  std::vector<double> samples;

  static NoiseProfile constant(double scale = 1.0);
  static NoiseProfile linear(double intercept, double slope);
  static NoiseProfile custom(std::vector<double> samples);

  double scale_at(double x, std::size_t i) const;

  std::string spec() const;
  static NoiseProfile parse(std::string_view spec);
};

// Error law plus scale profile. Draws use the unit-parameter form of the
// family (normal sd 1, Laplace rate 1, logistic scale 1, Student-t nu); all
// scale comes from the profile, so the marginals stay symmetric about zero.
struct NoiseSpec {
  ErrorLaw law = ErrorLaw::student_t(3);
  NoiseProfile profile{};

  static NoiseSpec of(const ErrorLaw& law,
                      NoiseProfile profile = NoiseProfile::constant());
};

// y_i = l(x_i) + sigma(x_i) eps_i, deterministic given the seed.
Dataset gen_dataset(std::size_t n, const DesignDensity& dd,
                    const SignalSpec& signal, const NoiseSpec& noise,
                    std::uint64_t seed);

struct LevelResult {
  std::size_t datasets = 0;
  std::size_t rejections = 0;
  double size = 0.0;
  double se = 0.0;
};

// Fraction of M null datasets rejected by run_test, with binomial standard
// error. Dataset i derives its data and MC seeds from (seed, i); datasets
// fan out over `threads` workers with order-independent aggregation.
LevelResult run_level_experiment(std::size_t datasets, std::size_t n,
                                 const DesignDensity& dd,
                                 const NoiseSpec& noise,
                                 const TestConfig& config, std::uint64_t seed,
                                 unsigned threads = 0);

struct PowerPoint {
  double amplitude = 0.0;
  double amplitude_rho = 0.0;  // amplitude / rho_n(n, rho_beta)
  std::size_t datasets = 0;
  std::size_t rejections = 0;
  double rate = 0.0;
  double se = 0.0;
};

// Rejection rate per amplitude; the shape's amplitude is replaced by each
// grid value in turn. rho_beta fixes the smoothness used for the rho_n
// reporting unit.
std::vector<PowerPoint> run_power_experiment(
    std::size_t datasets, std::size_t n, const DesignDensity& dd,
    const SignalSpec& shape, const std::vector<double>& amplitudes,
    const NoiseSpec& noise, const TestConfig& config, double rho_beta,
    std::uint64_t seed, unsigned threads = 0);

struct CompareResult {
  LevelResult signed_rank;
  LevelResult gaussian;
  std::size_t signed_rank_detections = 0;  // datasets with nonempty D_alpha
  std::size_t gaussian_detections = 0;
  double gaussian_kappa = 0.0;
};

// Paired size / false-detection experiment on null datasets: the conditional
// signed-rank test against the Gaussian-calibrated reference. Both configs
// must share kernel, windows and alpha. The Gaussian critical value is
// calibrated once (it does not depend on the data).
CompareResult run_robustness_comparison(std::size_t datasets, std::size_t n,
                                        const DesignDensity& dd,
                                        const NoiseSpec& noise,
                                        const TestConfig& config,
                                        const GaussianConfig& gauss_config,
                                        std::uint64_t seed,
                                        unsigned threads = 0);

}  // namespace msrank
