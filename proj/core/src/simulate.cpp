#include "msrank/simulate.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

#include "msrank/errors.hpp"
#include "msrank/parallel.hpp"
#include "msrank/rng.hpp"

namespace msrank {

namespace {

double parse_number(std::string_view text, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw InvalidArgument(std::string("cannot parse ") + what + " in '" +
                          std::string(text) + "'");
  return v;
}

double sample_unit_error(const ErrorLaw& law, Rng& rng) {
  switch (law.family) {
    case ErrorFamily::Normal:
      return rng.next_normal();
    case ErrorFamily::Laplace:
      return rng.next_laplace();
    case ErrorFamily::Logistic:
      return rng.next_logistic();
    case ErrorFamily::StudentT: {
      const double nu = law.param;
      const int inu = static_cast<int>(std::llround(nu));
      if (std::abs(nu - inu) > 1e-9)
        throw InvalidArgument(
            "sampling student-t requires integer degrees of freedom");
      return rng.next_student_t(inu);
    }
  }
  throw InvalidArgument("sample_unit_error: unsupported family");
}

struct DerivedSeeds {
  std::uint64_t data;
  std::uint64_t mc;
};

DerivedSeeds dataset_seeds(std::uint64_t experiment_seed, std::size_t index) {
  Rng rng(experiment_seed, index);
  return {rng.next_u64(), rng.next_u64()};
}

}  // namespace

// ---------------------------------------------------------------------------
// DesignDensity
// ---------------------------------------------------------------------------

DesignDensity DesignDensity::linear(double slope) {
  if (!(slope > -1.0))
    throw InvalidArgument("linear design density: slope must exceed -1");
  DesignDensity dd;
  dd.kind = Kind::Linear;
  dd.slope = slope;
  return dd;
}

DesignDensity DesignDensity::custom(std::function<double(double)> quantile,
                                    std::function<double(double)> density) {
  if (!quantile)
    throw InvalidArgument("custom design density: quantile function required");
  DesignDensity dd;
  dd.kind = Kind::CustomQuantile;
  dd.custom_quantile = std::move(quantile);
  dd.custom_density = std::move(density);
  return dd;
}

double DesignDensity::quantile_at(double u) const {
  switch (kind) {
    case Kind::Uniform:
      return u;
    case Kind::Linear: {
      if (slope == 0.0) return u;
      // H(x) = (x + c x^2/2) / (1 + c/2); solve the quadratic for x
      const double c = slope;
      const double rhs = u * (1.0 + 0.5 * c);
      return (-1.0 + std::sqrt(1.0 + 2.0 * c * rhs)) / c;
    }
    case Kind::CustomQuantile:
      return custom_quantile(u);
  }
  return u;
}

double DesignDensity::density_at(double x) const {
  switch (kind) {
    case Kind::Uniform:
      return 1.0;
    case Kind::Linear:
      return (1.0 + slope * x) / (1.0 + 0.5 * slope);
    case Kind::CustomQuantile:
      if (!custom_density)
        throw InvalidArgument(
            "custom design density: density function required for sqrt(h) "
            "coupling");
      return custom_density(x);
  }
  return 1.0;
}

std::string DesignDensity::spec() const {
  switch (kind) {
    case Kind::Uniform:
      return "uniform";
    case Kind::Linear: {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "linear:%.17g", slope);
      return buf;
    }
    case Kind::CustomQuantile:
      return "custom";
  }
  return "uniform";
}

DesignDensity DesignDensity::parse(std::string_view spec) {
  if (spec == "uniform") return uniform();
  constexpr std::string_view prefix = "linear:";
  if (spec.substr(0, prefix.size()) == prefix)
    return linear(parse_number(spec.substr(prefix.size()), "design slope"));
  throw InvalidArgument("unknown design density '" + std::string(spec) +
                        "' (expected uniform | linear:<c>)");
}

std::vector<double> gen_design(std::size_t n, const DesignDensity& dd) {
  if (n < 2) throw InvalidArgument("gen_design: need n >= 2");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = dd.quantile_at(static_cast<double>(i + 1) / static_cast<double>(n));
  for (std::size_t i = 1; i < n; ++i)
    if (!(x[i - 1] < x[i]))
      throw InvalidArgument(
          "gen_design: quantile function produced non-increasing points");
  return x;
}

// ---------------------------------------------------------------------------
// SignalSpec / NoiseProfile / NoiseSpec
// ---------------------------------------------------------------------------

SignalSpec SignalSpec::constant(double a) {
  SignalSpec s;
  s.kind = Kind::Constant;
  s.amplitude = a;
  return s;
}

SignalSpec SignalSpec::bump(double amplitude, double center, double halfwidth,
                            double shape_beta) {
  if (!(halfwidth > 0.0))
    throw InvalidArgument("bump signal: halfwidth must be positive");
  if (!(shape_beta > 0.0))
    throw InvalidArgument("bump signal: shape beta must be positive");
  SignalSpec s;
  s.kind = Kind::Bump;
  s.amplitude = amplitude;
  s.center = center;
  s.halfwidth = halfwidth;
  s.shape_beta = shape_beta;
  return s;
}

SignalSpec SignalSpec::two_bump(double amplitude, double center_pos,
                                double center_neg, double halfwidth,
                                double shape_beta) {
  SignalSpec s = bump(amplitude, center_pos, halfwidth, shape_beta);
  s.kind = Kind::TwoBump;
  s.center2 = center_neg;
  return s;
}

SignalSpec SignalSpec::custom(std::vector<double> samples) {
  SignalSpec s;
  s.kind = Kind::CustomSamples;
  s.samples = std::move(samples);
  return s;
}

SignalSpec SignalSpec::with_amplitude(double a) const {
  SignalSpec s = *this;
  if (s.kind == Kind::Zero && a != 0.0) s.kind = Kind::Constant;
  s.amplitude = a;
  return s;
}

double SignalSpec::eval(double x, std::size_t i, const DesignDensity& dd) const {
  double value = 0.0;
  switch (kind) {
    case Kind::Zero:
      value = 0.0;
      break;
    case Kind::Constant:
      value = amplitude;
      break;
    case Kind::Bump: {
      const double u = (x - center) / halfwidth;
      value = std::abs(u) <= 1.0
                  ? amplitude * (1.0 - std::pow(std::abs(u), shape_beta))
                  : 0.0;
      break;
    }
    case Kind::TwoBump: {
      const auto shape = [&](double c) {
        const double u = (x - c) / halfwidth;
        return std::abs(u) <= 1.0 ? 1.0 - std::pow(std::abs(u), shape_beta)
                                  : 0.0;
      };
      value = amplitude * (shape(center) - shape(center2));
      break;
    }
    case Kind::CustomSamples:
      if (i >= samples.size())
        throw InvalidArgument("custom signal: fewer samples than design points");
      value = samples[i];
      break;
  }
  if (over_sqrt_h && value != 0.0) value /= std::sqrt(dd.density_at(x));
  return value;
}

NoiseProfile NoiseProfile::constant(double scale) {
  if (!(scale > 0.0))
    throw InvalidArgument("noise profile: constant scale must be positive");
  NoiseProfile p;
  p.kind = Kind::Constant;
  p.a = scale;
  return p;
}

NoiseProfile NoiseProfile::linear(double intercept, double slope) {
  if (!(intercept > 0.0) || !(intercept + slope > 0.0))
    throw InvalidArgument(
        "noise profile: linear scale must stay positive on [0,1]");
  NoiseProfile p;
  p.kind = Kind::Linear;
  p.a = intercept;
  p.b = slope;
  return p;
}

NoiseProfile NoiseProfile::custom(std::vector<double> samples) {
  for (const double s : samples)
    if (!(s > 0.0))
      throw InvalidArgument("noise profile: custom scales must be positive");
  NoiseProfile p;
  p.kind = Kind::CustomSamples;
  p.samples = std::move(samples);
  return p;
}

double NoiseProfile::scale_at(double x, std::size_t i) const {
  switch (kind) {
    case Kind::Constant:
      return a;
    case Kind::Linear:
      return a + b * x;
    case Kind::CustomSamples:
      if (i >= samples.size())
        throw InvalidArgument("noise profile: fewer samples than design points");
      return samples[i];
  }
  return a;
}

std::string NoiseProfile::spec() const {
  char buf[64];
  switch (kind) {
    case Kind::Constant:
      std::snprintf(buf, sizeof(buf), "constant:%.17g", a);
      return buf;
    case Kind::Linear:
      std::snprintf(buf, sizeof(buf), "linear:%.17g:%.17g", a, b);
      return buf;
    case Kind::CustomSamples:
      return "custom";
  }
  return "constant:1";
}

NoiseProfile NoiseProfile::parse(std::string_view spec) {
  if (spec == "constant") return constant(1.0);
  constexpr std::string_view cpre = "constant:";
  if (spec.substr(0, cpre.size()) == cpre)
    return constant(parse_number(spec.substr(cpre.size()), "noise scale"));
  constexpr std::string_view lpre = "linear:";
  if (spec.substr(0, lpre.size()) == lpre) {
    const std::string_view rest = spec.substr(lpre.size());
    const std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw InvalidArgument("noise profile: expected linear:<a>:<b>");
    return linear(parse_number(rest.substr(0, colon), "noise intercept"),
                  parse_number(rest.substr(colon + 1), "noise slope"));
  }
  throw InvalidArgument("unknown noise profile '" + std::string(spec) +
                        "' (expected constant[:s] | linear:<a>:<b>)");
}

NoiseSpec NoiseSpec::of(const ErrorLaw& law, NoiseProfile profile) {
  NoiseSpec ns;
  ns.law = law;
  ns.profile = std::move(profile);
  return ns;
}

Dataset gen_dataset(std::size_t n, const DesignDensity& dd,
                    const SignalSpec& signal, const NoiseSpec& noise,
                    std::uint64_t seed) {
  std::vector<double> x = gen_design(n, dd);
  std::vector<double> y(n);
  Rng rng(seed, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = sample_unit_error(noise.law, rng);
    y[i] = signal.eval(x[i], i, dd) + noise.profile.scale_at(x[i], i) * eps;
  }
  return Dataset(std::move(x), std::move(y));
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

LevelResult run_level_experiment(std::size_t datasets, std::size_t n,
                                 const DesignDensity& dd,
                                 const NoiseSpec& noise,
                                 const TestConfig& config, std::uint64_t seed,
                                 unsigned threads) {
  if (datasets < 1) throw InvalidArgument("level experiment: need M >= 1");
  config.validate();
  std::atomic<std::size_t> rejections{0};
  parallel_for(datasets, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const DerivedSeeds seeds = dataset_seeds(seed, i);
      const Dataset data =
          gen_dataset(n, dd, SignalSpec::zero(), noise, seeds.data);
      TestConfig cfg = config;
      cfg.seed = seeds.mc;
      cfg.threads = 1;
      if (run_test(data, cfg).reject) rejections.fetch_add(1);
    }
  });
  LevelResult out;
  out.datasets = datasets;
  out.rejections = rejections.load();
  out.size = static_cast<double>(out.rejections) / static_cast<double>(datasets);
  out.se = std::sqrt(out.size * (1.0 - out.size) /
                     static_cast<double>(datasets));
  return out;
}

std::vector<PowerPoint> run_power_experiment(
    std::size_t datasets, std::size_t n, const DesignDensity& dd,
    const SignalSpec& shape, const std::vector<double>& amplitudes,
    const NoiseSpec& noise, const TestConfig& config, double rho_beta,
    std::uint64_t seed, unsigned threads) {
  if (amplitudes.empty())
    throw InvalidArgument("power experiment: empty amplitude grid");
  for (const double a : amplitudes)
    if (a < 0.0)
      throw InvalidArgument("power experiment: amplitudes must be >= 0");
  config.validate();
  const double rho = rate_rho(n, rho_beta);
  std::vector<PowerPoint> points(amplitudes.size());
  for (std::size_t cell = 0; cell < amplitudes.size(); ++cell) {
    const SignalSpec signal = shape.with_amplitude(amplitudes[cell]);
    std::atomic<std::size_t> rejections{0};
    parallel_for(datasets, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        // cell-specific stream so amplitude grids are independent draws
        const DerivedSeeds seeds =
            dataset_seeds(seed + 0x51ed2701u * (cell + 1), i);
        const Dataset data = gen_dataset(n, dd, signal, noise, seeds.data);
        TestConfig cfg = config;
        cfg.seed = seeds.mc;
        cfg.threads = 1;
        if (run_test(data, cfg).reject) rejections.fetch_add(1);
      }
    });
    PowerPoint& p = points[cell];
    p.amplitude = amplitudes[cell];
    p.amplitude_rho = amplitudes[cell] / rho;
    p.datasets = datasets;
    p.rejections = rejections.load();
    p.rate = static_cast<double>(p.rejections) / static_cast<double>(datasets);
    p.se = std::sqrt(p.rate * (1.0 - p.rate) / static_cast<double>(datasets));
  }
  return points;
}

CompareResult run_robustness_comparison(std::size_t datasets, std::size_t n,
                                        const DesignDensity& dd,
                                        const NoiseSpec& noise,
                                        const TestConfig& config,
                                        const GaussianConfig& gauss_config,
                                        std::uint64_t seed, unsigned threads) {
  if (datasets < 1) throw InvalidArgument("comparison: need M >= 1");
  config.validate();
  gauss_config.validate();
  if (!(config.kernel == gauss_config.kernel) ||
      !(config.policy == gauss_config.policy) ||
      config.alpha != gauss_config.alpha)
    throw InvalidArgument(
        "comparison: the two tests must share kernel, windows and alpha");
  if (!gauss_config.sigma)
    throw InvalidArgument(
        "comparison: the Gaussian reference needs an explicit sigma");
  const WeightTable weight_table(gen_design(n, dd), gauss_config.kernel,
                                 gauss_config.policy,
                                 gauss_config.coeff_budget);
  // unconditional: one calibration serves every dataset
  const double gauss_kappa =
      gaussian_calibrate(weight_table, gauss_config.replicates,
                         gauss_config.alpha, gauss_config.seed, threads);
  std::atomic<std::size_t> sr_reject{0};
  std::atomic<std::size_t> sr_detect{0};
  std::atomic<std::size_t> g_reject{0};
  std::atomic<std::size_t> g_detect{0};
  parallel_for(datasets, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const DerivedSeeds seeds = dataset_seeds(seed, i);
      const Dataset data =
          gen_dataset(n, dd, SignalSpec::zero(), noise, seeds.data);
      TestConfig cfg = config;
      cfg.seed = seeds.mc;
      cfg.threads = 1;
      const TestReport sr = run_test(data, cfg);
      if (sr.reject) sr_reject.fetch_add(1);
      if (!sr.detection.intervals.empty()) sr_detect.fetch_add(1);
      const ScanResult gs = gaussian_scan(weight_table, data.y(),
                                          *gauss_config.sigma,
                                          /*keep_records=*/true);
      if (gs.t_n > gauss_kappa) g_reject.fetch_add(1);
      const DetectionSet gd = detect_intervals(gs, gauss_kappa, data,
                                               gauss_config.one_sided);
      if (!gd.intervals.empty()) g_detect.fetch_add(1);
    }
  });
  const auto level = [datasets](std::size_t rejections) {
    LevelResult r;
    r.datasets = datasets;
    r.rejections = rejections;
    r.size = static_cast<double>(rejections) / static_cast<double>(datasets);
    r.se =
        std::sqrt(r.size * (1.0 - r.size) / static_cast<double>(datasets));
    return r;
  };
  CompareResult out;
  out.signed_rank = level(sr_reject.load());
  out.gaussian = level(g_reject.load());
  out.signed_rank_detections = sr_detect.load();
  out.gaussian_detections = g_detect.load();
  out.gaussian_kappa = gauss_kappa;
  return out;
}

}  // namespace msrank
