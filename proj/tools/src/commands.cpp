#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv.hpp"
#include "msrank/calibrate.hpp"
#include "msrank/errors.hpp"
#include "msrank/gaussian.hpp"
#include "msrank/simulate.hpp"
#include "msrank/theory.hpp"
#include "msrank/version.hpp"
#include "report_io.hpp"
#include "svg.hpp"

namespace msrank::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// JSON config files for the simulation commands: a flat object whose keys
// are the long option names without leading dashes. Values given on the
// command line always win over config values.
class ConfigApplier {
 public:
  ConfigApplier(const CLI::App* cmd, const std::string& path) : cmd_(cmd) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file '" + path + "'");
    try {
      in >> doc_;
    } catch (const nlohmann::json::exception& e) {
      throw DataError("config file '" + path + "' is not valid JSON: " +
                      e.what());
    }
    if (!doc_.is_object())
      throw DataError("config file '" + path +
                      "' must hold a JSON object of option values");
  }

  template <class T>
  void set(const char* key, T& target) {
    seen_.push_back(key);
    if (!doc_.contains(key)) return;
    if (cmd_->count(std::string("--") + key) > 0) return;
    try {
      target = doc_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw InvalidArgument(std::string("config key '") + key +
                            "' has the wrong type");
    }
  }

  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      (void)value;
      bool known = false;
      for (const char* k : seen_)
        if (key == k) known = true;
      if (!known)
        throw InvalidArgument("unknown config key '" + key + "'");
    }
  }

 private:
  const CLI::App* cmd_;
  nlohmann::json doc_;
  std::vector<const char*> seen_;
};

struct ScanOpts {
  std::string kernel = "epa";
  std::string policy = "auto";
  std::size_t min_window = 2;
  double alpha = 0.1;
  std::size_t mc = 999;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool one_sided = false;
};

void add_scan_opts(CLI::App* cmd, ScanOpts& o) {
  cmd->add_option("--kernel", o.kernel, "rect | epa | holder:<beta>")
      ->capture_default_str();
  cmd->add_option("--policy", o.policy,
                  "auto | exhaustive | dyadic (auto = exhaustive for n <= "
                  "500, dyadic above)")
      ->capture_default_str();
  cmd->add_option("--min-window", o.min_window, "smallest window size (>= 2)")
      ->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "significance level in (0,1)")
      ->capture_default_str();
  cmd->add_option("--mc", o.mc, "Monte Carlo replicate count B")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "RNG seed")
      ->envname("MSRANK_SEED")
      ->capture_default_str();
  cmd->add_option("--threads", o.threads, "worker thread cap, 0 = all cores")
      ->capture_default_str();
  cmd->add_flag("--one-sided", o.one_sided,
                "restrict the detection set to positive deviations");
}

void apply_scan_config(ConfigApplier& cfg, ScanOpts& o) {
  cfg.set("kernel", o.kernel);
  cfg.set("policy", o.policy);
  cfg.set("min-window", o.min_window);
  cfg.set("alpha", o.alpha);
  cfg.set("mc", o.mc);
  cfg.set("seed", o.seed);
  cfg.set("threads", o.threads);
  cfg.set("one-sided", o.one_sided);
}

WindowPolicy resolve_policy(const ScanOpts& o, std::size_t n) {
  if (o.policy == "auto")
    return n <= 500 ? WindowPolicy::exhaustive(o.min_window)
                    : WindowPolicy::dyadic(o.min_window);
  return WindowPolicy::parse(o.policy, o.min_window);
}

TestConfig make_test_config(const ScanOpts& o, std::size_t n) {
  TestConfig cfg;
  cfg.alpha = o.alpha;
  cfg.replicates = o.mc;
  cfg.seed = o.seed;
  cfg.kernel = Kernel::parse(o.kernel);
  cfg.policy = resolve_policy(o, n);
  cfg.one_sided = o.one_sided;
  cfg.threads = o.threads;
  cfg.validate();
  return cfg;
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_text_file(out_path, content);
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

std::string level_json(const char* command, const std::string& law,
                       const std::string& design, const std::string& hetero,
                       std::size_t n, const ScanOpts& o,
                       const LevelResult& r) {
  std::string out = "{\n";
  out += "  \"command\": \"" + std::string(command) + "\",\n";
  out += "  \"law\": \"" + law + "\",\n";
  out += "  \"design\": \"" + design + "\",\n";
  out += "  \"hetero\": \"" + hetero + "\",\n";
  out += "  \"n\": " + std::to_string(n) + ",\n";
  out += "  \"alpha\": " + fmt(o.alpha) + ",\n";
  out += "  \"b\": " + std::to_string(o.mc) + ",\n";
  out += "  \"seed\": " + std::to_string(o.seed) + ",\n";
  out += "  \"kernel\": \"" + o.kernel + "\",\n";
  out += "  \"attainable_level\": " + fmt(attainable_level(o.mc, o.alpha)) +
         ",\n";
  out += "  \"datasets\": " + std::to_string(r.datasets) + ",\n";
  out += "  \"rejections\": " + std::to_string(r.rejections) + ",\n";
  out += "  \"size\": " + fmt(r.size) + ",\n";
  out += "  \"se\": " + fmt(r.se) + "\n";
  out += "}\n";
  return out;
}

SignalSpec parse_shape(const std::string& spec, bool over_sqrt_h) {
  SignalSpec s;
  if (spec == "constant") {
    s = SignalSpec::constant(1.0);
  } else if (spec == "twobump") {
    s = SignalSpec::two_bump(1.0, 0.25, 0.75, 0.1, 1.0);
  } else if (spec.rfind("bump:", 0) == 0 || spec.rfind("twobump:", 0) == 0) {
    std::vector<double> v;
    std::stringstream ss(spec.substr(spec.find(':') + 1));
    std::string tok;
    while (std::getline(ss, tok, ':')) v.push_back(std::stod(tok));
    if (spec.rfind("bump:", 0) == 0) {
      if (v.size() != 3)
        throw InvalidArgument("shape: expected bump:<x0>:<w>:<beta>");
      s = SignalSpec::bump(1.0, v[0], v[1], v[2]);
    } else {
      if (v.size() != 4)
        throw InvalidArgument("shape: expected twobump:<x1>:<x2>:<w>:<beta>");
      s = SignalSpec::two_bump(1.0, v[0], v[1], v[2], v[3]);
    }
  } else {
    throw InvalidArgument("unknown shape '" + spec +
                          "' (expected constant | bump:<x0>:<w>:<beta> | "
                          "twobump[:<x1>:<x2>:<w>:<beta>])");
  }
  s.over_sqrt_h = over_sqrt_h;
  return s;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw InvalidArgument("empty numeric list '" + csv + "'");
  return out;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

struct TestCmd {
  std::string input;
  bool header = false;
  ScanOpts scan;
  std::string format = "json";
  std::string out;
  std::string svg;
  bool timing = false;

  void run() const {
    const Dataset data = load_csv(input, header);
    const TestConfig cfg = make_test_config(scan, data.size());
    const auto t0 = std::chrono::steady_clock::now();
    TestReport report = run_test(data, cfg);
    if (timing) report.timing_ms = elapsed_ms(t0);
    write_output(out, format == "table" ? emit_report_table(report)
                                        : emit_report_json(report));
    if (!svg.empty()) write_text_file(svg, render_svg(data, report));
  }
};

struct GaussCmd {
  std::string input;
  bool header = false;
  ScanOpts scan;
  std::string sigma = "estimate";
  std::string format = "json";
  std::string out;
  std::string svg;
  bool timing = false;

  void run() const {
    const Dataset data = load_csv(input, header);
    GaussianConfig cfg;
    cfg.alpha = scan.alpha;
    cfg.replicates = scan.mc;
    cfg.seed = scan.seed;
    cfg.kernel = Kernel::parse(scan.kernel);
    cfg.policy = resolve_policy(scan, data.size());
    cfg.one_sided = scan.one_sided;
    cfg.threads = scan.threads;
    if (sigma == "estimate") {
      cfg.sigma.reset();
    } else {
      cfg.sigma = std::stod(sigma);
    }
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    TestReport report = gaussian_test(data, cfg);
    if (timing) report.timing_ms = elapsed_ms(t0);
    write_output(out, format == "table" ? emit_report_table(report)
                                        : emit_report_json(report));
    if (!svg.empty()) write_text_file(svg, render_svg(data, report));
  }
};

struct ConstantsCmd {
  std::string law = "normal:1";
  double beta = 1.0;
  double holder_l = 1.0;
  std::size_t n = 100;
  std::string out;

  void run() const {
    const ErrorLaw el = ErrorLaw::parse(law);
    const double fisher = fisher_information(el);
    const double l2 = density_l2(el);
    const double eff = efficiency_ratio(el);
    const DetectionBounds bounds = detection_constants(beta, holder_l, el);
    std::string j = "{\n";
    j += "  \"law\": \"" + el.spec() + "\",\n";
    j += "  \"beta\": " + fmt(beta) + ",\n";
    j += "  \"l\": " + fmt(holder_l) + ",\n";
    j += "  \"n\": " + std::to_string(n) + ",\n";
    j += "  \"fisher\": " + fmt(fisher) + ",\n";
    j += "  \"l2mass\": " + fmt(l2) + ",\n";
    j += "  \"efficiency\": " + fmt(eff) + ",\n";
    j += "  \"d_star_lower\": " + fmt(bounds.lower) + ",\n";
    j += "  \"d_star_upper\": " + fmt(bounds.upper) + ",\n";
    j += "  \"gamma_norm_sq\": " + fmt(gamma_norm_sq(beta)) + ",\n";
    j += "  \"rho_n\": " + fmt(rate_rho(n, beta)) + "\n";
    j += "}\n";
    write_output(out, j);
  }
};

struct OracleCmd {
  std::string input;
  bool header = false;
  std::string kernel = "epa";
  std::size_t min_window = 2;
  double alpha = 0.1;
  std::size_t limit = 12;
  std::string out;

  void run() const {
    const Dataset data = load_csv(input, header);
    const CoefficientTable table(data, Kernel::parse(kernel),
                                 WindowPolicy::exhaustive(min_window));
    const ExactNullDistribution dist = exact_null_distribution(table, limit);
    const ScanResult observed = scan(table, data.sign_y());
    // P(T_n >= observed) over all 2^n sign vectors
    std::uint64_t at_least = 0;
    for (std::size_t i = 0; i < dist.values.size(); ++i)
      if (dist.values[i] >= observed.t_n) at_least += dist.counts[i];
    std::string j = "{\n";
    j += "  \"command\": \"oracle\",\n";
    j += "  \"n\": " + std::to_string(data.size()) + ",\n";
    j += "  \"kernel\": \"" + kernel + "\",\n";
    j += "  \"min_window\": " + std::to_string(min_window) + ",\n";
    j += "  \"alpha\": " + fmt(alpha) + ",\n";
    j += "  \"observed_t_n\": " + fmt(observed.t_n) + ",\n";
    j += "  \"kappa_exact\": " + fmt(dist.generalized_quantile(alpha)) + ",\n";
    j += "  \"p_exact\": " +
         fmt(static_cast<double>(at_least) / static_cast<double>(dist.total())) +
         ",\n";
    j += "  \"sign_vectors\": " + std::to_string(dist.total()) + ",\n";
    j += "  \"atoms\": " + std::to_string(dist.values.size()) + ",\n";
    j += "  \"values\": [";
    for (std::size_t i = 0; i < dist.values.size(); ++i)
      j += (i ? ", " : "") + fmt(dist.values[i]);
    j += "],\n  \"counts\": [";
    for (std::size_t i = 0; i < dist.counts.size(); ++i)
      j += (i ? ", " : "") + std::to_string(dist.counts[i]);
    j += "]\n}\n";
    write_output(out, j);
  }
};

struct LevelSimCmd {
  std::string law = "student:3";
  std::string design = "uniform";
  std::string hetero = "constant:1";
  std::size_t n = 50;
  std::size_t datasets = 1000;
  ScanOpts scan;
  std::string out;
  std::string csv;
  std::string config;
  const CLI::App* app = nullptr;

  void run() {
    if (!config.empty()) {
      ConfigApplier cfg(app, config);
      cfg.set("law", law);
      cfg.set("design", design);
      cfg.set("hetero", hetero);
      cfg.set("n", n);
      cfg.set("datasets", datasets);
      cfg.set("out", out);
      cfg.set("csv", csv);
      apply_scan_config(cfg, scan);
      cfg.finish();
    }
    const DesignDensity dd = DesignDensity::parse(design);
    const NoiseSpec noise =
        NoiseSpec::of(ErrorLaw::parse(law), NoiseProfile::parse(hetero));
    TestConfig cfg = make_test_config(scan, n);
    const LevelResult r = run_level_experiment(datasets, n, dd, noise, cfg,
                                               scan.seed, scan.threads);
    write_output(out, level_json("level-sim", law, design, hetero, n, scan, r));
    if (!csv.empty()) {
      std::string t = "law,design,hetero,n,alpha,b,datasets,rejections,rate,se\n";
      t += law + "," + design + "," + hetero + "," + std::to_string(n) + "," +
           fmt(scan.alpha) + "," + std::to_string(scan.mc) + "," +
           std::to_string(r.datasets) + "," + std::to_string(r.rejections) +
           "," + fmt(r.size) + "," + fmt(r.se) + "\n";
      write_text_file(csv, t);
    }
  }
};

struct PowerSimCmd {
  std::string law = "normal:1";
  std::string design = "uniform";
  std::string hetero = "constant:1";
  std::string shape = "constant";
  bool over_sqrt_h = false;
  std::string amplitudes = "0,1,2,4,8";
  std::string amp_unit = "rho";
  double rho_beta = 1.0;
  std::size_t n = 100;
  std::size_t datasets = 200;
  ScanOpts scan;
  std::string out;
  std::string csv;
  std::string config;
  const CLI::App* app = nullptr;

  void run() {
    if (!config.empty()) {
      ConfigApplier cfg(app, config);
      cfg.set("law", law);
      cfg.set("design", design);
      cfg.set("hetero", hetero);
      cfg.set("shape", shape);
      cfg.set("over-sqrt-h", over_sqrt_h);
      cfg.set("amplitudes", amplitudes);
      cfg.set("amp-unit", amp_unit);
      cfg.set("rho-beta", rho_beta);
      cfg.set("n", n);
      cfg.set("datasets", datasets);
      cfg.set("out", out);
      cfg.set("csv", csv);
      apply_scan_config(cfg, scan);
      cfg.finish();
    }
    const DesignDensity dd = DesignDensity::parse(design);
    const NoiseSpec noise =
        NoiseSpec::of(ErrorLaw::parse(law), NoiseProfile::parse(hetero));
    const SignalSpec base = parse_shape(shape, over_sqrt_h);
    std::vector<double> amps = parse_list(amplitudes);
    if (amp_unit == "rho") {
      const double rho = rate_rho(n, rho_beta);
      for (double& a : amps) a *= rho;
    } else if (amp_unit != "abs") {
      throw InvalidArgument("--amp-unit must be rho or abs");
    }
    TestConfig cfg = make_test_config(scan, n);
    const std::vector<PowerPoint> points = run_power_experiment(
        datasets, n, dd, base, amps, noise, cfg, rho_beta, scan.seed,
        scan.threads);
    std::string j = "{\n";
    j += "  \"command\": \"power-sim\",\n";
    j += "  \"law\": \"" + law + "\",\n";
    j += "  \"design\": \"" + design + "\",\n";
    j += "  \"hetero\": \"" + hetero + "\",\n";
    j += "  \"shape\": \"" + shape + "\",\n";
    j += "  \"n\": " + std::to_string(n) + ",\n";
    j += "  \"alpha\": " + fmt(scan.alpha) + ",\n";
    j += "  \"b\": " + std::to_string(scan.mc) + ",\n";
    j += "  \"seed\": " + std::to_string(scan.seed) + ",\n";
    j += "  \"rho_n\": " + fmt(rate_rho(n, rho_beta)) + ",\n";
    j += "  \"points\": [";
    for (std::size_t i = 0; i < points.size(); ++i) {
      const PowerPoint& p = points[i];
      j += i == 0 ? "\n" : ",\n";
      j += "    {\"amplitude\": " + fmt(p.amplitude) +
           ", \"amplitude_rho\": " + fmt(p.amplitude_rho) +
           ", \"datasets\": " + std::to_string(p.datasets) +
           ", \"rejections\": " + std::to_string(p.rejections) +
           ", \"rate\": " + fmt(p.rate) + ", \"se\": " + fmt(p.se) + "}";
    }
    j += "\n  ]\n}\n";
    write_output(out, j);
    if (!csv.empty()) {
      std::string t = "amplitude,amplitude_rho,datasets,rejections,rate,se\n";
      for (const PowerPoint& p : points)
        t += fmt(p.amplitude) + "," + fmt(p.amplitude_rho) + "," +
             std::to_string(p.datasets) + "," + std::to_string(p.rejections) +
             "," + fmt(p.rate) + "," + fmt(p.se) + "\n";
      write_text_file(csv, t);
    }
  }
};

struct CompareSimCmd {
  std::string law = "student:3";
  std::string design = "uniform";
  double sigma = 1.7320508075688772;  // sqrt(3) = sd of Student-t(3)
  std::size_t n = 100;
  std::size_t datasets = 500;
  ScanOpts scan;
  std::string out;
  std::string csv;
  std::string config;
  const CLI::App* app = nullptr;

  void run() {
    if (!config.empty()) {
      ConfigApplier cfg(app, config);
      cfg.set("law", law);
      cfg.set("design", design);
      cfg.set("sigma", sigma);
      cfg.set("n", n);
      cfg.set("datasets", datasets);
      cfg.set("out", out);
      cfg.set("csv", csv);
      apply_scan_config(cfg, scan);
      cfg.finish();
    }
    const DesignDensity dd = DesignDensity::parse(design);
    const NoiseSpec noise = NoiseSpec::of(ErrorLaw::parse(law));
    TestConfig cfg = make_test_config(scan, n);
    GaussianConfig gcfg;
    gcfg.alpha = scan.alpha;
    gcfg.replicates = scan.mc;
    gcfg.seed = scan.seed ^ 0x9E3779B97F4A7C15ull;
    gcfg.kernel = cfg.kernel;
    gcfg.policy = cfg.policy;
    gcfg.sigma = sigma;
    gcfg.one_sided = scan.one_sided;
    const CompareResult r = run_robustness_comparison(
        datasets, n, dd, noise, cfg, gcfg, scan.seed, scan.threads);
    std::string j = "{\n";
    j += "  \"command\": \"compare-sim\",\n";
    j += "  \"law\": \"" + law + "\",\n";
    j += "  \"design\": \"" + design + "\",\n";
    j += "  \"sigma\": " + fmt(sigma) + ",\n";
    j += "  \"n\": " + std::to_string(n) + ",\n";
    j += "  \"alpha\": " + fmt(scan.alpha) + ",\n";
    j += "  \"b\": " + std::to_string(scan.mc) + ",\n";
    j += "  \"seed\": " + std::to_string(scan.seed) + ",\n";
    j += "  \"datasets\": " + std::to_string(datasets) + ",\n";
    j += "  \"signed_rank\": {\"rejections\": " +
         std::to_string(r.signed_rank.rejections) +
         ", \"rate\": " + fmt(r.signed_rank.size) +
         ", \"se\": " + fmt(r.signed_rank.se) +
         ", \"false_detection_datasets\": " +
         std::to_string(r.signed_rank_detections) + "},\n";
    j += "  \"gaussian_reference\": {\"rejections\": " +
         std::to_string(r.gaussian.rejections) +
         ", \"rate\": " + fmt(r.gaussian.size) +
         ", \"se\": " + fmt(r.gaussian.se) +
         ", \"false_detection_datasets\": " +
         std::to_string(r.gaussian_detections) +
         ", \"kappa\": " + fmt(r.gaussian_kappa) + "}\n";
    j += "}\n";
    write_output(out, j);
    if (!csv.empty()) {
      std::string t = "test,datasets,rejections,rate,se,false_detection_datasets\n";
      t += "signed_rank," + std::to_string(datasets) + "," +
           std::to_string(r.signed_rank.rejections) + "," +
           fmt(r.signed_rank.size) + "," + fmt(r.signed_rank.se) + "," +
           std::to_string(r.signed_rank_detections) + "\n";
      t += "gaussian," + std::to_string(datasets) + "," +
           std::to_string(r.gaussian.rejections) + "," + fmt(r.gaussian.size) +
           "," + fmt(r.gaussian.se) + "," +
           std::to_string(r.gaussian_detections) + "\n";
      write_text_file(csv, t);
    }
  }
};

void add_io_opts(CLI::App* cmd, std::string& input, bool& header,
                 std::string& out) {
  cmd->add_option("-i,--input", input, "CSV file with two columns x,y")
      ->required();
  cmd->add_flag("--header", header, "skip a header line");
  cmd->add_option("-o,--out", out, "write the report here instead of stdout");
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{
      "msrank " + std::string(kVersion) +
      " - conditional multiscale signed-rank goodness-of-fit testing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  TestCmd test_cmd;
  {
    CLI::App* c = app.add_subcommand(
        "test", "conditional multiscale signed-rank test of y = 0");
    add_io_opts(c, test_cmd.input, test_cmd.header, test_cmd.out);
    add_scan_opts(c, test_cmd.scan);
    c->add_option("--format", test_cmd.format, "json | table")
        ->capture_default_str();
    c->add_option("--svg", test_cmd.svg, "also render data + intervals to SVG");
    c->add_flag("--timing", test_cmd.timing, "include timing_ms in the report");
    c->callback([&] { test_cmd.run(); });
  }

  GaussCmd gauss_cmd;
  {
    CLI::App* c = app.add_subcommand(
        "gauss-test", "Gaussian-calibrated multiscale reference test");
    add_io_opts(c, gauss_cmd.input, gauss_cmd.header, gauss_cmd.out);
    add_scan_opts(c, gauss_cmd.scan);
    c->add_option("--sigma", gauss_cmd.sigma,
                  "noise sd for standardization, or 'estimate'")
        ->capture_default_str();
    c->add_option("--format", gauss_cmd.format, "json | table")
        ->capture_default_str();
    c->add_option("--svg", gauss_cmd.svg, "also render data + intervals to SVG");
    c->add_flag("--timing", gauss_cmd.timing, "include timing_ms in the report");
    c->callback([&] { gauss_cmd.run(); });
  }

  ConstantsCmd constants_cmd;
  {
    CLI::App* c = app.add_subcommand(
        "constants",
        "Fisher information, density L2 mass, efficiency and detection "
        "boundary constants");
    c->add_option("--law", constants_cmd.law,
                  "normal:<sigma> | laplace:<lambda> | logistic:<s> | "
                  "student:<nu>")
        ->capture_default_str();
    c->add_option("--beta", constants_cmd.beta, "Holder smoothness in (0,1]")
        ->capture_default_str();
    c->add_option("--L", constants_cmd.holder_l, "Holder constant L > 0")
        ->capture_default_str();
    c->add_option("--n", constants_cmd.n, "sample size for rho_n")
        ->capture_default_str();
    c->add_option("-o,--out", constants_cmd.out, "output file");
    c->callback([&] { constants_cmd.run(); });
  }

  OracleCmd oracle_cmd;
  {
    CLI::App* c = app.add_subcommand(
        "oracle",
        "exact conditional null distribution by full 2^n enumeration (n <= "
        "12)");
    add_io_opts(c, oracle_cmd.input, oracle_cmd.header, oracle_cmd.out);
    c->add_option("--kernel", oracle_cmd.kernel, "rect | epa | holder:<beta>")
        ->capture_default_str();
    c->add_option("--min-window", oracle_cmd.min_window, "smallest window size")
        ->capture_default_str();
    c->add_option("--alpha", oracle_cmd.alpha, "level for kappa_exact")
        ->capture_default_str();
    c->add_option("--limit", oracle_cmd.limit, "refuse enumeration above this n")
        ->capture_default_str();
    c->callback([&] { oracle_cmd.run(); });
  }

  LevelSimCmd level_cmd;
  {
    CLI::App* c = app.add_subcommand(
        "level-sim", "empirical size of the test on simulated null data");
    c->add_option("--law", level_cmd.law, "error law")->capture_default_str();
    c->add_option("--design", level_cmd.design, "uniform | linear:<c>")
        ->capture_default_str();
    c->add_option("--hetero", level_cmd.hetero,
                  "noise scale profile: constant[:s] | linear:<a>:<b>")
        ->capture_default_str();
    c->add_option("--n", level_cmd.n, "sample size")->capture_default_str();
    c->add_option("-M,--datasets", level_cmd.datasets, "number of datasets")
        ->capture_default_str();
    add_scan_opts(c, level_cmd.scan);
    c->add_option("-o,--out", level_cmd.out, "JSON output file");
    c->add_option("--csv", level_cmd.csv, "also write a CSV row table");
    c->add_option("--config", level_cmd.config,
                  "JSON config file (keys = option names; flags win)");
    level_cmd.app = c;
    c->callback([&] { level_cmd.run(); });
  }

  PowerSimCmd power_cmd;
  {
    CLI::App* c = app.add_subcommand(
        "power-sim", "rejection rate over a grid of signal amplitudes");
    c->add_option("--law", power_cmd.law, "error law")->capture_default_str();
    c->add_option("--design", power_cmd.design, "uniform | linear:<c>")
        ->capture_default_str();
    c->add_option("--hetero", power_cmd.hetero, "noise scale profile")
        ->capture_default_str();
    c->add_option("--shape", power_cmd.shape,
                  "constant | bump:<x0>:<w>:<beta> | "
                  "twobump[:<x1>:<x2>:<w>:<beta>]")
        ->capture_default_str();
    c->add_flag("--over-sqrt-h", power_cmd.over_sqrt_h,
                "divide the signal by sqrt(design density)");
    c->add_option("--amplitudes", power_cmd.amplitudes,
                  "comma separated amplitude grid")
        ->capture_default_str();
    c->add_option("--amp-unit", power_cmd.amp_unit,
                  "rho (multiples of rho_n) | abs")
        ->capture_default_str();
    c->add_option("--rho-beta", power_cmd.rho_beta,
                  "smoothness used in the rho_n unit")
        ->capture_default_str();
    c->add_option("--n", power_cmd.n, "sample size")->capture_default_str();
    c->add_option("-M,--datasets", power_cmd.datasets,
                  "datasets per amplitude")
        ->capture_default_str();
    add_scan_opts(c, power_cmd.scan);
    c->add_option("-o,--out", power_cmd.out, "JSON output file");
    c->add_option("--csv", power_cmd.csv, "also write a CSV table");
    c->add_option("--config", power_cmd.config,
                  "JSON config file (keys = option names; flags win)");
    power_cmd.app = c;
    c->callback([&] { power_cmd.run(); });
  }

  CompareSimCmd compare_cmd;
  {
    CLI::App* c = app.add_subcommand(
        "compare-sim",
        "signed-rank vs Gaussian-calibrated reference on null data");
    c->add_option("--law", compare_cmd.law, "error law")->capture_default_str();
    c->add_option("--design", compare_cmd.design, "uniform | linear:<c>")
        ->capture_default_str();
    c->add_option("--sigma", compare_cmd.sigma,
                  "standardization sd for the Gaussian reference")
        ->capture_default_str();
    c->add_option("--n", compare_cmd.n, "sample size")->capture_default_str();
    c->add_option("-M,--datasets", compare_cmd.datasets, "number of datasets")
        ->capture_default_str();
    add_scan_opts(c, compare_cmd.scan);
    c->add_option("-o,--out", compare_cmd.out, "JSON output file");
    c->add_option("--csv", compare_cmd.csv, "also write a CSV table");
    c->add_option("--config", compare_cmd.config,
                  "JSON config file (keys = option names; flags win)");
    compare_cmd.app = c;
    c->callback([&] { compare_cmd.run(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace msrank::cli
