#include "report_io.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "msrank/errors.hpp"

namespace msrank::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit_intervals(std::string& out, const std::vector<DetectedInterval>& v,
                    const char* key) {
  out += "  \"";
  out += key;
  out += "\": [";
  for (std::size_t i = 0; i < v.size(); ++i) {
    const DetectedInterval& d = v[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"j\": " + std::to_string(d.j + 1) +
           ", \"k\": " + std::to_string(d.k + 1) + ", \"x_j\": " + fmt(d.x_lo) +
           ", \"x_k\": " + fmt(d.x_hi) + ", \"t\": " + fmt(d.t) +
           ", \"penalty\": " + fmt(d.penalty) + ", \"excess\": " + fmt(d.excess) +
           ", \"direction\": \"" + (d.direction >= 0 ? "+" : "-") + "\"}";
  }
  out += v.empty() ? "]" : "\n  ]";
}

std::vector<DetectedInterval> parse_intervals(const nlohmann::json& arr) {
  std::vector<DetectedInterval> out;
  for (const auto& e : arr) {
    DetectedInterval d{};
    d.j = e.at("j").get<std::uint32_t>() - 1;
    d.k = e.at("k").get<std::uint32_t>() - 1;
    d.x_lo = e.at("x_j").get<double>();
    d.x_hi = e.at("x_k").get<double>();
    d.t = e.at("t").get<double>();
    d.penalty = e.at("penalty").get<double>();
    d.excess = e.at("excess").get<double>();
    d.direction = e.at("direction").get<std::string>() == "-" ? -1 : +1;
    out.push_back(d);
  }
  return out;
}

}  // namespace

std::string emit_report_json(const TestReport& r) {
  std::string out;
  out.reserve(1024 + 160 * r.detection.intervals.size());
  out += "{\n";
  out += "  \"version\": \"" + r.version + "\",\n";
  out += "  \"method\": \"" + r.method + "\",\n";
  out += "  \"n\": " + std::to_string(r.n) + ",\n";
  out += "  \"alpha\": " + fmt(r.alpha) + ",\n";
  out += "  \"b\": " + std::to_string(r.replicates) + ",\n";
  out += "  \"seed\": " + std::to_string(r.seed) + ",\n";
  out += "  \"kernel\": \"" + r.kernel.spec() + "\",\n";
  out += "  \"policy\": \"" + r.policy.spec() + "\",\n";
  out += "  \"min_window\": " + std::to_string(r.min_window) + ",\n";
  out += "  \"one_sided\": " + std::string(r.one_sided ? "true" : "false") + ",\n";
  if (r.sigma) out += "  \"sigma\": " + fmt(*r.sigma) + ",\n";
  out += "  \"t_n\": " + fmt(r.t_n) + ",\n";
  out += "  \"kappa\": " + fmt(r.kappa) + ",\n";
  out += "  \"p_value\": " + fmt(r.p_value) + ",\n";
  out += "  \"reject\": " + std::string(r.reject ? "true" : "false") + ",\n";
  emit_intervals(out, r.detection.intervals, "intervals");
  out += ",\n";
  emit_intervals(out, r.detection.minimal, "minimal_intervals");
  if (r.timing_ms) out += ",\n  \"timing_ms\": " + fmt(*r.timing_ms);
  out += "\n}\n";
  return out;
}

std::string emit_report_table(const TestReport& r) {
  std::ostringstream out;
  out << "method          " << r.method << "\n"
      << "n               " << r.n << "\n"
      << "kernel          " << r.kernel.spec() << "\n"
      << "policy          " << r.policy.spec() << " (min window " << r.min_window
      << ")\n"
      << "alpha           " << fmt(r.alpha) << "\n"
      << "mc replicates   " << r.replicates << "\n"
      << "seed            " << r.seed << "\n";
  if (r.sigma) out << "sigma           " << fmt(*r.sigma) << "\n";
  out << "t_n             " << fmt(r.t_n) << "\n"
      << "kappa           " << fmt(r.kappa) << "\n"
      << "p_value         " << fmt(r.p_value) << "\n"
      << "reject          " << (r.reject ? "yes" : "no") << "\n"
      << "detected        " << r.detection.intervals.size() << " interval(s), "
      << r.detection.minimal.size() << " minimal\n";
  for (const DetectedInterval& d : r.detection.minimal) {
    out << "  [" << fmt(d.x_lo) << ", " << fmt(d.x_hi) << "]  rows " << d.j + 1
        << ".." << d.k + 1 << "  " << (d.direction >= 0 ? "+" : "-")
        << "  t = " << fmt(d.t) << "\n";
  }
  if (r.timing_ms) out << "timing_ms       " << fmt(*r.timing_ms) << "\n";
  return out.str();
}

TestReport parse_report_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("report parse: ") + e.what());
  }
  try {
    TestReport r;
    r.version = j.at("version").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.n = j.at("n").get<std::size_t>();
    r.alpha = j.at("alpha").get<double>();
    r.replicates = j.at("b").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.kernel = Kernel::parse(j.at("kernel").get<std::string>());
    r.min_window = j.at("min_window").get<std::size_t>();
    r.policy = WindowPolicy::parse(j.at("policy").get<std::string>(), r.min_window);
    r.one_sided = j.at("one_sided").get<bool>();
    if (j.contains("sigma")) r.sigma = j.at("sigma").get<double>();
    r.t_n = j.at("t_n").get<double>();
    r.kappa = j.at("kappa").get<double>();
    r.p_value = j.at("p_value").get<double>();
    r.reject = j.at("reject").get<bool>();
    r.detection.intervals = parse_intervals(j.at("intervals"));
    r.detection.minimal = parse_intervals(j.at("minimal_intervals"));
    if (j.contains("timing_ms")) r.timing_ms = j.at("timing_ms").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("report parse: missing or bad field: ") +
                    e.what());
  }
}

bool schema_equal(const TestReport& a, const TestReport& b) {
  const auto ints_equal = [](const std::vector<DetectedInterval>& u,
                             const std::vector<DetectedInterval>& v) {
    return u == v;
  };
  return a.version == b.version && a.method == b.method && a.n == b.n &&
         a.alpha == b.alpha && a.replicates == b.replicates &&
         a.seed == b.seed && a.kernel == b.kernel && a.policy == b.policy &&
         a.min_window == b.min_window && a.one_sided == b.one_sided &&
         a.sigma == b.sigma && a.t_n == b.t_n && a.kappa == b.kappa &&
         a.p_value == b.p_value && a.reject == b.reject &&
         a.timing_ms == b.timing_ms &&
         ints_equal(a.detection.intervals, b.detection.intervals) &&
         ints_equal(a.detection.minimal, b.detection.minimal);
}

}  // namespace msrank::cli
