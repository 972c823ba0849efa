#pragma once

#include <string>

#include "msrank/calibrate.hpp"

namespace msrank::cli {

// Reports serialize with fixed snake_case field names, window indices
// emitted 1-based, and every double printed with 17 significant digits so
// that parse(emit(r)) reproduces r exactly and equal runs produce
// byte-identical output. timing_ms and sigma appear only when present.
std::string emit_report_json(const TestReport& report);

// Human-readable summary.
std::string emit_report_table(const TestReport& report);

TestReport parse_report_json(const std::string& text);

// Equality over the serialized schema (per-window records and Monte Carlo
// samples are not part of it).
bool schema_equal(const TestReport& a, const TestReport& b);

}  // namespace msrank::cli
