#pragma once

#include <string>

#include "msrank/calibrate.hpp"
#include "msrank/dataset.hpp"

namespace msrank::cli {

// Scatter of the data in an upper panel; the report's minimal intervals as
// horizontal segments in a lower panel, greedily packed so non-overlapping
// segments share a row. Output bytes are deterministic.
std::string render_svg(const Dataset& data, const TestReport& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace msrank::cli
