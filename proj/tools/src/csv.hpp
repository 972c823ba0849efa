#pragma once

#include <string>

#include "msrank/dataset.hpp"

namespace msrank::cli {

// Two numeric columns x,y, comma separated, optional single header line.
// Rows are sorted ascending by x; duplicate design points, non-numeric cells
// and files with fewer than two data rows raise DataError with the offending
// row or value named.
Dataset load_csv(const std::string& path, bool header);

Dataset parse_csv_text(const std::string& text, bool header,
                       const std::string& origin);

}  // namespace msrank::cli
