#include "csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "msrank/errors.hpp"

namespace msrank::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_cell(std::string_view cell, std::size_t row, const std::string& origin) {
  cell = trim(cell);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty())
    throw DataError(origin + ": row " + std::to_string(row) +
                    ": cannot parse numeric cell '" + std::string(cell) + "'");
  return v;
}

}  // namespace

Dataset parse_csv_text(const std::string& text, bool header,
                       const std::string& origin) {
  std::vector<double> xs;
  std::vector<double> ys;
  std::istringstream in(text);
  std::string line;
  std::size_t row = 0;
  bool skipped_header = !header;
  while (std::getline(in, line)) {
    ++row;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    const std::size_t comma = body.find(',');
    if (comma == std::string_view::npos)
      throw DataError(origin + ": row " + std::to_string(row) +
                      ": expected two comma-separated columns");
    const std::string_view rest = body.substr(comma + 1);
    if (rest.find(',') != std::string_view::npos)
      throw DataError(origin + ": row " + std::to_string(row) +
                      ": expected exactly two columns");
    xs.push_back(parse_cell(body.substr(0, comma), row, origin));
    ys.push_back(parse_cell(rest, row, origin));
  }
  if (xs.size() < 2)
    throw DataError(origin + ": need at least 2 data rows, got " +
                    std::to_string(xs.size()));
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> sx(xs.size());
  std::vector<double> sy(ys.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sx[i] = xs[order[i]];
    sy[i] = ys[order[i]];
  }
  for (std::size_t i = 1; i < sx.size(); ++i)
    if (sx[i] == sx[i - 1])
      throw DataError(origin + ": duplicate design point x = " +
                      std::to_string(sx[i]) +
                      " (design points must be strictly increasing)");
  return Dataset(std::move(sx), std::move(sy));
}

Dataset load_csv(const std::string& path, bool header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv_text(buf.str(), header, path);
}

}  // namespace msrank::cli
