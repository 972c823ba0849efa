#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <vector>

#include "msrank/errors.hpp"

namespace msrank::cli {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 620.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 870.0;
constexpr double kDataTop = 40.0;
constexpr double kDataBottom = 400.0;
constexpr double kBandTop = 440.0;
constexpr double kBandBottom = 600.0;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// first row whose last segment ends at or before this one's start
std::vector<int> pack_rows(const std::vector<DetectedInterval>& segs) {
  std::vector<std::size_t> order(segs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return segs[a].x_lo != segs[b].x_lo ? segs[a].x_lo < segs[b].x_lo
                                        : segs[a].x_hi < segs[b].x_hi;
  });
  std::vector<int> row(segs.size(), 0);
  std::vector<double> row_end;
  for (const std::size_t i : order) {
    int r = -1;
    for (std::size_t c = 0; c < row_end.size(); ++c) {
      if (segs[i].x_lo >= row_end[c]) {
        r = static_cast<int>(c);
        break;
      }
    }
    if (r < 0) {
      r = static_cast<int>(row_end.size());
      row_end.push_back(segs[i].x_hi);
    } else {
      row_end[r] = segs[i].x_hi;
    }
    row[i] = r;
  }
  return row;
}

}  // namespace

std::string render_svg(const Dataset& data, const TestReport& report) {
  const auto& xs = data.x();
  const auto& ys = data.y();
  double xmin = xs.front();
  double xmax = xs.back();
  double ymin = ys[0];
  double ymax = ys[0];
  for (const double y : ys) {
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  ymin = std::min(ymin, 0.0);
  ymax = std::max(ymax, 0.0);
  const double xpad = (xmax - xmin) * 0.02;
  const double ypad = (ymax - ymin) * 0.05 + 1e-12;
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;
  const auto sx = [&](double x) {
    return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft);
  };
  const auto sy = [&](double y) {
    return kDataBottom - (y - ymin) / (ymax - ymin) * (kDataBottom - kDataTop);
  };

  std::string svg;
  svg.reserve(4096 + 64 * xs.size());
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) +
         " " + num(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kLeft) + "\" y=\"24\" font-family=\"monospace\" "
         "font-size=\"14\">" + report.method + " test, alpha=" +
         label(report.alpha) + ", t_n=" + label(report.t_n) + ", kappa=" +
         label(report.kappa) + ", p=" + label(report.p_value) +
         (report.reject ? ", reject" : ", no rejection") + "</text>\n";

  // data panel
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kDataTop) + "\" width=\"" +
         num(kRight - kLeft) + "\" height=\"" + num(kDataBottom - kDataTop) +
         "\" fill=\"none\" stroke=\"#888888\"/>\n";
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(sy(0.0)) + "\" x2=\"" +
         num(kRight) + "\" y2=\"" + num(sy(0.0)) +
         "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    svg += "<circle cx=\"" + num(sx(xs[i])) + "\" cy=\"" + num(sy(ys[i])) +
           "\" r=\"2.50\" fill=\"#333333\"/>\n";
  }
  svg += "<text x=\"" + num(kLeft) + "\" y=\"" + num(kDataBottom + 16.0) +
         "\" font-family=\"monospace\" font-size=\"11\">" + label(xs.front()) +
         "</text>\n";
  svg += "<text x=\"" + num(kRight - 40.0) + "\" y=\"" +
         num(kDataBottom + 16.0) +
         "\" font-family=\"monospace\" font-size=\"11\">" + label(xs.back()) +
         "</text>\n";

  // interval panel
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kBandTop) + "\" width=\"" +
         num(kRight - kLeft) + "\" height=\"" + num(kBandBottom - kBandTop) +
         "\" fill=\"none\" stroke=\"#888888\"/>\n";
  svg += "<text x=\"" + num(kLeft) + "\" y=\"" + num(kBandTop - 8.0) +
         "\" font-family=\"monospace\" font-size=\"12\">minimal intervals (" +
         std::to_string(report.detection.minimal.size()) + ")</text>\n";
  const auto& segs = report.detection.minimal;
  if (!segs.empty()) {
    const std::vector<int> rows = pack_rows(segs);
    const int nrows = 1 + *std::max_element(rows.begin(), rows.end());
    const double dy =
        std::min(16.0, (kBandBottom - kBandTop - 20.0) / nrows);
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const double y = kBandTop + 14.0 + dy * rows[i];
      svg += "<line x1=\"" + num(sx(segs[i].x_lo)) + "\" y1=\"" + num(y) +
             "\" x2=\"" + num(sx(segs[i].x_hi)) + "\" y2=\"" + num(y) +
             "\" stroke=\"" +
             (segs[i].direction >= 0 ? "#1f77b4" : "#d62728") +
             "\" stroke-width=\"5\"/>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw DataError("failed writing output file '" + path + "'");
}

}  // namespace msrank::cli
