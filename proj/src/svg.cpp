#include "icb/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace icb::svg {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMargin = 60.0;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string render_plot(const std::vector<Series>& series, const std::vector<Marker>& markers,
                        const std::string& title) {
  double max_x = 0.0, max_y = 0.0;
  for (const Series& s : series) {
    for (const RatePair& p : s.points) {
      max_x = std::max(max_x, p.r1);
      max_y = std::max(max_y, p.r2);
    }
  }
  for (const Marker& m : markers) {
    max_x = std::max(max_x, m.at.r1);
    max_y = std::max(max_y, m.at.r2);
  }
  max_x = std::max(max_x, 1e-9) * 1.05;
  max_y = std::max(max_y, 1e-9) * 1.05;

  const double plot_w = kWidth - 2.0 * kMargin;
  const double plot_h = kHeight - 2.0 * kMargin;
  const auto px = [&](double x) { return kMargin + x / max_x * plot_w; };
  const auto py = [&](double y) { return kHeight - kMargin - y / max_y * plot_h; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n";
  out += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  out += "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + title + "</text>\n";

  // Axes with 5 ticks per side.
  out += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kHeight - kMargin) + "\" x2=\"" +
         num(kWidth - kMargin) + "\" y2=\"" + num(kHeight - kMargin) +
         "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kHeight - kMargin) + "\" x2=\"" +
         num(kMargin) + "\" y2=\"" + num(kMargin) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = max_x * i / 5.0;
    const double fy = max_y * i / 5.0;
    out += "<line x1=\"" + num(px(fx)) + "\" y1=\"" + num(kHeight - kMargin) + "\" x2=\"" +
           num(px(fx)) + "\" y2=\"" + num(kHeight - kMargin + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(kHeight - kMargin + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + num(fx) +
           "</text>\n";
    out += "<line x1=\"" + num(kMargin - 5) + "\" y1=\"" + num(py(fy)) + "\" x2=\"" +
           num(kMargin) + "\" y2=\"" + num(py(fy)) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(kMargin - 8) + "\" y=\"" + num(py(fy) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(fy) +
           "</text>\n";
  }
  out += "<text x=\"" + num(kWidth / 2) + "\" y=\"" + num(kHeight - 15) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">R1 "
         "(bits/channel use)</text>\n";
  out += "<text x=\"18\" y=\"" + num(kHeight / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " + num(kHeight / 2) + ")\">R2 (bits/channel use)</text>\n";

  for (const Series& s : series) {
    if (s.points.empty()) continue;
    std::string pts;
    for (const RatePair& q : s.points) {
      pts += num(px(q.r1)) + "," + num(py(q.r2)) + " ";
    }
    out += std::string("<") + (s.closed ? "polygon" : "polyline") + " points=\"" + pts +
           "\" fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
    if (!s.label.empty()) {
      const RatePair& q = s.points[s.points.size() / 2];
      out += "<text x=\"" + num(px(q.r1) + 6) + "\" y=\"" + num(py(q.r2) - 6) +
             "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + s.color + "\">" +
             s.label + "</text>\n";
    }
  }

  for (const Marker& m : markers) {
    out += "<circle cx=\"" + num(px(m.at.r1)) + "\" cy=\"" + num(py(m.at.r2)) +
           "\" r=\"4\" fill=\"" + m.color + "\"/>\n";
    out += "<text x=\"" + num(px(m.at.r1) + 7) + "\" y=\"" + num(py(m.at.r2) + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + m.label + "</text>\n";
  }

  out += "</svg>\n";
  return out;
}

}  // namespace icb::svg
