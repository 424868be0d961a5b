#pragma once

#include <string>
#include <vector>

#include "icb/types.hpp"

namespace icb::svg {

struct Series {
  std::vector<RatePair> points;
  std::string color = "#1f77b4";
  std::string label;
  bool closed = false;
};

struct Marker {
  RatePair at;
  std::string label;
  std::string color = "#d62728";
};

// SVG 1.1 plot in a fixed 800x600 viewport with linear axes auto-scaled to
// the data bounding box. Output is a deterministic function of the inputs.
std::string render_plot(const std::vector<Series>& series, const std::vector<Marker>& markers,
                        const std::string& title);

}  // namespace icb::svg
