#pragma once

#include <string>
#include <vector>

#include "netsim/harness.hpp"

namespace netsim {

struct ScatterOptions {
  std::string projection = "yz";      // "xy", "xz", or "yz" plane of the start position
  std::string color_metric = "capture_time";  // or "fuel"
  std::string size_metric = "effective_area";  // or "contacts"
  double max_marker_px = 14.0;
  double min_marker_px = 1.0;
  int width = 640;
  int height = 560;
  std::string title;
};

// Standalone SVG scatter of episode start positions. Marker radius is
// proportional to the size metric (clamped to [min, max] pixels); fill color
// maps the color metric over a blue-to-red ramp. Episodes that did not
// capture are drawn as hollow gray markers.
std::string emit_scatter_svg(const std::vector<EpisodeRow>& rows, const ScatterOptions& options);

}  // namespace netsim
