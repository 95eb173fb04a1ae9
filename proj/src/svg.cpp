#include "netsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace netsim {

namespace {

std::string fmt(double v, int prec = 2) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Blue (cold, low) to red (hot, high).
std::string ramp_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(40 + 215 * t);
  const int g = static_cast<int>(70 + 60 * (1.0 - std::abs(2.0 * t - 1.0)));
  const int b = static_cast<int>(255 - 215 * t);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

void axis_components(const std::string& projection, int& ax, int& ay, std::string& xl,
                     std::string& yl) {
  if (projection == "xy") {
    ax = 0; ay = 1; xl = "x [m]"; yl = "y [m]";
  } else if (projection == "xz") {
    ax = 0; ay = 2; xl = "x [m]"; yl = "z [m]";
  } else if (projection == "yz") {
    ax = 1; ay = 2; xl = "y [m]"; yl = "z [m]";
  } else {
    throw std::runtime_error("unknown projection: " + projection);
  }
}

double component(const Vec3& v, int i) { return i == 0 ? v.x : (i == 1 ? v.y : v.z); }

}  // namespace

std::string emit_scatter_svg(const std::vector<EpisodeRow>& rows,
                             const ScatterOptions& options) {
  if (rows.empty()) throw std::runtime_error("emit_scatter_svg: no rows");

  int ax = 0, ay = 1;
  std::string xlabel, ylabel;
  axis_components(options.projection, ax, ay, xlabel, ylabel);

  auto color_value = [&](const EpisodeRow& r) {
    return options.color_metric == "fuel" ? r.fuel_kg : r.capture_time_s;
  };
  auto size_value = [&](const EpisodeRow& r) {
    return options.size_metric == "contacts" ? static_cast<double>(r.contacts)
                                             : r.effective_area_m2;
  };

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  double cmin = 1e300, cmax = -1e300, smax = 0.0;
  for (const auto& r : rows) {
    xmin = std::min(xmin, component(r.start, ax));
    xmax = std::max(xmax, component(r.start, ax));
    ymin = std::min(ymin, component(r.start, ay));
    ymax = std::max(ymax, component(r.start, ay));
    smax = std::max(smax, size_value(r));
    if (r.captured) {
      cmin = std::min(cmin, color_value(r));
      cmax = std::max(cmax, color_value(r));
    }
  }
  if (cmin > cmax) { cmin = 0.0; cmax = 1.0; }
  const double xpad = std::max(0.05 * (xmax - xmin), 0.5);
  const double ypad = std::max(0.05 * (ymax - ymin), 0.5);
  xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;

  const double left = 60, right = 110, top = 40, bottom = 50;
  const double pw = options.width - left - right;
  const double ph = options.height - top - bottom;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << " "
      << options.height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" fill=\"white\"/>\n";

  if (!options.title.empty()) {
    out << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\""
        << " font-weight=\"bold\">" << escape_xml(options.title) << "</text>\n";
  }

  // Frame and ticks.
  out << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw)
      << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double xv = xmin + (xmax - xmin) * i / ticks;
    const double yv = ymin + (ymax - ymin) * i / ticks;
    out << "<line x1=\"" << fmt(px(xv)) << "\" y1=\"" << fmt(top + ph) << "\" x2=\""
        << fmt(px(xv)) << "\" y2=\"" << fmt(top + ph + 5) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << fmt(top + ph + 18)
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
        << fmt(xv, 1) << "</text>\n"
        << "<line x1=\"" << fmt(left - 5) << "\" y1=\"" << fmt(py(yv)) << "\" x2=\""
        << fmt(left) << "\" y2=\"" << fmt(py(yv)) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(py(yv) + 3)
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << fmt(yv, 1)
        << "</text>\n";
  }
  out << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(top + ph + 34)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << xlabel
      << "</text>\n"
      << "<text x=\"16\" y=\"" << fmt(top + ph / 2)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
      << " transform=\"rotate(-90 16 " << fmt(top + ph / 2) << ")\">" << ylabel << "</text>\n";

  // Markers. Radius proportional to the size metric inside the clamp.
  for (const auto& r : rows) {
    const double cx = px(component(r.start, ax));
    const double cy = py(component(r.start, ay));
    double radius = options.max_marker_px;
    if (smax > 0.0)
      radius = std::clamp(options.max_marker_px * size_value(r) / smax, options.min_marker_px,
                          options.max_marker_px);
    if (r.captured) {
      const double t = (cmax > cmin) ? (color_value(r) - cmin) / (cmax - cmin) : 0.5;
      out << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(radius)
          << "\" fill=\"" << ramp_color(t) << "\" fill-opacity=\"0.85\" stroke=\"black\""
          << " stroke-width=\"0.4\"/>\n";
    } else {
      out << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(radius)
          << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    }
  }

  // Color legend.
  const double lx = left + pw + 18, ly = top, lh = ph * 0.6, lw = 14;
  for (int i = 0; i < 40; ++i) {
    const double t = 1.0 - i / 39.0;
    out << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly + lh * i / 40.0) << "\" width=\""
        << fmt(lw) << "\" height=\"" << fmt(lh / 40.0 + 0.5) << "\" fill=\"" << ramp_color(t)
        << "\"/>\n";
  }
  const std::string cname = options.color_metric == "fuel" ? "fuel [kg]" : "capture time [s]";
  out << "<text x=\"" << fmt(lx + lw + 4) << "\" y=\"" << fmt(ly + 8)
      << "\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(cmax, 1) << "</text>\n"
      << "<text x=\"" << fmt(lx + lw + 4) << "\" y=\"" << fmt(ly + lh)
      << "\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(cmin, 1) << "</text>\n"
      << "<text x=\"" << fmt(lx) << "\" y=\"" << fmt(ly + lh + 16)
      << "\" font-family=\"sans-serif\" font-size=\"10\">" << cname << "</text>\n"
      << "<text x=\"" << fmt(lx) << "\" y=\"" << fmt(ly + lh + 32)
      << "\" font-family=\"sans-serif\" font-size=\"10\">size: "
      << (options.size_metric == "contacts" ? "contact points" : "effective area")
      << "</text>\n"
      << "<text x=\"" << fmt(lx) << "\" y=\"" << fmt(ly + lh + 46)
      << "\" font-family=\"sans-serif\" font-size=\"10\">hollow: not captured</text>\n";

  out << "</svg>\n";
  return out.str();
}

}  // namespace netsim
