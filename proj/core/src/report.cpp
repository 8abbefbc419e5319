#include "locmst/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "locmst/error.hpp"

namespace locmst {

namespace {

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Roughly five round-numbered ticks covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) ticks.push_back(t);
  return ticks;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double map(double v) const { return log ? std::log10(v) : v; }
};

Axis fit_axis(const Panel& p, bool x_axis) {
  Axis a;
  a.log = x_axis ? p.log_x : p.log_y;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : p.series) {
    for (double v : x_axis ? s.x : s.y) {
      if (!std::isfinite(v) || (a.log && v <= 0.0)) continue;
      lo = std::min(lo, a.map(v));
      hi = std::max(hi, a.map(v));
    }
  }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  a.lo = lo - (x_axis ? 0.0 : pad);
  a.hi = hi + (x_axis ? 0.0 : pad);
  return a;
}

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_csv_provenance(std::ostream& os, const Provenance& p) {
  os << "# command: " << p.command << '\n';
  os << "# version: " << p.version << '\n';
  os << "# config: " << nlohmann::json::parse(p.config_json).dump() << '\n';
}

std::string wrap_json(const Provenance& p, const std::string& payload_json) {
  nlohmann::ordered_json j;
  j["command"] = p.command;
  j["version"] = p.version;
  j["config"] = nlohmann::json::parse(p.config_json);
  j["result"] = nlohmann::json::parse(payload_json);
  return j.dump(2);
}

std::string render_svg(const std::vector<Panel>& panels, int panel_width, int panel_height) {
  if (panels.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to plot");
  const double left = 70, right = 20, top = 40, bottom = 55;
  const int width = panel_width * static_cast<int>(panels.size());
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << panel_height
     << "\" viewBox=\"0 0 " << width << ' ' << panel_height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t k = 0; k < panels.size(); ++k) {
    const Panel& p = panels[k];
    const double ox = static_cast<double>(k) * panel_width;
    const double x0 = ox + left, x1 = ox + panel_width - right;
    const double y0 = panel_height - bottom, y1 = top;
    const Axis ax = fit_axis(p, true);
    const Axis ay = fit_axis(p, false);
    auto px = [&](double v) { return x0 + (ax.map(v) - ax.lo) / (ax.hi - ax.lo) * (x1 - x0); };
    auto py = [&](double v) { return y0 - (ay.map(v) - ay.lo) / (ay.hi - ay.lo) * (y0 - y1); };

    os << "<g>\n";
    os << "<text x=\"" << num(0.5 * (x0 + x1)) << "\" y=\"" << num(top - 15) << "\" text-anchor=\"middle\" font-size=\"14\">"
       << xml_escape(p.title) << "</text>\n";
    os << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(y0)
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(y1)
       << "\" stroke=\"black\"/>\n";
    for (double t : nice_ticks(ax.lo, ax.hi)) {
      const double x = x0 + (t - ax.lo) / (ax.hi - ax.lo) * (x1 - x0);
      os << "<line x1=\"" << num(x) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x) << "\" y2=\"" << num(y0 + 5)
         << "\" stroke=\"black\"/>\n";
      os << "<text x=\"" << num(x) << "\" y=\"" << num(y0 + 18) << "\" text-anchor=\"middle\">"
         << xml_escape(tick_label(ax.log ? std::pow(10.0, t) : t)) << "</text>\n";
    }
    for (double t : nice_ticks(ay.lo, ay.hi)) {
      const double y = y0 - (t - ay.lo) / (ay.hi - ay.lo) * (y0 - y1);
      os << "<line x1=\"" << num(x0 - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(y)
         << "\" stroke=\"black\"/>\n";
      os << "<text x=\"" << num(x0 - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
         << xml_escape(tick_label(ay.log ? std::pow(10.0, t) : t)) << "</text>\n";
    }
    os << "<text x=\"" << num(0.5 * (x0 + x1)) << "\" y=\"" << num(panel_height - 12) << "\" text-anchor=\"middle\">"
       << xml_escape(p.x_label) << "</text>\n";
    os << "<text x=\"" << num(ox + 16) << "\" y=\"" << num(0.5 * (y0 + y1)) << "\" text-anchor=\"middle\" transform=\"rotate(-90 "
       << num(ox + 16) << ' ' << num(0.5 * (y0 + y1)) << ")\">" << xml_escape(p.y_label) << "</text>\n";

    for (std::size_t s = 0; s < p.series.size(); ++s) {
      const Series& ser = p.series[s];
      const char* color = kColors[s % (sizeof kColors / sizeof kColors[0])];
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      bool first = true;
      for (std::size_t i = 0; i < ser.x.size() && i < ser.y.size(); ++i) {
        if (!std::isfinite(ser.x[i]) || !std::isfinite(ser.y[i])) continue;
        if ((ax.log && ser.x[i] <= 0.0) || (ay.log && ser.y[i] <= 0.0)) continue;
        os << (first ? "" : " ") << num(px(ser.x[i])) << ',' << num(py(ser.y[i]));
        first = false;
      }
      os << "\"/>\n";
      const double ly = y1 + 14.0 * static_cast<double>(s) + 6.0;
      os << "<line x1=\"" << num(x1 - 110) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(x1 - 90) << "\" y2=\""
         << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
      os << "<text x=\"" << num(x1 - 85) << "\" y=\"" << num(ly + 4) << "\">" << xml_escape(ser.label) << "</text>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace locmst
