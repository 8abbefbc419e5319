#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace locmst {

/// Configuration and version stamped into every output file.
struct Provenance {
  std::string command;
  std::string config_json;  // a JSON object
  std::string version;
};

/// `# key: value` comment lines placed before a CSV header.
void write_csv_provenance(std::ostream& os, const Provenance& p);

/// {"command", "version", "config", "result": payload}
std::string wrap_json(const Provenance& p, const std::string& payload_json);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  bool log_x = false;
  bool log_y = false;
};

/// Static SVG with one line chart per panel, side by side.
std::string render_svg(const std::vector<Panel>& panels, int panel_width = 480, int panel_height = 360);

std::string xml_escape(const std::string& s);

}  // namespace locmst
