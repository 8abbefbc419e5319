#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "locmst/report.hpp"

using namespace locmst;

TEST(Report, CsvProvenance) {
  std::ostringstream os;
  write_csv_provenance(os, {"simulate", R"({"n":10})", "0.1.0"});
  const std::string s = os.str();
  EXPECT_NE(s.find("# command: simulate\n"), std::string::npos);
  EXPECT_NE(s.find("# version: 0.1.0\n"), std::string::npos);
  EXPECT_NE(s.find("# config: {\"n\":10}\n"), std::string::npos);
  std::istringstream lines(s);
  for (std::string line; std::getline(lines, line);) EXPECT_EQ(line[0], '#');
}

TEST(Report, JsonWrapper) {
  const auto j = nlohmann::json::parse(wrap_json({"bounds", R"({"alpha":1})", "0.1.0"}, R"({"beta_low":0.07})"));
  EXPECT_EQ(j["command"], "bounds");
  EXPECT_EQ(j["version"], "0.1.0");
  EXPECT_EQ(j["config"]["alpha"], 1);
  EXPECT_DOUBLE_EQ(j["result"]["beta_low"].get<double>(), 0.07);
  const auto o = nlohmann::ordered_json::parse(wrap_json({"x", "{}", "v"}, "[]"));
  EXPECT_EQ(o.begin().key(), "command");
  EXPECT_EQ((--o.end()).key(), "result");
}

TEST(Report, XmlEscape) { EXPECT_EQ(xml_escape("a<b & \"c\">'"), "a&lt;b &amp; &quot;c&quot;&gt;&apos;"); }

TEST(Report, SvgStructure) {
  Panel p;
  p.title = "mean <weight>";
  p.x_label = "n";
  p.y_label = "E M";
  p.log_x = true;
  p.series.push_back({"alpha=1", {64, 128, 256}, {4, 6, 8.5}});
  p.series.push_back({"beta_up", {64, 256}, {30, 60}});
  Panel q = p;
  q.log_x = false;
  q.series.push_back({"empty", {}, {}});
  const std::string svg = render_svg({p, q});
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("mean &lt;weight&gt;"), std::string::npos);
  EXPECT_EQ(svg.find("mean <weight>"), std::string::npos);
  EXPECT_NE(svg.find("width=\"960\""), std::string::npos);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
  EXPECT_EQ(svg.find("inf"), std::string::npos);
}
