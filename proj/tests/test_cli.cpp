#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "fixtures.hpp"
#include "rtrop/cli.hpp"

using namespace rtrop;
using io::json;

namespace {

const std::string problems = RTROP_PROBLEMS_DIR;

struct Result {
  int code;
  json out;
  std::string raw;
};

Result run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  Result r{code, json(), out.str()};
  if (!r.raw.empty() && (r.raw[0] == '{' || r.raw[0] == '[')) r.out = json::parse(r.raw);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

json load(const std::string& name) { return json::parse(slurp(problems + "/" + name)); }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("rtrop-test-" + name)).string();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::string group_of(const std::string& svg, const std::string& id) {
  const auto start = svg.find("<g id=\"" + id + "\"");
  if (start == std::string::npos) return "";
  return svg.substr(start, svg.find("</g>", start) - start);
}

}  // namespace

TEST(Cli, CircuitsOfRankTwoMatrix) {
  const auto r = run_cli({"circuits", problems + "/rank-two-five.json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, json({"++-00", "++0+0", "++00+", "+0+0+", "+00-+", "0+-0-", "0+0+-", "00++0"}));
}

TEST(Cli, ReadsStandardInput) {
  const auto r = run_cli({"circuits"}, slurp(problems + "/rank-two-five.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.size(), 8u);
}

TEST(Cli, TopesAndCovector) {
  const auto t = run_cli({"topes", problems + "/rank-two-five.json"});
  ASSERT_EQ(t.code, 0);
  EXPECT_EQ(t.out.size(), 8u);
  EXPECT_TRUE(std::is_sorted(t.out.begin(), t.out.end()));
  auto doc = load("rank-two-five.json");
  doc["vector"] = "+-0+-";
  const auto c = run_cli({"covector"}, doc.dump());
  ASSERT_EQ(c.code, 0);
  EXPECT_TRUE(c.out.contains("covector"));
}

TEST(Cli, AxiomsOnCircuitList) {
  const json doc{{"kind", "matrix"}, {"ground_size", 3}, {"circuits", {"++0", "0+-"}}};
  const auto r = run_cli({"axioms"}, doc.dump());
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(r.out["ok"].get<bool>());
  EXPECT_EQ(r.out["axiom"], "C3");
  const auto ok = run_cli({"axioms", problems + "/rank-two-five.json"});
  EXPECT_TRUE(ok.out["ok"].get<bool>());
}

TEST(Cli, InitialMatroid) {
  auto doc = load("rank-two-five.json");
  doc["weights"] = {1, 0, 0, 0, 0};
  const auto r = run_cli({"initial"}, doc.dump());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, json({"+0000", "0+-0-", "0+0+-", "00++0"}));
}

TEST(Cli, BergmanAndSFlags) {
  const auto b = run_cli({"bergman", problems + "/rank-two-five-bergman.json", "--verify"});
  ASSERT_EQ(b.code, 0);
  EXPECT_TRUE(b.out["member"].get<bool>());
  EXPECT_TRUE(b.out["routes"]["initial"].get<bool>());
  const auto f = run_cli({"sflags", problems + "/rank-two-five-flag.json"});
  ASSERT_EQ(f.code, 0);
  EXPECT_TRUE(f.out["s_flag"].get<bool>());
  auto doc = load("rank-two-five-flag.json");
  doc.erase("flag");
  const auto all = run_cli({"sflags"}, doc.dump());
  ASSERT_EQ(all.code, 0);
  EXPECT_TRUE(std::find(all.out["flags"].begin(), all.out["flags"].end(), json({{2, 3}, {0, 1, 2, 3, 4}})) !=
              all.out["flags"].end());
}

TEST(Cli, ChartsOfConicMatchFixture) {
  const auto r = run_cli({"charts", problems + "/conic.json"});
  ASSERT_EQ(r.code, 0);
  ASSERT_EQ(r.out.size(), 4u);
  const auto expected = fixture::conic_charts();
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(io::chart_from_json(r.out[i]), expected[i]);
}

TEST(Cli, SubdivideConic) {
  const auto r = run_cli({"subdivide", problems + "/conic.json", "--chart", "+-"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["cells"].size(), 3u);
  EXPECT_EQ(r.out["signs"], "+----+");
  EXPECT_EQ(r.out["marked"], json({0, 1, 2, 3, 4, 5}));
}

TEST(Cli, ClassifyUnitSquare) {
  const auto r = run_cli({"classify", problems + "/unit-square.json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["case"], "FourValentVertex");
  EXPECT_EQ(r.out["edges"], 4);
  EXPECT_EQ(r.out["weights"], json({1, 1, 1, 1}));
}

TEST(Cli, ClassifyAllProblemFiles) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"unit-square.json", "FourValentVertex"},
      {"triangle-interior.json", "IsolatedVertexMult3"},
      {"collinear-separated.json", "Weight2EdgeMidpoint"},
      {"collinear-same-side.json", "Weight2EdgeInterval"},
      {"collinear-boundary.json", "Weight2InfiniteEdge"}};
  for (const auto& [file, kind] : cases) {
    const auto r = run_cli({"classify", problems + "/" + file});
    ASSERT_EQ(r.code, 0) << file;
    EXPECT_EQ(r.out["case"], kind) << file;
    const auto m = run_cli({"singular-member", problems + "/" + file, "--verify"});
    EXPECT_TRUE(m.out["member"].get<bool>()) << file;
  }
}

TEST(Cli, DomainErrorExitsOne) {
  auto doc = load("unit-square.json");
  doc["signs"] = "++++";
  const auto r = run_cli({"classify"}, doc.dump());
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out["error"]["type"], "DomainError");
  EXPECT_EQ(r.out["error"]["code"], "PreconditionFailed");
  EXPECT_FALSE(r.out["error"].contains("path"));

  auto flag = load("rank-two-five-flag.json");
  flag["flag"] = {{0, 1}, {0, 1, 2, 3, 4}};
  const auto nf = run_cli({"sflags"}, flag.dump());
  EXPECT_EQ(nf.code, 1);
  EXPECT_EQ(nf.out["error"]["code"], "NotAFlat");
}

TEST(Cli, MalformedInputExitsTwo) {
  EXPECT_EQ(run_cli({"circuits"}, "{not json").code, 2);
  EXPECT_EQ(run_cli({"circuits", "/nonexistent/problem.json"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"circuits", "--bogus"}).code, 2);
  EXPECT_EQ(run_cli({"chart", problems + "/conic.json", "--chart", "+0"}).code, 2);
  const auto wrong_kind = run_cli({"circuits", problems + "/conic.json"});
  EXPECT_EQ(wrong_kind.code, 2);
  EXPECT_EQ(wrong_kind.out["error"]["path"], "/kind");
}

TEST(Cli, NestedErrorPaths) {
  auto doc = load("conic.json");
  doc["lifts"][2] = "1/0";
  auto r = run_cli({"chart"}, doc.dump());
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out["error"]["path"], "/lifts/2");

  doc = load("conic.json");
  doc["support"][4] = {1};
  r = run_cli({"chart"}, doc.dump());
  EXPECT_EQ(r.out["error"]["path"], "/support/4");

  doc = load("conic.json");
  doc["signs"] = "+-+-+";
  r = run_cli({"chart"}, doc.dump());
  EXPECT_EQ(r.out["error"]["path"], "/signs");

  doc = load("conic.json");
  doc["options"]["scale"] = "-1";
  r = run_cli({"chart"}, doc.dump());
  EXPECT_EQ(r.out["error"]["path"], "/options/scale");
}

// Deleting any required field is rejected with exit 2 and its path.
TEST(Cli, SchemaRejectionOnFieldDeletion) {
  const std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> cases{
      {"rank-two-five.json", "circuits", {"kind", "matrix"}},
      {"rank-two-five-bergman.json", "bergman", {"kind", "matrix", "signs", "weights"}},
      {"rank-two-five-flag.json", "sflags", {"kind", "matrix", "signs"}},
      {"conic.json", "chart", {"kind", "support", "signs", "lifts"}},
      {"conic.json", "charts", {"kind", "support", "signs", "lifts"}},
      {"conic.json", "subdivide", {"kind", "support", "signs", "lifts"}},
      {"unit-square.json", "classify", {"kind", "support", "signs", "lifts"}},
      {"unit-square.json", "singular-member", {"kind", "support", "signs", "lifts"}}};
  for (const auto& [file, cmd, fields] : cases) {
    ASSERT_EQ(run_cli({cmd, problems + "/" + file}).code, 0) << file;
    for (const auto& field : fields) {
      auto doc = load(file);
      doc.erase(field);
      const auto r = run_cli({cmd}, doc.dump());
      EXPECT_EQ(r.code, 2) << cmd << " without " << field;
      EXPECT_EQ(r.out["error"]["type"], "MalformedInput");
      EXPECT_EQ(r.out["error"]["path"], "/" + field) << cmd << " without " << field;
    }
  }
}

TEST(Cli, OutputIsDeterministic) {
  for (const std::string cmd : {"charts", "subdivide", "chart"}) {
    const auto a = run_cli({cmd, problems + "/conic.json"});
    const auto b = run_cli({cmd, problems + "/conic.json"});
    EXPECT_EQ(a.raw, b.raw);
  }
}

TEST(Svg, ConicChartPieces) {
  const auto path = temp_path("conic-pp.svg");
  ASSERT_EQ(run_cli({"chart", problems + "/conic.json", "--svg", path}).code, 0);
  const auto svg = slurp(path);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_EQ(count(group_of(svg, "vertices"), "<circle"), 3u);
  EXPECT_EQ(count(group_of(svg, "segments"), "<line"), 2u);
  EXPECT_EQ(count(group_of(svg, "rays"), "<line"), 2u);
  std::filesystem::remove(path);
}

TEST(Svg, RaysEndOnTheBox) {
  const auto conic = fixture::conic_charts()[0];
  io::RenderSpec spec;
  spec.box = {Rational(-3), Rational(-3), Rational(3), Rational(3)};
  spec.has_box = true;
  spec.scale = 10;
  const auto svg = svg::render_chart(conic, spec);
  // (-1,-1) + t(0,-1) leaves through y = -3, (1,0) + t(1,1) through x = 3.
  EXPECT_NE(svg.find("x1=\"20.000\" y1=\"40.000\" x2=\"20.000\" y2=\"60.000\""), std::string::npos);
  EXPECT_NE(svg.find("x1=\"40.000\" y1=\"30.000\" x2=\"60.000\" y2=\"10.000\""), std::string::npos);
}

TEST(Svg, ClipsSegmentsAndDropsOutsidePieces) {
  Chart c;
  c.sign_index = SignVector::parse("++");
  c.vertices = {fixture::pt(-5, 0), fixture::pt(0, 0)};
  c.segments = {{fixture::pt(-5, 0), fixture::pt(0, 0), 1}};
  c.rays = {{fixture::pt(5, 5), {1, 0}, 1}};
  io::RenderSpec spec;
  spec.box = {Rational(-1), Rational(-1), Rational(1), Rational(1)};
  spec.has_box = true;
  spec.scale = 10;
  const auto svg = svg::render_chart(c, spec);
  EXPECT_EQ(count(group_of(svg, "vertices"), "<circle"), 1u);
  EXPECT_NE(svg.find("<line id=\"s0\" x1=\"0.000\" y1=\"10.000\" x2=\"10.000\" y2=\"10.000\""), std::string::npos);
  EXPECT_EQ(group_of(svg, "rays"), "");
}

TEST(Svg, EmptyChartHasAxesOnly) {
  Chart c;
  c.sign_index = SignVector::parse("++");
  const auto svg = svg::render_chart(c);
  EXPECT_NE(svg.find("axis-x"), std::string::npos);
  EXPECT_NE(svg.find("axis-y"), std::string::npos);
  EXPECT_EQ(svg.find("<circle"), std::string::npos);
  EXPECT_EQ(svg.find("<g id=\"segments\""), std::string::npos);
  EXPECT_EQ(svg.find("<g id=\"rays\""), std::string::npos);
}

TEST(Svg, EmptyBoxIsADomainError) {
  auto doc = load("conic.json");
  doc["options"]["box"] = {"1", "0", "1", "2"};
  const auto r = run_cli({"chart", "--svg", temp_path("empty.svg")}, doc.dump());
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out["error"]["code"], "EmptyBox");
}

TEST(Svg, SignedSubdivisionLabels) {
  const auto path = temp_path("conic-sub.svg");
  ASSERT_EQ(run_cli({"subdivide", problems + "/conic.json", "--chart", "+-", "--svg", path}).code, 0);
  const auto svg = slurp(path);
  EXPECT_EQ(count(group_of(svg, "cells"), "<polygon"), 3u);
  std::string labels;
  const std::regex text("<text id=\"t\\d+\"[^>]*>([+-])</text>");
  for (std::sregex_iterator it(svg.begin(), svg.end(), text), end; it != end; ++it) labels += (*it)[1].str();
  EXPECT_EQ(labels, "+----+");
  EXPECT_EQ(count(group_of(svg, "points"), "fill=\"black\""), 6u);
  std::filesystem::remove(path);
}

TEST(Svg, UnmarkedPointsAreHollow) {
  const auto support = fixture::degree_two();
  const auto t = regular_marked_subdivision(support, fixture::q({0, 0, 0, 0, -5, 0}));
  const auto svg = svg::render_subdivision(t);
  EXPECT_EQ(count(group_of(svg, "points"), "fill=\"white\""), 1u);
  EXPECT_EQ(svg.find("<g id=\"signs\""), std::string::npos);
}

TEST(Svg, ChartJsonRoundTripIsByteIdentical) {
  for (const std::string v : {"++", "+-", "-+", "--"}) {
    const auto path = temp_path("round-" + v + ".svg");
    const auto r = run_cli({"chart", problems + "/conic.json", "--chart", v, "--svg", path});
    ASSERT_EQ(r.code, 0);
    const auto first = slurp(path);
    const auto reparsed = io::chart_from_json(json::parse(r.raw));
    const auto spec = io::parse_problem(load("conic.json")).options;
    EXPECT_EQ(svg::render_chart(reparsed, spec), first);
    const auto again = run_cli({"chart", problems + "/conic.json", "--chart", v, "--svg", path});
    EXPECT_EQ(slurp(path), first);
    std::filesystem::remove(path);
  }
}
