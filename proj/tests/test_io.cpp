#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "vecmeasure/io.hpp"

using namespace vecmeasure;
using vecmeasure::io::json;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(FormatReal, SeventeenDigitsAndIntegralSuffix) {
  EXPECT_EQ(io::format_real(2.0), "2.0");
  EXPECT_EQ(io::format_real(0.0), "0.0");
  EXPECT_EQ(io::format_real(-3.0), "-3.0");
  EXPECT_EQ(io::format_real(0.5), "0.5");
  EXPECT_EQ(io::format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_real(1e300), "1.0000000000000001e+300");
  EXPECT_EQ(io::format_real(INFINITY), "inf");
  for (double x : {std::sqrt(2.0), 1.0 / 3.0, -7.25e-310, 6.02214076e23}) EXPECT_EQ(std::strtod(io::format_real(x).c_str(), nullptr), x);
}

TEST(Dump, NumbersAndLayout) {
  const json j = {{"a", 1.0}, {"b", json::array({0.5, 2})}, {"c", "x"}, {"d", json::object()}, {"e", NAN}};
  EXPECT_EQ(io::dump(j, -1), R"({"a":1.0,"b":[0.5,2],"c":"x","d":{},"e":"nan"})");
  EXPECT_EQ(io::dump(json{{"k", json::array({1.0})}}), "{\n  \"k\": [\n    1.0\n  ]\n}");
}

TEST(Parse, ReportsLineAndColumn) {
  const std::string msg = message_of([] { io::parse_text("{\n  \"a\": 1,\n  oops\n}", "input.json"); });
  EXPECT_NE(msg.find("input.json:3:"), std::string::npos) << msg;
  EXPECT_EQ(code_of([] { io::parse_text("[1,", "x"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { io::load_file("/nonexistent/file.json"); }), ErrorCode::ParseError);
}

TEST(Measure, RoundTripAndFieldErrors) {
  const json j = io::parse_text(R"({"space_dim":1,"dim":2,"atoms":[{"x":[0],"v":[1,0]},{"x":[1],"v":[0,1]}]})", "m");
  const VectorMeasure mu = io::measure_from_json(j);
  EXPECT_EQ(mu.size(), 2U);
  EXPECT_EQ(io::measure_from_json(io::to_json(mu)), mu);

  const std::string msg = message_of([] {
    io::measure_from_json(io::parse_text(R"({"space_dim":1,"dim":2,"atoms":[{"x":[0],"v":[1,0,3]}]})", "m"));
  });
  EXPECT_NE(msg.find("atoms[0].v"), std::string::npos) << msg;
  EXPECT_NE(message_of([] { io::measure_from_json(io::parse_text(R"({"space_dim":1,"dim":2,"atoms":[],"z":1})", "m")); })
                .find("unknown field 'z'"),
            std::string::npos);
  EXPECT_EQ(code_of([] { io::measure_from_json(io::parse_text(R"({"space_dim":1,"dim":2})", "m")); }),
            ErrorCode::ParseError);
}

TEST(Norm, AllKindsRoundTrip) {
  for (const char* text : {R"({"kind":"euclidean"})", R"({"kind":"lp","p":4.0})", R"({"kind":"lp","p":"inf"})",
                           R"({"kind":"lp","p":1.5,"weights":[1.0,2.0]})",
                           R"({"kind":"polygonal","generators":[[1.0,0.0],[0.0,1.0]]})", R"({"kind":"sum_of_circles"})"}) {
    const Seminorm n = io::norm_from_json(io::parse_text(text, "n"));
    EXPECT_EQ(io::dump(io::to_json(n), -1), io::dump(io::parse_text(text, "n"), -1));
  }
  EXPECT_EQ(code_of([] { io::norm_from_json(io::parse_text(R"({"kind":"lp","p":0.5})", "n")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { io::norm_from_json(io::parse_text(R"({"kind":"hex"})", "n")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { io::norm_from_json(io::parse_text(R"({"kind":"polygonal","generators":[[1,0],[0,1,2]]})", "n")); }),
            ErrorCode::ParseError);
}

TEST(Set, Schemas) {
  EXPECT_TRUE(io::set_from_json(io::parse_text(R"({"all":true})", "s")).is_all());
  const MeasurableSet b = io::set_from_json(io::parse_text(R"({"boxes":[{"lo":[0],"hi":[1]}]})", "s"));
  EXPECT_TRUE(b.contains({0.5}));
  const MeasurableSet s = io::set_from_json(io::parse_text(R"({"sites":[[2.0]]})", "s"));
  EXPECT_TRUE(s.contains({2.0}));
  EXPECT_FALSE(s.contains({2.5}));
  EXPECT_EQ(code_of([] { io::set_from_json(io::parse_text(R"({"all":true,"sites":[]})", "s")); }), ErrorCode::ParseError);
}

TEST(Polygon, HullFromVertices) {
  const ConvexPolygon p = io::polygon_from_json(io::parse_text(R"({"vertices":[[0,0],[1,0],[1,1],[0,1],[0.5,0.5]]})", "p"));
  EXPECT_EQ(p.size(), 4U);
  EXPECT_EQ(io::polygon_from_json(io::to_json(p)).vertices(), p.vertices());
}

TEST(Zonal, RoundTrip) {
  const ZonalMeasure sigma(2, {{DualVec{1.0, 0.0}, 1.0}, {DualVec{0.0, 1.0}, 2.5}});
  const ZonalMeasure back = io::zonal_from_json(io::to_json(sigma));
  ASSERT_EQ(back.size(), 2U);
  EXPECT_EQ(back.atoms()[1].weight, sigma.atoms()[1].weight);
}

TEST(Scenario, ExplicitAndBuiltin) {
  const json explicit_form = io::parse_text(R"({
    "name": "two-step", "norm": {"kind":"lp","p":1},
    "sequence": [{"space_dim":1,"dim":2,"atoms":[{"x":[0],"v":[1,0]}]}],
    "limit": {"space_dim":1,"dim":2,"atoms":[{"x":[0],"v":[1,0]}]}})",
                                            "s");
  const Scenario s = io::scenario_from_json(explicit_form);
  EXPECT_EQ(s.name, "two-step");
  EXPECT_EQ(s.sequence.size(), 1U);

  const Scenario b = io::scenario_from_json(
      io::parse_text(R"({"builtin":"dirac_split","params":{"v":[2,0],"x":[1]},"N":7})", "s"));
  EXPECT_EQ(b.sequence.size(), 7U);
  EXPECT_EQ(b.limit.atoms()[0].site, Site{1.0});
  EXPECT_EQ(code_of([] { io::scenario_from_json(io::parse_text(R"({"builtin":"spiral"})", "s")); }),
            ErrorCode::UnknownScenario);
}

TEST(Report, CsvHasOneRowPerTerm) {
  const DiagnosticsReport r = run_diagnostics(builtin_scenario("dirac_split", {}, 5), {8, 1.0, 0, 1e-9});
  const std::string csv = io::to_csv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
  EXPECT_EQ(csv.rfind("n,wide_proxy,mass,mass_gap,range_dh,range_lsc_deficiency,max_projected_gap,proj_gap_0", 0), 0U);
  const json j = io::to_json(r);
  EXPECT_EQ(j["rows"].size(), 5U);
  EXPECT_EQ(j["verdicts"]["range"], "not-converging");
}
