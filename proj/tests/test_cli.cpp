#include <gtest/gtest.h>

#include <filesystem>

#include "prony2d/cli.hpp"
#include "prony2d/error.hpp"
#include "prony2d/json_io.hpp"

using namespace prony2d;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("prony2d_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static cli::CommandResult run(std::vector<std::string> args) { return cli::run(args); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenPolygonIsRectilinearWithEvenVertexCount) {
  const auto r = run({"gen-polygon", "--rectilinear", "--max-vertices", "8", "--seed", "7", "--out", path("p.json")});
  ASSERT_EQ(r.exit_code, 0) << r.summary;
  ASSERT_EQ(r.outputs, std::vector<std::string>{path("p.json")});
  const Polygon P = io::polygon_from_json(io::parse(io::read_file(path("p.json"))));
  EXPECT_LE(P.size(), 8u);
  EXPECT_EQ(P.size() % 2, 0u);
  for (std::size_t j = 0; j < P.size(); ++j) {
    const Vec2 w = P.vertex(static_cast<std::ptrdiff_t>(j) + 1) - P.vertex(static_cast<std::ptrdiff_t>(j));
    EXPECT_TRUE(w.x == 0.0 || w.y == 0.0);
  }
}

TEST_F(Cli, SampleThenRecoverRoundTrips) {
  ASSERT_EQ(run({"gen-polygon", "--rectilinear", "--max-vertices", "8", "--seed", "7", "--out", path("p.json")}).exit_code, 0);
  const Polygon P = io::polygon_from_json(io::parse(io::read_file(path("p.json"))));
  const std::string set = "polygon:2," + std::to_string(P.size());
  ASSERT_EQ(run({"sample", "--polygon", path("p.json"), "--set", set, "--out", path("s.json")}).exit_code, 0);
  const auto r = run({"recover", "--samples", path("s.json"), "--slopes", "axis", "--bound", std::to_string(P.size()),
                      "--out", path("q.json"), "--report", path("r.json")});
  ASSERT_EQ(r.exit_code, 0) << r.summary;
  EXPECT_EQ(r.outputs.size(), 2u);
  const Polygon Q = io::polygon_from_json(io::parse(io::read_file(path("q.json"))));
  EXPECT_LT(polygon_distance(P, Q), 1e-6);
  const auto report = io::parse(io::read_file(path("r.json")));
  EXPECT_LT(report.at("verification_residual").get<double>(), 1e-8);
  EXPECT_EQ(report.at("result").at("terms").size(), P.size());
}

TEST_F(Cli, TruncatedSamplesAreMissingPoints) {
  ASSERT_EQ(run({"gen-polygon", "--rectilinear", "--max-vertices", "6", "--seed", "3", "--out", path("p.json")}).exit_code, 0);
  ASSERT_EQ(run({"sample", "--polygon", path("p.json"), "--set", "polygon:2,6", "--out", path("s.json")}).exit_code, 0);
  auto j = io::parse(io::read_file(path("s.json")));
  j["points"].erase(j["points"].size() - 1);
  j["values"].erase(j["values"].size() - 1);
  io::write_file(path("t.json"), io::dump(j));
  const auto r = run({"recover", "--samples", path("t.json"), "--bound", "6", "--out", path("q.json")});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.summary.find("missing-sample-points"), std::string::npos) << r.summary;
  EXPECT_FALSE(fs::exists(path("q.json")));
}

TEST_F(Cli, IdenticalArgvGivesIdenticalBytes) {
  for (const char* tag : {"a", "b"}) {
    ASSERT_EQ(run({"gen-polygon", "--rectilinear", "--max-vertices", "12", "--seed", "42", "--out", path(std::string(tag) + ".p")}).exit_code, 0);
    ASSERT_EQ(run({"sample", "--polygon", path(std::string(tag) + ".p"), "--set", "layered:3,2", "--out", path(std::string(tag) + ".s")}).exit_code, 0);
  }
  EXPECT_EQ(io::read_file(path("a.p")), io::read_file(path("b.p")));
  EXPECT_EQ(io::read_file(path("a.s")), io::read_file(path("b.s")));
  const auto c = run({"gen-polygon", "--rectilinear", "--max-vertices", "12", "--seed", "43"});
  EXPECT_NE(c.stdout_text, io::read_file(path("a.p")));
}

TEST_F(Cli, SamplesParseBackExactly) {
  ASSERT_EQ(run({"gen-polygon", "--star", "--max-vertices", "7", "--seed", "5", "--out", path("p.json")}).exit_code, 0);
  ASSERT_EQ(run({"sample", "--polygon", path("p.json"), "--set", "polygon:7,7", "--out", path("s.json")}).exit_code, 0);
  const Polygon P = io::polygon_from_json(io::parse(io::read_file(path("p.json"))));
  const SampleSet s = io::samples_from_json(io::parse(io::read_file(path("s.json"))));
  ASSERT_EQ(s.size(), polygon_grid(7, 7).size());
  const SampleSet direct = sample_polygon(P, polygon_grid(7, 7));
  for (const auto& [p, v] : direct) EXPECT_EQ(s.at(p), v);
  EXPECT_EQ(io::dump(io::to_json(s)), io::read_file(path("s.json")));
}

TEST_F(Cli, VerifyUniquenessReport) {
  io::write_file(path("a.json"), R"({"vertices": [[0.25,0.25],[0.75,0.25],[0.75,0.75],[0.25,0.75]]})");
  io::write_file(path("b.json"), R"({"vertices": [[0.375,0.25],[0.875,0.25],[0.875,0.75],[0.375,0.75]]})");
  const auto r = run({"verify-uniqueness", "--p1", path("a.json"), "--p2", path("b.json"), "--k", "2", "--bound", "4",
                      "--mode", "known", "--out", path("r.json")});
  ASSERT_EQ(r.exit_code, 0) << r.summary;
  const auto j = io::parse(io::read_file(path("r.json")));
  EXPECT_EQ(j.at("verdict"), "distinct-confirmed");
  EXPECT_EQ(j.at("set"), "polygon:2,4");
  EXPECT_EQ(j.at("argmax").size(), 2u);
}

TEST_F(Cli, OracleCheckAndPlot) {
  io::write_file(path("a.json"), R"({"vertices": [[0.1,0.1],[0.6,0.1],[0.1,0.6]]})");
  const auto r = run({"oracle-check", "--polygon", path("a.json"), "--trials", "30"});
  ASSERT_EQ(r.exit_code, 0) << r.summary;
  EXPECT_LT(io::parse(r.stdout_text).at("max_relative").get<double>(), 1e-9);
  const auto p = run({"plot", "--polygon", path("a.json"), "--set", "polygon:3,3", "--out", path("a.svg")});
  ASSERT_EQ(p.exit_code, 0) << p.summary;
  const std::string svg = io::read_file(path("a.svg"));
  EXPECT_NE(svg.find("fill-opacity=\"0.3\""), std::string::npos);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).exit_code, 2);
  EXPECT_EQ(run({"gen-polygon", "--rectilinear", "--no-such-flag"}).exit_code, 2);
  EXPECT_EQ(run({"recover", "--samples", "x.json"}).exit_code, 2);
  EXPECT_EQ(run({"frobnicate"}).exit_code, 2);
  EXPECT_EQ(run({"--help"}).exit_code, 0);
}

TEST_F(Cli, DomainErrorsExitOne) {
  io::write_file(path("bow.json"), R"({"vertices": [[0,0],[0.5,0.5],[0.5,0],[0,0.5]]})");
  const auto v = run({"sample", "--polygon", path("bow.json"), "--set", "polygon:2,4"});
  EXPECT_EQ(v.exit_code, 1);
  EXPECT_EQ(v.summary.rfind("validation", 0), 0u) << v.summary;
  io::write_file(path("junk.json"), "{not json");
  EXPECT_EQ(run({"sample", "--polygon", path("junk.json"), "--set", "polygon:2,4"}).summary.rfind("format", 0), 0u);
  io::write_file(path("sq.json"), R"({"vertices": [[0.25,0.25],[0.75,0.25],[0.75,0.75],[0.25,0.75]]})");
  const auto u = run({"sample", "--polygon", path("sq.json"), "--set", "hexagonal:2,4"});
  EXPECT_EQ(u.exit_code, 1);
  EXPECT_EQ(u.summary.rfind("invalid-parameter", 0), 0u) << u.summary;
}

TEST(JsonIo, ExpPolyRoundTripIsExact) {
  ExpPoly2D f;
  f.degree_bound = 2;
  Poly2D p(2);
  p.coeff(0, 1) = {1.0 / 3.0, -0.1};
  p.coeff(1, 0) = {2.0, 1e-300};
  f.terms.push_back({make_freq(0.1, 0.7), p});
  const std::string text = io::dump(io::to_json(f));
  const ExpPoly2D g = io::exppoly_from_json(io::parse(text));
  ASSERT_EQ(g.terms.size(), 1u);
  EXPECT_EQ(g.terms[0].freq.x, f.terms[0].freq.x);
  EXPECT_EQ(g.terms[0].p.raw(), p.raw());
  EXPECT_EQ(io::dump(io::to_json(g)), text);
}

TEST(JsonIo, MalformedSamplesAreFormatErrors) {
  for (const char* text : {R"({"points": [[0,0]], "values": []})", R"({"points": [[0.5,0]], "values": [[1,0]]})",
                           R"({"points": [[0,0],[0,0]], "values": [[1,0],[1,0]]})", R"({"values": []})"}) {
    try {
      io::samples_from_json(io::parse(text));
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Format) << text;
    }
  }
}
