#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = frobtrace::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, TraceExamples) {
  auto r = run({"--char", "2", "--vars", "X,Y,Z", "trace", "(X/(X^3+Y^3+Z^3+1)) dX^dY^dZ", "--e", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0\n");
  r = run({"--char", "2", "--vars", "x", "trace", "(x) dx", "--e", "1"});
  EXPECT_EQ(r.out, "dx\n");
  r = run({"--char", "3", "--vars", "x", "trace", "(x^5) dx", "--e", "1"});
  EXPECT_EQ(r.out, "x dx\n");
  r = run({"--char", "3", "trace", "(x^5*y^2+x^2*y^8) dx^dy"});
  EXPECT_EQ(r.out, "(y^2 + x) dx^dy\n");
}

TEST(Cli, TraceJson) {
  const auto r = run({"--output", "json", "trace", "(x/(x^2+1)) dx", "--e", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["version"], "1.0");
  EXPECT_EQ(j["num"], "x + 1");
  EXPECT_EQ(j["den"], "x^2 + 1");
  EXPECT_EQ(j["e"], 1);
}

TEST(Cli, TraceMatrixFermat) {
  const auto r = run({"--char", "2", "--vars", "x,y,z,w", "--output", "json", "trace-matrix", "--E",
                      "x^3+y^3+z^3+w^3:1", "--D", "H:1", "--e", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const auto& map = j["map"];
  EXPECT_EQ(map["p"], 2);
  EXPECT_EQ(map["s"], 1);
  EXPECT_EQ(map["chart"], "w");
  EXPECT_EQ(map["src"]["dim"], 4);
  EXPECT_EQ(map["src"]["basis"], nlohmann::json({"1", "x", "y", "z"}));
  EXPECT_EQ(map["tgt"]["dim"], 1);
  EXPECT_EQ(map["matrix"], nlohmann::json::parse("[[[0],[0],[0],[0]]]"));
  EXPECT_EQ(map["verdict"]["zero"], true);
  EXPECT_EQ(map["verdict"]["rank"], 0);
}

TEST(Cli, TraceMatrixPlaneAndEmpty) {
  auto r = run({"--vars", "x,y,z", "trace-matrix", "--D", "H:3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("matrix (1 x 10)"), std::string::npos);
  EXPECT_NE(r.out.find("verdict: rank 1, surjective: yes, zero: no"), std::string::npos);
  r = run({"--vars", "x,y,z", "trace-matrix", "--D", "H:2"});
  EXPECT_NE(r.out.find("matrix (0 x 3)"), std::string::npos);
  EXPECT_NE(r.out.find("surjective: yes"), std::string::npos);
}

TEST(Cli, Sections) {
  const auto r = run({"sections", "x^3+y^3+z^3+w^3:1,H:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("bound 1  dim 4"), std::string::npos);
  EXPECT_NE(r.out.find("basis numerators: 1, x, y, z"), std::string::npos);
}

TEST(Cli, Fedder) {
  auto r = run({"--char", "2", "fedder", "x^3+y^3+z^3+w^3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("not split", 0), 0u);
  r = run({"--char", "5", "fedder", "x^3+y^3+z^3+w^3"});
  EXPECT_EQ(r.out.rfind("split", 0), 0u);
  EXPECT_NE(r.out.find("witness: x^3*y^3*z^3*w^3 with coefficient 4"), std::string::npos);
  r = run({"--char", "2", "fedder", "x"});
  EXPECT_EQ(r.out.rfind("split", 0), 0u);
  r = run({"--char", "5", "--output", "json", "fedder", "x^3+y^3+z^3+w^3"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"]["witness"]["coefficient"], nlohmann::json({4}));
}

TEST(Cli, DemoFermat) {
  auto r = run({"demo", "fermat-cubic"});
  EXPECT_EQ(r.code, 0);
  for (const char* step : {"(a)", "(b)", "(c)", "(d)", "(e)"})
    EXPECT_NE(r.out.find(std::string("[PASS] ") + step), std::string::npos) << step;
  r = run({"--output", "json", "demo", "fermat-cubic"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["levels"][2]["cols"], 120);
  EXPECT_EQ(j["levels"][2]["verdict"]["zero"], true);
}

TEST(Cli, CheckIsDeterministic) {
  const auto a = run({"check", "composition", "--cases", "30", "--seed", "5"});
  const auto b = run({"check", "composition", "--cases", "30", "--seed", "5"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("PASS composition: 30 cases, 0 failures"), std::string::npos);
}

TEST(Cli, ErrorsNameTheToken) {
  auto r = run({"check", "bogus"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'bogus'"), std::string::npos);
  r = run({"--vars", "x,y", "trace", "(q) dx^dy"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'q'"), std::string::npos);
  EXPECT_NE(r.err.find("position"), std::string::npos);
  r = run({"--vars", "x,y", "--chart", "w", "sections", "H:3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'w'"), std::string::npos);
  r = run({"--vars", "x,x", "sections", "H:3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'x'"), std::string::npos);
  r = run({"fedder", "x^2+y"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("x^2+y"), std::string::npos);
  r = run({"--char", "4", "fedder", "x"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("4"), std::string::npos);
  r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'frobnicate'"), std::string::npos);
  r = run({"--vars", "x", "trace", "(x) dx", "--e", "0"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, ExtensionField) {
  auto r = run({"--char", "2", "--ext-degree", "2", "--modulus", "t^2+t+1", "trace", "(x^3+x) dx"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "(x + 1) dx\n");
  r = run({"--char", "2", "--ext-degree", "2", "trace", "(x) dx"});
  EXPECT_EQ(r.code, 2);
  r = run({"--char", "2", "--ext-degree", "3", "--modulus", "t^2+t+1", "trace", "(x) dx"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("t^2+t+1"), std::string::npos);
}
