#include <gtest/gtest.h>

#include <sstream>

#include <qlag/cli.hpp>

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = qlag::cli::run(args, o, e);
  return {c, o.str(), e.str()};
}

}  // namespace

TEST(Cli, HochschildPasses) {
  Outcome r = run({"verify", "hochschild", "--vars", "1", "--order", "2", "--arity", "3", "--seed", "42"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("PASS  d-squared/@O/n1"), std::string::npos);
  EXPECT_NE(r.out.find("0 fail"), std::string::npos);
}

TEST(Cli, TwistedDeRhamTable) {
  Outcome r = run({"cohomology", "twisted-derham", "--f", "x^3+y^3", "--degree-cap", "12", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["config"]["vars"], 2);
  auto rows = j["checks"][0]["rows"];
  EXPECT_EQ(rows[2]["degree"], 2);
  EXPECT_EQ(rows[2]["dim"], 4);
  EXPECT_EQ(rows[2]["stable"], true);
}

TEST(Cli, MainTheoremSmallWindow) {
  Outcome r = run({"verify", "main-theorem", "--vars", "1", "--order", "1", "--arity", "2", "--bar-length", "2", "--weight",
               "0", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& c : j["checks"])
    if (c["id"] == "window/h0-equals-weyl-count") {
      found = true;
      EXPECT_EQ(c["h0"], 2);
    }
  EXPECT_TRUE(found);
}

TEST(Cli, ParseErrorExitsTwoWithLocation) {
  Outcome r = run({"cohomology", "koszul", "--vars", "2", "--f", "x^2 + * y"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("offset 6"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("      ^"), std::string::npos) << r.err;
  EXPECT_EQ(run({"verify", "phi", "--twist", "x^2*dq"}).code, 2);
  EXPECT_EQ(run({"verify", "nonsense"}).code, 2);
  EXPECT_EQ(run({"verify", "bar", "--format", "yaml"}).code, 2);
}

TEST(Cli, Deterministic) {
  for (auto args : std::vector<std::vector<std::string>>{
           {"verify", "bar", "--vars", "2", "--format", "json"},
           {"verify", "braces", "--seed", "7", "--format", "json"},
           {"oracle", "weyl-window", "--vars", "2", "--order", "2", "--weight", "1"}}) {
    Outcome a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
  }
  Outcome s1 = run({"verify", "cup", "--seed", "1", "--format", "json"});
  Outcome s2 = run({"verify", "cup", "--seed", "2", "--format", "json"});
  EXPECT_NE(s1.out, s2.out);
}

TEST(Cli, OracleJacobianNotIsolated) {
  Outcome r = run({"oracle", "jacobian", "--vars", "2", "--f", "x^2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("not isolated"), std::string::npos);
  EXPECT_NE(r.err.find("provisional"), std::string::npos);
}

TEST(Report, FailureCarriesWitnessAndCounts) {
  qlag::Report rep("demo", {{"seed", 1}});
  qlag::suite_detail::Tally t;
  t.record(true, [] { return nlohmann::json{{"p", "x"}}; });
  t.record(false, [] { return nlohmann::json{{"p", "dx^2"}}; });
  t.record(false, [] { return nlohmann::json{{"p", "dy"}}; });
  t.emit(rep, "some-check");
  rep.add("maybe", qlag::Status::Provisional);
  EXPECT_FALSE(rep.ok());
  auto j = rep.to_json();
  EXPECT_EQ(j["checks"][0]["witness"]["p"], "dx^2");
  EXPECT_EQ(j["checks"][0]["failures"], 2);
  EXPECT_EQ(j["summary"]["fail"], 1);
  EXPECT_EQ(j["summary"]["provisional"], 1);
  // keys come out sorted
  std::string s = j.dump();
  EXPECT_LT(s.find("\"checks\""), s.find("\"config\""));
  EXPECT_LT(s.find("\"schema\""), s.find("\"suite\""));
}
