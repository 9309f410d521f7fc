// Drives the bumpfn executable as a subprocess.

#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "support/process.hpp"

namespace {

using bumpfn::testing::CommandResult;

CommandResult cli(const std::string& args) {
  return bumpfn::testing::run_command(std::string(BUMPFN_CLI_PATH) + " " + args);
}

std::string data(const std::string& name) { return std::string(BUMPFN_TEST_DATA) + "/" + name; }

TEST(CliCoeffs, Csv) {
  const auto r = cli("coeffs --max-order 3 --format csv");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.out.ends_with("3,2,6\n")) << r.out;
  EXPECT_EQ(cli("coeffs --max-order 1").out, "i,k,a_ik\n1,0,1\n");
}

TEST(CliCoeffs, JsonAndTable) {
  const auto json = nlohmann::json::parse(cli("coeffs --max-order 4 --format json").out);
  EXPECT_EQ(json["rows"][3], nlohmann::json({"1", "12", "36", "24"}));
  const auto table = cli("coeffs --max-order 2 --format table");
  EXPECT_EQ(table.exit_code, 0);
  EXPECT_NE(table.out.find("a_ik"), std::string::npos);
}

TEST(CliCoeffs, UsageErrors) {
  EXPECT_EQ(cli("coeffs --max-order 0").exit_code, 2);
  EXPECT_EQ(cli("coeffs --max-order three").exit_code, 2);
  EXPECT_EQ(cli("coeffs --bogus 1").exit_code, 2);
  EXPECT_EQ(cli("").exit_code, 2);
  EXPECT_EQ(cli("coeffs --format xml").exit_code, 2);
}

TEST(CliEval, Values) {
  const auto h = cli("eval --fn h --order 1 --points 1");
  EXPECT_EQ(h.exit_code, 0);
  EXPECT_NE(h.out.find("h,1,1,-2.718281828459045,finite"), std::string::npos) << h.out;

  const auto f = cli("eval --fn f --order 9 --points -5");
  EXPECT_EQ(f.exit_code, 0);
  EXPECT_NE(f.out.find("f,9,-5,0,finite"), std::string::npos) << f.out;

  const auto g = cli("eval --fn g --order 1 --points 0");
  EXPECT_EQ(g.exit_code, 0);
  EXPECT_NE(g.out.find("undefined_at_zero"), std::string::npos) << g.out;
}

TEST(CliEval, MultiplePointsAndJson) {
  const auto r = cli("eval --fn g --order 2 --points -1,0.5,1e-3 --format json");
  ASSERT_EQ(r.exit_code, 0);
  const auto json = nlohmann::json::parse(r.out);
  ASSERT_EQ(json.size(), 3u);
  EXPECT_EQ(json[2]["status"], "underflow_zero");
  EXPECT_EQ(cli("eval --fn q --points 1").exit_code, 2);
  EXPECT_EQ(cli("eval --fn g --points x").exit_code, 2);
}

TEST(CliLimits, FourClassifications) {
  const auto r = cli("limits");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out,
            "fn,side,limit\n"
            "g,left_of_zero,plus_infinity\n"
            "g,right_of_zero,zero\n"
            "h,left_of_zero,zero\n"
            "h,right_of_zero,plus_infinity\n");
  EXPECT_EQ(cli("limits --fn f").exit_code, 2);
}

TEST(CliVerify, ExitCodesFollowVerdict) {
  const auto cm = cli("verify --kind cm --fn h --interval 0:inf");
  EXPECT_EQ(cm.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(cm.out)["verdict"], "proved_exact");

  const auto am = cli("verify --kind am --fn g --interval -inf:0");
  EXPECT_EQ(am.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(am.out)["verdict"], "proved_exact");

  const auto bad = cli("verify --kind cm --fn g --interval 0:inf --max-order 3");
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_EQ(nlohmann::json::parse(bad.out)["verdict"], "violated");

  const auto lcm = cli("verify --kind lcm --fn 1/g --interval 0:inf --max-order 30");
  EXPECT_EQ(lcm.exit_code, 0);
}

TEST(CliVerify, UsageErrors) {
  EXPECT_EQ(cli("verify --kind cm --fn h --interval -1:1").exit_code, 2);
  EXPECT_EQ(cli("verify --kind cm --fn h --interval 0-inf").exit_code, 2);
  EXPECT_EQ(cli("verify --kind cm --fn 1/h --interval 0:inf").exit_code, 2);
  EXPECT_EQ(cli("verify --kind xx --fn h --interval 0:inf").exit_code, 2);
}

TEST(CliPou, Covers) {
  const auto one = cli("pou --cover " + data("one_patch.json") + " --samples 5 --order 2");
  ASSERT_EQ(one.exit_code, 0);
  EXPECT_EQ(one.out,
            "x,patch_index,weight,d1,d2\n"
            "0,0,1,0,0\n0.25,0,1,0,0\n0.5,0,1,0,0\n0.75,0,1,0,0\n1,0,1,0,0\n");

  const auto two = cli("pou --cover " + data("two_patch.json") + " --points 1 --order 1");
  ASSERT_EQ(two.exit_code, 0);
  EXPECT_EQ(two.out, "x,patch_index,weight,d1\n1,0,0.5,0\n1,1,0.5,0\n");
}

TEST(CliPou, Failures) {
  EXPECT_EQ(cli("pou --cover " + data("gap.json")).exit_code, 1);
  EXPECT_EQ(cli("pou --cover " + data("malformed.json")).exit_code, 2);
  EXPECT_EQ(cli("pou --cover /nonexistent.json").exit_code, 2);
  EXPECT_EQ(cli("pou --cover " + data("one_patch.json") + " --order 17").exit_code, 2);
}

TEST(CliPou, GapMessageNamesThePoint) {
  const auto r = bumpfn::testing::run_command(std::string(BUMPFN_CLI_PATH) + " pou --cover " +
                                              data("gap.json") + " 2>&1 >/dev/null; true");
  EXPECT_NE(r.out.find("x=4"), std::string::npos) << r.out;
}

TEST(Cli, RepeatedInvocationsAreByteIdentical) {
  const std::vector<std::string> invocations{
      "coeffs --max-order 12 --format json", "eval --fn g --order 5 --points -2,0.3,7",
      "limits --format json", "verify --kind lcm --fn g --interval -inf:0 --max-order 5",
      "pou --cover " + data("two_patch.json") + " --samples 9"};
  for (const auto& args : invocations) {
    const auto first = cli(args);
    const auto second = cli(args);
    EXPECT_EQ(first.out, second.out) << args;
    EXPECT_EQ(first.exit_code, second.exit_code) << args;
    EXPECT_FALSE(first.out.empty()) << args;
  }
}

}  // namespace
