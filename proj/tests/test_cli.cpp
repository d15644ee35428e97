#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include "famw/io.hpp"
#include "support.hpp"

namespace famw {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = FAMW_FIXTURES_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("famw_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string fx(const std::string& name) const { return (kFixtures / name).string(); }
  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }

  Outcome run(const std::string& args, const std::string& env = {}) const {
    const std::string out = tmp("stdout"), err = tmp("stderr");
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" + FAMW_CLI_PATH + "' " + args + " >'" +
                            out + "' 2>'" + err + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, io::detail::read_file(out),
            io::detail::read_file(err)};
  }

  fs::path dir_;
};

TEST_F(Cli, CheckPassFailError) {
  EXPECT_EQ(run("check f-manifold " + fx("three_dim_a1.json")).code, 0);
  EXPECT_EQ(run("check f-manifold " + fx("zero_bracket.json")).code, 0);
  EXPECT_EQ(run("check f-manifold " + fx("two_dim_a2.json")).code, 0);

  Outcome z = run("check zinbiel " + fx("lie_algebra.json"));
  EXPECT_EQ(z.code, 1);
  EXPECT_NE(z.out.find("witness: (h, h, e)"), std::string::npos) << z.out;
  EXPECT_NE(z.out.find("defect: (0, 4, 0)"), std::string::npos) << z.out;

  EXPECT_EQ(run("check no-such-class " + fx("three_dim_a1.json")).code, 2);
  EXPECT_EQ(run("check f-manifold " + tmp("missing.json")).code, 2);
  EXPECT_EQ(run("check").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(Cli, MalformedInputIsAnError) {
  io::detail::write_file(tmp("bad.json"), "{\n  \"dim\": 2,\n  \"products\": {,}\n}\n");
  Outcome r = run("check f-manifold " + tmp("bad.json"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("3"), std::string::npos) << r.err;
}

TEST_F(Cli, JsonReport) {
  Outcome r = run("check zinbiel " + fx("lie_algebra.json") + " --json");
  EXPECT_EQ(r.code, 1);
  nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["passed"], false);
  EXPECT_EQ(j["witness"], nlohmann::json::array({0, 0, 1}));
  EXPECT_EQ(j["witness_labels"], nlohmann::json::array({"h", "h", "e"}));
  EXPECT_EQ(j["defect"], nlohmann::json::array({"0", "4", "0"}));
}

TEST_F(Cli, OperatorChecks) {
  EXPECT_EQ(run("check rota-baxter " + fx("three_dim_a1.json") + " --operator " + fx("B_rst111.json")).code, 0);
  Outcome avg = run("check average " + fx("three_dim_a1.json") + " --operator " + fx("alpha_rs210.json"));
  EXPECT_EQ(avg.code, 1);
  EXPECT_NE(avg.out.find("average:bracket"), std::string::npos) << avg.out;
  EXPECT_EQ(run("check average " + fx("three_dim_a1.json") + " --operator " + fx("alpha_rs210.json") +
                " --slot mul")
                .code,
            0);
  EXPECT_EQ(run("check rota-baxter " + fx("three_dim_a1.json")).code, 2);
}

TEST_F(Cli, RotaBaxterPreFRoundTrip) {
  Outcome c = run("construct rb-pre-f " + fx("three_dim_a1.json") + " --operator " + fx("B_rst111.json") +
              " -o " + tmp("out.json"));
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(run("check pre-f-manifold " + tmp("out.json")).code, 0);
  Algebra out = io::load_algebra(tmp("out.json"));
  EXPECT_EQ(out.product(kMul)(1, 2, 0), Scalar(3, 2));
  EXPECT_EQ(out.product(kBracket)(1, 2, 0), Scalar(-3, 2));

  Outcome sub = run("construct sub-adjacent " + tmp("out.json") + " -o " + tmp("sub.json"));
  ASSERT_EQ(sub.code, 0) << sub.err;
  Algebra s = io::load_algebra(tmp("sub.json"));
  EXPECT_EQ(s.product(kMul)(1, 2, 0), Scalar(9, 2));
  EXPECT_EQ(s.product(kBracket)(1, 2, 0), Scalar(-9, 2));
}

TEST_F(Cli, DirectSumAddsDimensions) {
  Outcome r = run("construct direct-sum " + fx("two_dim_a2.json") + " " + fx("three_dim_a1.json") + " -o " +
              tmp("sum.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(io::load_algebra(tmp("sum.json")).dim(), 5u);
  EXPECT_EQ(run("check f-manifold " + tmp("sum.json")).code, 0);
}

TEST_F(Cli, AverageDualNeedsForceOnTheExample) {
  Outcome refused = run("construct avg-dual " + fx("three_dim_a1.json") + " --operator " + fx("alpha_rs110.json") +
                    " -o " + tmp("avg.json"));
  EXPECT_EQ(refused.code, 1);
  EXPECT_NE(refused.out.find("average:bracket"), std::string::npos) << refused.out;
  EXPECT_FALSE(fs::exists(tmp("avg.json")));

  Outcome forced = run("construct avg-dual " + fx("three_dim_a1.json") + " --operator " + fx("alpha_rs110.json") +
                   " --force -o " + tmp("avg.json"));
  ASSERT_EQ(forced.code, 0) << forced.err;
  Algebra a = io::load_algebra(tmp("avg.json"));
  EXPECT_EQ(a.product(kMul), test::tensor_of(3, {{1, 2, 0, 1}, {2, 1, 0, 1}, {2, 2, 0, 1}, {2, 2, 1, 1}}));
  EXPECT_EQ(a.product(kBracket), test::tensor_of(3, {{1, 2, 0, -1}, {2, 1, 0, 1}, {2, 2, 0, -1}}));
}

TEST_F(Cli, Derivations) {
  Outcome r = run("derivations " + fx("three_dim_a1.json") + " --slot mul --json");
  ASSERT_EQ(r.code, 0) << r.err;
  nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dimension"], 3);
}

TEST_F(Cli, Cohomology) {
  Outcome zero = run("cohomology " + fx("zero_1d.json") + " --degree 2");
  ASSERT_EQ(zero.code, 0) << zero.err;
  EXPECT_NE(zero.out.find("H^2 = 1"), std::string::npos) << zero.out;

  Outcome three = run("cohomology " + fx("h2/three_dim_comm.json") + " --degree 2 --json");
  ASSERT_EQ(three.code, 0) << three.err;
  EXPECT_EQ(nlohmann::json::parse(three.out)["h"], 9);

  Outcome capped = run("cohomology " + fx("zero_1d.json") + " --degree 9");
  EXPECT_EQ(capped.code, 2);
  EXPECT_NE(capped.err.find("cap"), std::string::npos) << capped.err;
  EXPECT_EQ(run("cohomology " + fx("zero_1d.json") + " --degree 9", "FAMW_DEGREE_CAP=9").code, 0);
  EXPECT_EQ(run("cohomology " + fx("zero_1d.json") + " --degree 2", "FAMW_DEGREE_CAP=x").code, 2);
  EXPECT_EQ(run("cohomology " + fx("lie_algebra.json") + " --degree 2").code, 1);
}

TEST_F(Cli, Deform) {
  EXPECT_EQ(run("deform verify " + fx("fam_zero.json")).code, 0);
  EXPECT_EQ(run("deform verify " + fx("fam_D100.json")).code, 0);

  ASSERT_EQ(run("deform limit " + fx("fam_D100.json") + " -o " + tmp("lim.json")).code, 0);
  Algebra lim = io::load_algebra(tmp("lim.json"));
  EXPECT_EQ(lim.product(kBracket)(1, 2, 0), Scalar(-1));
  EXPECT_EQ(run("check f-manifold " + tmp("lim.json")).code, 0);

  ASSERT_EQ(run("deform extend " + fx("fam_prelie.json") + " -o " + tmp("ext.json")).code, 0);
  DeformationFamily ext = io::load_family(tmp("ext.json"));
  ASSERT_EQ(ext.order(), 2u);
  EXPECT_TRUE(ext.mus[1].is_zero());
  EXPECT_EQ(run("deform verify " + tmp("ext.json")).code, 0);

  Outcome obstructed = run("deform extend " + fx("fam_obstructed.json"));
  EXPECT_EQ(obstructed.code, 1);
  EXPECT_NE(obstructed.out.find("obstruction"), std::string::npos) << obstructed.out;

  EXPECT_EQ(run("deform equivalent " + fx("fam_D100.json") + " " + fx("fam_D100.json")).code, 0);
  EXPECT_EQ(run("deform frobnicate " + fx("fam_zero.json")).code, 2);
}

TEST_F(Cli, UnverifiedFamilyIsRefused) {
  DeformationFamily f = io::load_family(fx("fam_D100.json"));
  f.mus[0](2, 2, 2) = 1;
  io::save_family(f, tmp("broken.json"));
  EXPECT_EQ(run("deform verify " + tmp("broken.json")).code, 1);
  EXPECT_EQ(run("deform extend " + tmp("broken.json")).code, 1);
  EXPECT_EQ(run("deform limit " + tmp("broken.json")).code, 1);
}

TEST_F(Cli, ReportsAreDeterministic) {
  const std::vector<std::string> commands = {
      "check zinbiel " + fx("lie_algebra.json") + " --json",
      "check f-manifold " + fx("three_dim_a1.json"),
      "derivations " + fx("three_dim_a1.json") + " --slot mul",
      "cohomology " + fx("h2/three_dim_comm.json") + " --degree 2 --json",
      "deform extend " + fx("fam_prelie.json"),
      "construct rb-pre-f " + fx("three_dim_a1.json") + " --operator " + fx("B_rst111.json") + " --json",
  };
  for (const auto& c : commands) {
    Outcome a = run(c), b = run(c);
    EXPECT_EQ(a.code, b.code) << c;
    EXPECT_EQ(a.out, b.out) << c;
    EXPECT_FALSE(a.out.empty()) << c;
  }
  ASSERT_EQ(run("construct rb-pre-f " + fx("three_dim_a1.json") + " --operator " + fx("B_rst111.json") +
                " -o " + tmp("one.json"))
                .code,
            0);
  ASSERT_EQ(run("construct rb-pre-f " + fx("three_dim_a1.json") + " --operator " + fx("B_rst111.json") +
                " -o " + tmp("two.json"))
                .code,
            0);
  EXPECT_EQ(io::detail::read_file(tmp("one.json")), io::detail::read_file(tmp("two.json")));
}

}  // namespace
}  // namespace famw
