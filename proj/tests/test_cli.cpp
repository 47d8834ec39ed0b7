#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "hgpade/serialize.hpp"

using namespace hgpade;
namespace fs = std::filesystem;

namespace {

HypergeometricSpec canonical() {
  return HypergeometricSpec::from_hypergeometric({Rational(1, 3), Rational(1, 4)}, {Rational(1, 2)});
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hgpade_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // exit status; stdout and stderr land in files
  int run(const std::string& args) {
    const std::string cmd = std::string(HGPADE_CLI) + " " + args + " > " + path("stdout") + " 2> " + path("stderr");
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string out() const { return read_text(path("stdout")); }
  std::string err() const { return read_text(path("stderr")); }

  fs::path dir_;
};

const std::string kSpecFlags = "--a 1/3,1/4 --b 1/2 --alphas 1,2";

}  // namespace

TEST(Serialize, CanonicalRationals) {
  EXPECT_EQ(to_json(parse_rational("6/4")), Json("3/2"));
  EXPECT_EQ(to_json(Rational(-2)), Json("-2"));
  EXPECT_TRUE(real(std::nan("")).is_null());
  EXPECT_TRUE(real(INFINITY).is_null());
  EXPECT_EQ(rational_from_json(Json("10/4")), Rational(5, 2));
  EXPECT_EQ(rational_from_json(Json(3)), Rational(3));
}

TEST(Serialize, SystemRoundTrip) {
  auto sys = build_system(canonical(), {Rational(1), Rational(2)}, 2);
  Json j = to_json(sys);
  auto back = system_from_json(Json::parse(dump(j)));
  EXPECT_EQ(back.P, sys.P);
  EXPECT_EQ(back.Pis, sys.Pis);
  EXPECT_EQ(back.alphas, sys.alphas);
  EXPECT_EQ(back.spec.eta(), sys.spec.eta());
  EXPECT_EQ(back.spec.c0(), sys.spec.c0());
  EXPECT_EQ(dump(to_json(back)), dump(j));
}

TEST(Serialize, MalformedSystem) {
  EXPECT_THROW(system_from_json(Json::parse(R"({"spec": 3})")), std::invalid_argument);
}

TEST(Serialize, DumpIsDeterministicAndSorted) {
  auto sys = build_system(canonical(), {Rational(1)}, 2);
  std::string a = dump(to_json(sys)), b = dump(to_json(sys));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.back(), '\n');
  EXPECT_LT(a.find("\"P\""), a.find("\"alphas\""));
  EXPECT_LT(a.find("\"alphas\""), a.find("\"spec\""));
}

TEST(Serialize, ProfileCsvRows) {
  auto prof = D_n_profile(Rational(1, 3), Rational(1, 2), 50);
  std::istringstream in(profile_csv(prof));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,D_k,log_D_k");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 51);
}

TEST_F(Cli, BuildIsDeterministic) {
  ASSERT_EQ(run("build " + kSpecFlags + " --n 3 --out " + path("a.json")), 0) << err();
  ASSERT_EQ(run("build " + kSpecFlags + " --n 3 --out " + path("b.json")), 0) << err();
  EXPECT_EQ(read_text(path("a.json")), read_text(path("b.json")));
  auto sys = system_from_json(Json::parse(read_text(path("a.json"))));
  EXPECT_EQ(sys.P.size(), 5u);
}

TEST_F(Cli, VerifyValidAndCorrupted) {
  ASSERT_EQ(run("build " + kSpecFlags + " --n 2 --out " + path("sys.json")), 0);
  EXPECT_EQ(run("verify --system " + path("sys.json")), 0) << err();
  Json j = Json::parse(read_text(path("sys.json")));
  j["P"][1][1] = "7/3";
  write_text(path("bad.json"), dump(j));
  EXPECT_EQ(run("verify --system " + path("bad.json")), 4);
  EXPECT_NE(err().find("P_1"), std::string::npos) << err();
  // a corrupted column makes Delta nonconstant
  EXPECT_EQ(run("wronskian --system " + path("bad.json")), 3);
}

TEST_F(Cli, ParseErrorNamesTheFlag) {
  EXPECT_EQ(run("build --a 1/0 --b 1/2 --alphas 1"), 1);
  EXPECT_NE(err().find("--a"), std::string::npos) << err();
  EXPECT_EQ(run("criterion " + kSpecFlags + " --beta 1/0"), 1);
  EXPECT_NE(err().find("--beta"), std::string::npos) << err();
  EXPECT_EQ(run("criterion " + kSpecFlags + " --beta 10 --place 6"), 1);
  EXPECT_EQ(run("frobnicate"), 1);
}

TEST_F(Cli, HypothesisViolationIsNamed) {
  EXPECT_EQ(run("wronskian --a 3/2,1/4 --b 1/2 --alphas 1 --n 1"), 2);
  EXPECT_NE(err().find("a_k+1-b_j"), std::string::npos) << err();
  EXPECT_EQ(run("build --a 1/3 --b -1 --alphas 1"), 2);
}

TEST_F(Cli, WronskianCertifies) {
  ASSERT_EQ(run("build " + kSpecFlags + " --n 1 --out " + path("sys.json")), 0);
  ASSERT_EQ(run("wronskian --system " + path("sys.json") + " --full-chain --out " + path("w.json")), 0) << err();
  Json w = Json::parse(read_text(path("w.json")));
  EXPECT_TRUE(w["certified_nonzero"].get<bool>());
  EXPECT_TRUE(w["delta"].is_string());
}

TEST_F(Cli, CriterionVerdictAndExitCode) {
  EXPECT_EQ(run("criterion " + kSpecFlags + " --beta 1000000 --n-range 4..9 --out " + path("m.json")), 0) << err();
  Json m = Json::parse(read_text(path("m.json")));
  EXPECT_TRUE(m["verdict"].get<bool>());
  EXPECT_EQ(m["closed_form"]["label"], "best-effort");
  EXPECT_EQ(m["beta"], "1000000");
  EXPECT_EQ(run("criterion " + kSpecFlags + " --beta 3 --n-range 4..8"), 4);
}

TEST_F(Cli, ConfigFileMirrorsFlags) {
  write_text(path("cfg.json"), R"({"command": "build", "a": ["1/3", "1/4"], "b": "1/2", "alphas": [1, 2], "n": 2})");
  ASSERT_EQ(run("--config " + path("cfg.json") + " --out " + path("a.json")), 0) << err();
  ASSERT_EQ(run("build " + kSpecFlags + " --n 2 --out " + path("b.json")), 0);
  EXPECT_EQ(read_text(path("a.json")), read_text(path("b.json")));
  // explicit flags win over the file
  ASSERT_EQ(run("build --config " + path("cfg.json") + " --n 1 --out " + path("c.json")), 0) << err();
  EXPECT_EQ(Json::parse(read_text(path("c.json")))["n"], 1);
}

TEST_F(Cli, EvalPrintsCertifiedValue) {
  ASSERT_EQ(run("eval --a 1,1 --b 2 --z 1/2 --bits 128 --format text"), 0) << err();
  EXPECT_EQ(out().substr(0, 12), "1.3862943611");
  EXPECT_NE(out().find("+- 2^-"), std::string::npos);
  EXPECT_EQ(run("eval --a 1/3,1/4 --b 1/2 --z 1 --bits 64"), 1);
}

TEST_F(Cli, ProfileCsvHasNPlusOneRows) {
  ASSERT_EQ(run("profile --a 1/3 --b 1/2 --N 20 --format csv"), 0);
  std::istringstream in(out());
  std::string line;
  int rows = -1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 21);
  EXPECT_EQ(run("verify --system x --format csv"), 1);
}

TEST_F(Cli, SuiteSubset) {
  EXPECT_EQ(run("suite --level desk --only 7 --out " + path("s.json")), 0) << err();
  EXPECT_NE(out().find("criterion  7 PASS"), std::string::npos);
  Json s = Json::parse(read_text(path("s.json")));
  EXPECT_EQ(s["results"].size(), 1u);
}
