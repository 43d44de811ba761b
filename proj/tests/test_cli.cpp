#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include <nkv/polynomial.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "nkv");
  std::ostringstream out, err;
  const int code = nkv::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, SymPowerPrintsCanonicalMatrix) {
  const Result r = run({"sympower", "--n", "3", "--d", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string first;
  std::getline(lines, first);
  EXPECT_EQ(first, "a11^2 | 2*a11*a12 | 2*a11*a13 | a12^2 | 2*a12*a13 | a13^2");
}

TEST(Cli, PrintedPolynomialsReparse) {
  const Result r = run({"sympower", "--n", "2", "--d", "3"});
  ASSERT_EQ(r.code, 0);
  const auto u = nkv::matrix_universe(2);
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) {
    std::size_t pos = 0;
    while (pos != std::string::npos) {
      const std::size_t next = line.find(" | ", pos);
      const std::string entry = line.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      EXPECT_EQ(nkv::Polynomial::parse(entry, u).to_string(), entry);
      pos = next == std::string::npos ? next : next + 3;
    }
  }
}

TEST(Cli, SalmonConic) {
  const Result r = run({"salmon", "--conic", "x2^2-x1*x3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("g1 = a13^2"), std::string::npos);
  EXPECT_NE(r.out.find("g2_terms = 138"), std::string::npos);
}

TEST(Cli, DegreesTableIsCsv) {
  const Result r = run({"degrees", "--table"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("quantity,parameters,value,stated,asserted\n", 0), 0u);
  for (const char* v : {",1080,", ",335,", ",11,", ",10,"}) EXPECT_NE(r.out.find(v), std::string::npos) << v;
}

TEST(Cli, DegreesBudgetJson) {
  const Result r = run({"degrees", "--n", "3", "--d", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["deg_det"], "30");
  EXPECT_EQ(j["deg_sqrt_delta_sat"], "18");
}

TEST(Cli, AuditJsonIsReproducible) {
  const std::vector<std::string> args{"audit", "--f", "x2^2-x1*x3", "--trials", "3", "--seed", "11", "--format", "json"};
  const Result a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["all_pass"], true);
}

TEST(Cli, ChowIdentity) {
  const Result r = run({"chow", "--n", "3", "--s", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("decomposition_identity = holds"), std::string::npos);
  EXPECT_NE(r.out.find("ctilde_3 = 6"), std::string::npos);
}

TEST(Cli, WitnessCertificate) {
  const Result r = run({"witness", "--f", "x2^2-x1*x3", "--mu", "(1,1)", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["det_K"], "0");
}

TEST(Cli, KalmanDetAtPoint) {
  const Result r = run({"kalman-det", "--f", "x2^2-x1*x3", "--at", "1,0,0;0,2,0;0,0,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "det = 0\n");
  const Result s = run({"kalman-det", "--f", "3*x1^2-2*x1*x2+5*x2^2"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_NE(s.out.find("degree = 6"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"sympower", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"kalman-det", "--f", "x1^2-x2"}).code, 2);
  EXPECT_EQ(run({"kalman-det", "--f", "x1^2+"}).code, 2);
  EXPECT_EQ(run({"audit", "--f", "x1*x2", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"kalman-det", "--f", "x2^2-x1*x3", "--at", "1,2;3,4"}).code, 2);
}
