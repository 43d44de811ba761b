#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <sstream>

#include <nkv/chow.hpp>
#include <nkv/enumerative.hpp>
#include <nkv/error.hpp>

using namespace nkv;

namespace {

std::vector<std::string> strings(const std::vector<Partition>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

/// Brute-force count of partitions of d into at most n parts.
unsigned brute_partitions(unsigned d, unsigned n, unsigned max_part) {
  if (d == 0) return 1;
  if (n == 0) return 0;
  unsigned c = 0;
  for (unsigned p = std::min(d, max_part); p >= 1; --p) c += brute_partitions(d - p, n - 1, p);
  return c;
}

}  // namespace

TEST(Partitions, SmallCases) {
  EXPECT_EQ(strings(partitions(2, 3)), (std::vector<std::string>{"(2)", "(1,1)"}));
  EXPECT_EQ(strings(partitions(4, 2)), (std::vector<std::string>{"(4)", "(1,3)", "(2,2)"}));
  EXPECT_EQ(partition_count(4, 2), 3);
}

TEST(Partitions, CountMatchesEnumerationAndBruteForce) {
  for (unsigned d = 1; d <= 12; ++d)
    for (unsigned n = 1; n <= 8; ++n) {
      EXPECT_EQ(partition_count(d, n), static_cast<unsigned long>(partitions(d, n).size()));
      EXPECT_EQ(partition_count(d, n), brute_partitions(d, n, d));
      for (const auto& p : partitions(d, n)) {
        EXPECT_EQ(p.degree(), d);
        EXPECT_LE(p.length(), n);
      }
    }
}

TEST(Enumerative, KalmanVarietyDegree) {
  EXPECT_EQ(deg_kalman(3, 2, 2).degree, 6);
  EXPECT_EQ(deg_kalman(3, 2, 2).codimension, 1u);
  EXPECT_EQ(deg_kalman(3, 1, 1).degree, 1);
  EXPECT_THROW(deg_kalman(3, 3, 1), Error);
}

TEST(Enumerative, MuDegrees) {
  EXPECT_EQ(deg_mu_kalman(5, Partition({1, 2, 2, 4})), 1080);
  EXPECT_EQ(deg_mu_kalman(3, Partition({1, 1})), 6);
  EXPECT_EQ(deg_mu_kalman(3, Partition({2})), 6);
  for (unsigned n = 2; n <= 8; ++n)
    for (unsigned d = 1; d <= 8; ++d) EXPECT_EQ(deg_mu_kalman(n, Partition({d})), Integer(d) * binomial(n, 2));
  EXPECT_THROW(deg_mu_kalman(2, Partition({1, 1, 1})), Error);
}

TEST(Enumerative, MuDegreeExpressionsAgreeOnSweep) {
  for (unsigned n = 1; n <= 8; ++n)
    for (unsigned d = 1; d <= 8; ++d)
      for (const auto& mu : partitions(d, n)) {
        EXPECT_EQ(deg_mu_kalman_falling(n, mu), deg_mu_kalman_multinomial(n, mu)) << n << " " << mu.to_string();
        EXPECT_EQ(deg_mu_from_chow(n, mu), deg_mu_kalman_falling(n, mu));
      }
}

TEST(Enumerative, DiscriminantBudget) {
  const DegreeReport r = discriminant_budget(3, 2);
  EXPECT_EQ(r.at("k"), 4);
  EXPECT_EQ(r.at("deg_sqrt_delta_sat"), 18);
  EXPECT_EQ(r.at("deg_det"), 30);
  EXPECT_EQ(r.at("sum_deg_p"), 12);
  const DegreeReport s = discriminant_budget(2, 2);
  EXPECT_EQ(s.at("k"), 3);
  EXPECT_EQ(s.at("deg_sqrt_delta_sat"), 3);
  EXPECT_EQ(s.at("deg_det"), 6);
  EXPECT_EQ(s.at("sum_deg_p"), 3);
  EXPECT_THROW(s.at("missing"), Error);
}

TEST(Enumerative, BudgetIdentitiesOnSweep) {
  for (unsigned n = 2; n <= 6; ++n)
    for (unsigned d = 1; d <= 6; ++d) {
      const DegreeReport r = discriminant_budget(n, d);
      EXPECT_EQ(r.at("deg_det"), r.at("deg_sqrt_delta_sat") + r.at("sum_deg_p")) << n << " " << d;
      EXPECT_EQ(r.at("sum_multinomial"), r.at("N"));
      EXPECT_EQ(r.at("deg_delta_d"), 2 * r.at("deg_sqrt_delta_sat") + r.at("k") * r.at("deg_delta"));
      EXPECT_EQ(r.at("budget_ok"), 1);
    }
}

TEST(Enumerative, DetAMultiplicity) {
  EXPECT_EQ(detA_multiplicity(3, 2), 3);
  EXPECT_EQ(detA_multiplicity(3, 3), 18);
  EXPECT_EQ(detA_multiplicity(2, 2), 1);
  for (unsigned d = 2; d <= 10; ++d) EXPECT_EQ(detA_multiplicity(3, d), 3 * binomial(d + 3, 5)) << d;
}

TEST(Enumerative, Stirling) {
  EXPECT_EQ(stirling2(3, 2), 3);
  EXPECT_EQ(stirling2(5, 3), 25);
  EXPECT_EQ(stirling2(4, 5), 0);
}

TEST(Enumerative, SingularLocusDegrees) {
  EXPECT_EQ(sing_hyperplane_union(3, 2), 11);
  EXPECT_EQ(sing_self(3), 1);
  EXPECT_EQ(sing_pairwise(3, 1, 1), 8);
  EXPECT_EQ(sing_smooth_hypersurface(3, 2), 10);
  EXPECT_EQ(sing_smooth_hypersurface(6, 2), 335);
  for (unsigned d = 1; d <= 20; ++d) EXPECT_EQ(sing_smooth_hypersurface(3, d), Integer(d) * (4 * d - 3));
}

TEST(Enumerative, SingularLocusIntegrality) {
  for (unsigned n = 2; n <= 12; ++n) {
    EXPECT_NO_THROW(sing_self(n)) << n;
    for (unsigned d = 1; d <= 8; ++d) {
      EXPECT_NO_THROW(sing_hyperplane_union(n, d));
      const DegreeReport r = sing_degrees("smooth_hypersurface", n, d);
      EXPECT_GE(r.values.front().second, 0);
    }
  }
  EXPECT_THROW(sing_degrees("bogus", 3, 2), Error);
}

TEST(Enumerative, DegreeTableMatchesGoldenFile) {
  std::ifstream in(NKV_FIXTURE_DIR "/degrees.csv");
  ASSERT_TRUE(in) << "missing fixture";
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "quantity,parameters,value,stated,asserted");
  for (const auto& row : degree_table()) {
    ASSERT_TRUE(std::getline(in, line));
    std::ostringstream expect;
    expect << row.quantity << ",\"" << row.parameters << "\"," << row.value.get_str() << ',' << row.stated << ','
           << (row.asserted ? "yes" : "no");
    EXPECT_EQ(line, expect.str());
    if (row.asserted && !row.stated.empty()) EXPECT_EQ(row.value.get_str(), row.stated) << row.quantity;
  }
  EXPECT_FALSE(std::getline(in, line));
}
