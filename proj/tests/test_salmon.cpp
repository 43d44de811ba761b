#include <gtest/gtest.h>

#include <random>

#include <nkv/enumerative.hpp>
#include <nkv/error.hpp>
#include <nkv/kalman.hpp>
#include <nkv/salmon.hpp>
#include <nkv/witness.hpp>

#include "oracle.hpp"

using namespace nkv;

namespace {

UniversePtr x3() { return make_universe({"x1", "x2", "x3"}); }
Polynomial X(const std::string& s) { return Polynomial::parse(s, x3()); }

Polynomial random_quadric(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-6, 6);
  std::vector<std::pair<Exponents, Rational>> terms;
  for (const auto& e : std::vector<Exponents>{{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}})
    terms.emplace_back(e, c(rng));
  return Polynomial::from_terms(x3(), std::move(terms));
}

/// Random quadric in x1, x2, x3 vanishing at p.
Polynomial quadric_through(const std::vector<Rational>& p, std::mt19937_64& rng) {
  const Polynomial q = random_quadric(rng);
  const Polynomial m = X("x1^2+x2^2+x3^2");
  return q - m.scaled(q.eval(p) / m.eval(p));
}

}  // namespace

TEST(Salmon, JacobianExamples) {
  const auto diag = TernaryQuadricTriple::make(X("x1^2"), X("x2^2"), X("x3^2"));
  EXPECT_EQ(jacobian_poly(diag), X("8*x1*x2*x3"));
  const auto rep = TernaryQuadricTriple::make(X("x1*x2+x3^2"), X("x1*x2+x3^2"), X("x1^2"));
  EXPECT_TRUE(jacobian_poly(rep).is_zero());
  std::mt19937_64 rng(1);
  const std::vector<Rational> p{1, 1, 1};
  const auto t = TernaryQuadricTriple::make(quadric_through(p, rng), quadric_through(p, rng), quadric_through(p, rng));
  const Polynomial j = jacobian_poly(t);
  EXPECT_TRUE(j.is_homogeneous());
  EXPECT_EQ(j.total_degree(), 3);
}

TEST(Salmon, RejectsNonQuadrics) {
  EXPECT_THROW(TernaryQuadricTriple::make(X("x1"), X("x2^2"), X("x3^2")), Error);
  auto u = make_universe({"y1", "y2", "y3"});
  const Polynomial y = Polynomial::parse("y1^2", u);
  EXPECT_THROW(TernaryQuadricTriple::make(y, y, y), Error);
}

TEST(Salmon, DiagonalTripleHasNonzeroResultant) {
  const Polynomial r = salmon_resultant(TernaryQuadricTriple::make(X("x1^2"), X("x2^2"), X("x3^2")));
  EXPECT_TRUE(r.is_constant());
  EXPECT_FALSE(r.is_zero());
}

TEST(Salmon, CommonZeroKillsResultantAndJacobian) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<Rational> p{static_cast<long>(rng() % 7) + 1, static_cast<long>(rng() % 7) - 3,
                                  static_cast<long>(rng() % 5) + 1};
    const auto t =
        TernaryQuadricTriple::make(quadric_through(p, rng), quadric_through(p, rng), quadric_through(p, rng));
    EXPECT_TRUE(salmon_resultant(t).is_zero());
    const Polynomial j = jacobian_poly(t);
    EXPECT_EQ(j.eval(p), 0);
    for (std::size_t v : t.x) EXPECT_EQ(j.derivative(v).eval(p), 0);
  }
}

TEST(Salmon, PerturbationsAreNonzero) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = TernaryQuadricTriple::make(X("5*x1^2") + random_quadric(rng), X("5*x2^2") + random_quadric(rng),
                                              X("5*x3^2") + random_quadric(rng));
    EXPECT_FALSE(salmon_resultant(t).is_zero());
  }
}

TEST(Salmon, ConicSpecialCase) {
  const ConicKalman r = salmon_conic(X("x2^2-x1*x3"));
  EXPECT_EQ(r.g1.to_string(), "a13^2");
  EXPECT_EQ(r.g2.size(), 138u);
  EXPECT_TRUE(r.g2.is_homogeneous());
  EXPECT_EQ(Integer(r.g2.total_degree()), deg_kalman(3, 2, 2).degree);
  EXPECT_EQ(r.resultant, (r.g1 * r.g2).canonical());
}

TEST(Salmon, GeneralConic) {
  auto u = make_universe({"b200", "b110", "b101", "b020", "b011", "b002", "x1", "x2", "x3"});
  const Polynomial f = Polynomial::parse(
      "b200*x1^2+b110*x1*x2+b101*x1*x3+b020*x2^2+b011*x2*x3+b002*x3^2", u);
  const ConicKalman r = salmon_conic(f);
  const UniversePtr& ab = r.g2.universe();
  EXPECT_EQ(r.g1, Polynomial::parse("b002*a12^2-b011*a12*a13+b020*a13^2", ab).canonical());
  EXPECT_EQ(r.g2.size(), 2832u);
  std::vector<std::size_t> avars, bvars;
  for (std::size_t i = 0; i < 9; ++i) avars.push_back(i);
  for (std::size_t i = 9; i < 15; ++i) bvars.push_back(i);
  for (std::size_t t = 0; t < r.g2.size(); ++t) {
    unsigned da = 0, db = 0;
    for (auto v : avars) da += r.g2.exponent(t, v);
    for (auto v : bvars) db += r.g2.exponent(t, v);
    ASSERT_EQ(da, 6u);
    ASSERT_EQ(db, 3u);
  }
}

TEST(Salmon, EquationVanishesOnConicWitnesses) {
  const Polynomial f = X("x2^2-x1*x3");
  const Polynomial g2 = kalman_conic_equation(f);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const MuWitness w = mu_witness(f, Partition({2}), seed);
    EXPECT_EQ(g2.eval(w.a.flat()), 0);
  }
  for (std::uint64_t seed = 1; seed <= 5; ++seed) EXPECT_NE(g2.eval(generic_matrix(3, 2, seed).a.flat()), 0);
}

TEST(Salmon, EquationVanishesOnKalmanDeterminantZeros) {
  // Witnesses of the (2) part are zeros of det K_2(f) as well.
  const Polynomial f = Polynomial::parse("x1^2+3*x1*x2-x2*x3+2*x3^2", indexed_universe("x", 3));
  const KalmanInstance inst = KalmanInstance::from_form(f);
  const Polynomial g2 = kalman_conic_equation(f);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const MuWitness w = mu_witness(f, Partition({2}), seed);
    EXPECT_EQ(g2.eval(w.a.flat()), 0);
    EXPECT_EQ(kalman_det_at(inst, w.a), 0);
  }
}
