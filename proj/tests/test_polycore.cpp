#include <gtest/gtest.h>

#include <random>

#include <nkv/error.hpp>
#include <nkv/polynomial.hpp>

#include "oracle.hpp"

using namespace nkv;

namespace {

UniversePtr xs(std::size_t n) { return indexed_universe("x", n); }
Polynomial P(const std::string& s, const UniversePtr& u) { return Polynomial::parse(s, u); }

std::vector<Polynomial> consts(std::initializer_list<long> cs) {
  std::vector<Polynomial> out;
  for (long c : cs) out.push_back(Polynomial::constant(empty_universe(), c));
  return out;
}

}  // namespace

TEST(Polynomial, DifferenceOfSquares) {
  auto u = xs(2);
  EXPECT_EQ(P("(x1+x2)*(x1-x2)", u), P("x1^2-x2^2", u));
}

TEST(Polynomial, AdditiveIdentity) {
  auto u = xs(3);
  const Polynomial p = P("3*x1^2*x3-1/2*x2+7", u);
  EXPECT_EQ(p + Polynomial(u), p);
  EXPECT_EQ(p - p, Polynomial(u));
}

TEST(Polynomial, PrintsInGradedLexOrder) {
  auto u = xs(3);
  EXPECT_EQ(P("x3^2+x2*x3+x2^2+x1*x3+x1*x2+x1^2", u).to_string(),
            "x1^2+x1*x2+x1*x3+x2^2+x2*x3+x3^2");
  EXPECT_EQ(P("x2^2-x1*x3", u).to_string(), "-x1*x3+x2^2");
  EXPECT_EQ(Polynomial(u).to_string(), "0");
  EXPECT_EQ(P("1/2*x1-3/4", u).to_string(), "1/2*x1-3/4");
}

TEST(Polynomial, PrintParseRoundTrip) {
  auto u = xs(4);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Polynomial p = test::random_poly(u, 6, 12, rng).scaled(Rational(3, 7));
    EXPECT_EQ(P(p.to_string(), u), p);
  }
}

TEST(Polynomial, ParseErrors) {
  auto u = xs(2);
  EXPECT_THROW(P("x1+", u), Error);
  EXPECT_THROW(P("x3", u), Error);
  EXPECT_THROW(P("(x1", u), Error);
  EXPECT_THROW(P("x1/x2", u), Error);
}

TEST(Polynomial, PowMatchesRepeatedProduct) {
  auto u = xs(3);
  const Polynomial p = P("x1-2*x2+x3", u);
  EXPECT_EQ(p.pow(4), p * p * p * p);
  EXPECT_EQ(p.pow(0), Polynomial::constant(u, 1));
}

TEST(Polynomial, LargeProductsAgreeWithEvaluation) {
  // Products large enough to take the packed-key kernels.
  auto u = xs(5);
  std::mt19937_64 rng(11);
  std::vector<Rational> pt{2, -1, 3, 5, -7};
  for (int i = 0; i < 10; ++i) {
    const Polynomial a = test::random_poly(u, 8, 60, rng);
    const Polynomial b = test::random_poly(u, 8, 60, rng);
    EXPECT_EQ((a * b).eval(pt), a.eval(pt) * b.eval(pt));
  }
}

TEST(Polynomial, ExactDivision) {
  auto u = xs(2);
  EXPECT_EQ(P("x1^2-x2^2", u).exact_div(P("x1-x2", u)), P("x1+x2", u));
  EXPECT_THROW(P("x1^2+x2^2", u).exact_div(P("x1-x2", u)), Error);
  const Polynomial p = P("3*x1^3-x2+1/5", u);
  EXPECT_EQ(p.exact_div(Polynomial::constant(u, 1)), p);
  EXPECT_THROW(p.exact_div(Polynomial(u)), Error);
}

TEST(Polynomial, ExactDivisionOfRandomProducts) {
  auto u = xs(3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    const Polynomial a = test::random_poly(u, 5, 8, rng);
    const Polynomial b = test::random_poly(u, 4, 6, rng).scaled(Rational(2, 3));
    if (b.is_zero()) continue;
    EXPECT_EQ((a * b).exact_div(b), a);
  }
}

TEST(Polynomial, Evaluation) {
  auto u = xs(3);
  const Polynomial f = P("x2^2-x1*x3", u);
  std::vector<Rational> on{1, 2, 4}, off{1, 1, 0};
  EXPECT_EQ(f.eval(on), 0);
  EXPECT_EQ(f.eval(off), 1);
  EXPECT_EQ(Polynomial::constant(u, Rational(5, 3)).eval(on), Rational(5, 3));
}

TEST(Polynomial, RestrictToLine) {
  auto u = matrix_universe(1);
  const Polynomial p = P("a11^2", u);
  std::vector<Rational> base{1}, dir{2};
  EXPECT_EQ(p.restrict_to_line(base, dir), P("1+4*t+4*t^2", line_universe()));
  const Polynomial c = Polynomial::constant(u, 7);
  EXPECT_EQ(c.restrict_to_line(base, dir).total_degree(), 0);
}

TEST(Polynomial, RootMultiplicityAtZero) {
  auto t = line_universe();
  EXPECT_EQ(root_multiplicity_at_zero(P("t^2*(t-1)", t)), 2u);
  EXPECT_EQ(root_multiplicity_at_zero(Polynomial::constant(t, 3)), 0u);
  EXPECT_EQ(root_multiplicity_at_zero(P("t^5", t)), 5u);
  EXPECT_THROW(root_multiplicity_at_zero(Polynomial(t)), Error);
}

TEST(Polynomial, QuadraticDiscriminant) {
  auto u = make_universe({"b", "c"});
  std::vector<Polynomial> coeffs{P("c", u), P("b", u), Polynomial::constant(u, 1)};
  EXPECT_EQ(univariate_discriminant(coeffs), P("b^2-4*c", u));
}

TEST(Polynomial, CubicDiscriminantMatchesRoots) {
  // (z-1)(z-2)(z-3) = z^3 - 6z^2 + 11z - 6
  const Polynomial d = univariate_discriminant(consts({-6, 11, -6, 1}));
  EXPECT_EQ(d, Polynomial::constant(empty_universe(), test::root_discriminant({1, 2, 3})));
  EXPECT_EQ(d, Polynomial::constant(empty_universe(), 4));
  EXPECT_TRUE(univariate_discriminant(consts({1, -2, 1})).is_zero());
}

TEST(Polynomial, DiscriminantRandomRoots) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> r(-20, 20);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> roots;
    for (int i = 0; i < 4; ++i) roots.push_back(r(rng));
    // Expand prod (z - r_i).
    std::vector<Rational> c{1};
    for (const auto& x : roots) {
      std::vector<Rational> next(c.size() + 1);
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k + 1] += c[k];
        next[k] -= x * c[k];
      }
      c = next;
    }
    std::vector<Polynomial> cs;
    for (const auto& x : c) cs.push_back(Polynomial::constant(empty_universe(), x));
    const Polynomial d = univariate_discriminant(cs);
    EXPECT_EQ(d.is_zero() ? Rational(0) : d.coefficient(0), test::root_discriminant(roots));
  }
}

TEST(Polynomial, Resultant) {
  // Res(z - a, z - b) = b - a up to the Sylvester sign convention.
  auto u = make_universe({"a", "b"});
  std::vector<Polynomial> f{-P("a", u), Polynomial::constant(u, 1)};
  std::vector<Polynomial> g{-P("b", u), Polynomial::constant(u, 1)};
  const Polynomial r = sylvester_resultant(f, g);
  EXPECT_TRUE(r == P("a-b", u) || r == P("b-a", u));
}

TEST(Polynomial, CanonicalForm) {
  auto u = xs(2);
  const Polynomial p = P("-4/3*x1^2+2/3*x2", u);
  EXPECT_EQ(p.canonical(), P("2*x1^2-x2", u));
  EXPECT_EQ(p.canonical().scaled(p.canonical_scalar()), p);
}

TEST(Polynomial, ComposeAndDerivative) {
  auto u = xs(2);
  auto t = line_universe();
  std::vector<Polynomial> images{P("t", t), P("t^2", t)};
  EXPECT_EQ(P("x1^2-x2", u).compose(images), Polynomial(t));
  EXPECT_EQ(P("x1^3*x2+x2^2", u).derivative(0), P("3*x1^2*x2", u));
}

TEST(Polynomial, UniverseMismatchIsRejected) {
  EXPECT_THROW(P("x1", xs(2)) + P("x1", xs(3)), Error);
  EXPECT_THROW(make_universe({"x", "x"}), Error);
}
