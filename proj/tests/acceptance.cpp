// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <nkv/chow.hpp>
#include <nkv/enumerative.hpp>
#include <nkv/error.hpp>
#include <nkv/kalman.hpp>
#include <nkv/salmon.hpp>
#include <nkv/veronese.hpp>
#include <nkv/witness.hpp>

#include "oracle.hpp"

using namespace nkv;

namespace {

using Clock = std::chrono::steady_clock;

/// Collects failed checks for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void within(Clock::time_point start, double limit, const std::string& what) {
    const double s = std::chrono::duration<double>(Clock::now() - start).count();
    std::ostringstream msg;
    msg << what << " took " << s << " s (limit " << limit << " s)";
    expect(s < limit, msg.str());
  }
};

Polynomial X(const std::string& s, std::size_t n) { return Polynomial::parse(s, indexed_universe("x", n)); }

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v;
  for (std::size_t i = lo; i < hi; ++i) v.push_back(i);
  return v;
}

// Shared between criteria 2 and 3.
Polynomial g_conic_equation;

void criterion1(Check& c) {
  const auto t0 = Clock::now();
  const std::vector<std::vector<std::string>> expected{
      {"a11^2", "2*a11*a12", "2*a11*a13", "a12^2", "2*a12*a13", "a13^2"},
      {"a11*a21", "a12*a21+a11*a22", "a13*a21+a11*a23", "a12*a22", "a13*a22+a12*a23", "a13*a23"},
      {"a11*a31", "a12*a31+a11*a32", "a13*a31+a11*a33", "a12*a32", "a13*a32+a12*a33", "a13*a33"},
      {"a21^2", "2*a21*a22", "2*a21*a23", "a22^2", "2*a22*a23", "a23^2"},
      {"a21*a31", "a22*a31+a21*a32", "a23*a31+a21*a33", "a22*a32", "a23*a32+a22*a33", "a23*a33"},
      {"a31^2", "2*a31*a32", "2*a31*a33", "a32^2", "2*a32*a33", "a33^2"}};
  const PolyMatrix a = PolyMatrix::symbolic(3);
  const PolyMatrix r = sym_power(a, 2);
  c.expect(r.rows() == 6 && r.cols() == 6, "shape 6x6");
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      c.expect(r(i, j) == Polynomial::parse(expected[i][j], a.universe()),
               "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  c.within(t0, 1, "sym_power");
}

void criterion2(Check& c) {
  auto t0 = Clock::now();
  const ConicKalman special = salmon_conic(Polynomial::parse("x2^2-x1*x3", make_universe({"x1", "x2", "x3"})));
  c.expect(special.g1.to_string() == "a13^2", "g1 = a13^2, got " + special.g1.to_string());
  c.expect(special.g2.size() == 138, "g2 has 138 terms, got " + std::to_string(special.g2.size()));
  c.within(t0, 10, "specialized conic");
  g_conic_equation = special.g2;

  t0 = Clock::now();
  const UniversePtr u = make_universe({"b200", "b110", "b101", "b020", "b011", "b002", "x1", "x2", "x3"});
  const ConicKalman general = salmon_conic(
      Polynomial::parse("b200*x1^2+b110*x1*x2+b101*x1*x3+b020*x2^2+b011*x2*x3+b002*x3^2", u));
  c.expect(general.g1 == Polynomial::parse("b002*a12^2-b011*a12*a13+b020*a13^2", general.g1.universe()).canonical(),
           "general g1");
  c.expect(general.g2.size() == 2832, "general g2 has 2832 terms, got " + std::to_string(general.g2.size()));
  const auto avars = range(0, 9), bvars = range(9, 15);
  bool bidegree = true;
  for (std::size_t t = 0; t < general.g2.size() && bidegree; ++t) {
    unsigned da = 0, db = 0;
    for (auto v : avars) da += general.g2.exponent(t, v);
    for (auto v : bvars) db += general.g2.exponent(t, v);
    bidegree = da == 6 && db == 3;
  }
  c.expect(bidegree, "g2 bidegree (6,3)");
  c.within(t0, 300, "symbolic conic");
}

void criterion3(Check& c) {
  const Polynomial f = X("x2^2-x1*x3", 3);
  const auto t0 = Clock::now();
  const Polynomial det = kalman_det(f);
  c.within(t0, 120, "symbolic det K_2(f)");
  c.expect(det.total_degree() == 30 && det.is_homogeneous(), "total degree 30");

  if (g_conic_equation.is_zero()) g_conic_equation = kalman_conic_equation(Polynomial::parse("x2^2-x1*x3", make_universe({"x1", "x2", "x3"})));
  const auto q = det.try_exact_div(g_conic_equation.in_universe(det.universe()));
  c.expect(q.has_value(), "g2 divides det K_2(f)");

  Rng rng(2025);
  const KalmanInstance inst = KalmanInstance::from_form(f);
  const QMatrix a0 = special_locus_matrix(LocusKind::RankDeficient, 3, rng);
  const unsigned order = factor_order_along_line(LineTarget::KalmanDet, &inst, 2, a0, rng.matrix(3, 3));
  c.expect(order == 3, "order along a line through a rank-2 matrix is 3, got " + std::to_string(order));

  const DegreeReport b = discriminant_budget(3, 2);
  c.expect(b.at("deg_det") == 30 && b.at("deg_sqrt_delta_sat") == 18 &&
               deg_mu_kalman(3, Partition({2})) == 6 && deg_mu_kalman(3, Partition({1, 1})) == 6,
           "budget 30 = 18 + 6 + 6");
}

void criterion4(Check& c) {
  Rng rng(404);
  for (auto [n, d] : {std::pair{2u, 2u}, std::pair{2u, 3u}, std::pair{3u, 2u}}) {
    const QMatrix a0 = special_locus_matrix(LocusKind::RepeatedEigenvalueJordan, n, rng);
    const QMatrix a1 = rng.matrix(n, n);
    const unsigned o = factor_order_along_line(LineTarget::DeltaD, nullptr, d, a0, a1);
    const unsigned o1 = factor_order_along_line(LineTarget::Delta, nullptr, d, a0, a1);
    c.expect(o1 == 1 && Integer(o) == delta_multiplicity(n, d),
             "k for n=" + std::to_string(n) + " d=" + std::to_string(d) + ": order " + std::to_string(o));
  }
  c.expect(delta_d_at(QMatrix::diagonal({1, 2}), 2) == 36, "Delta_2(diag(1,2)) = 36");
  std::mt19937_64 mt(7);
  for (int i = 0; i < 20; ++i) {
    const QMatrix a = test::random_qmatrix(2, mt);
    const Rational dl = delta_at(a), dt = a.det(), tr = a(0, 0) + a(1, 1);
    c.expect(delta_d_at(a, 2) == dl * dl * dl * dt * dt * tr * tr, "Delta_2 = Delta^3 (det tr)^2");
  }
}

void criterion5(Check& c) {
  const auto t0 = Clock::now();
  c.expect(deg_mu_kalman(5, Partition({1, 2, 2, 4})) == 1080, "1080 for (5,9,(1,2,2,4))");
  c.expect(deg_mu_kalman(3, Partition({1, 1})) == 6, "6 for (3,2,(1,1))");
  c.expect(deg_mu_kalman(3, Partition({2})) == 6, "6 for (3,2,(2))");
  for (unsigned n = 1; n <= 8; ++n)
    for (unsigned d = 1; d <= 8; ++d)
      for (const Partition& mu : partitions(d, n))
        c.expect(deg_mu_kalman_falling(n, mu) == deg_mu_kalman_multinomial(n, mu),
                 "expressions agree at n=" + std::to_string(n) + " mu=" + mu.to_string());
  c.within(t0, 1, "degree sweep");
}

void criterion6(Check& c) {
  const auto t0 = Clock::now();
  for (unsigned n = 2; n <= 6; ++n)
    for (unsigned d = 1; d <= 6; ++d) {
      const DegreeReport r = discriminant_budget(n, d);
      const std::string at = " at n=" + std::to_string(n) + " d=" + std::to_string(d);
      c.expect(r.at("deg_det") == r.at("deg_sqrt_delta_sat") + r.at("sum_deg_p"), "budget" + at);
      c.expect(r.at("sum_multinomial") == r.at("N"), "monomial count" + at);
    }
  c.within(t0, 1, "budget sweep");
}

void criterion7(Check& c) {
  const auto t0 = Clock::now();
  for (unsigned n = 2; n <= 6; ++n)
    for (unsigned s = 1; s <= 2; ++s)
      c.expect(linear_coefficient(class_Wtilde(n, s)) == coeff_ctilde(n, s),
               "c~_" + std::to_string(s) + " at n=" + std::to_string(n));
  c.expect(linear_coefficient(fixture_Wtilde3()) == 6 && coeff_ctilde(3, 3) == 6, "c~_3 = 6 at n=3");
  TruncatedClass sum = fixture_Wtilde3() + fixture_E3();
  for (const SetPartition& p : SetPartition::all(3))
    if (!p.is_discrete()) sum = sum + class_WsP(3, p);
  c.expect(sum == class_W(3, 3), "[W_3] decomposition");
  c.expect(class_WsP(3, SetPartition({{1, 2, 3}})) == fixture_W3_full(), "full block class");
  c.within(t0, 5, "Chow suite");
}

void criterion8(Check& c) {
  const auto t0 = Clock::now();
  c.expect(sing_hyperplane_union(3, 2) == 11, "two lines: 11");
  c.expect(sing_smooth_hypersurface(3, 2) == 10, "smooth conic: 10");
  for (unsigned d = 1; d <= 12; ++d)
    c.expect(sing_smooth_hypersurface(3, d) == Integer(d) * (4 * d - 3), "plane curve d(4d-3)");
  c.expect(sing_smooth_hypersurface(6, 2) == 335, "quadric in P^5: 335");
  for (unsigned n = 2; n <= 10; ++n)
    for (unsigned d = 1; d <= 8; ++d) {
      try {
        sing_self(n);
        sing_pairwise(n, d, d + 1);
        sing_hyperplane_union(n, d);
        sing_smooth_hypersurface(n, d);
      } catch (const Error& e) {
        c.expect(false, std::string("integrality: ") + e.what());
      }
    }
  c.within(t0, 1, "singular-locus formulas");
}

void criterion9(Check& c) {
  const auto t0 = Clock::now();
  std::mt19937_64 mt(9);
  for (auto [n, d] : {std::pair{2u, 2u}, std::pair{3u, 2u}, std::pair{2u, 3u}, std::pair{3u, 3u}, std::pair{4u, 2u}}) {
    const std::size_t N = MonomialBasis(n, d).size();
    for (int i = 0; i < 5; ++i) {
      const QMatrix a = test::random_qmatrix(n, mt, 5), b = test::random_qmatrix(n, mt, 5);
      const QMatrix ra = sym_power(a, d);
      std::vector<Rational> v(n);
      for (auto& x : v) x = static_cast<long>(mt() % 11) - 5;
      c.expect(ra.apply(mon_vector(v, d)) == mon_vector(a.apply(v), d), "intertwining");
      c.expect(sym_power(a * b, d) == ra * sym_power(b, d), "multiplicativity");
      Rational p = 1;
      for (std::size_t k = 0; k < d * N / n; ++k) p *= a.det();
      c.expect(ra.det() == p, "det rho_d(A) = det(A)^(dN/n)");
      const auto cp = a.char_poly();
      QMatrix acc(n, n), power = QMatrix::identity(n);
      for (const auto& ck : cp) {
        acc = acc + power.scaled(ck);
        power = power * a;
      }
      c.expect(acc == QMatrix(n, n), "Cayley-Hamilton");
    }
  }
  const UniversePtr y = indexed_universe("y", 3);
  for (int i = 0; i < 10; ++i) {
    PolyMatrix m(y, 4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t s = 0; s < 4; ++s) m(r, s) = test::random_poly(y, 2, 3, mt);
    c.expect(det(m) == test::cofactor_det(m), "Bareiss equals cofactor oracle");
  }

  struct Case {
    unsigned n, d;
    const char* f;
  };
  const Case cases[] = {{2, 2, "x1*x2+3*x2^2"},
                        {3, 2, "x2^2-x1*x3"},
                        {2, 3, "x1*x2^2-2*x2^3"},
                        {3, 3, "x1*x2^2-x2*x3^2+2*x3^3+x1*x3^2"}};
  for (const Case& cs : cases) {
    const Polynomial f = X(cs.f, cs.n);
    const KalmanInstance inst = KalmanInstance::from_form(f);
    for (const Partition& mu : partitions(cs.d, cs.n))
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const MuWitness w = mu_witness(f, mu, seed);
        c.expect(kalman_det_at(inst, w.a) == 0,
                 std::string(cs.f) + " " + mu.to_string() + " seed " + std::to_string(seed));
      }
  }
  const Case full[] = {{2, 2, "3*x1^2+2*x1*x2+5*x2^2"},
                       {3, 2, "3*x1^2+2*x1*x2-x1*x3+5*x2^2+7*x2*x3-2*x3^2"},
                       {2, 3, "x1^3-2*x1^2*x2+3*x1*x2^2+5*x2^3"},
                       {3, 3, "x1^3+x2^3+x3^3+2*x1^2*x2-x1^2*x3+3*x1*x2^2-x1*x2*x3+4*x1*x3^2+x2^2*x3-5*x2*x3^2"}};
  for (const Case& cs : full) {
    const KalmanInstance inst = KalmanInstance::from_form(X(cs.f, cs.n));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const MuWitness g = generic_matrix(cs.n, cs.d, seed);
      c.expect(kalman_det_at(inst, g.a) != 0, std::string("non-vanishing ") + cs.f);
      c.expect(!membership_necessary(inst, g.a), std::string("non-member ") + cs.f);
    }
  }
  c.within(t0, 120, "property suites");
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Check&)>> criteria[] = {
      {"symmetric power of the symbolic 3x3 matrix", criterion1},
      {"conic Kalman equation via resultants", criterion2},
      {"det K_2(f) for the conic", criterion3},
      {"discriminant multiplicities", criterion4},
      {"mu-degree formula", criterion5},
      {"degree budget identity", criterion6},
      {"Chow classes", criterion7},
      {"singular-locus degrees", criterion8},
      {"property suites", criterion9},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Check c;
    const auto t0 = Clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("criterion %d: %s  %s (%.2f s)\n", index, c.failures.empty() ? "PASS" : "FAIL", name, s);
    for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) std::printf("    %s\n", c.failures[i].c_str());
    if (!c.failures.empty()) ++failed;
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
