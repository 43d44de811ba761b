#include "nkv/enumerative.hpp"

#include <algorithm>
#include <functional>

#include "nkv/error.hpp"

namespace nkv {

const Integer& DegreeReport::at(const std::string& name) const {
  for (const auto& [k, v] : values)
    if (k == name) return v;
  throw Error(Errc::InvalidArgument, "no value named " + name);
}

std::vector<Partition> partitions(unsigned d, unsigned n) {
  std::vector<Partition> out;
  std::vector<unsigned> cur;  // non-increasing
  std::function<void(unsigned, unsigned)> rec = [&](unsigned rest, unsigned cap) {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    if (cur.size() == n) return;
    for (unsigned p = std::min(rest, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  if (d >= 1 && n >= 1) rec(d, d);
  return out;
}

Integer partition_count(unsigned d, unsigned n) {
  // p[a][i]: partitions of a into exactly i parts.
  std::vector<std::vector<Integer>> p(d + 1, std::vector<Integer>(d + 1, 0));
  p[0][0] = 1;
  for (unsigned a = 1; a <= d; ++a)
    for (unsigned i = 1; i <= a; ++i) p[a][i] = p[a - 1][i - 1] + (a >= 2 * i ? p[a - i][i] : Integer(0));
  Integer total = 0;
  for (unsigned i = 1; i <= std::min(n, d); ++i) total += p[d][i];
  return total;
}

KalmanDegree deg_kalman(unsigned n, unsigned m, const Integer& deg_x) {
  if (m < 1 || m + 1 > n) throw Error(Errc::InvalidArgument, "need 1 <= m <= n-1");
  return {deg_x * binomial(n, m - 1), n - m};
}

namespace {

void check_fits(unsigned n, const Partition& mu) {
  if (mu.length() == 0) throw Error(Errc::InvalidArgument, "empty partition");
  if (mu.length() > n) throw Error(Errc::InvalidArgument, "partition has more than n parts");
}

Integer multiplicity_factorials(const Partition& mu) {
  Integer prod = 1;
  for (unsigned i = 1; i <= mu.degree(); ++i) prod *= factorial(mu.multiplicity(i));
  return prod;
}

Integer exact_quotient(const Integer& a, const Integer& b, const char* what) {
  if (a % b != 0) throw Error(Errc::NonIntegral, what);
  return a / b;
}

}  // namespace

Integer mu_multinomial(unsigned n, const Partition& mu) {
  check_fits(n, mu);
  return factorial(n) / (factorial(n - static_cast<long>(mu.length())) * multiplicity_factorials(mu));
}

Integer deg_mu_kalman_falling(unsigned n, const Partition& mu) {
  check_fits(n, mu);
  const Integer num = Integer(mu.degree()) * binomial(n, 2) *
                      falling_factorial(n - 1, static_cast<long>(mu.length()) - 1);
  return exact_quotient(num, multiplicity_factorials(mu), "falling-factorial degree is not integral");
}

Integer deg_mu_kalman_multinomial(unsigned n, const Partition& mu) {
  const Integer num = Integer(n - 1) * mu.degree() * mu_multinomial(n, mu);
  return exact_quotient(num, 2, "multinomial degree is not integral");
}

Integer deg_mu_kalman(unsigned n, const Partition& mu) {
  const Integer a = deg_mu_kalman_falling(n, mu);
  const Integer b = deg_mu_kalman_multinomial(n, mu);
  if (a != b) throw Error(Errc::InvalidArgument, "degree expressions disagree for " + mu.to_string());
  return a;
}

Integer delta_multiplicity(unsigned n, unsigned d) { return binomial(n + d - 1, d - 1); }

DegreeReport discriminant_budget(unsigned n, unsigned d) {
  if (n < 1 || d < 1) throw Error(Errc::InvalidArgument, "need n, d >= 1");
  const Integer N = binomial(n - 1 + d, d);
  const Integer deg_delta = Integer(n) * (n - 1);
  const Integer deg_delta_d = Integer(d) * N * (N - 1);
  const Integer k = delta_multiplicity(n, d);
  const Integer deg_det = Integer(d) * N * (N - 1) / 2;
  const Integer half = Integer(d) * N * (n - 1);
  const Integer deg_sqrt_sat = deg_det - exact_quotient(half, 2, "dN(n-1)/2 is not integral");
  Integer sum_p = 0, sum_multi = 0;
  for (const auto& mu : partitions(d, n)) {
    sum_p += deg_mu_kalman(n, mu);
    sum_multi += mu_multinomial(n, mu);
  }
  DegreeReport r{"discriminant_budget", {}};
  r.values = {{"N", N},
              {"deg_delta", deg_delta},
              {"deg_delta_d", deg_delta_d},
              {"k", k},
              {"deg_sqrt_delta_sat", deg_sqrt_sat},
              {"deg_det", deg_det},
              {"sum_deg_p", sum_p},
              {"sum_multinomial", sum_multi},
              {"budget_ok", deg_det == deg_sqrt_sat + sum_p ? 1 : 0},
              {"monomials_ok", sum_multi == N ? 1 : 0},
              {"delta_ok", deg_delta_d == 2 * deg_sqrt_sat + k * deg_delta ? 1 : 0}};
  return r;
}

Integer detA_multiplicity(unsigned n, unsigned d) {
  if (n < 2 || d < 1) throw Error(Errc::InvalidArgument, "need n >= 2, d >= 1");
  // The t/2 factor makes single terms half-integral; sum twice the value.
  Integer twice = 0;
  for (unsigned t = 1; t <= d; ++t) {
    const Integer c = binomial(d - t + n - 2, d - t);
    Integer inner = Integer(t) * (c - 1);
    for (unsigned i = 1; i < t; ++i) inner += 2 * binomial(d - i + n - 2, d - i) * i;
    twice += c * inner;
  }
  return exact_quotient(twice, 2, "multiplicity of det A is not integral");
}

Integer stirling2(unsigned s, unsigned k) {
  std::vector<std::vector<Integer>> S(s + 1, std::vector<Integer>(s + 1, 0));
  S[0][0] = 1;
  for (unsigned a = 1; a <= s; ++a)
    for (unsigned b = 1; b <= a; ++b) S[a][b] = Integer(b) * S[a - 1][b] + S[a - 1][b - 1];
  return k <= s ? S[s][k] : Integer(0);
}

Integer sing_pairwise(unsigned n, const Integer& deg1, const Integer& deg2) {
  const Integer c2 = binomial(n, 2);
  return (c2 * c2 - binomial(n, 3)) * deg1 * deg2;
}

Integer sing_self(unsigned n) {
  return exact_quotient((3 * Integer(n) - 5) * binomial(n, 3), 4, "(3n-5)/4 C(n,3) is not integral");
}

Integer sing_hyperplane_union(unsigned n, unsigned d) {
  const Integer c2 = binomial(n, 2);
  const Integer self = exact_quotient(Integer(d) * (3 * Integer(n) - 5) * binomial(n, 3), 4,
                                      "d(3n-5)/4 C(n,3) is not integral");
  return binomial(d, 2) * c2 * c2 + self;
}

Integer sing_smooth_hypersurface(unsigned n, unsigned d) {
  return sing_hyperplane_union(n, d) - binomial(d, 2) * binomial(n, 3);
}

DegreeReport sing_degrees(const std::string& kind, unsigned n, unsigned d, const Integer& deg1,
                          const Integer& deg2) {
  if (n < 2) throw Error(Errc::InvalidArgument, "need n >= 2");
  DegreeReport r{kind, {}};
  if (kind == "pairwise") r.values.emplace_back("degree", sing_pairwise(n, deg1, deg2));
  else if (kind == "self") r.values.emplace_back("degree", sing_self(n));
  else if (kind == "hyperplane_union") r.values.emplace_back("degree", sing_hyperplane_union(n, d));
  else if (kind == "smooth_hypersurface") r.values.emplace_back("degree", sing_smooth_hypersurface(n, d));
  else throw Error(Errc::InvalidArgument, "unknown singular-locus kind " + kind);
  r.values.emplace_back("codimension_in_kalman", 2);
  return r;
}

std::vector<DegreeRow> degree_table() {
  std::vector<DegreeRow> rows;
  auto add = [&](std::string q, std::string p, Integer v, std::string stated = "", bool asserted = true) {
    rows.push_back({std::move(q), std::move(p), std::move(v), std::move(stated), asserted});
  };
  add("deg_kalman", "n=3 m=2 degX=2", deg_kalman(3, 2, 2).degree, "6");
  add("codim_kalman", "n=3 m=2 degX=2", deg_kalman(3, 2, 2).codimension, "1");
  add("deg_kalman", "n=3 m=1 degX=1", deg_kalman(3, 1, 1).degree, "1");
  // Stated as 12 for the Grassmannian G(1,3) in P^5; the formula does not
  // give 12 for any reading checked so far, so the row is informational.
  add("deg_kalman", "n=6 m=5 degX=2", deg_kalman(6, 5, 2).degree, "12", false);
  add("deg_mu_kalman", "n=5 d=9 mu=(1,2,2,4)", deg_mu_kalman(5, Partition({1, 2, 2, 4})), "1080");
  add("deg_mu_kalman", "n=3 d=2 mu=(1,1)", deg_mu_kalman(3, Partition({1, 1})), "6");
  add("deg_mu_kalman", "n=3 d=2 mu=(2)", deg_mu_kalman(3, Partition({2})), "6");
  for (auto [n, d] : {std::pair{3u, 2u}, std::pair{2u, 2u}}) {
    const auto b = discriminant_budget(n, d);
    const std::string p = "n=" + std::to_string(n) + " d=" + std::to_string(d);
    const bool stated = n == 3;
    add("N", p, b.at("N"), stated ? "6" : "");
    add("deg_det_kalman", p, b.at("deg_det"), stated ? "30" : "");
    add("deg_delta_d", p, b.at("deg_delta_d"), stated ? "60" : "");
    add("k", p, b.at("k"), stated ? "4" : "");
    add("deg_sqrt_delta_sat", p, b.at("deg_sqrt_delta_sat"), stated ? "18" : "");
    add("sum_deg_p", p, b.at("sum_deg_p"), stated ? "12" : "");
  }
  add("k", "n=2 d=3", delta_multiplicity(2, 3));
  add("detA_multiplicity", "n=3 d=2", detA_multiplicity(3, 2), "3");
  add("detA_multiplicity", "n=3 d=3", detA_multiplicity(3, 3));
  add("detA_multiplicity", "n=2 d=2", detA_multiplicity(2, 2));
  add("ctilde", "n=3 s=3", binomial(3, 2) * falling_factorial(2, 2), "6");
  add("sing_self", "n=3", sing_self(3), "1");
  add("sing_pairwise", "n=3 degX1=1 degX2=1", sing_pairwise(3, 1, 1), "8");
  add("sing_hyperplane_union", "n=3 d=2", sing_hyperplane_union(3, 2), "11");
  add("sing_smooth_hypersurface", "n=3 d=2", sing_smooth_hypersurface(3, 2), "10");
  for (unsigned d : {1u, 3u, 4u, 5u})
    add("sing_smooth_hypersurface", "n=3 d=" + std::to_string(d), sing_smooth_hypersurface(3, d),
        Integer(Integer(d) * (4 * d - 3)).get_str());
  add("sing_smooth_hypersurface", "n=6 d=2", sing_smooth_hypersurface(6, 2), "335");
  return rows;
}

}  // namespace nkv
