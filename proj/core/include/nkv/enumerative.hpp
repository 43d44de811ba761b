#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nkv/scalar.hpp"
#include "nkv/veronese.hpp"

namespace nkv {

/// Named integer values produced by one formula family.
struct DegreeReport {
  std::string kind;
  std::vector<std::pair<std::string, Integer>> values;

  const Integer& at(const std::string& name) const;
};

/// Partitions of d into at most n parts, listed lexicographically
/// descending on their non-increasing form: (4), (3,1), (2,2), ...
std::vector<Partition> partitions(unsigned d, unsigned n);

/// |P_d^{<=n}| from p_{d,i} = p_{d-1,i-1} + p_{d-i,i} (partitions of d into
/// exactly i parts), summed over i <= n.
Integer partition_count(unsigned d, unsigned n);

struct KalmanDegree {
  Integer degree;
  unsigned codimension = 0;
};

/// K(X) for X of dimension m-1 in P^{n-1}: degree degX * C(n, m-1),
/// codimension n - m. Requires 1 <= m <= n-1.
KalmanDegree deg_kalman(unsigned n, unsigned m, const Integer& deg_x);

/// n! / ((n-s)! m_1! ... m_d!) for mu with s parts.
Integer mu_multinomial(unsigned n, const Partition& mu);

/// d C(n,2) (n-1)_{s-1} / (m_1! ... m_d!).
Integer deg_mu_kalman_falling(unsigned n, const Partition& mu);
/// ((n-1) d / 2) * mu_multinomial(n, mu).
Integer deg_mu_kalman_multinomial(unsigned n, const Partition& mu);
/// Both expressions, checked equal; throws InvalidArgument if mu has more
/// than n parts.
Integer deg_mu_kalman(unsigned n, const Partition& mu);

/// k = C(n+d-1, d-1): multiplicity of the discriminant of A in that of
/// rho_d(A).
Integer delta_multiplicity(unsigned n, unsigned d);

/// Values: N, deg_delta, deg_delta_d, k, deg_sqrt_delta_sat, deg_det,
/// sum_deg_p, sum_multinomial, plus 0/1 flags budget_ok, monomials_ok,
/// delta_ok (deg_delta_d = 2 deg_sqrt_sat + k deg_delta).
DegreeReport discriminant_budget(unsigned n, unsigned d);

/// Multiplicity s of det A in det K_d(f), from the double sum.
Integer detA_multiplicity(unsigned n, unsigned d);

/// Second-kind Stirling number S(s, k).
Integer stirling2(unsigned s, unsigned k);

/// deg S_{1,2} for two varieties of degrees deg1, deg2 in P^{n-1}.
Integer sing_pairwise(unsigned n, const Integer& deg1, const Integer& deg2);
/// deg S_{i,i} for a hyperplane: (3n-5)/4 C(n,3).
Integer sing_self(unsigned n);
/// Union of d general hyperplanes.
Integer sing_hyperplane_union(unsigned n, unsigned d);
/// Smooth hypersurface of degree d.
Integer sing_smooth_hypersurface(unsigned n, unsigned d);

/// Report for one of "pairwise", "self", "hyperplane_union",
/// "smooth_hypersurface"; every Sing component has codimension 2.
DegreeReport sing_degrees(const std::string& kind, unsigned n, unsigned d,
                          const Integer& deg1 = 1, const Integer& deg2 = 1);

/// One row of the golden degree table.
struct DegreeRow {
  std::string quantity;
  std::string parameters;
  Integer value;
  /// Value printed in the source material when it states one, else empty.
  std::string stated;
  /// False for rows whose stated value is known not to follow from the
  /// formula; such rows are reported, not asserted.
  bool asserted = true;
};

/// Every degree value the tool reproduces, in a fixed order.
std::vector<DegreeRow> degree_table();

}  // namespace nkv
