#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nkv/poly_matrix.hpp"
#include "nkv/polynomial.hpp"

namespace nkv {

/// Degree-d monomials in n variables, descending in the graded-lex order
/// (x1^d first, xn^d last).
class MonomialBasis {
 public:
  MonomialBasis(unsigned n, unsigned d);

  unsigned n() const noexcept { return n_; }
  unsigned d() const noexcept { return d_; }
  std::size_t size() const noexcept { return members_.size(); }
  const Exponents& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Exponents>& members() const noexcept { return members_; }
  /// Position of a degree-d exponent vector; throws InvalidArgument.
  std::size_t index_of(const Exponents& e) const;

 private:
  unsigned n_, d_;
  std::vector<Exponents> members_;
};

/// Integer partition of d, parts stored non-decreasing: (1,2,2,4).
class Partition {
 public:
  Partition() = default;
  /// Any order; sorted internally. Parts must be positive.
  explicit Partition(std::vector<unsigned> parts);

  const std::vector<unsigned>& parts() const noexcept { return parts_; }
  std::size_t length() const noexcept { return parts_.size(); }
  unsigned degree() const noexcept;
  /// m_i = number of parts equal to i.
  unsigned multiplicity(unsigned i) const noexcept;
  std::string to_string() const;
  /// Accepts "(1,2,2,4)" or "1,2,2,4".
  static Partition parse(std::string_view text);

  bool operator==(const Partition&) const = default;

 private:
  std::vector<unsigned> parts_;
};

/// Values of the basis monomials at v, in basis order.
std::vector<Rational> mon_vector(std::span<const Rational> v, unsigned d);

/// rho_d(A): the row of basis monomial m holds the coefficients of m(Ax).
PolyMatrix sym_power(const PolyMatrix& a, unsigned d);
QMatrix sym_power(const QMatrix& a, unsigned d);

/// Coefficients of a degree-d form over a universe of n variables, in
/// basis order.
std::vector<Rational> coeff_row(const Polynomial& f, unsigned d);
/// Same for a form whose coefficients are polynomials: `xvars` lists the
/// form's variables, the rest of the universe holds the coefficients.
std::vector<Polynomial> coeff_row(const Polynomial& f, std::span<const std::size_t> xvars, unsigned d);

struct CoeffMatrix {
  QMatrix c;
  unsigned d = 0;
};

/// Row space of the coefficient vectors of f_i^(d/d_i), d = lcm(d_i),
/// reduced to a full-row-rank basis.
CoeffMatrix coeff_matrix(std::span<const Polynomial> generators);

/// Universe of the blocks x^(1),...,x^(s): variables x{j}_{i} for block i,
/// coordinate j, block-major.
UniversePtr block_universe(unsigned n, std::size_t blocks);

/// f_mu(v_1,...,v_s): (prod mu_i! / d!) times the coefficient of
/// t_1^mu_1 ... t_s^mu_s in f(t_1 v_1 + ... + t_s v_s).
Polynomial polarize(const Polynomial& f, const Partition& mu);

}  // namespace nkv
