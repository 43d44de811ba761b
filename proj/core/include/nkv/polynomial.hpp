#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nkv/scalar.hpp"

namespace nkv {

/// Ordered list of variable names shared by every polynomial built over it.
class Universe {
 public:
  explicit Universe(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  /// 64-bit words per packed monomial (one byte for the total degree plus
  /// one byte per variable).
  std::size_t words() const noexcept { return words_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const Universe& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::size_t words_;
};

using UniversePtr = std::shared_ptr<const Universe>;

UniversePtr make_universe(std::vector<std::string> names);
/// a11, a12, ..., ann in row-major order.
UniversePtr matrix_universe(std::size_t n);
/// prefix1, ..., prefixN.
UniversePtr indexed_universe(std::string_view prefix, std::size_t n);
/// The single line parameter `t`.
UniversePtr line_universe();
UniversePtr empty_universe();
/// Variables of `a` followed by those of `b`; names must not collide.
UniversePtr concat_universes(const UniversePtr& a, const UniversePtr& b);
bool same_universe(const UniversePtr& a, const UniversePtr& b);

using Exponents = std::vector<unsigned>;

/// Graded lexicographic with x1 > x2 > ... : total degree first, then lex.
/// Within one degree this lists x1^2, x1*x2, x1*x3, x2^2, x2*x3, x3^2.
enum class MonomialOrder { GradedLex };

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Stored fraction-free: integer numerator coefficients over one positive
/// common denominator, with gcd(denominator, content) = 1. Terms are kept
/// strictly descending in graded-lex order with no zero coefficients;
/// exponents are packed one byte per variable, so total degree is capped
/// at 255.
class Polynomial {
 public:
  Polynomial();
  explicit Polynomial(UniversePtr universe);

  static Polynomial constant(UniversePtr universe, const Rational& c);
  static Polynomial variable(UniversePtr universe, std::size_t index);
  static Polynomial variable(UniversePtr universe, std::string_view name);
  static Polynomial monomial(UniversePtr universe, const Exponents& e,
                             const Rational& c = 1);
  static Polynomial from_terms(UniversePtr universe,
                               std::vector<std::pair<Exponents, Rational>> terms);
  /// Parses the text grammar (see README): sums of products of rational
  /// literals, variables, `^k` powers and parentheses.
  static Polynomial parse(std::string_view text, UniversePtr universe);

  const UniversePtr& universe() const noexcept { return universe_; }
  MonomialOrder order() const noexcept { return MonomialOrder::GradedLex; }

  std::size_t size() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept;
  /// -1 for the zero polynomial.
  int total_degree() const noexcept;
  /// Smallest total degree among the terms; -1 for zero.
  int min_degree() const noexcept;
  unsigned degree_in(std::size_t var) const;
  /// Largest total degree in the listed variables only.
  unsigned degree_in(std::span<const std::size_t> vars) const;
  bool is_homogeneous() const noexcept;

  Exponents exponents(std::size_t term) const;
  unsigned exponent(std::size_t term, std::size_t var) const;
  Rational coefficient(std::size_t term) const;
  Rational coefficient_of(const Exponents& e) const;
  /// Leading coefficient under the monomial order; zero for zero.
  Rational leading_coefficient() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  Polynomial& operator*=(const Polynomial& q);
  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);

  Polynomial pow(unsigned k) const;
  Polynomial scaled(const Rational& c) const;

  /// Returns r with q*r == *this; throws NotDivisible or DivisionByZero.
  Polynomial exact_div(const Polynomial& q) const;
  std::optional<Polynomial> try_exact_div(const Polynomial& q) const;

  Rational eval(std::span<const Rational> point) const;
  /// p(base + t*direction) as a polynomial in the line universe {t}.
  Polynomial restrict_to_line(std::span<const Rational> base,
                              std::span<const Rational> direction) const;
  /// Substitutes images[i] for variable i; the images share one universe,
  /// which becomes the universe of the result.
  Polynomial compose(std::span<const Polynomial> images) const;
  /// Same polynomial over `target`, matching variables by name. Variables
  /// missing from `target` must not occur.
  Polynomial in_universe(UniversePtr target) const;
  Polynomial derivative(std::size_t var) const;

  /// Integer-content-free representative with positive leading coefficient.
  Polynomial canonical() const;
  /// Rational c with *this == c * canonical(); zero for zero.
  Rational canonical_scalar() const;

  std::string to_string() const;

  bool operator==(const Polynomial& q) const;
  bool operator!=(const Polynomial& q) const { return !(*this == q); }

  // Raw access for kernels that work on the integer numerators.
  const Integer& denominator() const noexcept { return den_; }
  const Integer& numerator(std::size_t term) const { return coeffs_[term]; }
  std::span<const std::uint64_t> packed(std::size_t term) const {
    return {exps_.data() + term * stride_, stride_};
  }

 private:
  friend class PolyBuilder;

  void check_same(const Polynomial& q) const;
  void normalize_content();
  void add_scaled(const Polynomial& q, bool subtract);

  UniversePtr universe_;
  std::size_t stride_ = 1;
  std::vector<std::uint64_t> exps_;
  std::vector<Integer> coeffs_;
  Integer den_ = 1;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p.scaled(c); }

/// Largest e with t^e dividing u (univariate; for several variables, the
/// order of vanishing at the origin). Throws ZeroPolynomial.
unsigned root_multiplicity_at_zero(const Polynomial& u);

/// Coefficients of p as a polynomial in variable `var`: result[k] is the
/// coefficient of var^k, over the same universe with `var` eliminated.
std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var);

/// Discriminant of sum_k coeffs[k]*z^k, computed as
/// (-1)^(m(m-1)/2) Res(u, u') / lc(u) with the resultant taken as a
/// Sylvester determinant. Coefficients may live in any universe (the empty
/// universe for scalar coefficients).
Polynomial univariate_discriminant(std::span<const Polynomial> coeffs);

/// Resultant of two univariate polynomials given by coefficient lists.
Polynomial sylvester_resultant(std::span<const Polynomial> u,
                               std::span<const Polynomial> v);

}  // namespace nkv
