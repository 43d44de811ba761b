#pragma once

#include <string>
#include <vector>

#include "nkv/polynomial.hpp"
#include "nkv/veronese.hpp"

namespace nkv {

/// h0, h1, ..., hs.
UniversePtr chow_universe(unsigned s);

/// Element of Z[h0,...,hs] / (h0^(n^2), h1^n, ..., hs^n).
class TruncatedClass {
 public:
  TruncatedClass(unsigned n, unsigned s);
  /// Reduces p (over chow_universe(s), integer coefficients) modulo the
  /// truncation.
  TruncatedClass(unsigned n, unsigned s, const Polynomial& p);

  static TruncatedClass one(unsigned n, unsigned s);
  /// h_i as a class.
  static TruncatedClass generator(unsigned n, unsigned s, unsigned i);

  unsigned n() const noexcept { return n_; }
  unsigned s() const noexcept { return s_; }
  const Polynomial& polynomial() const noexcept { return p_; }
  bool is_zero() const noexcept { return p_.is_zero(); }

  /// Coefficient of h0^e0 ... hs^es.
  Integer coefficient(const Exponents& e) const;

  TruncatedClass operator+(const TruncatedClass& o) const;
  TruncatedClass operator-(const TruncatedClass& o) const;
  TruncatedClass operator*(const TruncatedClass& o) const;
  TruncatedClass scaled(const Integer& c) const;
  bool operator==(const TruncatedClass& o) const;

  /// Ring map sending h_i to images[i]; images live in a common target ring.
  TruncatedClass substitute(const std::vector<TruncatedClass>& images) const;

  std::string to_string() const;

 private:
  void check(const TruncatedClass& o) const;

  unsigned n_, s_;
  Polynomial p_;
};

/// Set partition of {1..s}; blocks sorted internally and ordered by their
/// minima.
class SetPartition {
 public:
  explicit SetPartition(std::vector<std::vector<unsigned>> blocks);

  const std::vector<std::vector<unsigned>>& blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  unsigned ground() const noexcept { return ground_; }
  unsigned minimum(std::size_t block) const { return blocks_.at(block).front(); }
  bool is_discrete() const noexcept { return blocks_.size() == ground_; }
  std::string to_string() const;

  /// All set partitions of {1..s}, in a fixed order.
  static std::vector<SetPartition> all(unsigned s);

 private:
  std::vector<std::vector<unsigned>> blocks_;
  unsigned ground_ = 0;
};

/// [W_s] = prod_i sum_j C(n,j) h0^(n-1-j) hi^j.
TruncatedClass class_W(unsigned n, unsigned s);

/// Closed forms for s = 1, 2; throws UnsupportedCase otherwise.
TruncatedClass class_Wtilde(unsigned n, unsigned s);

/// phi_P([W~_|P|]) times sum_r h_q^(n-1-r) h_p^r for every non-minimal p
/// of every block with minimum q. |P| <= 2 uses the closed forms; |P| = 3
/// needs n = 3 and uses the fixture.
TruncatedClass class_WsP(unsigned n, const SetPartition& P);

/// Classes for n = 3, s = 3 as printed in compressed symmetric-function form.
TruncatedClass fixture_Wtilde3();
/// Pair-type component with blocks {i,j},{k}.
TruncatedClass fixture_W3_pair(unsigned i, unsigned j, unsigned k);
TruncatedClass fixture_W3_full();
TruncatedClass fixture_E3();

/// Coefficient of h0 h1^(n-1)...hi^(n-2)...hs^(n-1) in c, which must be
/// the same for every i; throws InvalidArgument when it is not.
Integer linear_coefficient(const TruncatedClass& c);

/// C(n,2) (n-1)_{s-1}.
Integer coeff_ctilde(unsigned n, unsigned s);

/// coeff_ctilde(n, s) d / (m_1! ... m_d!) for mu with s parts.
Integer deg_mu_from_chow(unsigned n, const Partition& mu);

}  // namespace nkv
