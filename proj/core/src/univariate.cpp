#include <span>

#include "nkv/error.hpp"
#include "nkv/poly_matrix.hpp"
#include "nkv/polynomial.hpp"

namespace nkv {

namespace {

/// Drops trailing zero coefficients; returns the degree.
std::size_t effective_degree(std::span<const Polynomial> c) {
  std::size_t m = c.size();
  while (m > 0 && c[m - 1].is_zero()) --m;
  if (m == 0) throw Error(Errc::ZeroPolynomial, "univariate polynomial is zero");
  return m - 1;
}

UniversePtr coefficient_universe(std::span<const Polynomial> u, std::span<const Polynomial> v) {
  UniversePtr univ = u.empty() ? (v.empty() ? empty_universe() : v[0].universe()) : u[0].universe();
  for (const auto& p : u)
    if (!same_universe(p.universe(), univ)) throw Error(Errc::UniverseMismatch, "coefficients over different universes");
  for (const auto& p : v)
    if (!same_universe(p.universe(), univ)) throw Error(Errc::UniverseMismatch, "coefficients over different universes");
  return univ;
}

}  // namespace

Polynomial sylvester_resultant(std::span<const Polynomial> u, std::span<const Polynomial> v) {
  const UniversePtr univ = coefficient_universe(u, v);
  const std::size_t m = effective_degree(u), k = effective_degree(v);
  const std::size_t size = m + k;
  if (size == 0) return Polynomial::constant(univ, 1);
  // Rows of shifted coefficient lists, highest power first.
  PolyMatrix s(univ, size, size);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j <= m; ++j) s(i, i + j) = u[m - j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= k; ++j) s(k + i, i + j) = v[k - j];
  return det(s);
}

Polynomial univariate_discriminant(std::span<const Polynomial> coeffs) {
  const UniversePtr univ = coefficient_universe(coeffs, {});
  const std::size_t m = effective_degree(coeffs);
  if (m < 2) throw Error(Errc::DegenerateDegree, "discriminant needs degree at least 2");
  std::vector<Polynomial> deriv;
  deriv.reserve(m);
  for (std::size_t i = 1; i <= m; ++i) deriv.push_back(coeffs[i].scaled(static_cast<long>(i)));
  Polynomial res = sylvester_resultant(coeffs.first(m + 1), deriv);
  res = res.exact_div(coeffs[m]);
  return (m * (m - 1) / 2) % 2 ? -res : res;
}

}  // namespace nkv
