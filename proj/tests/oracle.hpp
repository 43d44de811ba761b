#pragma once

// Independent reference computations used only by the tests.

#include <random>
#include <vector>

#include <nkv/poly_matrix.hpp>
#include <nkv/polynomial.hpp>

namespace nkv::test {

/// Laplace expansion along the first row.
inline Polynomial cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial::constant(m.universe(), 1);
  if (n == 1) return m(0, 0);
  Polynomial acc(m.universe());
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    PolyMatrix minor(m.universe(), n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const Polynomial term = m(0, j) * cofactor_det(minor);
    if (j % 2) acc -= term;
    else acc += term;
  }
  return acc;
}

inline Rational cofactor_det(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Rational acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    QMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const Rational term = m(0, j) * cofactor_det(minor);
    acc += (j % 2) ? Rational(-term) : term;
  }
  return acc;
}

/// Product of squared differences of the listed roots.
inline Rational root_discriminant(const std::vector<Rational>& roots) {
  Rational acc = 1;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) acc *= (roots[i] - roots[j]) * (roots[i] - roots[j]);
  return acc;
}

/// Random polynomial of total degree <= deg with small integer coefficients.
inline Polynomial random_poly(const UniversePtr& u, unsigned deg, unsigned terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<unsigned> exp(0, deg);
  std::vector<std::pair<Exponents, Rational>> t;
  for (unsigned k = 0; k < terms; ++k) {
    Exponents e(u->size(), 0);
    unsigned left = deg;
    for (auto& x : e) {
      x = std::min(left, exp(rng) / static_cast<unsigned>(u->size()));
      left -= x;
    }
    t.emplace_back(e, coef(rng));
  }
  return Polynomial::from_terms(u, std::move(t));
}

inline QMatrix random_qmatrix(std::size_t n, std::mt19937_64& rng, int bound = 9) {
  std::uniform_int_distribution<int> d(-bound, bound);
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace nkv::test
