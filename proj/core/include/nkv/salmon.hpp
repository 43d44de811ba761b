#pragma once

#include <array>
#include <cstddef>

#include "nkv/polynomial.hpp"

namespace nkv {

/// Three quadrics in the variables x1, x2, x3 of a shared universe; every
/// other variable of the universe is a coefficient parameter.
struct TernaryQuadricTriple {
  std::array<Polynomial, 3> f;
  /// Positions of x1, x2, x3 in the universe.
  std::array<std::size_t, 3> x;

  /// Finds x1, x2, x3 by name; throws InvalidArgument or NotHomogeneous.
  static TernaryQuadricTriple make(Polynomial f1, Polynomial f2, Polynomial f3);
};

/// det of the 3x3 matrix of partials d f_i / d x_j; cubic in x.
Polynomial jacobian_poly(const TernaryQuadricTriple& t);

/// det of the 6x6 coefficient matrix of (dJ/dx1, dJ/dx2, dJ/dx3, f1, f2, f3)
/// in the degree-2 monomial basis, canonically normalized. Zero exactly when
/// the quadrics share a projective zero.
Polynomial salmon_resultant(const TernaryQuadricTriple& t);

struct ConicKalman {
  TernaryQuadricTriple triple;
  Polynomial resultant;  ///< canonical det B
  Polynomial g1;         ///< f(0, a13, -a12), canonical
  Polynomial g2;         ///< resultant / g1, canonical
};

/// Resultant of f1 = (Ax)_1 x2 - (Ax)_2 x1, f2 = (Ax)_1 x3 - (Ax)_3 x1 and
/// f3 = f, split off the spurious factor g1 (the f-value at the common zero
/// (0, a13, -a12) of f1, f2). The universe of the results is a11..a33
/// followed by the coefficient parameters of f. Throws NotDivisible if g1
/// does not divide.
ConicKalman salmon_conic(const Polynomial& f);

/// g2 of salmon_conic: the equation of the Kalman variety of the conic f.
Polynomial kalman_conic_equation(const Polynomial& f);

}  // namespace nkv
