#include "nkv/salmon.hpp"

#include <vector>

#include "nkv/error.hpp"
#include "nkv/poly_matrix.hpp"
#include "nkv/veronese.hpp"

namespace nkv {

namespace {

std::size_t find_var(const UniversePtr& u, const std::string& name) {
  const auto& names = u->names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw Error(Errc::InvalidArgument, "quadric universe has no variable " + name);
}

void check_quadric(const Polynomial& f, const std::array<std::size_t, 3>& x) {
  for (std::size_t t = 0; t < f.size(); ++t) {
    unsigned deg = 0;
    for (std::size_t v : x) deg += f.exponent(t, v);
    if (deg != 2) throw Error(Errc::NotHomogeneous, "expected a quadric in x1, x2, x3: " + f.to_string());
  }
}

}  // namespace

TernaryQuadricTriple TernaryQuadricTriple::make(Polynomial f1, Polynomial f2, Polynomial f3) {
  if (!same_universe(f1.universe(), f2.universe()) || !same_universe(f1.universe(), f3.universe()))
    throw Error(Errc::UniverseMismatch, "quadrics over different universes");
  const UniversePtr u = f1.universe();
  TernaryQuadricTriple t{{std::move(f1), std::move(f2), std::move(f3)},
                         {find_var(u, "x1"), find_var(u, "x2"), find_var(u, "x3")}};
  for (const auto& f : t.f) check_quadric(f, t.x);
  return t;
}

Polynomial jacobian_poly(const TernaryQuadricTriple& t) {
  PolyMatrix m(t.f[0].universe(), 3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = t.f[i].derivative(t.x[j]);
  return det(m);
}

Polynomial salmon_resultant(const TernaryQuadricTriple& t) {
  const Polynomial j = jacobian_poly(t);
  std::vector<Polynomial> forms;
  for (std::size_t v : t.x) forms.push_back(j.derivative(v));
  for (const auto& f : t.f) forms.push_back(f);

  PolyMatrix b(t.f[0].universe(), 6, 6);
  for (std::size_t r = 0; r < 6; ++r) {
    // The partials of J are zero or quadrics; an all-zero row is fine.
    if (forms[r].is_zero()) continue;
    const std::vector<Polynomial> row = coeff_row(forms[r], t.x, 2);
    for (std::size_t c = 0; c < 6; ++c) b(r, c) = row[c];
  }
  return det(b).canonical();
}

ConicKalman salmon_conic(const Polynomial& f) {
  const UniversePtr& fu = f.universe();
  const std::array<std::size_t, 3> fx{find_var(fu, "x1"), find_var(fu, "x2"), find_var(fu, "x3")};
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "zero conic");
  check_quadric(f, fx);

  // Result universe: a11..a33, then the parameters of f.
  std::vector<std::string> names = matrix_universe(3)->names();
  for (std::size_t i = 0; i < fu->size(); ++i)
    if (i != fx[0] && i != fx[1] && i != fx[2]) names.push_back(fu->names()[i]);
  const UniversePtr ab = make_universe(names);
  for (const char* x : {"x1", "x2", "x3"}) names.emplace_back(x);
  const UniversePtr abx = make_universe(names);

  auto a = [&](int i, int j) { return Polynomial::variable(abx, static_cast<std::size_t>(3 * (i - 1) + (j - 1))); };
  auto x = [&](int i) { return Polynomial::variable(abx, "x" + std::to_string(i)); };
  auto ax = [&](int i) { return a(i, 1) * x(1) + a(i, 2) * x(2) + a(i, 3) * x(3); };

  const Polynomial fm = f.in_universe(abx);
  TernaryQuadricTriple t = TernaryQuadricTriple::make(ax(1) * x(2) - ax(2) * x(1),
                                                      ax(1) * x(3) - ax(3) * x(1), fm);
  const Polynomial res = salmon_resultant(t).in_universe(ab);

  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < abx->size(); ++i) {
    const std::string& nm = abx->names()[i];
    if (nm == "x1") images.push_back(Polynomial(ab));
    else if (nm == "x2") images.push_back(Polynomial::variable(ab, "a13"));
    else if (nm == "x3") images.push_back(-Polynomial::variable(ab, "a12"));
    else images.push_back(Polynomial::variable(ab, i));
  }
  const Polynomial g1 = fm.compose(images).canonical();
  if (g1.is_zero()) throw Error(Errc::NotDivisible, "spurious factor vanishes identically");
  Polynomial g2 = res.exact_div(g1).canonical();
  return {std::move(t), res, g1, std::move(g2)};
}

Polynomial kalman_conic_equation(const Polynomial& f) { return salmon_conic(f).g2; }

}  // namespace nkv
