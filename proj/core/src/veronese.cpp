#include "nkv/veronese.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "nkv/error.hpp"

namespace nkv {

namespace {

void lex_descending(unsigned n, unsigned d, Exponents& cur, std::size_t pos,
                    std::vector<Exponents>& out) {
  if (pos + 1 == n) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (unsigned e = d + 1; e-- > 0;) {
    cur[pos] = e;
    lex_descending(n, d - e, cur, pos + 1, out);
  }
}

}  // namespace

MonomialBasis::MonomialBasis(unsigned n, unsigned d) : n_(n), d_(d) {
  if (n == 0) throw Error(Errc::InvalidArgument, "basis needs at least one variable");
  Exponents cur(n, 0);
  lex_descending(n, d, cur, 0, members_);
}

std::size_t MonomialBasis::index_of(const Exponents& e) const {
  // Members are strictly descending, so binary search with reversed compare.
  auto it = std::lower_bound(members_.begin(), members_.end(), e,
                             [](const Exponents& a, const Exponents& b) { return a > b; });
  if (it == members_.end() || *it != e) throw Error(Errc::InvalidArgument, "monomial not in basis");
  return static_cast<std::size_t>(it - members_.begin());
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
  for (unsigned p : parts_)
    if (p == 0) throw Error(Errc::InvalidArgument, "partition parts must be positive");
  std::sort(parts_.begin(), parts_.end());
}

unsigned Partition::degree() const noexcept {
  return std::accumulate(parts_.begin(), parts_.end(), 0u);
}

unsigned Partition::multiplicity(unsigned i) const noexcept {
  return static_cast<unsigned>(std::count(parts_.begin(), parts_.end(), i));
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

Partition Partition::parse(std::string_view text) {
  std::vector<unsigned> parts;
  unsigned cur = 0;
  bool have = false;
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      cur = cur * 10 + static_cast<unsigned>(c - '0');
      have = true;
    } else if (c == ',' || c == ')' || c == ' ') {
      if (have) parts.push_back(cur);
      cur = 0;
      have = false;
    } else if (c != '(') {
      throw Error(Errc::Parse, "malformed partition '" + std::string(text) + "'");
    }
  }
  if (have) parts.push_back(cur);
  if (parts.empty()) throw Error(Errc::Parse, "empty partition");
  return Partition(std::move(parts));
}

// ---------------------------------------------------------------------------

std::vector<Rational> mon_vector(std::span<const Rational> v, unsigned d) {
  const MonomialBasis basis(static_cast<unsigned>(v.size()), d);
  std::vector<Rational> out;
  out.reserve(basis.size());
  for (const auto& e : basis.members()) {
    Rational x = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) x *= v[i];
    out.push_back(x);
  }
  return out;
}

namespace {

/// Universe `base` followed by fresh names for n auxiliary variables.
UniversePtr with_aux(const UniversePtr& base, const std::string& prefix, std::size_t n) {
  std::vector<std::string> names = base->names();
  for (std::size_t i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
  return make_universe(std::move(names));
}

}  // namespace

PolyMatrix sym_power(const PolyMatrix& a, unsigned d) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "symmetric power of a non-square matrix");
  const unsigned n = static_cast<unsigned>(a.rows());
  const MonomialBasis basis(n, d);
  const UniversePtr& u = a.universe();
  const std::size_t offset = u->size();
  const UniversePtr ux = with_aux(u, "__x", n);

  // Powers of the linear forms (Ax)_j.
  std::vector<std::vector<Polynomial>> powers(n);
  for (unsigned j = 0; j < n; ++j) {
    Polynomial form(ux);
    for (unsigned k = 0; k < n; ++k)
      form += a(j, k).in_universe(ux) * Polynomial::variable(ux, offset + k);
    powers[j].push_back(Polynomial::constant(ux, 1));
    for (unsigned e = 1; e <= d; ++e) powers[j].push_back(powers[j].back() * form);
  }

  PolyMatrix r(u, basis.size(), basis.size());
  for (std::size_t row = 0; row < basis.size(); ++row) {
    Polynomial p = Polynomial::constant(ux, 1);
    for (unsigned j = 0; j < n; ++j)
      if (basis[row][j]) p = p * powers[j][basis[row][j]];
    std::vector<std::vector<std::pair<Exponents, Rational>>> cols(basis.size());
    for (std::size_t t = 0; t < p.size(); ++t) {
      const Exponents e = p.exponents(t);
      const Exponents xe(e.begin() + static_cast<std::ptrdiff_t>(offset), e.end());
      const Exponents ae(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(offset));
      cols[basis.index_of(xe)].emplace_back(ae, p.coefficient(t));
    }
    for (std::size_t c = 0; c < basis.size(); ++c)
      r(row, c) = Polynomial::from_terms(u, std::move(cols[c]));
  }
  return r;
}

QMatrix sym_power(const QMatrix& a, unsigned d) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "symmetric power of a non-square matrix");
  const unsigned n = static_cast<unsigned>(a.rows());
  const MonomialBasis basis(n, d);
  // Dense products of linear forms indexed by exponent vectors.
  using Dense = std::map<Exponents, Rational>;
  std::vector<Dense> forms(n);
  for (unsigned j = 0; j < n; ++j)
    for (unsigned k = 0; k < n; ++k) {
      if (a(j, k) == 0) continue;
      Exponents e(n, 0);
      e[k] = 1;
      forms[j][e] = a(j, k);
    }
  QMatrix r(basis.size(), basis.size());
  for (std::size_t row = 0; row < basis.size(); ++row) {
    Dense acc;
    acc[Exponents(n, 0)] = 1;
    for (unsigned j = 0; j < n; ++j)
      for (unsigned rep = 0; rep < basis[row][j]; ++rep) {
        Dense next;
        for (const auto& [e1, c1] : acc)
          for (const auto& [e2, c2] : forms[j]) {
            Exponents e = e1;
            for (unsigned i = 0; i < n; ++i) e[i] += e2[i];
            next[e] += c1 * c2;
          }
        acc = std::move(next);
      }
    for (const auto& [e, c] : acc)
      if (c != 0) r(row, basis.index_of(e)) = c;
  }
  return r;
}

std::vector<Rational> coeff_row(const Polynomial& f, unsigned d) {
  const unsigned n = static_cast<unsigned>(f.universe()->size());
  if (!f.is_zero() && (!f.is_homogeneous() || f.total_degree() != static_cast<int>(d)))
    throw Error(Errc::NotHomogeneous, "expected a form of degree " + std::to_string(d));
  const MonomialBasis basis(n, d);
  std::vector<Rational> row(basis.size());
  for (std::size_t t = 0; t < f.size(); ++t) row[basis.index_of(f.exponents(t))] = f.coefficient(t);
  return row;
}

std::vector<Polynomial> coeff_row(const Polynomial& f, std::span<const std::size_t> xvars, unsigned d) {
  const unsigned n = static_cast<unsigned>(xvars.size());
  const MonomialBasis basis(n, d);
  std::vector<std::vector<std::pair<Exponents, Rational>>> cols(basis.size());
  for (std::size_t t = 0; t < f.size(); ++t) {
    Exponents e = f.exponents(t);
    Exponents xe(n);
    for (unsigned i = 0; i < n; ++i) {
      xe[i] = e[xvars[i]];
      e[xvars[i]] = 0;
    }
    if (std::accumulate(xe.begin(), xe.end(), 0u) != d)
      throw Error(Errc::NotHomogeneous, "term of wrong degree in the form variables");
    cols[basis.index_of(xe)].emplace_back(e, f.coefficient(t));
  }
  std::vector<Polynomial> row;
  row.reserve(basis.size());
  for (auto& c : cols) row.push_back(Polynomial::from_terms(f.universe(), std::move(c)));
  return row;
}

CoeffMatrix coeff_matrix(std::span<const Polynomial> generators) {
  if (generators.empty()) throw Error(Errc::InvalidArgument, "no generators");
  unsigned d = 1;
  for (const auto& g : generators) {
    if (g.is_zero()) throw Error(Errc::ZeroPolynomial, "zero generator");
    if (!g.is_homogeneous()) throw Error(Errc::NotHomogeneous, "generator is not homogeneous");
    if (!same_universe(g.universe(), generators[0].universe()))
      throw Error(Errc::UniverseMismatch, "generators over different universes");
    d = std::lcm(d, static_cast<unsigned>(g.total_degree()));
  }
  std::vector<std::vector<Rational>> rows;
  std::size_t rank = 0;
  for (const auto& g : generators) {
    const unsigned di = static_cast<unsigned>(g.total_degree());
    rows.push_back(coeff_row(g.pow(d / di), d));
    const std::size_t r = QMatrix::from_rows(rows).rank();
    if (r == rank) rows.pop_back();
    else rank = r;
  }
  return {QMatrix::from_rows(rows), d};
}

UniversePtr block_universe(unsigned n, std::size_t blocks) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= blocks; ++i)
    for (unsigned j = 1; j <= n; ++j) names.push_back("x" + std::to_string(j) + "_" + std::to_string(i));
  return make_universe(std::move(names));
}

Polynomial polarize(const Polynomial& f, const Partition& mu) {
  const unsigned n = static_cast<unsigned>(f.universe()->size());
  const unsigned d = mu.degree();
  if (f.is_zero()) return Polynomial(block_universe(n, mu.length()));
  if (!f.is_homogeneous() || f.total_degree() != static_cast<int>(d))
    throw Error(Errc::DegenerateDegree, "form degree differs from |mu|");
  const std::size_t s = mu.length();
  const UniversePtr blocks = block_universe(n, s);
  const UniversePtr bt = with_aux(blocks, "__t", s);
  const std::size_t toff = blocks->size();

  std::vector<Polynomial> images;
  for (unsigned j = 0; j < n; ++j) {
    Polynomial img(bt);
    for (std::size_t i = 0; i < s; ++i)
      img += Polynomial::variable(bt, toff + i) * Polynomial::variable(bt, i * n + j);
    images.push_back(std::move(img));
  }
  const Polynomial full = f.compose(images);

  Rational scale = 1;
  for (unsigned p : mu.parts()) scale *= Rational(factorial(p));
  scale /= Rational(factorial(d));

  std::vector<std::pair<Exponents, Rational>> terms;
  for (std::size_t t = 0; t < full.size(); ++t) {
    const Exponents e = full.exponents(t);
    bool match = true;
    for (std::size_t i = 0; i < s && match; ++i) match = e[toff + i] == mu.parts()[i];
    if (!match) continue;
    terms.emplace_back(Exponents(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(toff)),
                       full.coefficient(t) * scale);
  }
  return Polynomial::from_terms(blocks, std::move(terms));
}

}  // namespace nkv
