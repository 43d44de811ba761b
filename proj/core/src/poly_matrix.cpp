#include "nkv/poly_matrix.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include <json.hpp>

#include "nkv/error.hpp"

namespace nkv {

// ---------------------------------------------------------------------------
// QMatrix

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::diagonal(const std::vector<Rational>& d) {
  QMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  QMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw Error(Errc::DimensionMismatch, "ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Rational> QMatrix::column(std::size_t j) const {
  std::vector<Rational> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw Error(Errc::DimensionMismatch, "vector length");
  std::vector<Rational> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols_ != o.rows_) throw Error(Errc::DimensionMismatch, "inner dimensions differ");
  QMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::DimensionMismatch, "shapes differ");
  QMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const { return *this + o.scaled(-1); }

QMatrix QMatrix::scaled(const Rational& c) const {
  QMatrix r = *this;
  for (auto& x : r.data_) x *= c;
  return r;
}

namespace {

/// Row echelon form in place; returns (rank, determinant sign/product).
std::size_t eliminate(QMatrix& m, Rational* det) {
  std::size_t rank = 0;
  Rational d = 1;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) {
      d = 0;
      continue;
    }
    if (p != rank) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(rank, j));
      d = -d;
    }
    const Rational piv = m(rank, c);
    d *= piv;
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / piv;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  if (det) *det = rank == m.rows() ? d : Rational(0);
  return rank;
}

}  // namespace

Rational QMatrix::det() const {
  if (!is_square()) throw Error(Errc::DimensionMismatch, "determinant of a non-square matrix");
  QMatrix w = *this;
  Rational d;
  eliminate(w, &d);
  return d;
}

std::size_t QMatrix::rank() const {
  QMatrix w = *this;
  return eliminate(w, nullptr);
}

QMatrix QMatrix::inverse() const {
  if (!is_square()) throw Error(Errc::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = rows_;
  QMatrix w = *this, inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && w(p, c) == 0) ++p;
    if (p == n) throw Error(Errc::SingularMatrix, "matrix is not invertible");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(w(p, j), w(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const Rational piv = w(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      w(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || w(i, c) == 0) continue;
      const Rational f = w(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        w(i, j) -= f * w(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::vector<Rational> QMatrix::char_poly() const {
  if (!is_square()) throw Error(Errc::DimensionMismatch, "characteristic polynomial of a non-square matrix");
  const std::size_t n = rows_;
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  QMatrix am(n, n);  // A * M_{k-1}, with M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix mk = am;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    am = *this * mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return c;
}

std::string QMatrix::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += " | ";
      out += nkv::to_string((*this)(i, j));
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// PolyMatrix

PolyMatrix::PolyMatrix(UniversePtr universe, std::size_t rows, std::size_t cols)
    : universe_(std::move(universe)), rows_(rows), cols_(cols),
      data_(rows * cols, Polynomial(universe_)) {}

PolyMatrix PolyMatrix::identity(UniversePtr universe, std::size_t n) {
  PolyMatrix m(universe, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial::constant(universe, 1);
  return m;
}

PolyMatrix PolyMatrix::symbolic(std::size_t n) {
  const UniversePtr u = matrix_universe(n);
  PolyMatrix m(u, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Polynomial::variable(u, i * n + j);
  return m;
}

PolyMatrix PolyMatrix::from_rational(UniversePtr universe, const QMatrix& q) {
  PolyMatrix m(universe, q.rows(), q.cols());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) m(i, j) = Polynomial::constant(universe, q(i, j));
  return m;
}

PolyMatrix PolyMatrix::from_rows(UniversePtr universe, std::vector<std::vector<Polynomial>> rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  PolyMatrix m(universe, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw Error(Errc::DimensionMismatch, "ragged rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (!same_universe(rows[i][j].universe(), universe))
        throw Error(Errc::UniverseMismatch, "entry over a different universe");
      m(i, j) = std::move(rows[i][j]);
    }
  }
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw Error(Errc::DimensionMismatch, "inner dimensions differ");
  if (!same_universe(universe_, o.universe_)) throw Error(Errc::UniverseMismatch, "matrix universes differ");
  PolyMatrix r(universe_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) {
      Polynomial acc(universe_);
      for (std::size_t k = 0; k < cols_; ++k) {
        const Polynomial& a = (*this)(i, k);
        const Polynomial& b = o(k, j);
        if (a.is_zero() || b.is_zero()) continue;
        acc += a * b;
      }
      r(i, j) = std::move(acc);
    }
  return r;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::DimensionMismatch, "shapes differ");
  PolyMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::DimensionMismatch, "shapes differ");
  PolyMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

PolyMatrix PolyMatrix::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw Error(Errc::DimensionMismatch, "row block out of range");
  PolyMatrix r(universe_, count, cols_);
  std::copy(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((first + count) * cols_), r.data_.begin());
  return r;
}

PolyMatrix PolyMatrix::stacked(const PolyMatrix& o) const {
  if (cols_ != o.cols_) throw Error(Errc::DimensionMismatch, "column counts differ");
  PolyMatrix r(universe_, rows_ + o.rows_, cols_);
  std::copy(data_.begin(), data_.end(), r.data_.begin());
  std::copy(o.data_.begin(), o.data_.end(), r.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return r;
}

QMatrix PolyMatrix::eval(std::span<const Rational> point) const {
  QMatrix q(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) q(i, j) = (*this)(i, j).eval(point);
  return q;
}

PolyMatrix PolyMatrix::compose(std::span<const Polynomial> images) const {
  UniversePtr target = images.empty() ? empty_universe() : images[0].universe();
  PolyMatrix r(target, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].compose(images);
  return r;
}

std::string PolyMatrix::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += " | ";
      out += (*this)(i, j).to_string();
    }
    out += '\n';
  }
  return out;
}

PolyMatrix PolyMatrix::parse_text(std::string_view text, UniversePtr universe) {
  std::vector<std::vector<Polynomial>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<Polynomial> row;
    std::size_t start = 0;
    for (;;) {
      const std::size_t bar = line.find('|', start);
      row.push_back(Polynomial::parse(std::string_view(line).substr(start, bar - start), universe));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    rows.push_back(std::move(row));
  }
  if (!rows.empty())
    for (const auto& r : rows)
      if (r.size() != rows[0].size()) throw Error(Errc::Parse, "rows have different lengths");
  return from_rows(universe, std::move(rows));
}

std::string PolyMatrix::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t i = 0; i < rows_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < cols_; ++c) row.push_back((*this)(i, c).to_string());
    j.push_back(std::move(row));
  }
  return j.dump();
}

PolyMatrix PolyMatrix::parse_json(std::string_view text, UniversePtr universe) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, e.what());
  }
  if (!j.is_array()) throw Error(Errc::Parse, "expected an array of rows");
  std::vector<std::vector<Polynomial>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw Error(Errc::Parse, "expected a row array");
    std::vector<Polynomial> row;
    for (const auto& e : r) {
      if (!e.is_string()) throw Error(Errc::Parse, "entries must be strings");
      row.push_back(Polynomial::parse(e.get<std::string>(), universe));
    }
    rows.push_back(std::move(row));
  }
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw Error(Errc::Parse, "rows have different lengths");
  return from_rows(universe, std::move(rows));
}

// ---------------------------------------------------------------------------
// Determinants

namespace {

using Grid = std::vector<std::vector<Polynomial>>;

/// Expands along rows/columns holding at most one nonzero. Returns false if
/// a zero line was found (determinant zero). `factor` collects the peeled
/// entries with their cofactor signs.
bool peel(Grid& a, Polynomial& factor) {
  for (;;) {
    const std::size_t n = a.size();
    if (n == 0) return true;
    bool changed = false;
    for (std::size_t i = 0; i < n && !changed; ++i) {
      std::size_t count = 0, at = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (!a[i][j].is_zero()) {
          ++count;
          at = j;
        }
      if (count == 0) return false;
      if (count == 1) {
        factor = factor * a[i][at];
        if ((i + at) % 2) factor = -factor;
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(i));
        for (auto& row : a) row.erase(row.begin() + static_cast<std::ptrdiff_t>(at));
        changed = true;
      }
    }
    for (std::size_t j = 0; j < n && !changed; ++j) {
      std::size_t count = 0, at = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (!a[i][j].is_zero()) {
          ++count;
          at = i;
        }
      if (count == 0) return false;
      if (count == 1) {
        factor = factor * a[at][j];
        if ((at + j) % 2) factor = -factor;
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(at));
        for (auto& row : a) row.erase(row.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
      }
    }
    if (!changed) return true;
  }
}

Grid to_grid(const PolyMatrix& m) {
  Grid a(m.rows(), std::vector<Polynomial>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return a;
}

}  // namespace

Polynomial det(const PolyMatrix& m) {
  if (!m.is_square()) throw Error(Errc::DimensionMismatch, "determinant of a non-square matrix");
  const UniversePtr& u = m.universe();
  Grid a = to_grid(m);
  Polynomial factor = Polynomial::constant(u, 1);
  if (!peel(a, factor)) return Polynomial(u);
  const std::size_t n = a.size();
  if (n == 0) return factor;
  bool negate = false;
  Polynomial prev = Polynomial::constant(u, 1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pi = n, pj = n, best = 0;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        const std::size_t sz = a[i][j].size();
        if (sz == 0) continue;
        if (pi == n || sz < best) {
          pi = i;
          pj = j;
          best = sz;
        }
      }
    if (pi == n) return Polynomial(u);
    if (pi != k) {
      std::swap(a[pi], a[k]);
      negate = !negate;
    }
    if (pj != k) {
      for (auto& row : a) std::swap(row[pj], row[k]);
      negate = !negate;
    }
    const Polynomial& piv = a[k][k];
    const bool unit = prev.is_constant();
    const Rational inv_prev = unit ? 1 / prev.coefficient(0) : Rational(0);
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial t = piv * a[i][j];
        if (!a[i][k].is_zero() && !a[k][j].is_zero()) t -= a[i][k] * a[k][j];
        a[i][j] = unit ? t.scaled(inv_prev) : t.exact_div(prev);
      }
    prev = a[k][k];
  }
  Polynomial r = a[n - 1][n - 1] * factor;
  return negate ? -r : r;
}

Polynomial det_by_minors(const PolyMatrix& m, std::span<const std::size_t> row_order) {
  if (!m.is_square()) throw Error(Errc::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n > 24) throw Error(Errc::UnsupportedCase, "minor expansion limited to 24 columns");
  const UniversePtr& u = m.universe();
  if (n == 0) return Polynomial::constant(u, 1);
  std::vector<std::size_t> order(n);
  if (row_order.empty()) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
  } else {
    if (row_order.size() != n) throw Error(Errc::LengthMismatch, "row order has wrong length");
    order.assign(row_order.begin(), row_order.end());
    std::vector<bool> seen(n, false);
    for (auto r : order) {
      if (r >= n || seen[r]) throw Error(Errc::InvalidArgument, "row order is not a permutation");
      seen[r] = true;
    }
  }
  bool odd = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (order[i] > order[j]) odd = !odd;

  // minors[mask]: determinant of the rows consumed so far restricted to the
  // columns in mask.
  std::vector<Polynomial> minors(std::size_t{1} << n, Polynomial(u));
  minors[0] = Polynomial::constant(u, 1);
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t r = order[step];
    std::vector<Polynomial> next(minors.size(), Polynomial(u));
    for (std::size_t mask = 0; mask < minors.size(); ++mask) {
      if (minors[mask].is_zero() || static_cast<std::size_t>(std::popcount(mask)) != step) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask >> j & 1) continue;
        const Polynomial& e = m(r, j);
        if (e.is_zero()) continue;
        const int above = std::popcount(mask >> (j + 1));
        Polynomial t = e * minors[mask];
        const std::size_t to = mask | (std::size_t{1} << j);
        if (above % 2) next[to] -= t;
        else next[to] += t;
      }
    }
    minors = std::move(next);
  }
  return odd ? -minors.back() : minors.back();
}

std::vector<Polynomial> char_poly(const PolyMatrix& m) {
  if (!m.is_square()) throw Error(Errc::DimensionMismatch, "characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  const UniversePtr& u = m.universe();
  std::vector<Polynomial> c(n + 1, Polynomial(u));
  c[n] = Polynomial::constant(u, 1);
  PolyMatrix am(u, n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    PolyMatrix mk = am;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    am = m * mk;
    Polynomial tr(u);
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = tr.scaled(Rational(-1) / static_cast<long>(k));
  }
  return c;
}

std::size_t rank_at(const PolyMatrix& m, std::span<const Rational> point) {
  return m.eval(point).rank();
}

}  // namespace nkv
