#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nkv/polynomial.hpp"
#include "nkv/scalar.hpp"

namespace nkv {

/// Dense matrix of rationals, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);

  static QMatrix identity(std::size_t n);
  static QMatrix diagonal(const std::vector<Rational>& d);
  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Row-major flattening; this is the evaluation point for polynomials over
  /// the matrix universe a11..ann.
  const std::vector<Rational>& flat() const noexcept { return data_; }

  std::vector<Rational> column(std::size_t j) const;
  std::vector<Rational> apply(const std::vector<Rational>& v) const;

  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix scaled(const Rational& c) const;
  bool operator==(const QMatrix& o) const = default;

  Rational det() const;
  std::size_t rank() const;
  /// Throws SingularMatrix.
  QMatrix inverse() const;
  /// Coefficients c_0..c_n of det(lambda*I - M), so c_n = 1.
  std::vector<Rational> char_poly() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

/// Matrix of polynomials over one shared universe.
class PolyMatrix {
 public:
  PolyMatrix(UniversePtr universe, std::size_t rows, std::size_t cols);

  static PolyMatrix identity(UniversePtr universe, std::size_t n);
  /// (a_ij) over matrix_universe(n).
  static PolyMatrix symbolic(std::size_t n);
  static PolyMatrix from_rational(UniversePtr universe, const QMatrix& m);
  static PolyMatrix from_rows(UniversePtr universe, std::vector<std::vector<Polynomial>> rows);

  const UniversePtr& universe() const noexcept { return universe_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Polynomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  bool operator==(const PolyMatrix& o) const;

  /// Rows [first, first + count).
  PolyMatrix row_block(std::size_t first, std::size_t count) const;
  /// Stacks `o` below this matrix.
  PolyMatrix stacked(const PolyMatrix& o) const;

  QMatrix eval(std::span<const Rational> point) const;
  /// Substitutes images[i] for universe variable i in every entry.
  PolyMatrix compose(std::span<const Polynomial> images) const;

  /// Rows on separate lines, entries separated by ` | `.
  std::string to_text() const;
  static PolyMatrix parse_text(std::string_view text, UniversePtr universe);
  /// Nested JSON arrays of polynomial strings.
  std::string to_json() const;
  static PolyMatrix parse_json(std::string_view text, UniversePtr universe);

 private:
  UniversePtr universe_;
  std::size_t rows_, cols_;
  std::vector<Polynomial> data_;
};

/// Fraction-free elimination (Bareiss) with full pivoting on the entry with
/// fewest terms, after peeling off rows and columns with a single nonzero.
Polynomial det(const PolyMatrix& m);

/// Division-free expansion along rows, sharing minors between column
/// subsets. Exponential in the size; used when entries grow quickly down
/// the rows, as in Kalman matrices. `row_order` sets the order in which rows
/// are consumed (default top to bottom); it changes cost, not the result.
Polynomial det_by_minors(const PolyMatrix& m, std::span<const std::size_t> row_order = {});

/// Coefficients c_0..c_n of det(lambda*I - M) (Faddeev-LeVerrier), c_n = 1.
std::vector<Polynomial> char_poly(const PolyMatrix& m);

/// Rank of m evaluated at a rational point.
std::size_t rank_at(const PolyMatrix& m, std::span<const Rational> point);

}  // namespace nkv
