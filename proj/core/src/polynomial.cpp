#include "nkv/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstring>
#include <numeric>

#include "nkv/error.hpp"

namespace nkv {

// ---------------------------------------------------------------------------
// Universe

Universe::Universe(std::vector<std::string> names)
    : names_(std::move(names)), words_((names_.size() + 1 + 7) / 8) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j])
        throw Error(Errc::InvalidArgument, "duplicate variable name " + names_[i]);
}

std::optional<std::size_t> Universe::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

UniversePtr make_universe(std::vector<std::string> names) {
  return std::make_shared<const Universe>(std::move(names));
}

UniversePtr matrix_universe(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      names.push_back("a" + std::to_string(i) + std::to_string(j));
  return make_universe(std::move(names));
}

UniversePtr indexed_universe(std::string_view prefix, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return make_universe(std::move(names));
}

UniversePtr line_universe() {
  static const UniversePtr u = make_universe({"t"});
  return u;
}

UniversePtr empty_universe() {
  static const UniversePtr u = make_universe({});
  return u;
}

UniversePtr concat_universes(const UniversePtr& a, const UniversePtr& b) {
  std::vector<std::string> names = a->names();
  names.insert(names.end(), b->names().begin(), b->names().end());
  return make_universe(std::move(names));
}

bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  return a == b || *a == *b;
}

// ---------------------------------------------------------------------------
// Packed monomials: byte 0 holds the total degree, byte i+1 the exponent of
// variable i, most significant byte first. Comparing words as unsigned
// integers is then exactly graded-lex comparison.

namespace {

using Word = std::uint64_t;

inline unsigned get_byte(const Word* m, std::size_t b) {
  return static_cast<unsigned>((m[b >> 3] >> ((7 - (b & 7)) * 8)) & 0xFFu);
}

inline void set_byte(Word* m, std::size_t b, unsigned v) {
  const unsigned shift = static_cast<unsigned>((7 - (b & 7)) * 8);
  m[b >> 3] = (m[b >> 3] & ~(Word{0xFF} << shift)) | (Word{v} << shift);
}

inline int mono_cmp(const Word* a, const Word* b, std::size_t w) {
  for (std::size_t i = 0; i < w; ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

inline bool mono_eq(const Word* a, const Word* b, std::size_t w) {
  for (std::size_t i = 0; i < w; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

inline void mono_add(const Word* a, const Word* b, Word* out, std::size_t w) {
  for (std::size_t i = 0; i < w; ++i) out[i] = a[i] + b[i];
}

inline void mono_sub(const Word* a, const Word* b, Word* out, std::size_t w) {
  for (std::size_t i = 0; i < w; ++i) out[i] = a[i] - b[i];
}

/// Every byte of d is <= the matching byte of m.
inline bool mono_divides(const Word* d, const Word* m, std::size_t w) {
  for (std::size_t i = 0; i < w; ++i) {
    Word x = m[i], y = d[i];
    if (x == y) continue;
    for (int k = 0; k < 8; ++k) {
      if ((y & 0xFF) > (x & 0xFF)) return false;
      x >>= 8;
      y >>= 8;
    }
  }
  return true;
}

void pack(const Exponents& e, Word* out, std::size_t w) {
  std::fill(out, out + w, Word{0});
  unsigned deg = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > 255) throw Error(Errc::DegreeOverflow, "exponent above 255");
    deg += e[i];
    set_byte(out, i + 1, e[i]);
  }
  if (deg > 255) throw Error(Errc::DegreeOverflow, "total degree above 255");
  set_byte(out, 0, deg);
}

inline unsigned mono_degree(const Word* m) { return static_cast<unsigned>(m[0] >> 56); }

}  // namespace

// ---------------------------------------------------------------------------
// Builder for unsorted term streams with rational coefficients.

class PolyBuilder {
 public:
  explicit PolyBuilder(UniversePtr u) : u_(std::move(u)), w_(u_->words()) {}

  void add(const Word* m, const Rational& c) {
    if (c == 0) return;
    exps_.insert(exps_.end(), m, m + w_);
    coeffs_.push_back(c);
  }

  void add(const Exponents& e, const Rational& c) {
    if (e.size() != u_->size()) throw Error(Errc::LengthMismatch, "exponent vector length");
    std::vector<Word> buf(w_);
    pack(e, buf.data(), w_);
    add(buf.data(), c);
  }

  void add_polynomial(const Polynomial& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      Rational c(p.numerator(i), p.denominator());
      c.canonicalize();
      add(p.packed(i).data(), c);
    }
  }

  Polynomial finish() {
    Polynomial p(u_);
    std::vector<std::size_t> idx(coeffs_.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return mono_cmp(&exps_[a * w_], &exps_[b * w_], w_) > 0;
    });
    std::vector<Rational> merged;
    std::vector<Word> mexps;
    for (std::size_t k = 0; k < idx.size();) {
      const Word* m = &exps_[idx[k] * w_];
      Rational acc = 0;
      std::size_t j = k;
      while (j < idx.size() && mono_eq(&exps_[idx[j] * w_], m, w_)) acc += coeffs_[idx[j++]];
      if (acc != 0) {
        mexps.insert(mexps.end(), m, m + w_);
        merged.push_back(acc);
      }
      k = j;
    }
    Integer den = 1;
    for (const auto& c : merged) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    p.exps_ = std::move(mexps);
    p.coeffs_.reserve(merged.size());
    for (const auto& c : merged) p.coeffs_.push_back(c.get_num() * (den / c.get_den()));
    p.den_ = den;
    p.normalize_content();
    return p;
  }

 private:
  UniversePtr u_;
  std::size_t w_;
  std::vector<Word> exps_;
  std::vector<Rational> coeffs_;
};

// ---------------------------------------------------------------------------
// Polynomial basics

Polynomial::Polynomial() : Polynomial(empty_universe()) {}

Polynomial::Polynomial(UniversePtr universe)
    : universe_(std::move(universe)), stride_(universe_->words()) {}

Polynomial Polynomial::constant(UniversePtr universe, const Rational& c) {
  Polynomial p(std::move(universe));
  if (c == 0) return p;
  p.exps_.assign(p.stride_, Word{0});
  p.coeffs_.push_back(c.get_num());
  p.den_ = c.get_den();
  return p;
}

Polynomial Polynomial::variable(UniversePtr universe, std::size_t index) {
  if (index >= universe->size()) throw Error(Errc::InvalidArgument, "variable index out of range");
  Exponents e(universe->size(), 0);
  e[index] = 1;
  return monomial(std::move(universe), e, 1);
}

Polynomial Polynomial::variable(UniversePtr universe, std::string_view name) {
  auto idx = universe->find(name);
  if (!idx) throw Error(Errc::InvalidArgument, "unknown variable " + std::string(name));
  return variable(std::move(universe), *idx);
}

Polynomial Polynomial::monomial(UniversePtr universe, const Exponents& e, const Rational& c) {
  if (e.size() != universe->size()) throw Error(Errc::LengthMismatch, "exponent vector length");
  Polynomial p(std::move(universe));
  if (c == 0) return p;
  p.exps_.assign(p.stride_, Word{0});
  pack(e, p.exps_.data(), p.stride_);
  p.coeffs_.push_back(c.get_num());
  p.den_ = c.get_den();
  return p;
}

Polynomial Polynomial::from_terms(UniversePtr universe,
                                  std::vector<std::pair<Exponents, Rational>> terms) {
  PolyBuilder b(std::move(universe));
  for (const auto& [e, c] : terms) b.add(e, c);
  return b.finish();
}

bool Polynomial::is_constant() const noexcept {
  return coeffs_.empty() || (coeffs_.size() == 1 && mono_degree(exps_.data()) == 0);
}

int Polynomial::total_degree() const noexcept {
  if (coeffs_.empty()) return -1;
  return static_cast<int>(mono_degree(exps_.data()));
}

int Polynomial::min_degree() const noexcept {
  if (coeffs_.empty()) return -1;
  return static_cast<int>(mono_degree(&exps_[(coeffs_.size() - 1) * stride_]));
}

unsigned Polynomial::degree_in(std::size_t var) const {
  if (var >= universe_->size()) throw Error(Errc::InvalidArgument, "variable index out of range");
  unsigned best = 0;
  for (std::size_t i = 0; i < size(); ++i) best = std::max(best, get_byte(&exps_[i * stride_], var + 1));
  return best;
}

unsigned Polynomial::degree_in(std::span<const std::size_t> vars) const {
  unsigned best = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    unsigned d = 0;
    for (auto v : vars) d += get_byte(&exps_[i * stride_], v + 1);
    best = std::max(best, d);
  }
  return best;
}

bool Polynomial::is_homogeneous() const noexcept {
  return coeffs_.empty() || total_degree() == min_degree();
}

Exponents Polynomial::exponents(std::size_t term) const {
  Exponents e(universe_->size());
  for (std::size_t v = 0; v < e.size(); ++v) e[v] = get_byte(&exps_[term * stride_], v + 1);
  return e;
}

unsigned Polynomial::exponent(std::size_t term, std::size_t var) const {
  return get_byte(&exps_[term * stride_], var + 1);
}

Rational Polynomial::coefficient(std::size_t term) const {
  Rational c(coeffs_.at(term), den_);
  c.canonicalize();
  return c;
}

Rational Polynomial::coefficient_of(const Exponents& e) const {
  if (e.size() != universe_->size()) throw Error(Errc::LengthMismatch, "exponent vector length");
  std::vector<Word> key(stride_);
  pack(e, key.data(), stride_);
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const int c = mono_cmp(&exps_[mid * stride_], key.data(), stride_);
    if (c == 0) return coefficient(mid);
    if (c > 0) lo = mid + 1; else hi = mid;
  }
  return 0;
}

Rational Polynomial::leading_coefficient() const {
  return is_zero() ? Rational(0) : coefficient(0);
}

void Polynomial::check_same(const Polynomial& q) const {
  if (!same_universe(universe_, q.universe_))
    throw Error(Errc::UniverseMismatch, "operands live over different variable sets");
}

void Polynomial::normalize_content() {
  if (coeffs_.empty()) {
    den_ = 1;
    return;
  }
  if (den_ == 1) return;
  Integer g = den_;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& c : coeffs_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

void Polynomial::add_scaled(const Polynomial& q, bool subtract) {
  check_same(q);
  if (q.is_zero()) return;
  if (is_zero()) {
    *this = subtract ? -q : q;
    return;
  }
  // this = P/dp, q = Q/dq; combine over lcm(dp, dq).
  Integer l;
  mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), q.den_.get_mpz_t());
  const Integer sp = l / den_;
  Integer sq = l / q.den_;
  if (subtract) sq = -sq;
  const bool unit_p = sp == 1;
  const std::size_t w = stride_;
  std::vector<Word> exps;
  std::vector<Integer> coeffs;
  exps.reserve(exps_.size() + q.exps_.size());
  coeffs.reserve(coeffs_.size() + q.coeffs_.size());
  std::size_t i = 0, j = 0;
  const std::size_t n = size(), m = q.size();
  Integer tmp;
  while (i < n || j < m) {
    int c;
    if (i == n) c = -1;
    else if (j == m) c = 1;
    else c = mono_cmp(&exps_[i * w], &q.exps_[j * w], w);
    if (c > 0) {
      exps.insert(exps.end(), &exps_[i * w], &exps_[i * w] + w);
      if (unit_p) coeffs.push_back(std::move(coeffs_[i]));
      else coeffs.push_back(coeffs_[i] * sp);
      ++i;
    } else if (c < 0) {
      exps.insert(exps.end(), &q.exps_[j * w], &q.exps_[j * w] + w);
      coeffs.push_back(q.coeffs_[j] * sq);
      ++j;
    } else {
      if (unit_p) tmp = coeffs_[i];
      else tmp = coeffs_[i] * sp;
      mpz_addmul(tmp.get_mpz_t(), q.coeffs_[j].get_mpz_t(), sq.get_mpz_t());
      if (tmp != 0) {
        exps.insert(exps.end(), &exps_[i * w], &exps_[i * w] + w);
        coeffs.push_back(tmp);
      }
      ++i;
      ++j;
    }
  }
  exps_ = std::move(exps);
  coeffs_ = std::move(coeffs);
  den_ = l;
  normalize_content();
}

Polynomial& Polynomial::operator+=(const Polynomial& q) {
  add_scaled(q, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) {
  add_scaled(q, true);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& q) {
  *this = *this * q;
  return *this;
}

namespace {

/// Johnson heap multiplication of numerators; `a` supplies the heap rows.
void multiply_terms(const Polynomial& a, const Polynomial& b, std::size_t w,
                    std::vector<Word>& out_exps, std::vector<Integer>& out_coeffs) {
  const std::size_t n = a.size(), m = b.size();
  if (n == 1) {
    out_exps.resize(m * w);
    out_coeffs.resize(m);
    const Word* am = a.packed(0).data();
    for (std::size_t j = 0; j < m; ++j) {
      mono_add(am, b.packed(j).data(), &out_exps[j * w], w);
      mpz_mul(out_coeffs[j].get_mpz_t(), a.numerator(0).get_mpz_t(), b.numerator(j).get_mpz_t());
    }
    return;
  }
  std::vector<std::size_t> col(n, 0);
  std::vector<Word> cur(n * w);
  std::vector<std::uint32_t> heap;
  heap.reserve(n);
  auto less = [&](std::uint32_t x, std::uint32_t y) {
    return mono_cmp(&cur[x * w], &cur[y * w], w) < 0;
  };
  // Rows enter lazily: row i+1 starts once row i has produced its first
  // product, which keeps the heap small.
  mono_add(a.packed(0).data(), b.packed(0).data(), &cur[0], w);
  heap.push_back(0);
  std::size_t next_row = 1;
  std::vector<Word> top(w);
  Integer acc;
  out_exps.reserve(std::max(n, m) * 2 * w);
  while (!heap.empty()) {
    std::copy_n(&cur[heap.front() * w], w, top.data());
    acc = 0;
    while (!heap.empty() && mono_eq(&cur[heap.front() * w], top.data(), w)) {
      std::pop_heap(heap.begin(), heap.end(), less);
      const std::uint32_t i = heap.back();
      heap.pop_back();
      mpz_addmul(acc.get_mpz_t(), a.numerator(i).get_mpz_t(), b.numerator(col[i]).get_mpz_t());
      if (col[i] == 0 && next_row < n && next_row == i + 1) {
        mono_add(a.packed(next_row).data(), b.packed(0).data(), &cur[next_row * w], w);
        heap.push_back(static_cast<std::uint32_t>(next_row));
        std::push_heap(heap.begin(), heap.end(), less);
        ++next_row;
      }
      if (++col[i] < m) {
        mono_add(a.packed(i).data(), b.packed(col[i]).data(), &cur[i * w], w);
        heap.push_back(i);
        std::push_heap(heap.begin(), heap.end(), less);
      }
    }
    if (acc != 0) {
      out_exps.insert(out_exps.end(), top.begin(), top.end());
      out_coeffs.push_back(acc);
    }
  }
}


// Fast path for large products: when every exponent of the product fits in
// b bits and the coefficients fit in 64 bits, monomials become single
// integers (addition of keys is addition of exponents) and the products are
// accumulated in a hash table with 128-bit sums.

__extension__ typedef __int128 Int128;
__extension__ typedef unsigned __int128 UInt128;

constexpr std::size_t kHeapRows = 64;

struct CompactLayout {
  unsigned bits = 0;
  std::size_t vars = 0;
};

std::optional<CompactLayout> compact_layout(const Polynomial& a, const Polynomial& b) {
  const unsigned deg = static_cast<unsigned>(a.total_degree() + b.total_degree());
  const unsigned bits = std::max(1u, static_cast<unsigned>(std::bit_width(deg)));
  const std::size_t vars = a.universe()->size();
  if ((vars + 1) * bits > 63) return std::nullopt;
  return CompactLayout{bits, vars};
}

unsigned max_bits(const Polynomial& p) {
  unsigned best = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!mpz_fits_slong_p(p.numerator(i).get_mpz_t())) return 1000;
    best = std::max(best, static_cast<unsigned>(mpz_sizeinbase(p.numerator(i).get_mpz_t(), 2)));
  }
  return best;
}

std::uint64_t to_key(const Word* m, const CompactLayout& L) {
  std::uint64_t k = mono_degree(m);
  for (std::size_t v = 0; v < L.vars; ++v) k = (k << L.bits) | get_byte(m, v + 1);
  return k;
}

void from_key(std::uint64_t k, const CompactLayout& L, Word* out, std::size_t w) {
  std::fill(out, out + w, Word{0});
  const std::uint64_t mask = (std::uint64_t{1} << L.bits) - 1;
  for (std::size_t v = L.vars; v-- > 0;) {
    set_byte(out, v + 1, static_cast<unsigned>(k & mask));
    k >>= L.bits;
  }
  set_byte(out, 0, static_cast<unsigned>(k));
}

void set_int128(Integer& z, Int128 x) {
  const bool neg = x < 0;
  UInt128 ux = neg ? -static_cast<UInt128>(x) : static_cast<UInt128>(x);
  const auto hi = static_cast<std::uint64_t>(ux >> 64);
  const auto lo = static_cast<std::uint64_t>(ux);
  if (hi == 0) {
    mpz_set_ui(z.get_mpz_t(), lo);
  } else {
    const std::uint64_t limbs[2] = {lo, hi};
    mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
  }
  if (neg) mpz_neg(z.get_mpz_t(), z.get_mpz_t());
}

/// Johnson heap over the rows of `a` on compact keys; output is already
/// sorted, which beats hashing when `a` is short.
void heap_compact(const std::vector<std::uint64_t>& ka, const std::vector<std::int64_t>& ca,
                  const std::vector<std::uint64_t>& kb, const std::vector<std::int64_t>& cb,
                  std::vector<std::uint64_t>& out_keys, std::vector<Int128>& out_vals) {
  const std::size_t n = ka.size(), m = kb.size();
  std::vector<std::size_t> col(n, 0);
  // Heap entries: (key, row), max-heap on key.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> heap;
  heap.reserve(n);
  heap.emplace_back(ka[0] + kb[0], 0);
  std::size_t next_row = 1;
  while (!heap.empty()) {
    const std::uint64_t top = heap.front().first;
    Int128 acc = 0;
    while (!heap.empty() && heap.front().first == top) {
      std::pop_heap(heap.begin(), heap.end());
      const std::uint32_t i = heap.back().second;
      heap.pop_back();
      acc += static_cast<Int128>(ca[i]) * cb[col[i]];
      if (col[i] == 0 && next_row < n && next_row == i + 1) {
        heap.emplace_back(ka[next_row] + kb[0], static_cast<std::uint32_t>(next_row));
        std::push_heap(heap.begin(), heap.end());
        ++next_row;
      }
      if (++col[i] < m) {
        heap.emplace_back(ka[i] + kb[col[i]], i);
        std::push_heap(heap.begin(), heap.end());
      }
    }
    if (acc != 0) {
      out_keys.push_back(top);
      out_vals.push_back(acc);
    }
  }
}

bool multiply_compact(const Polynomial& a, const Polynomial& b, std::size_t w,
                      std::vector<Word>& out_exps, std::vector<Integer>& out_coeffs) {
  const auto layout = compact_layout(a, b);
  if (!layout) return false;
  const unsigned ba = max_bits(a), bb = max_bits(b);
  const std::size_t n = a.size(), m = b.size();
  if (ba > 63 || bb > 63 ||
      ba + bb + static_cast<unsigned>(std::bit_width(std::min(n, m))) > 125)
    return false;

  std::vector<std::uint64_t> ka(n), kb(m);
  std::vector<std::int64_t> ca(n), cb(m);
  for (std::size_t i = 0; i < n; ++i) {
    ka[i] = to_key(a.packed(i).data(), *layout);
    ca[i] = a.numerator(i).get_si();
  }
  for (std::size_t j = 0; j < m; ++j) {
    kb[j] = to_key(b.packed(j).data(), *layout);
    cb[j] = b.numerator(j).get_si();
  }

  if (std::min(n, m) <= kHeapRows) {
    std::vector<std::uint64_t> keys;
    std::vector<Int128> vals;
    if (n <= m) heap_compact(ka, ca, kb, cb, keys, vals);
    else heap_compact(kb, cb, ka, ca, keys, vals);
    out_exps.assign(keys.size() * w, Word{0});
    out_coeffs.resize(keys.size());
    for (std::size_t t = 0; t < keys.size(); ++t) {
      from_key(keys[t], *layout, &out_exps[t * w], w);
      set_int128(out_coeffs[t], vals[t]);
    }
    return true;
  }

  constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
  std::size_t cap = 1024;
  while (cap < 2 * std::max(n, m)) cap <<= 1;
  std::vector<std::uint64_t> keys(cap, kEmpty);
  std::vector<Int128> vals(cap);
  std::size_t used = 0;
  unsigned shift = static_cast<unsigned>(64 - std::countr_zero(cap));

  auto slot_of = [&](std::uint64_t key) {
    return static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ULL) >> shift);
  };
  auto grow = [&] {
    std::vector<std::uint64_t> old_keys(cap * 2, kEmpty);
    std::vector<Int128> old_vals(cap * 2);
    old_keys.swap(keys);
    old_vals.swap(vals);
    cap *= 2;
    shift = static_cast<unsigned>(64 - std::countr_zero(cap));
    for (std::size_t s = 0; s < old_keys.size(); ++s) {
      if (old_keys[s] == kEmpty) continue;
      std::size_t h = slot_of(old_keys[s]);
      while (keys[h] != kEmpty) h = (h + 1) & (cap - 1);
      keys[h] = old_keys[s];
      vals[h] = old_vals[s];
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (2 * (used + m) > cap)
      while (2 * (used + m) > cap) grow();
    const std::uint64_t k0 = ka[i];
    const Int128 c0 = ca[i];
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint64_t key = k0 + kb[j];
      std::size_t h = slot_of(key);
      while (keys[h] != key && keys[h] != kEmpty) h = (h + 1) & (cap - 1);
      if (keys[h] == kEmpty) {
        keys[h] = key;
        vals[h] = 0;
        ++used;
      }
      vals[h] += c0 * cb[j];
    }
  }

  std::vector<std::size_t> live;
  live.reserve(used);
  for (std::size_t s = 0; s < cap; ++s)
    if (keys[s] != kEmpty && vals[s] != 0) live.push_back(s);
  std::sort(live.begin(), live.end(), [&](std::size_t x, std::size_t y) { return keys[x] > keys[y]; });
  out_exps.assign(live.size() * w, Word{0});
  out_coeffs.resize(live.size());
  for (std::size_t t = 0; t < live.size(); ++t) {
    from_key(keys[live[t]], *layout, &out_exps[t * w], w);
    set_int128(out_coeffs[t], vals[live[t]]);
  }
  return true;
}

}  // namespace

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  p.check_same(q);
  Polynomial r(p.universe_);
  if (p.is_zero() || q.is_zero()) return r;
  if (p.total_degree() + q.total_degree() > 255)
    throw Error(Errc::DegreeOverflow, "product degree above 255");
  const bool large = p.size() * q.size() >= 256;
  if (!(large && multiply_compact(p, q, r.stride_, r.exps_, r.coeffs_))) {
    if (p.size() <= q.size()) multiply_terms(p, q, r.stride_, r.exps_, r.coeffs_);
    else multiply_terms(q, p, r.stride_, r.exps_, r.coeffs_);
  }
  r.den_ = p.den_ * q.den_;
  r.normalize_content();
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(universe_, 1);
  if (k == 0) return result;
  if (is_zero()) return *this;
  if (static_cast<unsigned long>(total_degree()) * k > 255)
    throw Error(Errc::DegreeOverflow, "power degree above 255");
  // Repeated multiplication keeps one small operand, which suits sparse input.
  result = *this;
  for (unsigned i = 1; i < k; ++i) result = result * *this;
  return result;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0 || is_zero()) return Polynomial(universe_);
  Polynomial r = *this;
  if (c.get_num() != 1)
    for (auto& x : r.coeffs_) x *= c.get_num();
  r.den_ *= c.get_den();
  if (r.den_ < 0) {
    r.den_ = -r.den_;
    for (auto& x : r.coeffs_) x = -x;
  }
  r.normalize_content();
  return r;
}

// ---------------------------------------------------------------------------
// Exact division (heap division over the integers with a primitive divisor).

std::optional<Polynomial> Polynomial::try_exact_div(const Polynomial& q) const {
  check_same(q);
  if (q.is_zero()) throw Error(Errc::DivisionByZero, "division by the zero polynomial");
  if (is_zero()) return Polynomial(universe_);
  const std::size_t w = stride_;
  // q = (cq / dq) * G with G primitive; *this = P / dp.
  Integer cq = 0;
  for (const auto& c : q.coeffs_) mpz_gcd(cq.get_mpz_t(), cq.get_mpz_t(), c.get_mpz_t());
  std::vector<Integer> g(q.coeffs_.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    mpz_divexact(g[i].get_mpz_t(), q.coeffs_[i].get_mpz_t(), cq.get_mpz_t());
  const std::size_t m = g.size();
  const Word* glead = q.exps_.data();

  Polynomial quot(universe_);
  std::vector<std::size_t> col;    // per quotient term: next divisor index
  std::vector<Word> cur;           // per quotient term: current product monomial
  std::vector<std::uint32_t> heap;
  auto less = [&](std::uint32_t x, std::uint32_t y) {
    return mono_cmp(&cur[x * w], &cur[y * w], w) < 0;
  };
  std::vector<Word> top(w), qm(w);
  Integer c, r;
  std::size_t k = 0;
  const std::size_t n = size();
  while (k < n || !heap.empty()) {
    const Word* fm = k < n ? &exps_[k * w] : nullptr;
    if (heap.empty() || (fm && mono_cmp(fm, &cur[heap.front() * w], w) >= 0))
      std::copy_n(fm, w, top.data());
    else
      std::copy_n(&cur[heap.front() * w], w, top.data());
    c = 0;
    if (fm && mono_eq(fm, top.data(), w)) {
      c = coeffs_[k];
      ++k;
    }
    while (!heap.empty() && mono_eq(&cur[heap.front() * w], top.data(), w)) {
      std::pop_heap(heap.begin(), heap.end(), less);
      const std::uint32_t i = heap.back();
      heap.pop_back();
      mpz_submul(c.get_mpz_t(), quot.coeffs_[i].get_mpz_t(), g[col[i]].get_mpz_t());
      if (++col[i] < m) {
        mono_add(&quot.exps_[i * w], &q.exps_[col[i] * w], &cur[i * w], w);
        heap.push_back(i);
        std::push_heap(heap.begin(), heap.end(), less);
      }
    }
    if (c == 0) continue;
    if (!mono_divides(glead, top.data(), w)) return std::nullopt;
    mpz_tdiv_qr(c.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t(), g[0].get_mpz_t());
    if (r != 0) return std::nullopt;
    mono_sub(top.data(), glead, qm.data(), w);
    const auto idx = static_cast<std::uint32_t>(quot.coeffs_.size());
    quot.exps_.insert(quot.exps_.end(), qm.begin(), qm.end());
    quot.coeffs_.push_back(c);
    col.push_back(1);
    cur.resize(cur.size() + w);
    if (m > 1) {
      mono_add(qm.data(), &q.exps_[w], &cur[idx * w], w);
      heap.push_back(idx);
      std::push_heap(heap.begin(), heap.end(), less);
    }
  }
  // this / q = (Q / dp) * dq / cq
  Rational scale(q.den_, den_ * cq);
  scale.canonicalize();
  return quot.scaled(scale);
}

Polynomial Polynomial::exact_div(const Polynomial& q) const {
  auto r = try_exact_div(q);
  if (!r) throw Error(Errc::NotDivisible, "nonzero remainder");
  return std::move(*r);
}

// ---------------------------------------------------------------------------
// Evaluation and substitution

Rational Polynomial::eval(std::span<const Rational> point) const {
  if (point.size() != universe_->size())
    throw Error(Errc::LengthMismatch, "evaluation point has wrong length");
  const std::size_t nv = point.size();
  std::vector<std::vector<Rational>> powers(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const unsigned dv = is_zero() ? 0 : degree_in(v);
    powers[v].resize(dv + 1);
    powers[v][0] = 1;
    for (unsigned e = 1; e <= dv; ++e) powers[v][e] = powers[v][e - 1] * point[v];
  }
  Rational sum = 0, term;
  for (std::size_t i = 0; i < size(); ++i) {
    term = coeffs_[i];
    for (std::size_t v = 0; v < nv; ++v) {
      const unsigned e = exponent(i, v);
      if (e) term *= powers[v][e];
    }
    sum += term;
  }
  return sum / Rational(den_);
}

Polynomial Polynomial::compose(std::span<const Polynomial> images) const {
  if (images.size() != universe_->size())
    throw Error(Errc::LengthMismatch, "one image per variable is required");
  UniversePtr target = images.empty() ? empty_universe() : images[0].universe();
  for (const auto& im : images)
    if (!same_universe(im.universe(), target))
      throw Error(Errc::UniverseMismatch, "images must share a universe");
  const std::size_t nv = images.size();
  std::vector<std::vector<Polynomial>> powers(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const unsigned dv = is_zero() ? 0 : degree_in(v);
    powers[v].reserve(dv + 1);
    powers[v].push_back(constant(target, 1));
    for (unsigned e = 1; e <= dv; ++e) powers[v].push_back(powers[v].back() * images[v]);
  }
  PolyBuilder b(target);
  for (std::size_t i = 0; i < size(); ++i) {
    Polynomial term = constant(target, coefficient(i));
    for (std::size_t v = 0; v < nv; ++v) {
      const unsigned e = exponent(i, v);
      if (e) term = term * powers[v][e];
    }
    b.add_polynomial(term);
  }
  return b.finish();
}

Polynomial Polynomial::restrict_to_line(std::span<const Rational> base,
                                        std::span<const Rational> direction) const {
  if (base.size() != universe_->size() || direction.size() != universe_->size())
    throw Error(Errc::LengthMismatch, "line vectors have wrong length");
  const UniversePtr line = line_universe();
  const Polynomial t = variable(line, 0);
  std::vector<Polynomial> images;
  images.reserve(base.size());
  for (std::size_t v = 0; v < base.size(); ++v)
    images.push_back(constant(line, base[v]) + t.scaled(direction[v]));
  return compose(images);
}

Polynomial Polynomial::in_universe(UniversePtr target) const {
  if (same_universe(universe_, target)) {
    Polynomial r = *this;
    r.universe_ = std::move(target);
    return r;
  }
  std::vector<std::optional<std::size_t>> map(universe_->size());
  for (std::size_t v = 0; v < universe_->size(); ++v) map[v] = target->find(universe_->name(v));
  PolyBuilder b(target);
  const std::size_t tw = target->words();
  std::vector<Word> buf(tw);
  for (std::size_t i = 0; i < size(); ++i) {
    Exponents e(target->size(), 0);
    for (std::size_t v = 0; v < universe_->size(); ++v) {
      const unsigned ev = exponent(i, v);
      if (!ev) continue;
      if (!map[v])
        throw Error(Errc::UniverseMismatch, "variable " + universe_->name(v) + " absent from target");
      e[*map[v]] = ev;
    }
    pack(e, buf.data(), tw);
    b.add(buf.data(), coefficient(i));
  }
  return b.finish();
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= universe_->size()) throw Error(Errc::InvalidArgument, "variable index out of range");
  Polynomial r(universe_);
  const std::size_t w = stride_;
  std::vector<Word> buf(w);
  for (std::size_t i = 0; i < size(); ++i) {
    const unsigned e = exponent(i, var);
    if (!e) continue;
    std::copy_n(&exps_[i * w], w, buf.data());
    set_byte(buf.data(), var + 1, e - 1);
    set_byte(buf.data(), 0, mono_degree(buf.data()) - 1);
    r.exps_.insert(r.exps_.end(), buf.begin(), buf.end());
    r.coeffs_.push_back(coeffs_[i] * e);
  }
  // Lowering one exponent by one preserves the relative order of the
  // surviving terms, so no re-sort is needed.
  r.den_ = den_;
  r.normalize_content();
  return r;
}

Polynomial Polynomial::canonical() const {
  Polynomial r(universe_);
  if (is_zero()) return r;
  Integer g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (coeffs_[0] < 0) g = -g;
  r.exps_ = exps_;
  r.coeffs_.resize(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    mpz_divexact(r.coeffs_[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
  return r;
}

Rational Polynomial::canonical_scalar() const {
  if (is_zero()) return 0;
  Integer g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (coeffs_[0] < 0) g = -g;
  Rational s(g, den_);
  s.canonicalize();
  return s;
}

bool Polynomial::operator==(const Polynomial& q) const {
  return same_universe(universe_, q.universe_) && den_ == q.den_ && exps_ == q.exps_ &&
         coeffs_ == q.coeffs_;
}

// ---------------------------------------------------------------------------
// Text form

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < size(); ++i) {
    Rational c = coefficient(i);
    const bool negative = c < 0;
    if (negative) c = -c;
    if (negative) out += '-';
    else if (i > 0) out += '+';
    std::string mono;
    for (std::size_t v = 0; v < universe_->size(); ++v) {
      const unsigned e = exponent(i, v);
      if (!e) continue;
      if (!mono.empty()) mono += '*';
      mono += universe_->name(v);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) out += nkv::to_string(c);
    else if (c == 1) out += mono;
    else out += nkv::to_string(c) + "*" + mono;
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view s, UniversePtr u) : s_(s), u_(std::move(u)) {}

  Polynomial run() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::Parse, msg + " at offset " + std::to_string(pos_) + " in '" +
                                 std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Polynomial expr() {
    Polynomial acc(u_);
    bool first = true;
    for (;;) {
      bool negative = false;
      if (accept('-')) negative = true;
      else if (accept('+')) negative = false;
      else if (!first) break;
      Polynomial t = term();
      acc += negative ? -t : t;
      first = false;
    }
    return acc;
  }
  Polynomial term() {
    Polynomial acc = power();
    for (;;) {
      if (accept('*')) {
        acc = acc * power();
      } else if (accept('/')) {
        Polynomial d = power();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc = acc.scaled(1 / d.coefficient(0));
      } else {
        break;
      }
    }
    return acc;
  }
  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (e > 255) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }
  Polynomial primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Polynomial::constant(u_, Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      auto idx = u_->find(name);
      if (!idx) fail("unknown variable '" + std::string(name) + "'");
      return Polynomial::variable(u_, *idx);
    }
    fail("unexpected character");
  }

  std::string_view s_;
  UniversePtr u_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, UniversePtr universe) {
  return Parser(text, std::move(universe)).run();
}

// ---------------------------------------------------------------------------
// Univariate helpers

unsigned root_multiplicity_at_zero(const Polynomial& u) {
  if (u.is_zero()) throw Error(Errc::ZeroPolynomial, "multiplicity of the zero polynomial");
  return static_cast<unsigned>(u.min_degree());
}

std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var) {
  if (var >= p.universe()->size()) throw Error(Errc::InvalidArgument, "variable index out of range");
  const unsigned deg = p.is_zero() ? 0 : p.degree_in(var);
  std::vector<PolyBuilder> builders(deg + 1, PolyBuilder(p.universe()));
  const std::size_t w = p.universe()->words();
  std::vector<Word> buf(w);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const unsigned e = p.exponent(i, var);
    std::copy_n(p.packed(i).data(), w, buf.data());
    set_byte(buf.data(), var + 1, 0);
    set_byte(buf.data(), 0, mono_degree(buf.data()) - e);
    builders[e].add(buf.data(), p.coefficient(i));
  }
  std::vector<Polynomial> out;
  out.reserve(builders.size());
  for (auto& b : builders) out.push_back(b.finish());
  return out;
}

}  // namespace nkv
