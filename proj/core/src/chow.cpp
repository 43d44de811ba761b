#include "nkv/chow.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "nkv/error.hpp"

namespace nkv {

UniversePtr chow_universe(unsigned s) {
  static std::mutex mutex;
  static std::map<unsigned, UniversePtr> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(s);
  if (it != cache.end()) return it->second;
  std::vector<std::string> names;
  for (unsigned i = 0; i <= s; ++i) names.push_back("h" + std::to_string(i));
  return cache[s] = make_universe(std::move(names));
}

// ---------------------------------------------------------------------------

TruncatedClass::TruncatedClass(unsigned n, unsigned s)
    : n_(n), s_(s), p_(chow_universe(s)) {
  if (n < 1 || n * n > 255) throw Error(Errc::InvalidArgument, "n out of range for the truncated ring");
}

TruncatedClass::TruncatedClass(unsigned n, unsigned s, const Polynomial& p) : TruncatedClass(n, s) {
  const Polynomial q = p.in_universe(chow_universe(s));
  if (q.denominator() != 1) throw Error(Errc::NonIntegral, "classes have integer coefficients");
  std::vector<std::pair<Exponents, Rational>> terms;
  for (std::size_t t = 0; t < q.size(); ++t) {
    const Exponents e = q.exponents(t);
    bool keep = e[0] < n * n;
    for (unsigned i = 1; i <= s && keep; ++i) keep = e[i] < n;
    if (keep) terms.emplace_back(e, q.coefficient(t));
  }
  p_ = Polynomial::from_terms(chow_universe(s), std::move(terms));
}

TruncatedClass TruncatedClass::one(unsigned n, unsigned s) {
  return TruncatedClass(n, s, Polynomial::constant(chow_universe(s), 1));
}

TruncatedClass TruncatedClass::generator(unsigned n, unsigned s, unsigned i) {
  if (i > s) throw Error(Errc::InvalidArgument, "generator index out of range");
  return TruncatedClass(n, s, Polynomial::variable(chow_universe(s), i));
}

Integer TruncatedClass::coefficient(const Exponents& e) const {
  return p_.coefficient_of(e).get_num();
}

void TruncatedClass::check(const TruncatedClass& o) const {
  if (n_ != o.n_ || s_ != o.s_) throw Error(Errc::UniverseMismatch, "classes from different rings");
}

TruncatedClass TruncatedClass::operator+(const TruncatedClass& o) const {
  check(o);
  return TruncatedClass(n_, s_, p_ + o.p_);
}

TruncatedClass TruncatedClass::operator-(const TruncatedClass& o) const {
  check(o);
  return TruncatedClass(n_, s_, p_ - o.p_);
}

TruncatedClass TruncatedClass::operator*(const TruncatedClass& o) const {
  check(o);
  return TruncatedClass(n_, s_, p_ * o.p_);
}

TruncatedClass TruncatedClass::scaled(const Integer& c) const {
  return TruncatedClass(n_, s_, p_.scaled(Rational(c)));
}

bool TruncatedClass::operator==(const TruncatedClass& o) const {
  return n_ == o.n_ && s_ == o.s_ && p_ == o.p_;
}

TruncatedClass TruncatedClass::substitute(const std::vector<TruncatedClass>& images) const {
  if (images.size() != s_ + 1) throw Error(Errc::LengthMismatch, "one image per generator");
  const unsigned tn = images[0].n(), ts = images[0].s();
  TruncatedClass acc(tn, ts);
  for (std::size_t t = 0; t < p_.size(); ++t) {
    TruncatedClass term(tn, ts, Polynomial::constant(chow_universe(ts), p_.coefficient(t)));
    for (unsigned i = 0; i <= s_; ++i)
      for (unsigned k = 0; k < p_.exponent(t, i); ++k) term = term * images[i];
    acc = acc + term;
  }
  return acc;
}

std::string TruncatedClass::to_string() const { return p_.to_string(); }

// ---------------------------------------------------------------------------

SetPartition::SetPartition(std::vector<std::vector<unsigned>> blocks) : blocks_(std::move(blocks)) {
  std::vector<unsigned> all;
  for (auto& b : blocks_) {
    if (b.empty()) throw Error(Errc::InvalidArgument, "empty block");
    std::sort(b.begin(), b.end());
    all.insert(all.end(), b.begin(), b.end());
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] != i + 1) throw Error(Errc::InvalidArgument, "blocks must partition {1..s}");
  ground_ = static_cast<unsigned>(all.size());
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

std::string SetPartition::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) s += ',';
    s += '{';
    for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
      if (j) s += ',';
      s += std::to_string(blocks_[i][j]);
    }
    s += '}';
  }
  return s + "}";
}

std::vector<SetPartition> SetPartition::all(unsigned s) {
  std::vector<SetPartition> out;
  std::vector<std::vector<unsigned>> cur;
  std::function<void(unsigned)> rec = [&](unsigned x) {
    if (x > s) {
      out.emplace_back(cur);
      return;
    }
    for (std::size_t b = 0; b < cur.size(); ++b) {
      cur[b].push_back(x);
      rec(x + 1);
      cur[b].pop_back();
    }
    cur.push_back({x});
    rec(x + 1);
    cur.pop_back();
  };
  if (s >= 1) rec(1);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

TruncatedClass h(unsigned n, unsigned s, unsigned i) { return TruncatedClass::generator(n, s, i); }

TruncatedClass power(const TruncatedClass& x, unsigned k) {
  TruncatedClass r = TruncatedClass::one(x.n(), x.s());
  for (unsigned i = 0; i < k; ++i) r = r * x;
  return r;
}

/// sum_j C(n,j) h0^(n-1-j) hi^j
TruncatedClass eigen_factor(unsigned n, unsigned s, unsigned i) {
  TruncatedClass r(n, s);
  for (unsigned j = 0; j < n; ++j)
    r = r + (power(h(n, s, 0), n - 1 - j) * power(h(n, s, i), j)).scaled(binomial(n, j));
  return r;
}

/// sum_r hq^(n-1-r) hp^r
TruncatedClass diagonal_factor(unsigned n, unsigned s, unsigned q, unsigned p) {
  TruncatedClass r(n, s);
  for (unsigned k = 0; k < n; ++k) r = r + power(h(n, s, q), n - 1 - k) * power(h(n, s, p), k);
  return r;
}

}  // namespace

TruncatedClass class_W(unsigned n, unsigned s) {
  TruncatedClass r = TruncatedClass::one(n, s);
  for (unsigned i = 1; i <= s; ++i) r = r * eigen_factor(n, s, i);
  return r;
}

TruncatedClass class_Wtilde(unsigned n, unsigned s) {
  if (s == 1) return class_W(n, 1);
  if (s == 2) {
    TruncatedClass second(n, 2);
    for (unsigned r = 0; r < n; ++r) {
      const TruncatedClass coef = power(h(n, 2, 0), n - 1 - r).scaled(binomial(n, r)) - power(h(n, 2, 1), n - 1 - r);
      second = second + coef * power(h(n, 2, 2), r);
    }
    return eigen_factor(n, 2, 1) * second;
  }
  if (s == 3 && n == 3) return fixture_Wtilde3();
  throw Error(Errc::UnsupportedCase, "no closed form for this (n, s)");
}

TruncatedClass class_WsP(unsigned n, const SetPartition& P) {
  const unsigned s = P.ground();
  const unsigned k = static_cast<unsigned>(P.size());
  const TruncatedClass base = class_Wtilde(n, k);
  std::vector<TruncatedClass> images{h(n, s, 0)};
  for (unsigned b = 0; b < k; ++b) images.push_back(h(n, s, P.minimum(b)));
  TruncatedClass r = base.substitute(images);
  for (unsigned b = 0; b < k; ++b) {
    const auto& block = P.blocks()[b];
    for (std::size_t j = 1; j < block.size(); ++j) r = r * diagonal_factor(n, s, block.front(), block[j]);
  }
  return r;
}

namespace {

/// Elementary symmetric polynomials e_0..e_k of the listed generators.
std::vector<TruncatedClass> elementary(unsigned n, unsigned s, const std::vector<unsigned>& vars) {
  std::vector<TruncatedClass> e{TruncatedClass::one(n, s)};
  for (std::size_t l = 1; l <= vars.size(); ++l) e.emplace_back(n, s);
  for (unsigned v : vars)
    for (std::size_t l = e.size() - 1; l >= 1; --l) e[l] = e[l] + e[l - 1] * h(n, s, v);
  return e;
}

TruncatedClass int_class(unsigned n, unsigned s, long c) {
  return TruncatedClass::one(n, s).scaled(Integer(c));
}

}  // namespace

TruncatedClass fixture_Wtilde3() {
  const auto e = elementary(3, 3, {1, 2, 3});
  const TruncatedClass t0 = h(3, 3, 0);
  auto c = [](long v) { return int_class(3, 3, v); };
  return c(6) * e[3] * e[3] + c(6) * e[2] * e[3] * t0 +
         c(2) * (e[2] * e[2] + c(2) * e[1] * e[3]) * power(t0, 2) +
         c(3) * (e[1] * e[2] + e[3]) * power(t0, 3) + (e[1] * e[1] + c(3) * e[2]) * power(t0, 4) +
         c(2) * e[1] * power(t0, 5) + power(t0, 6);
}

TruncatedClass fixture_W3_pair(unsigned i, unsigned j, unsigned k) {
  const auto e = elementary(3, 3, {1, 2, 3});
  const auto b = elementary(3, 3, {i, j});
  const TruncatedClass t0 = h(3, 3, 0), tk = h(3, 3, k);
  auto c = [](long v) { return int_class(3, 3, v); };
  const TruncatedClass b11 = b[1] * b[1] - b[2];
  return c(6) * e[3] * e[3] + c(6) * e[2] * e[3] * t0 +
         c(2) * (b[2] * b[2] + c(4) * b[1] * b[2] * tk + b11 * tk * tk) * power(t0, 2) +
         c(3) * (b[1] * b[2] + b11 * tk) * power(t0, 3) + b11 * power(t0, 4);
}

TruncatedClass fixture_W3_full() {
  const auto e = elementary(3, 3, {1, 2, 3});
  const TruncatedClass t0 = h(3, 3, 0);
  auto c = [](long v) { return int_class(3, 3, v); };
  return c(3) * e[3] * e[3] + c(3) * e[2] * e[3] * t0 + (e[2] * e[2] - e[1] * e[3]) * power(t0, 2);
}

TruncatedClass fixture_E3() {
  const auto e = elementary(3, 3, {1, 2, 3});
  const TruncatedClass t0 = h(3, 3, 0);
  auto c = [](long v) { return int_class(3, 3, v); };
  return c(6) * e[3] * power(t0, 3) + c(3) * e[2] * power(t0, 4) + e[1] * power(t0, 5);
}

Integer linear_coefficient(const TruncatedClass& c) {
  const unsigned n = c.n(), s = c.s();
  if (n < 2) throw Error(Errc::InvalidArgument, "need n >= 2");
  Integer value = 0;
  for (unsigned i = 1; i <= s; ++i) {
    Exponents e(s + 1, n - 1);
    e[0] = 1;
    e[i] = n - 2;
    const Integer v = c.coefficient(e);
    if (i == 1) value = v;
    else if (v != value) throw Error(Errc::InvalidArgument, "linear coefficients differ across i");
  }
  return value;
}

Integer coeff_ctilde(unsigned n, unsigned s) {
  if (s < 1) throw Error(Errc::InvalidArgument, "need s >= 1");
  return binomial(n, 2) * falling_factorial(n - 1, s - 1);
}

Integer deg_mu_from_chow(unsigned n, const Partition& mu) {
  if (mu.length() == 0 || mu.length() > n) throw Error(Errc::InvalidArgument, "partition does not fit");
  Integer denom = 1;
  for (unsigned i = 1; i <= mu.degree(); ++i) denom *= factorial(mu.multiplicity(i));
  const Integer num = coeff_ctilde(n, static_cast<unsigned>(mu.length())) * mu.degree();
  if (num % denom != 0) throw Error(Errc::NonIntegral, "Chow degree is not integral");
  return num / denom;
}

}  // namespace nkv
