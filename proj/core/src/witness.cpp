#include "nkv/witness.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "nkv/error.hpp"

namespace nkv {

long Rng::uniform(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(engine_);
}

std::vector<Rational> Rng::vector(std::size_t n) {
  std::vector<Rational> v(n);
  for (auto& x : v) x = entry();
  return v;
}

QMatrix Rng::matrix(std::size_t rows, std::size_t cols) {
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry();
  return m;
}

QMatrix matrix_with_eigenvectors(const EigenSpec& spec) {
  if (!spec.v.is_square() || spec.v.rows() != spec.d.size())
    throw Error(Errc::DimensionMismatch, "V must be square with one eigenvalue per column");
  const QMatrix inv = spec.v.inverse();
  return spec.v * QMatrix::diagonal(spec.d) * inv;
}

namespace {

bool nonzero(const std::vector<Rational>& v) {
  return std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
}

std::optional<std::size_t> linear_variable(const Polynomial& f) {
  for (std::size_t k = 0; k < f.universe()->size(); ++k)
    if (f.degree_in(k) == 1) return k;
  return std::nullopt;
}

/// Draws every variable but `k` at random and solves the linear equation in
/// x_k. Returns nullopt when the leading coefficient vanished.
std::optional<std::vector<Rational>> solve_linear(const Polynomial& f, std::size_t k, Rng& rng) {
  const auto c = coefficients_in(f, k);
  std::vector<Rational> pt = rng.vector(f.universe()->size());
  pt[k] = 0;
  const Rational c1 = c[1].eval(pt);
  if (c1 == 0) return std::nullopt;
  pt[k] = -c[0].eval(pt) / c1;
  return pt;
}

}  // namespace

std::vector<Rational> sample_on_hypersurface(const Polynomial& f, SampleStrategy strategy, Rng& rng,
                                             const std::vector<Polynomial>& images,
                                             const std::vector<Rational>& point) {
  const std::size_t n = f.universe()->size();
  switch (strategy) {
    case SampleStrategy::SolvableVariable: {
      const auto k = linear_variable(f);
      if (!k) throw Error(Errc::NoStrategy, "no variable occurs linearly in " + f.to_string());
      for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        auto pt = solve_linear(f, *k, rng);
        if (pt && nonzero(*pt)) return *pt;
      }
      throw Error(Errc::RetryExhausted, "linear solve kept degenerating");
    }
    case SampleStrategy::Parametrization: {
      if (images.size() != n) throw Error(Errc::NoStrategy, "parametrization needs one image per variable");
      const Polynomial composed = f.compose(images);
      if (!composed.is_zero()) throw Error(Errc::InvalidArgument, "parametrization does not lie on f = 0");
      for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        const Rational t = rng.uniform(-99, 99);
        std::vector<Rational> pt;
        for (const auto& im : images) pt.push_back(im.eval(std::vector<Rational>{t}));
        if (nonzero(pt)) return pt;
      }
      throw Error(Errc::RetryExhausted, "parametrization kept hitting zero");
    }
    case SampleStrategy::UserPoint: {
      if (point.size() != n) throw Error(Errc::LengthMismatch, "point has wrong length");
      if (!nonzero(point)) throw Error(Errc::InvalidArgument, "the zero vector is not a projective point");
      if (f.eval(point) != 0) throw Error(Errc::InvalidArgument, "point is not on f = 0");
      return point;
    }
  }
  throw Error(Errc::NoStrategy, "unknown strategy");
}

std::vector<Rational> generic_eigenvalues(unsigned n, unsigned d, Rng& rng) {
  const MonomialBasis basis(n, std::max(d, 1u));
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::set<long> seen;
    std::vector<Rational> lam;
    while (lam.size() < n) {
      const long x = rng.uniform(-kEigenBound, kEigenBound);
      if (x == 0 || !seen.insert(x).second) continue;
      lam.emplace_back(x);
    }
    std::set<Rational> values;
    for (const auto& e : basis.members()) {
      Rational m = 1;
      for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < e[i]; ++k) m *= lam[i];
      values.insert(m);
    }
    if (values.size() == basis.size()) return lam;
  }
  throw Error(Errc::RetryExhausted, "could not draw a simple symmetric-power spectrum");
}

namespace {

QMatrix random_invertible(unsigned n, Rng& rng) {
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    QMatrix v = rng.matrix(n, n);
    if (v.det() != 0) return v;
  }
  throw Error(Errc::RetryExhausted, "random matrices kept being singular");
}

}  // namespace

MuWitness mu_witness(const Polynomial& f, const Partition& mu, std::uint64_t seed) {
  const unsigned n = static_cast<unsigned>(f.universe()->size());
  const std::size_t s = mu.length();
  if (s == 0 || s > n) throw Error(Errc::UnsupportedPartition, "partition " + mu.to_string() + " does not fit n");
  if (!f.is_homogeneous() || f.total_degree() != static_cast<int>(mu.degree()))
    throw Error(Errc::UnsupportedPartition, "degree of f differs from |mu|");
  const Polynomial fm = polarize(f, mu);
  // Prefer a variable of the first block.
  std::optional<std::size_t> y;
  for (std::size_t v = 0; v < fm.universe()->size() && !y; ++v)
    if (fm.degree_in(v) == 1) y = v;
  if (!y) throw Error(Errc::UnsupportedPartition, "f_mu has no variable of degree one for " + mu.to_string());

  Rng rng(seed);
  const unsigned d = mu.degree();
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    auto pt = solve_linear(fm, *y, rng);
    if (!pt) continue;
    QMatrix v(n, n);
    std::vector<std::vector<Rational>> points(s);
    for (std::size_t i = 0; i < s; ++i)
      for (unsigned j = 0; j < n; ++j) {
        points[i].push_back((*pt)[i * n + j]);
        v(j, i) = (*pt)[i * n + j];
      }
    for (std::size_t i = s; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) v(j, i) = rng.entry();
    if (v.det() == 0) continue;
    MuWitness w;
    w.mu = mu;
    w.seed = seed;
    w.spec = EigenSpec{v, generic_eigenvalues(n, d, rng)};
    w.a = matrix_with_eigenvectors(w.spec);
    w.points = std::move(points);
    return w;
  }
  throw Error(Errc::RetryExhausted, "eigenvector draws kept being dependent for " + mu.to_string());
}

MuWitness generic_matrix(unsigned n, unsigned d, std::uint64_t seed) {
  Rng rng(seed);
  MuWitness w;
  w.seed = seed;
  w.spec = EigenSpec{random_invertible(n, rng), generic_eigenvalues(n, d, rng)};
  w.a = matrix_with_eigenvectors(w.spec);
  return w;
}

const char* locus_name(LocusKind kind) noexcept {
  switch (kind) {
    case LocusKind::RankDeficient: return "rank_deficient";
    case LocusKind::RepeatedEigenvalueJordan: return "repeated_eigenvalue_jordan";
    case LocusKind::OppositeEigenvalues: return "opposite_eigenvalues";
    case LocusKind::GeometricEigenvalues: return "geometric_eigenvalues";
  }
  return "unknown";
}

QMatrix special_locus_matrix(LocusKind kind, unsigned n, Rng& rng) {
  if (n < 2) throw Error(Errc::InvalidArgument, "need n >= 2");
  if (kind == LocusKind::GeometricEigenvalues && n < 3)
    throw Error(Errc::InvalidArgument, "geometric eigenvalue locus needs n >= 3");
  const QMatrix v = random_invertible(n, rng);
  std::set<Rational> used;
  std::vector<Rational> lam;
  auto take = [&](const Rational& x) {
    used.insert(x);
    used.insert(-x);
    lam.push_back(x);
  };
  auto fresh = [&]() {
    for (;;) {
      const Rational x = rng.uniform(-kEigenBound, kEigenBound);
      if (x != 0 && !used.count(x)) return x;
    }
  };
  QMatrix core(n, n);
  switch (kind) {
    case LocusKind::RankDeficient:
      take(0);
      break;
    case LocusKind::RepeatedEigenvalueJordan: {
      const Rational l = fresh();
      take(l);
      lam.push_back(l);
      core(0, 1) = 1;
      break;
    }
    case LocusKind::OppositeEigenvalues: {
      const Rational l = fresh();
      take(l);
      lam.push_back(-l);
      break;
    }
    case LocusKind::GeometricEigenvalues: {
      long p = 0, q = 0;
      while (p == 0 || q == 0 || p == q || p == -q) {
        p = rng.uniform(-9, 9);
        q = rng.uniform(-9, 9);
      }
      take(Rational(p * q));
      take(Rational(p * p));
      take(Rational(q * q));
      break;
    }
  }
  while (lam.size() < n) take(fresh());
  for (unsigned i = 0; i < n; ++i) core(i, i) = lam[i];
  return v * core * v.inverse();
}

std::string certificate_json(const MuWitness& w, const Polynomial& f) {
  using nlohmann::json;
  auto vec = [](const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
  };
  json j;
  j["seed"] = w.seed;
  j["mu"] = w.mu.to_string();
  json vm = json::array();
  for (std::size_t i = 0; i < w.spec.v.rows(); ++i) {
    std::vector<Rational> row;
    for (std::size_t c = 0; c < w.spec.v.cols(); ++c) row.push_back(w.spec.v(i, c));
    vm.push_back(vec(row));
  }
  j["V"] = vm;
  j["D"] = vec(w.spec.d);
  json pts = json::array();
  for (const auto& p : w.points) pts.push_back(vec(p));
  j["points"] = pts;

  json checks;
  bool eigen_ok = true;
  for (std::size_t i = 0; i < w.spec.v.cols(); ++i) {
    const auto col = w.spec.v.column(i);
    const auto image = w.a.apply(col);
    for (std::size_t r = 0; r < col.size(); ++r)
      if (image[r] != w.spec.d[i] * col[r]) eigen_ok = false;
  }
  checks["eigen_equations"] = eigen_ok;
  if (!w.points.empty()) {
    std::vector<Rational> flat;
    for (const auto& p : w.points) flat.insert(flat.end(), p.begin(), p.end());
    checks["f_mu_value"] = to_string(polarize(f, w.mu).eval(flat));
    checks["points_rank"] = QMatrix::from_rows(w.points).rank();
  }
  j["checks"] = checks;
  return j.dump();
}

}  // namespace nkv
