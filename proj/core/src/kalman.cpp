#include "nkv/kalman.hpp"

#include <json.hpp>

#include "nkv/enumerative.hpp"
#include "nkv/error.hpp"
#include "nkv/witness.hpp"

namespace nkv {

using json = nlohmann::ordered_json;

KalmanInstance KalmanInstance::from_form(const Polynomial& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "zero form");
  if (!f.is_homogeneous()) throw Error(Errc::NotHomogeneous, "form is not homogeneous");
  if (f.total_degree() < 1) throw Error(Errc::DegenerateDegree, "form of degree zero");
  KalmanInstance inst;
  inst.n = static_cast<unsigned>(f.universe()->size());
  inst.d = static_cast<unsigned>(f.total_degree());
  inst.c = QMatrix::from_rows({coeff_row(f, inst.d)});
  return inst;
}

KalmanInstance KalmanInstance::from_generators(std::span<const Polynomial> generators) {
  CoeffMatrix cm = coeff_matrix(generators);
  KalmanInstance inst;
  inst.n = static_cast<unsigned>(generators[0].universe()->size());
  inst.d = cm.d;
  inst.c = std::move(cm.c);
  if (inst.c.rows() >= inst.c.cols())
    throw Error(Errc::RankDeficient, "generators span every form of degree " + std::to_string(inst.d));
  return inst;
}

namespace {

void check_square(std::size_t rows, std::size_t cols, unsigned n) {
  if (rows != cols || rows != n)
    throw Error(Errc::DimensionMismatch, "expected an " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
}

}  // namespace

PolyMatrix kalman_matrix(const KalmanInstance& inst, const PolyMatrix& a) {
  check_square(a.rows(), a.cols(), inst.n);
  const PolyMatrix rho = sym_power(a, inst.d);
  const std::size_t blocks = inst.N() - inst.p() + 1;
  PolyMatrix block = PolyMatrix::from_rational(a.universe(), inst.c);
  PolyMatrix k = block;
  for (std::size_t i = 1; i < blocks; ++i) {
    block = block * rho;
    k = k.stacked(block);
  }
  return k;
}

QMatrix kalman_matrix(const KalmanInstance& inst, const QMatrix& a) {
  check_square(a.rows(), a.cols(), inst.n);
  const QMatrix rho = sym_power(a, inst.d);
  const std::size_t blocks = inst.N() - inst.p() + 1;
  QMatrix k(inst.p() * blocks, inst.N());
  QMatrix block = inst.c;
  for (std::size_t i = 0; i < blocks; ++i) {
    if (i) block = block * rho;
    for (std::size_t r = 0; r < inst.p(); ++r)
      for (std::size_t c = 0; c < inst.N(); ++c) k(i * inst.p() + r, c) = block(r, c);
  }
  return k;
}

Polynomial kalman_det(const Polynomial& f) {
  const KalmanInstance inst = KalmanInstance::from_form(f);
  const PolyMatrix k = kalman_matrix(inst, PolyMatrix::symbolic(inst.n));
  // Rows grow in degree from top to bottom. Taking the first row, then the
  // rest bottom-up keeps the intermediate minors small.
  std::vector<std::size_t> order{0};
  for (std::size_t r = k.rows(); r-- > 1;) order.push_back(r);
  return det_by_minors(k, order).canonical();
}

Rational kalman_det_at(const KalmanInstance& inst, const QMatrix& a0) {
  if (inst.p() != 1) throw Error(Errc::NotHypersurface, "determinant needs a single equation");
  return kalman_matrix(inst, a0).det();
}

bool membership_necessary(const KalmanInstance& inst, const QMatrix& a0) {
  return kalman_matrix(inst, a0).rank() < inst.N();
}

namespace {

Rational discriminant_of(const std::vector<Rational>& coeffs) {
  const UniversePtr u = empty_universe();
  std::vector<Polynomial> cs;
  cs.reserve(coeffs.size());
  for (const auto& c : coeffs) cs.push_back(Polynomial::constant(u, c));
  const Polynomial disc = univariate_discriminant(cs);
  return disc.is_zero() ? Rational(0) : disc.coefficient(0);
}

}  // namespace

Rational delta_at(const QMatrix& a0) {
  if (!a0.is_square()) throw Error(Errc::DimensionMismatch, "discriminant of a non-square matrix");
  return discriminant_of(a0.char_poly());
}

Rational delta_d_at(const QMatrix& a0, unsigned d) { return delta_at(sym_power(a0, d)); }

Polynomial target_along_line(LineTarget target, const KalmanInstance* inst, unsigned d,
                             const QMatrix& a0, const QMatrix& a1) {
  if (a0.rows() != a1.rows() || a0.cols() != a1.cols() || !a0.is_square())
    throw Error(Errc::DimensionMismatch, "line endpoints must be square of equal size");
  const UniversePtr u = line_universe();
  const Polynomial t = Polynomial::variable(u, 0);
  PolyMatrix a(u, a0.rows(), a0.cols());
  for (std::size_t i = 0; i < a0.rows(); ++i)
    for (std::size_t j = 0; j < a0.cols(); ++j)
      a(i, j) = Polynomial::constant(u, a0(i, j)) + t.scaled(a1(i, j));

  switch (target) {
    case LineTarget::KalmanDet: {
      if (!inst) throw Error(Errc::InvalidArgument, "Kalman target needs an instance");
      if (inst->p() != 1) throw Error(Errc::NotHypersurface, "determinant needs a single equation");
      return det(kalman_matrix(*inst, a));
    }
    case LineTarget::DeltaD:
      return univariate_discriminant(char_poly(sym_power(a, d)));
    case LineTarget::Delta:
      return univariate_discriminant(char_poly(a));
  }
  throw Error(Errc::InvalidArgument, "unknown line target");
}

unsigned factor_order_along_line(LineTarget target, const KalmanInstance* inst, unsigned d,
                                 const QMatrix& a0, const QMatrix& a1) {
  const Polynomial u = target_along_line(target, inst, d, a0, a1);
  if (u.is_zero()) throw Error(Errc::ZeroPolynomial, "target vanishes along the whole line");
  return root_multiplicity_at_zero(u);
}

// ---------------------------------------------------------------------------
// Audit

const char* status_name(AuditStatus s) noexcept {
  switch (s) {
    case AuditStatus::Pass: return "pass";
    case AuditStatus::Fail: return "fail";
    case AuditStatus::Skipped: return "skipped";
  }
  return "?";
}

bool AuditReport::all_pass() const {
  for (const auto& e : entries)
    if (e.status == AuditStatus::Fail) return false;
  return true;
}

std::string AuditReport::to_json() const {
  json j;
  j["f"] = f;
  j["n"] = n;
  j["d"] = d;
  j["seed"] = seed;
  j["trials"] = trials;
  j["all_pass"] = all_pass();
  json list = json::array();
  for (const auto& e : entries) {
    json je;
    je["assertion"] = e.assertion;
    je["status"] = status_name(e.status);
    je["witness_seed"] = e.witness_seed;
    je["certificate"] = e.certificate.empty() ? json(nullptr) : json::parse(e.certificate);
    list.push_back(std::move(je));
  }
  j["entries"] = std::move(list);
  return j.dump(2);
}

namespace {

std::string matrix_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

AuditEntry degree_entry(const KalmanInstance& inst, Rng& rng) {
  const DegreeReport budget = discriminant_budget(inst.n, inst.d);
  AuditEntry e{"degree_budget", AuditStatus::Fail, rng.seed(), {}};
  const Integer expected = budget.at("deg_det");
  const bool formulas = budget.at("budget_ok") == 1 && budget.at("monomials_ok") == 1 &&
                        budget.at("delta_ok") == 1;
  // The leading t-coefficient along A0 + t A1 is det K(A1), nonzero for a
  // generic A1, so the t-degree equals the total degree.
  json cert;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    const std::uint64_t s = rng.split();
    Rng local(s);
    const QMatrix a0 = local.matrix(inst.n, inst.n);
    const QMatrix a1 = local.matrix(inst.n, inst.n);
    const Polynomial u = target_along_line(LineTarget::KalmanDet, &inst, inst.d, a0, a1);
    if (u.is_zero() || kalman_det_at(inst, a1) == 0) continue;
    cert["line_seed"] = s;
    cert["A0"] = json::parse(matrix_json(a0));
    cert["A1"] = json::parse(matrix_json(a1));
    cert["line_degree"] = u.total_degree();
    cert["expected_degree"] = expected.get_str();
    for (const auto& [name, value] : budget.values) cert["budget"][name] = value.get_str();
    e.witness_seed = s;
    e.status = formulas && Integer(u.total_degree()) == expected ? AuditStatus::Pass : AuditStatus::Fail;
    e.certificate = cert.dump();
    return e;
  }
  cert["error"] = "no generic line found";
  e.certificate = cert.dump();
  return e;
}

AuditEntry mu_entry(const Polynomial& f, const KalmanInstance& inst, const Partition& mu,
                    unsigned trials, Rng& rng) {
  AuditEntry e{"mu_witness_vanishing:" + mu.to_string(), AuditStatus::Pass, 0, {}};
  json cert;
  cert["trials"] = json::array();
  for (unsigned i = 0; i < trials; ++i) {
    const std::uint64_t s = rng.split();
    if (i == 0) e.witness_seed = s;
    MuWitness w;
    try {
      w = mu_witness(f, mu, s);
    } catch (const Error& err) {
      if (err.code() != Errc::UnsupportedPartition && err.code() != Errc::RetryExhausted) throw;
      e.status = AuditStatus::Skipped;
      cert["reason"] = err.what();
      break;
    }
    const Rational value = kalman_det_at(inst, w.a);
    if (value != 0) e.status = AuditStatus::Fail;
    json jt = json::parse(certificate_json(w, f));
    jt["det_K"] = to_string(value);
    cert["trials"].push_back(std::move(jt));
  }
  e.certificate = cert.dump();
  return e;
}

AuditEntry locus_entry(const KalmanInstance& inst, LocusKind kind, unsigned trials, Rng& rng) {
  AuditEntry e{std::string("delta_sat_vanishing:") + locus_name(kind), AuditStatus::Pass, 0, {}};
  json cert;
  cert["trials"] = json::array();
  for (unsigned i = 0; i < trials; ++i) {
    const std::uint64_t s = rng.split();
    if (i == 0) e.witness_seed = s;
    Rng local(s);
    const QMatrix a = special_locus_matrix(kind, inst.n, local);
    const Rational value = kalman_det_at(inst, a);
    const Rational dd = delta_d_at(a, inst.d);
    const Rational dl = delta_at(a);
    // On this locus rho_d(A) has a repeated eigenvalue while A does not.
    if (value != 0 || dd != 0 || dl == 0) e.status = AuditStatus::Fail;
    json jt;
    jt["seed"] = s;
    jt["A"] = json::parse(matrix_json(a));
    jt["det_K"] = to_string(value);
    jt["delta"] = to_string(dl);
    jt["delta_d"] = to_string(dd);
    cert["trials"].push_back(std::move(jt));
  }
  e.certificate = cert.dump();
  return e;
}

AuditEntry generic_entry(const KalmanInstance& inst, unsigned trials, Rng& rng) {
  AuditEntry e{"generic_nonvanishing", AuditStatus::Pass, 0, {}};
  json cert;
  cert["trials"] = json::array();
  unsigned nonzero = 0;
  for (unsigned i = 0; i < trials; ++i) {
    const std::uint64_t s = rng.split();
    if (i == 0) e.witness_seed = s;
    const MuWitness w = generic_matrix(inst.n, inst.d, s);
    const Rational value = kalman_det_at(inst, w.a);
    if (value != 0) ++nonzero;
    json jt;
    jt["seed"] = s;
    jt["A"] = json::parse(matrix_json(w.a));
    jt["det_K_nonzero"] = value != 0;
    cert["trials"].push_back(std::move(jt));
  }
  cert["nonzero"] = nonzero;
  // A random point of a proper hypersurface is a zero with probability
  // well below 1/trials, so every trial must be nonzero.
  if (nonzero != trials) e.status = AuditStatus::Fail;
  e.certificate = cert.dump();
  return e;
}

}  // namespace

AuditReport factorization_audit(const Polynomial& f, unsigned trials, std::uint64_t seed) {
  if (trials == 0) throw Error(Errc::InvalidArgument, "audit needs at least one trial");
  const KalmanInstance inst = KalmanInstance::from_form(f);
  AuditReport report;
  report.n = inst.n;
  report.d = inst.d;
  report.seed = seed;
  report.trials = trials;
  report.f = f.to_string();

  Rng rng(seed);
  report.entries.push_back(degree_entry(inst, rng));
  for (const Partition& mu : partitions(inst.d, inst.n))
    report.entries.push_back(mu_entry(f, inst, mu, trials, rng));
  if (inst.d >= 2) {
    report.entries.push_back(locus_entry(inst, LocusKind::OppositeEigenvalues, trials, rng));
    if (inst.n >= 3)
      report.entries.push_back(locus_entry(inst, LocusKind::GeometricEigenvalues, trials, rng));
  }
  report.entries.push_back(generic_entry(inst, trials, rng));
  return report;
}

}  // namespace nkv
