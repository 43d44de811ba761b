#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nkv/poly_matrix.hpp"
#include "nkv/polynomial.hpp"
#include "nkv/veronese.hpp"

namespace nkv {

/// Rows C (p x N) spanning the degree-d equations of X in n variables.
struct KalmanInstance {
  unsigned n = 0;
  unsigned d = 0;
  QMatrix c;

  /// Single form f of degree d over a universe of n variables (p = 1).
  static KalmanInstance from_form(const Polynomial& f);
  /// Generators of X, via coeff_matrix.
  static KalmanInstance from_generators(std::span<const Polynomial> generators);

  std::size_t p() const noexcept { return c.rows(); }
  std::size_t N() const noexcept { return c.cols(); }
};

/// Blocks C rho_d(A)^i for i = 0..N-p stacked: p(N-p+1) x N.
PolyMatrix kalman_matrix(const KalmanInstance& inst, const PolyMatrix& a);
QMatrix kalman_matrix(const KalmanInstance& inst, const QMatrix& a);

/// det K_d(f) over matrix_universe(n), canonically normalized.
Polynomial kalman_det(const Polynomial& f);

/// det K_d(f)(A0); throws NotHypersurface when p != 1.
Rational kalman_det_at(const KalmanInstance& inst, const QMatrix& a0);

/// rank K_d(C)(A0) < N. Every A0 with an eigenpoint on X passes.
bool membership_necessary(const KalmanInstance& inst, const QMatrix& a0);

/// Discriminant of the characteristic polynomial of A0, resp. rho_d(A0).
Rational delta_at(const QMatrix& a0);
Rational delta_d_at(const QMatrix& a0, unsigned d);

enum class LineTarget { KalmanDet, DeltaD, Delta };

/// The target restricted to A0 + t A1, as a polynomial in t. `inst` is
/// used for KalmanDet, `d` for DeltaD.
Polynomial target_along_line(LineTarget target, const KalmanInstance* inst, unsigned d,
                             const QMatrix& a0, const QMatrix& a1);

/// Order of vanishing at t = 0 of the target along A0 + t A1; throws
/// ZeroPolynomial when the restriction vanishes identically (non-generic
/// line).
unsigned factor_order_along_line(LineTarget target, const KalmanInstance* inst, unsigned d,
                                 const QMatrix& a0, const QMatrix& a1);

enum class AuditStatus { Pass, Fail, Skipped };

const char* status_name(AuditStatus s) noexcept;

struct AuditEntry {
  std::string assertion;
  AuditStatus status = AuditStatus::Fail;
  std::uint64_t witness_seed = 0;
  /// Exact evidence, as a JSON string.
  std::string certificate;
};

struct AuditReport {
  unsigned n = 0, d = 0;
  std::uint64_t seed = 0;
  unsigned trials = 0;
  std::string f;
  std::vector<AuditEntry> entries;

  /// No entry failed (skipped entries do not count).
  bool all_pass() const;
  std::string to_json() const;
};

/// Checks, pointwise and by degree counting, the factorization of det K_d(f)
/// into sqrt(Delta_d^sat) and the mu-Kalman factors:
///  degree_budget, mu_witness_vanishing:<mu> for each mu in P_d^{<=n},
///  delta_sat_vanishing:<locus>, generic_nonvanishing.
/// Trials are seeded from `seed` in trial order. A mu whose witness cannot be
/// built by mu_witness is reported as skipped.
AuditReport factorization_audit(const Polynomial& f, unsigned trials, std::uint64_t seed);

}  // namespace nkv
