#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nkv/poly_matrix.hpp"
#include "nkv/polynomial.hpp"
#include "nkv/veronese.hpp"

namespace nkv {

/// Integer draws for witness construction; every draw goes through one
/// mt19937_64 so a seed fixes the whole construction.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  long uniform(long lo, long hi);
  /// Entry in [-999, 999].
  Rational entry() { return uniform(-999, 999); }
  std::vector<Rational> vector(std::size_t n);
  QMatrix matrix(std::size_t rows, std::size_t cols);
  /// Seed for an independent sub-task, derived from this stream.
  std::uint64_t split() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Retry budget for every randomized construction.
inline constexpr int kMaxRetries = 16;
/// Bound on drawn eigenvalues.
inline constexpr long kEigenBound = 99;

struct EigenSpec {
  QMatrix v;                     ///< columns are the eigenvectors
  std::vector<Rational> d;       ///< eigenvalue of each column
};

/// A = V D V^-1; throws SingularMatrix when V is not invertible.
QMatrix matrix_with_eigenvectors(const EigenSpec& spec);

enum class SampleStrategy { SolvableVariable, Parametrization, UserPoint };

/// Point of the hypersurface f = 0.
///  - SolvableVariable: f has degree one in some variable; the others are
///    drawn at random and that variable is solved for.
///  - Parametrization: `images` maps t to a point of V(f) (one polynomial in
///    the line universe per variable); t is drawn at random.
///  - UserPoint: `point` is checked and returned.
/// Throws NoStrategy or RetryExhausted.
std::vector<Rational> sample_on_hypersurface(const Polynomial& f, SampleStrategy strategy, Rng& rng,
                                             const std::vector<Polynomial>& images = {},
                                             const std::vector<Rational>& point = {});

/// Distinct nonzero integer eigenvalues in [-99, 99] whose degree-d
/// monomials are pairwise distinct.
std::vector<Rational> generic_eigenvalues(unsigned n, unsigned d, Rng& rng);

struct MuWitness {
  Partition mu;
  std::uint64_t seed = 0;
  EigenSpec spec;
  QMatrix a;
  /// v_1, ..., v_s (the first s columns of spec.v).
  std::vector<std::vector<Rational>> points;
};

/// Matrix with s independent eigenvectors v_i satisfying f_mu(v_1..v_s) = 0.
/// Works whenever f_mu has degree one in some block variable (always the
/// case when mu_1 = 1, or when f has degree one in some variable).
/// Throws UnsupportedPartition or RetryExhausted.
MuWitness mu_witness(const Polynomial& f, const Partition& mu, std::uint64_t seed);

/// Generic invertible rational matrix with distinct-eigenvalue spectrum and
/// prescribed eigenvectors: V D V^-1 with V random and D from
/// generic_eigenvalues.
MuWitness generic_matrix(unsigned n, unsigned d, std::uint64_t seed);

enum class LocusKind {
  RankDeficient,            ///< V diag(0, distinct nonzero) V^-1
  RepeatedEigenvalueJordan, ///< V (J_2(lambda) + distinct diagonal) V^-1
  OppositeEigenvalues,      ///< distinct eigenvalues with lambda_2 = -lambda_1
  GeometricEigenvalues,     ///< distinct eigenvalues with lambda_1^2 = lambda_2 lambda_3
};

const char* locus_name(LocusKind kind) noexcept;

/// Matrix on the requested locus, conjugated by a random invertible V.
/// The last two kinds give repeated eigenvalues of rho_d(A) (d >= 2) while
/// A keeps distinct eigenvalues; GeometricEigenvalues needs n >= 3.
QMatrix special_locus_matrix(LocusKind kind, unsigned n, Rng& rng);

/// JSON certificate {seed, mu, V, D, points, checks}; `checks` holds the
/// exact values of f_mu at the points, A v_i - lambda_i v_i residual norms
/// (as zero/nonzero flags) and the rank of the points.
std::string certificate_json(const MuWitness& w, const Polynomial& f);

}  // namespace nkv
