#include <benchmark/benchmark.h>

#include <nkv/enumerative.hpp>
#include <nkv/kalman.hpp>
#include <nkv/salmon.hpp>
#include <nkv/veronese.hpp>
#include <nkv/witness.hpp>

using namespace nkv;

namespace {

Polynomial conic() { return Polynomial::parse("x2^2-x1*x3", indexed_universe("x", 3)); }

void BM_SymPowerSymbolic(benchmark::State& state) {
  const PolyMatrix a = PolyMatrix::symbolic(3);
  const unsigned d = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sym_power(a, d));
}
BENCHMARK(BM_SymPowerSymbolic)->Arg(2)->Arg(3)->Arg(4);

void BM_PolynomialProduct(benchmark::State& state) {
  const UniversePtr u = matrix_universe(3);
  const Polynomial p = Polynomial::parse("(a11+2*a12-a23+a31*a22+3*a33)^6", u);
  const Polynomial q = Polynomial::parse("(a13-a21+a32*a11-a22)^5", u);
  for (auto _ : state) benchmark::DoNotOptimize(p * q);
}
BENCHMARK(BM_PolynomialProduct);

void BM_KalmanDetAtPoint(benchmark::State& state) {
  const unsigned d = static_cast<unsigned>(state.range(0));
  const Polynomial f = Polynomial::parse(d == 2 ? "x2^2-x1*x3" : "x1*x2^2-x2*x3^2+2*x3^3+x1*x3^2",
                                         indexed_universe("x", 3));
  const KalmanInstance inst = KalmanInstance::from_form(f);
  const QMatrix a = generic_matrix(3, d, 1).a;
  for (auto _ : state) benchmark::DoNotOptimize(kalman_det_at(inst, a));
}
BENCHMARK(BM_KalmanDetAtPoint)->Arg(2)->Arg(3);

void BM_SalmonConic(benchmark::State& state) {
  const Polynomial f = Polynomial::parse("x2^2-x1*x3", make_universe({"x1", "x2", "x3"}));
  for (auto _ : state) benchmark::DoNotOptimize(salmon_conic(f));
}
BENCHMARK(BM_SalmonConic)->Unit(benchmark::kMillisecond);

void BM_DeltaDAlongLine(benchmark::State& state) {
  Rng rng(3);
  const QMatrix a0 = special_locus_matrix(LocusKind::RepeatedEigenvalueJordan, 3, rng);
  const QMatrix a1 = rng.matrix(3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(target_along_line(LineTarget::DeltaD, nullptr, 2, a0, a1));
}
BENCHMARK(BM_DeltaDAlongLine)->Unit(benchmark::kMillisecond);

void BM_Audit(benchmark::State& state) {
  const Polynomial f = conic();
  for (auto _ : state) benchmark::DoNotOptimize(factorization_audit(f, 5, 1));
}
BENCHMARK(BM_Audit)->Unit(benchmark::kMillisecond);

void BM_DegreeSweep(benchmark::State& state) {
  for (auto _ : state)
    for (unsigned n = 2; n <= 8; ++n)
      for (unsigned d = 1; d <= 8; ++d) benchmark::DoNotOptimize(discriminant_budget(n, d));
}
BENCHMARK(BM_DegreeSweep);

}  // namespace

BENCHMARK_MAIN();
