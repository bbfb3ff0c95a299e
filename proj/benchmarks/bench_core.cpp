#include <benchmark/benchmark.h>

#include "torelli/cubic.hpp"
#include "torelli/verdict.hpp"

using namespace torelli;

namespace {

const Field Q = Field::rationals();

HomPoly P(const char* text, std::size_t vars) { return parse_poly(text, default_var_names(vars), Q); }

// one cubic, one quartic and a sheared quaternary Fermat cubic
HomPoly input(std::int64_t which) {
  if (which == 0) return P("x^3+y^3+z^3", 3);
  if (which == 1) return P("x^4 + y^4 + z^4 - x*y*z^2", 3);
  Matrix shear = Matrix::identity(Q, 4);
  shear(1, 0) = Scalar(Q, 1);
  shear(2, 1) = Scalar(Q, -2);
  shear(3, 2) = Scalar(Q, 1);
  return substitute_linear(P("x^3+y^3+z^3+w^3", 4), CoordinateChange(shear));
}

void BM_Smoothness(benchmark::State& state) {
  const HomPoly f = input(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(is_smooth(f));
}
BENCHMARK(BM_Smoothness)->DenseRange(0, 2);

void BM_StSpace(benchmark::State& state) {
  const HomPoly f = input(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(st_space(f).dim());
}
BENCHMARK(BM_StSpace)->DenseRange(0, 2);

void BM_Verdict(benchmark::State& state) {
  const HomPoly f = input(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(torelli_verdict(f).status);
}
BENCHMARK(BM_Verdict)->DenseRange(0, 2);

void BM_LogDerivationDims(benchmark::State& state) {
  const HomPoly f = P("x^3+y^3+z^3", 3);
  for (auto _ : state) benchmark::DoNotOptimize(log_derivation_dims(f, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_LogDerivationDims)->DenseRange(3, 6);

void BM_DeriveInvariant(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(derive_invariant().kernel_dim);
}
BENCHMARK(BM_DeriveInvariant);

}  // namespace

BENCHMARK_MAIN();
