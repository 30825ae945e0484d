#include <benchmark/benchmark.h>

#include <random>

#include "tqft/cobordism.hpp"
#include "tqft/expr.hpp"
#include "tqft/frobenius.hpp"
#include "tqft/random_algebra.hpp"
#include "tqft/unitary.hpp"

namespace {

tqft::HiddenDiagonalAlgebra make_algebra(std::size_t dim) {
  std::mt19937_64 rng(42);
  tqft::RandomAlgebraOptions options;
  options.dim = dim;
  return tqft::random_hidden_diagonal(options, rng);
}

void BM_VerifyAxioms(benchmark::State& state) {
  const auto h = make_algebra(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tqft::verify_axioms(h.algebra));
}
BENCHMARK(BM_VerifyAxioms)->RangeMultiplier(2)->Range(1, 8);

void BM_ClosedSurface(benchmark::State& state) {
  const auto h = make_algebra(8);
  const auto genus = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tqft::closed_surface(h.algebra, genus));
}
BENCHMARK(BM_ClosedSurface)->Arg(0)->Arg(1)->Arg(4)->Arg(16);

// Wide tensor layers dominate: the matrix is n^k by n^k.
void BM_EvaluateExpression(benchmark::State& state) {
  const auto h = make_algebra(state.range(0));
  const auto cob = tqft::to_cobordism(*tqft::parse("comul * id ; id * mul ; mul ; comul ; mul * unit ; mul"));
  for (auto _ : state) benchmark::DoNotOptimize(tqft::evaluate(h.algebra, cob));
}
BENCHMARK(BM_EvaluateExpression)->RangeMultiplier(2)->Range(1, 8);

void BM_ParseExpression(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(tqft::parse("(comul * id) ; (id * swap) ; (mul * id) ; mul ; comul ; mul"));
}
BENCHMARK(BM_ParseExpression);

void BM_Classify(benchmark::State& state) {
  const auto h = make_algebra(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tqft::classify(h.algebra, h.hermitian));
}
BENCHMARK(BM_Classify)->RangeMultiplier(2)->Range(1, 16);

void BM_SimultaneousDiagonalize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = make_algebra(n);
  std::vector<tqft::Matrix> ops;
  const tqft::Matrix m = h.algebra.mul_matrix();
  // Left multiplication by each basis vector.
  for (std::size_t i = 0; i < n; ++i) {
    tqft::Matrix l(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) l(k, j) = m(k, i * n + j);
    ops.push_back(l);
  }
  const tqft::Matrix form = h.hermitian.matrix();
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(tqft::simultaneous_diagonalize(ops, form));
    } catch (const tqft::Error& e) {
      state.SkipWithError(e.what());
      break;
    }
  }
}
BENCHMARK(BM_SimultaneousDiagonalize)->RangeMultiplier(2)->Range(1, 16);

void BM_CStarCheck(benchmark::State& state) {
  const auto h = make_algebra(8);
  const auto c = tqft::classify(h.algebra, h.hermitian);
  for (auto _ : state) benchmark::DoNotOptimize(tqft::cstar_check(h.algebra, c, state.range(0), 1));
}
BENCHMARK(BM_CStarCheck)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
