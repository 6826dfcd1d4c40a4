// Micro-benchmarks for the expression kernel and the tension pipeline.
// Inputs are fixed so runs are comparable across commits.

#include <benchmark/benchmark.h>

#include "infharm/classify.hpp"
#include "infharm/geometry.hpp"
#include "infharm/parser.hpp"
#include "infharm/polymap.hpp"
#include "infharm/tension.hpp"

using namespace infharm;

namespace {

const VarTableRef kVars = make_vars({"x", "y", "z"});

ExpPoly sample_poly() {
  return parse("1/4*(x^2 + y^2)*exp(2*z) + 3*x*y - 2/3*y*z*exp(-2*z) + 7", kVars);
}

ExpPoly sample_dense() {
  ExpPoly p = sample_poly();
  return p * p + p;
}

void BM_Multiply(benchmark::State& state) {
  const ExpPoly a = sample_dense();
  const ExpPoly b = sample_poly();
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Multiply);

void BM_Derivative(benchmark::State& state) {
  const ExpPoly a = sample_dense();
  for (auto _ : state)
    for (std::size_t k = 0; k < 3; ++k) benchmark::DoNotOptimize(a.derivative(k));
}
BENCHMARK(BM_Derivative);

void BM_SubstituteLinear(benchmark::State& state) {
  const ExpPoly a = sample_dense();
  const VarTableRef uvw = make_vars({"u", "v", "w"});
  const std::vector<ExpPoly> assigns = {
      parse("u - v", uvw), parse("v + w", uvw), parse("1/2*u + w", uvw)};
  for (auto _ : state) benchmark::DoNotOptimize(a.substituted(uvw, assigns));
}
BENCHMARK(BM_SubstituteLinear);

void BM_ParseRender(benchmark::State& state) {
  const std::string text = sample_dense().str();
  for (auto _ : state) benchmark::DoNotOptimize(parse(text, kVars).str());
}
BENCHMARK(BM_ParseRender);

void BM_TauSolSol(benchmark::State& state) {
  const MetricRef sol = builtin_geometry("sol");
  const RatMatrix m = RatMatrix::from_rows({{2, 0, 0}, {0, 3, 0}, {0, 0, 1}});
  const PolyMap phi = PolyMap::from_matrix(sol, sol, m);
  for (auto _ : state) benchmark::DoNotOptimize(tau_infinity(phi));
}
BENCHMARK(BM_TauSolSol);

void BM_TauHeisenbergFlat(benchmark::State& state) {
  const MetricRef heis = builtin_geometry("heisenberg");
  const MetricRef target = builtin_geometry("euclidean:3");
  const RatMatrix m = RatMatrix::from_rows({{1, 1, 1}, {2, 2, 2}, {3, 3, 3}});
  const PolyMap phi = PolyMap::from_matrix(heis, target, m);
  for (auto _ : state) benchmark::DoNotOptimize(tau_infinity(phi));
}
BENCHMARK(BM_TauHeisenbergFlat);

void BM_ClassifySolSol(benchmark::State& state) {
  const MetricRef sol = builtin_geometry("sol");
  const RatMatrix m = RatMatrix::from_rows({{0, 0, 1}, {0, 0, -2}, {0, 0, 0}});
  for (auto _ : state) benchmark::DoNotOptimize(classify_matrix(m, *sol, *sol));
}
BENCHMARK(BM_ClassifySolSol);

}  // namespace

BENCHMARK_MAIN();
