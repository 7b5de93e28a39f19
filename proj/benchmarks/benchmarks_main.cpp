// Microbenchmarks for the numerical kernels: Pfaffian elimination,
// Wilson tree sampling, zipper trace extraction and the sequential
// determinantal sampler.

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "dimerarc/kasteleyn.hpp"
#include "dimerarc/lattice.hpp"
#include "dimerarc/linalg.hpp"
#include "dimerarc/rng.hpp"
#include "dimerarc/sampler.hpp"
#include "dimerarc/zipper.hpp"

namespace {

using namespace dimerarc;

SymmetricDomain strip(int height) {
  DomainDescriptor d;
  d.eps = std::numbers::pi / double(height);
  d.width = 3 * height;
  d.height = height;
  d.zx = 1.5 * double(height) * d.eps;
  d.zy = std::numbers::pi / 4.0;
  return SymmetricDomain::build(d);
}

SkewMatrix random_skew(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SkewMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      m.set(i, j, cplx(2.0 * uniform_double(rng) - 1.0,
                       2.0 * uniform_double(rng) - 1.0));
  return m;
}

void BM_pfaffian(benchmark::State& state) {
  const SkewMatrix m = random_skew(int(state.range(0)), 17);
  for (auto _ : state) benchmark::DoNotOptimize(pfaffian(m));
}
BENCHMARK(BM_pfaffian)->Arg(32)->Arg(96)->Arg(288);

void BM_wilson(benchmark::State& state) {
  const SymmetricDomain dom = strip(int(state.range(0)));
  std::mt19937_64 rng(23);
  for (auto _ : state) benchmark::DoNotOptimize(sample_full_matching(dom, rng));
}
BENCHMARK(BM_wilson)->Arg(8)->Arg(16)->Arg(32);

void BM_trace(benchmark::State& state) {
  const SymmetricDomain dom = strip(int(state.range(0)));
  const FoldedModel fm = build_folded_model(dom);
  const Zipper z = build_zipper(fm.fg.base, dom.marked_face());
  for (auto _ : state)
    benchmark::DoNotOptimize(folded_trace_powers(fm, z, 4));
}
BENCHMARK(BM_trace)->Arg(8)->Arg(16);

void BM_determinantal(benchmark::State& state) {
  const SymmetricDomain dom = strip(int(state.range(0)));
  const BipartiteGraph g = dom.upper_closed_graph();
  DeterminantalSampler sampler(g, complex_phases(g));
  std::mt19937_64 rng(29);
  for (auto _ : state) {
    auto s = sampler.sample(rng);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_determinantal)->Arg(6)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
