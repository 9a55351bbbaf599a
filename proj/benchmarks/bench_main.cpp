#include "torcal/corpus.hpp"
#include "torcal/cells.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace torcal;
using diagram::Level;
using gralg::Window;
using lattice::GroupName;
using lattice::GroupSpec;
using lattice::TruncationParams;

namespace {

QMat random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-9, 9);
  QMat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Rat(d(rng), 1 + (d(rng) + 10) % 7);
  return m;
}

void BM_RationalRref(benchmark::State& state) {
  std::mt19937_64 rng(42);
  QMat m = random_matrix(rng, std::size_t(state.range(0)));
  for (auto _ : state) {
    QMat c = m;
    benchmark::DoNotOptimize(rref(c));
  }
}
BENCHMARK(BM_RationalRref)->Arg(16)->Arg(48);

void BM_CheckQce(benchmark::State& state) {
  auto poset = lattice::build_poset(GroupSpec::get(GroupName::SO3), TruncationParams{4});
  auto rinv = diagram::build_Rinv(poset, 1);
  std::mt19937_64 rng(7);
  auto m = corpus::random_qce_module(rinv, Level::G, {-24, 4}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(diagram::check_qce(m).qce());
}
BENCHMARK(BM_CheckQce);

void BM_SphereExt(benchmark::State& state) {
  auto poset = lattice::build_poset(GroupSpec::get(GroupName::SO3), TruncationParams{2});
  auto ra = diagram::build_Ra(poset, 1);
  auto rinv = diagram::build_Rinv(poset, 1);
  cells::CellContext ctx{&poset, &ra, &rinv};
  auto m = cells::pi_A(ctx, {cells::CellKind::Sphere, -1}, Level::G, {-30, 12});
  for (auto _ : state) benchmark::DoNotOptimize(homalg::ext(m, m, {-6, 6}).entries.size());
}
BENCHMARK(BM_SphereExt);

}  // namespace

BENCHMARK_MAIN();
