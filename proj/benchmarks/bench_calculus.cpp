#include <benchmark/benchmark.h>

#include <random>

#include "grid.hpp"
#include "kgs/calculus.hpp"
#include "kgs/functional.hpp"
#include "kgs/spaces.hpp"

using namespace kgs;

static Eigen::VectorXd noise(Eigen::Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::VectorXd v(n);
  for (auto& x : v) x = nd(rng);
  return v;
}

static void BM_LLaplacian(benchmark::State& st) {
  const auto d = bench::lattice(static_cast<int>(st.range(0)));
  Eigen::VectorXd v = noise(static_cast<Eigen::Index>(d->working_size()), 1);
  v.tail(static_cast<Eigen::Index>(d->boundary_size())).setZero();
  for (auto _ : st) benchmark::DoNotOptimize(l_laplacian_all(*d, v, 3.0));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(d->working_size()));
}

static void BM_GradientEnergy(benchmark::State& st) {
  const auto d = bench::lattice(static_cast<int>(st.range(0)));
  const Eigen::VectorXd v = noise(static_cast<Eigen::Index>(d->working_size()), 2);
  for (auto _ : st) benchmark::DoNotOptimize(gradient_energy(*d, v, 3.0));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(d->working_size()));
}

static void BM_EnergyAndGradient(benchmark::State& st) {
  const auto d = bench::lattice(static_cast<int>(st.range(0)));
  const auto inst = bench::lattice_instance(d);
  const SystemFunctional f(inst);
  const Eigen::VectorXd x = noise(f.size(), 3);
  for (auto _ : st) {
    benchmark::DoNotOptimize(f.value(x));
    benchmark::DoNotOptimize(f.gradient(x));
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(f.size()));
}

static void BM_EmbeddingConstant(benchmark::State& st) {
  const auto d = bench::lattice(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(embedding_constants(*d, 2.5, 2.5).best_constant);
}

BENCHMARK(BM_LLaplacian)->Arg(8)->Arg(32)->Arg(128);
BENCHMARK(BM_GradientEnergy)->Arg(8)->Arg(32)->Arg(128);
BENCHMARK(BM_EnergyAndGradient)->Arg(8)->Arg(32)->Arg(128);
BENCHMARK(BM_EmbeddingConstant)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
