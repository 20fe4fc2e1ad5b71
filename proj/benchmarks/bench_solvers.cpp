#include <benchmark/benchmark.h>

#include <filesystem>

#include "kgs/analysis.hpp"
#include "kgs/hypotheses.hpp"
#include "kgs/io.hpp"
#include "kgs/solvers.hpp"

using namespace kgs;

namespace {

struct Loaded {
  std::shared_ptr<const Domain> domain;
  KirchhoffInstance instance;
  Loaded(const char* graph, const char* inst)
      : domain(load_domain(std::filesystem::path(KGS_BENCH_DATA_DIR) / "graphs" / graph)),
        instance(load_instance(std::filesystem::path(KGS_BENCH_DATA_DIR) / "instances" / inst, domain)) {}
};

const Loaded& theorem() {
  static const Loaded l("p7_acceptance.json", "p7_acceptance.json");
  return l;
}

}  // namespace

static void BM_MinimizeInBall(benchmark::State& st) {
  const auto& inst = theorem().instance;
  const double rho = mountain_pass_radius(inst, compute_embeddings(inst)).rho;
  for (auto _ : st) benchmark::DoNotOptimize(minimize_in_ball(inst, rho, SolverConfig{}).point.energy);
}

static void BM_MountainPass(benchmark::State& st) {
  const auto& inst = theorem().instance;
  const auto geo = mountain_pass_radius(inst, compute_embeddings(inst));
  const auto e = find_endpoint(inst, geo.rho, SolverConfig{});
  SolverConfig cfg;
  cfg.path_points = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(mountain_pass(inst, *e.endpoint, cfg, geo.g_at_zstar / 2).point.energy);
}

static void BM_Multiplicity(benchmark::State& st) {
  static const Loaded p5("p5.json", "p5_multiplicity.json");
  SolverConfig cfg;
  cfg.threads = static_cast<unsigned>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(scalar_multiplicity(p5.instance, Component::u, cfg).pairs);
}

static void BM_Certify(benchmark::State& st) {
  const auto& inst = theorem().instance;
  NonexistenceSearch s;
  s.grid = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(certify_nonexistence(inst, NonexistenceMode::pointwise, s).f_max);
}

BENCHMARK(BM_MinimizeInBall)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MountainPass)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Multiplicity)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Certify)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
