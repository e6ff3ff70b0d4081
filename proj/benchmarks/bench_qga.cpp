// Per-generation cost of the QGA at n = 4, c = 2 (a 256 x 256 density
// matrix), plus the local kernel against the embedded-operator route it
// replaces.

#include <benchmark/benchmark.h>

#include "qgabench/channels.hpp"
#include "qgabench/classical.hpp"
#include "qgabench/hamiltonians.hpp"
#include "qgabench/qga.hpp"

namespace {

using namespace qgabench;

const std::vector<double> kSpectrum{0, 1, 2, 3};

QuantumPopulation random_population(Rng& rng) {
  std::vector<PureState> regs;
  for (int i = 0; i < 4; ++i) {
    regs.push_back(haar_random_pure_state(4, rng));
  }
  return QuantumPopulation::from_registers(RegisterLayout(4, 2), regs);
}

void BM_SortChannel(benchmark::State& state) {
  Rng rng(1);
  const auto h = sample_random_hamiltonian(kSpectrum, rng);
  const auto pop = random_population(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sort_channel(pop, h));
  }
}
BENCHMARK(BM_SortChannel)->Unit(benchmark::kMillisecond);

void BM_Breed(benchmark::State& state) {
  Rng rng(2);
  const auto h = sample_random_hamiltonian(kSpectrum, rng);
  const auto sorted = sort_channel(random_population(rng), h);
  QgaConfig cfg;
  cfg.cloner = state.range(0) == 0 ? Cloner::uqcm : Cloner::bcqo;
  cfg.mutation_enabled = state.range(1) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(breed(sorted, h, cfg));
  }
}
BENCHMARK(BM_Breed)->ArgsProduct({{0, 1}, {0, 1}})->ArgNames({"bcqo", "mut"})->Unit(benchmark::kMillisecond);

void BM_QgaGeneration(benchmark::State& state) {
  Rng rng(3);
  const auto h = sample_random_hamiltonian(kSpectrum, rng);
  auto pop = random_population(rng);
  QgaConfig cfg;
  cfg.mutation_enabled = true;
  for (auto _ : state) {
    pop = qga_generation(pop, h, cfg);
  }
}
BENCHMARK(BM_QgaGeneration)->Unit(benchmark::kMillisecond);

void BM_ConjugateLocal(benchmark::State& state) {
  Rng rng(4);
  const auto pop = random_population(rng);
  const ComplexMatrix u = haar_random_unitary(16, rng);
  const std::vector<std::size_t> t{2, 3, 6, 7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(conjugate_local(pop.state, u, t));
  }
}
BENCHMARK(BM_ConjugateLocal)->Unit(benchmark::kMicrosecond);

void BM_ConjugateEmbedded(benchmark::State& state) {
  Rng rng(4);
  const auto pop = random_population(rng);
  const ComplexMatrix u = haar_random_unitary(16, rng);
  const std::vector<std::size_t> t{2, 3, 6, 7};
  const KrausChannel full({embed_operator(u, RegisterLayout(4, 2), t)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_channel(pop.state, full));
  }
}
BENCHMARK(BM_ConjugateEmbedded)->Unit(benchmark::kMicrosecond);

void BM_CgaStep(benchmark::State& state) {
  Rng rng(5);
  const auto h = sample_random_hamiltonian(kSpectrum, rng);
  std::vector<VectorIndividual> pop;
  for (int i = 0; i < 4; ++i) {
    pop.emplace_back(haar_random_pure_state(4, rng).amplitudes());
  }
  CgaConfig cfg;
  for (auto _ : state) {
    pop = cga_step(pop, h, cfg, rng);
  }
}
BENCHMARK(BM_CgaStep)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
