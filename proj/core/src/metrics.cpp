#include "qgabench/metrics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qgabench {
namespace {

template <typename Individual>
GenerationMetrics lowest_energy(std::span<const Individual> pop, const ProblemHamiltonian& h) {
  if (pop.empty()) {
    throw std::invalid_argument("empty population");
  }
  std::size_t best = 0;
  double best_e = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const double e = energy(pop[i], h);
    if (e < best_e) {
      best_e = e;
      best = i;
    }
  }
  return {best_e, fidelity(pop[best], h)};
}

}  // namespace

GenerationMetrics individual_metrics(const DensityMatrix& reg, const ProblemHamiltonian& h) {
  const double f = fidelity_to_pure(reg, h.ground_state());
  return {expectation(reg, h.matrix()), std::clamp(f, 0.0, 1.0)};
}

GenerationMetrics best_individual_metrics(const QuantumPopulation& pop, const ProblemHamiltonian& h,
                                          BestIndividualRule rule,
                                          const std::vector<Comparator>& network) {
  if (rule == BestIndividualRule::sorted_top) {
    return individual_metrics(sort_channel(pop, h, network).register_marginal(0), h);
  }
  GenerationMetrics out{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t r = 0; r < pop.layout.n_registers(); ++r) {
    const auto m = individual_metrics(pop.register_marginal(r), h);
    out.energy = std::min(out.energy, m.energy);
    out.fidelity = std::max(out.fidelity, m.fidelity);
  }
  return out;
}

GenerationMetrics best_individual_metrics(std::span<const VectorIndividual> pop,
                                          const ProblemHamiltonian& h) {
  return lowest_energy(pop, h);
}

GenerationMetrics best_individual_metrics(std::span<const BitIndividual> pop,
                                          const ProblemHamiltonian& h) {
  return lowest_energy(pop, h);
}

}  // namespace qgabench
