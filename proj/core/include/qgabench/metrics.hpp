#pragma once

#include <span>

#include "qgabench/classical.hpp"
#include "qgabench/qga.hpp"
#include "qgabench/record.hpp"

namespace qgabench {

/// Energy and ground-state fidelity of one register's reduced state.
GenerationMetrics individual_metrics(const DensityMatrix& reg, const ProblemHamiltonian& h);

/// See BestIndividualRule. sorted_top sorts a copy of the population first.
GenerationMetrics best_individual_metrics(const QuantumPopulation& pop, const ProblemHamiltonian& h,
                                          BestIndividualRule rule = BestIndividualRule::sorted_top,
                                          const std::vector<Comparator>& network = {});

/// The lowest-energy individual's energy and fidelity (first on ties).
GenerationMetrics best_individual_metrics(std::span<const VectorIndividual> pop,
                                          const ProblemHamiltonian& h);
GenerationMetrics best_individual_metrics(std::span<const BitIndividual> pop,
                                          const ProblemHamiltonian& h);

}  // namespace qgabench
