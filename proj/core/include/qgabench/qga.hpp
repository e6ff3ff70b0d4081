#pragma once

// The quantum genetic algorithm as a composition of CPTP maps on the density
// matrix of an n-register population:
//
//   sort -> reset lower half -> clone r into n/2 + r -> swap half-register
//   tails between clone pairs -> (optional) per-qubit Pauli mutation
//
// Registers are 0-based here: after sorting, registers [0, n/2) hold the
// lowest-energy individuals and registers [n/2, n) are discarded.

#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "qgabench/hamiltonians.hpp"
#include "qgabench/linalg.hpp"
#include "qgabench/record.hpp"

namespace qgabench {

enum class Cloner { uqcm, bcqo };
enum class UqcmGranularity { register_level, qubit_level };
enum class CloningBasis { computational, eigenbasis };

/// How a (possibly entangled) population is reduced to one "best individual".
enum class BestIndividualRule {
  /// Register 0 of the population after one more sort (on a copy).
  sorted_top,
  /// Minimum energy and maximum fidelity over all single-register marginals.
  register_extremes,
};

std::string_view to_string(UqcmGranularity g);
std::string_view to_string(CloningBasis b);
UqcmGranularity parse_uqcm_granularity(std::string_view s);
CloningBasis parse_cloning_basis(std::string_view s);

using Comparator = std::pair<std::size_t, std::size_t>;

/// A sorting network on n wires. n = 4 gives (0,1),(2,3),(0,2),(1,3),(1,2);
/// other powers of two use Batcher's odd-even merge sort, anything else
/// odd-even transposition.
std::vector<Comparator> sorting_network(std::size_t n);

struct QuantumPopulation {
  RegisterLayout layout;
  DensityMatrix state;

  /// Product state of one pure state per register.
  static QuantumPopulation from_registers(const RegisterLayout& layout,
                                          const std::vector<PureState>& registers);
  DensityMatrix register_marginal(std::size_t reg) const;
};

struct QgaConfig {
  Cloner cloner = Cloner::uqcm;
  bool mutation_enabled = false;
  double mutation_probability = 1.0 / 24.0;
  std::size_t generations = 10;
  RegisterLayout layout{4, 2};
  UqcmGranularity uqcm_granularity = UqcmGranularity::register_level;
  CloningBasis cloning_basis = CloningBasis::computational;
  BestIndividualRule best_rule = BestIndividualRule::sorted_top;
  /// Empty means sorting_network(layout.n_registers()).
  std::vector<Comparator> network;

  void validate() const;
};

/// Two-Kraus comparator on registers (a, b), embedded in the full space:
///   K0 = sum_{l_i <= l_j} |u_i u_j><u_i u_j|,  K1 = sum_{l_j < l_i} |u_j u_i><u_i u_j|.
KrausChannel comparator_channel(const ProblemHamiltonian& h, std::size_t reg_a, std::size_t reg_b,
                                const RegisterLayout& layout);

/// Same two operators on the 2c-qubit register pair only.
KrausChannel comparator_kraus(const ProblemHamiltonian& h);

QuantumPopulation sort_channel(const QuantumPopulation& pop, const ProblemHamiltonian& h,
                               const std::vector<Comparator>& network = {});

QuantumPopulation reset_discarded(const QuantumPopulation& pop);

/// Controlled-NOT cloner |b>|0> -> |b>|b> in the given basis (columns of
/// `basis`; identity when empty). Requires the destination to be blank.
QuantumPopulation clone_bcqo(const QuantumPopulation& pop, std::size_t src, std::size_t dst,
                             const ComplexMatrix& basis = {});

/// Symmetric universal 1 -> 2 cloner on a d-dimensional subsystem:
/// rho (x) |0><0| -> 2/(d+1) P_sym (rho (x) I) P_sym. With register
/// granularity d = 2^c; with qubit granularity each qubit pair is cloned
/// separately (d = 2). Requires the destination to be blank.
QuantumPopulation clone_uqcm(const QuantumPopulation& pop, std::size_t src, std::size_t dst,
                             UqcmGranularity granularity = UqcmGranularity::register_level);

/// Kraus form of the universal cloner on a (src, dst) pair of dimension d
/// each: sqrt(2/(d+1)) P_sym (I (x) |m><0|) for m < d, plus I (x) (I - |0><0|).
KrausChannel uqcm_kraus(std::size_t d);

/// Swaps the last c/2 qubits of registers n/2 + 2i and n/2 + 2i + 1.
QuantumPopulation crossover_swap(const QuantumPopulation& pop);

/// Independent Pauli channel with probability p on every qubit.
QuantumPopulation mutation_channel(const QuantumPopulation& pop, double p);

/// Everything in a generation after the sort.
QuantumPopulation breed(const QuantumPopulation& sorted, const ProblemHamiltonian& h,
                        const QgaConfig& cfg);

QuantumPopulation qga_generation(const QuantumPopulation& pop, const ProblemHamiltonian& h,
                                 const QgaConfig& cfg);

/// Called with (generation, population) after initialization (generation 0)
/// and after every generation.
using QgaObserver = std::function<void(std::size_t, const QuantumPopulation&)>;

RunRecord run_qga(const ProblemHamiltonian& h, const QgaConfig& cfg,
                  const std::vector<PureState>& initial, const QgaObserver& observer = {});

}  // namespace qgabench
