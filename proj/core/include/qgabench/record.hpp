#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qgabench {

struct GenerationMetrics {
  double energy = 0.0;
  double fidelity = 0.0;
};

/// Per-generation best-individual series for one (algorithm, Hamiltonian,
/// seed) triple. Index 0 holds the initial population.
struct RunRecord {
  std::string algorithm;
  std::string hamiltonian_id;
  std::uint64_t seed = 0;
  /// Index of the initial population among those drawn for the Hamiltonian.
  std::size_t replicate = 0;
  std::vector<double> best_energy;
  std::vector<double> best_fidelity;

  void push(const GenerationMetrics& m) {
    best_energy.push_back(m.energy);
    best_fidelity.push_back(m.fidelity);
  }
  std::size_t generations() const { return best_energy.empty() ? 0 : best_energy.size() - 1; }
  double final_energy() const { return best_energy.back(); }
  double final_fidelity() const { return best_fidelity.back(); }

  bool operator==(const RunRecord&) const = default;
};

}  // namespace qgabench
