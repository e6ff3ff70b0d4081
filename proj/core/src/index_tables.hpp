#pragma once

// Bit-offset helpers shared by the dense kernels.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgabench::detail {

inline std::size_t qubit_bit(std::size_t qubit, std::size_t n_qubits) {
  return std::size_t{1} << (n_qubits - 1 - qubit);
}

/// offsets[t] places the bits of t (first listed qubit = most significant)
/// onto the listed qubit positions of an n_qubits-wide index.
inline std::vector<std::size_t> subset_offsets(const std::vector<std::size_t>& qubits,
                                               std::size_t n_qubits) {
  const std::size_t k = qubits.size();
  std::vector<std::size_t> off(std::size_t{1} << k, 0);
  for (std::size_t t = 0; t < off.size(); ++t) {
    std::size_t o = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if ((t >> (k - 1 - i)) & 1U) {
        o |= qubit_bit(qubits[i], n_qubits);
      }
    }
    off[t] = o;
  }
  return off;
}

inline std::vector<std::size_t> complement(const std::vector<std::size_t>& qubits,
                                           std::size_t n_qubits) {
  std::vector<std::size_t> rest;
  for (std::size_t q = 0; q < n_qubits; ++q) {
    if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) {
      rest.push_back(q);
    }
  }
  return rest;
}

inline void check_targets(const std::vector<std::size_t>& targets, std::size_t n_qubits) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= n_qubits) {
      throw std::out_of_range("qubit index " + std::to_string(targets[i]) + " out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[j] == targets[i]) {
        throw std::invalid_argument("repeated target qubit " + std::to_string(targets[i]));
      }
    }
  }
}

inline bool is_contiguous_ascending(const std::vector<std::size_t>& targets) {
  for (std::size_t i = 1; i < targets.size(); ++i) {
    if (targets[i] != targets[i - 1] + 1) {
      return false;
    }
  }
  return !targets.empty();
}

}  // namespace qgabench::detail
