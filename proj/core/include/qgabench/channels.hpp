#pragma once

// Local kernels: act on a few qubits of a dense state without building the
// full-space operator. Results agree with embed_operator()/apply_channel()
// (see tests/unit/test_channels.cpp) at a fraction of the cost.

#include <cstddef>
#include <span>
#include <vector>

#include "qgabench/linalg.hpp"

namespace qgabench {

/// m <- E(op) m, where E embeds op on `targets`.
void apply_on_rows(ComplexMatrix& m, const ComplexMatrix& op, std::span<const std::size_t> targets);
/// m <- m E(op)^dag.
void apply_adjoint_on_cols(ComplexMatrix& m, const ComplexMatrix& op,
                           std::span<const std::size_t> targets);

/// m <- E m E^dag for Hermitian m, where E applies `op` to every target
/// group. Uses column kernels only: Y = m E^dag, then E m E^dag = Y^dag E^dag.
void conjugate_hermitian(ComplexMatrix& m, const ComplexMatrix& op,
                         std::span<const std::vector<std::size_t>> groups);

/// U rho U^dag with U acting on `targets`.
DensityMatrix conjugate_local(const DensityMatrix& rho, const ComplexMatrix& u,
                              std::span<const std::size_t> targets);

/// A channel whose Kraus operators are 2^k x 2^k, applied on k target qubits.
DensityMatrix apply_local_channel(const DensityMatrix& rho, const KrausChannel& local,
                                  std::span<const std::size_t> targets);

/// rho'[perm[x], perm[y]] = rho[x, y]; perm must be a bijection.
DensityMatrix permute_basis(const DensityMatrix& rho, std::span<const std::size_t> perm);

std::vector<std::size_t> swap_permutation(std::size_t n_qubits, std::size_t a, std::size_t b);
std::vector<std::size_t> cnot_permutation(std::size_t n_qubits, std::size_t control,
                                          std::size_t target);

/// rho -> (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z) on one qubit.
DensityMatrix pauli_noise_qubit(const DensityMatrix& rho, std::size_t qubit, double p);

/// Traces out `qubits` and replaces them with |0...0><0...0|.
DensityMatrix reset_qubits(const DensityMatrix& rho, std::span<const std::size_t> qubits);

/// Probability that every qubit in `qubits` reads 0.
double zero_population(const DensityMatrix& rho, std::span<const std::size_t> qubits);

}  // namespace qgabench
