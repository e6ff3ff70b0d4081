#pragma once

// Dense complex linear algebra over multi-register qubit systems.
//
// Qubit ordering is register-major, qubit-minor, and qubit 0 is the most
// significant bit of a basis index: for N qubits, qubit q corresponds to bit
// (N - 1 - q). This matches the left-to-right order of tensor_product().

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qgabench/rng.hpp"

namespace qgabench {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Elementwise default for matrix equality.
inline constexpr double kEqualityTol = 1e-12;
/// Hermiticity, trace and Kraus-completeness checks.
inline constexpr double kStructuralTol = 1e-10;
/// Eigen-decomposition residuals and PSD slack.
inline constexpr double kSpectralTol = 1e-9;

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kEqualityTol);
bool is_hermitian(const ComplexMatrix& m, double tol = kStructuralTol);
bool is_power_of_two(std::size_t x) noexcept;
std::size_t log2_exact(std::size_t x);

/// n registers of c qubits each. The QGA further requires n % 4 == 0 and
/// c even; see require_qga_shape().
class RegisterLayout {
 public:
  RegisterLayout(std::size_t n_registers, std::size_t qubits_per_register);

  /// A plain qubit system (one qubit per register).
  static RegisterLayout qubits(std::size_t n_qubits) { return {n_qubits, 1}; }

  std::size_t n_registers() const noexcept { return n_; }
  std::size_t qubits_per_register() const noexcept { return c_; }
  std::size_t total_qubits() const noexcept { return n_ * c_; }
  std::size_t register_dim() const noexcept { return std::size_t{1} << c_; }
  std::size_t dim() const noexcept { return std::size_t{1} << (n_ * c_); }

  /// Qubit indices of one register, in order.
  std::vector<std::size_t> register_qubits(std::size_t reg) const;

  /// Throws unless n is divisible by four and c is even.
  void require_qga_shape() const;

  bool operator==(const RegisterLayout&) const = default;

 private:
  std::size_t n_;
  std::size_t c_;
};

class PureState {
 public:
  /// Requires unit norm within kEqualityTol.
  explicit PureState(ComplexVector amplitudes);
  /// Normalizes; throws on a zero vector.
  static PureState normalized(ComplexVector v);
  static PureState basis(std::size_t dim, std::size_t index);

  const ComplexVector& amplitudes() const noexcept { return amps_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }

 private:
  ComplexVector amps_;
};

/// Hermitian, unit-trace, PSD matrix over a power-of-two dimension.
///
/// Construction checks shape, Hermiticity and trace. Positivity needs an
/// eigendecomposition, so it is only verified by validate().
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  /// Skips the Hermiticity/trace checks. For channel internals that are
  /// trace-preserving by construction.
  static DensityMatrix trusted(ComplexMatrix m);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  Complex trace() const { return m_.trace(); }
  double min_eigenvalue() const;

  /// Full invariant check (Hermitian, trace, min eigenvalue); throws
  /// std::domain_error describing the first violation.
  void validate(double structural_tol = kStructuralTol, double psd_tol = kSpectralTol) const;

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix m, Unchecked);
  ComplexMatrix m_;
};

/// Finite Kraus set {K_k}; all operators square and of equal dimension.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> operators);

  const std::vector<ComplexMatrix>& operators() const noexcept { return ops_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(ops_.front().rows()); }

  /// max |(sum K^dag K - I)_ij|.
  double completeness_error() const;
  bool is_trace_preserving(double tol = kStructuralTol) const {
    return completeness_error() <= tol;
  }

 private:
  std::vector<ComplexMatrix> ops_;
};

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b);

/// Reduced state on `keep` (any order given; result keeps the original
/// relative qubit order). Throws std::out_of_range on a bad index.
DensityMatrix partial_trace(const DensityMatrix& rho, const RegisterLayout& layout,
                            std::span<const std::size_t> keep);

/// Full-space operator acting as `op` on `targets` (in the listed order) and
/// as identity elsewhere, built by conjugating op (x) I with a qubit
/// permutation.
ComplexMatrix embed_operator(const ComplexMatrix& op, const RegisterLayout& layout,
                             std::span<const std::size_t> targets);

/// rho -> sum_k K rho K^dag. Rejects dimension mismatches and channels that
/// fail the completeness check.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch);

/// Haar unitary from a complex Ginibre matrix via QR, with R's diagonal
/// phases folded into Q.
ComplexMatrix haar_random_unitary(std::size_t dim, Rng& rng);
PureState haar_random_pure_state(std::size_t dim, Rng& rng);

struct Eigensystem {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns, orthonormal
};

/// Hermitian eigensolver. Each eigenvector's largest-magnitude component
/// (first one on ties) is made real and positive.
Eigensystem eigh(const ComplexMatrix& h);

/// <u|rho|u>.
double fidelity_to_pure(const DensityMatrix& rho, const PureState& u);
/// Tr[H rho].
double expectation(const DensityMatrix& rho, const ComplexMatrix& h);

}  // namespace qgabench
