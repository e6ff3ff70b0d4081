#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgabench/linalg.hpp"
#include "qgabench/rng.hpp"

namespace qgabench {

/// A Hermitian problem Hamiltonian together with its ascending
/// eigendecomposition. Fitness is low energy.
class ProblemHamiltonian {
 public:
  /// Diagonalizes `matrix` with eigh().
  ProblemHamiltonian(std::string id, ComplexMatrix matrix, std::string unit_label,
                     std::optional<std::uint64_t> seed = std::nullopt);

  /// Uses a known eigensystem instead of diagonalizing; checked against
  /// the matrix to kSpectralTol.
  ProblemHamiltonian(std::string id, ComplexMatrix matrix, Eigensystem eig, std::string unit_label,
                     std::optional<std::uint64_t> seed = std::nullopt);

  const std::string& id() const noexcept { return id_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const RealVector& eigenvalues() const noexcept { return eig_.values; }
  const ComplexMatrix& eigenvectors() const noexcept { return eig_.vectors; }
  const std::string& unit_label() const noexcept { return unit_label_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  double ground_energy() const { return eig_.values(0); }
  PureState eigenstate(std::size_t i) const;
  PureState ground_state() const { return eigenstate(0); }

  bool is_diagonal(double tol = kStructuralTol) const;

 private:
  void check() const;

  std::string id_;
  ComplexMatrix matrix_;
  Eigensystem eig_;
  std::string unit_label_;
  std::optional<std::uint64_t> seed_;
};

inline const std::vector<double> kDefaultSpectrum{0.0, 1.0, 2.0, 3.0};
inline constexpr std::size_t kDefaultEnsembleSize = 200;

/// diag(0, 1, 2, 3) in arbitrary units.
ProblemHamiltonian make_hc();

/// Hydrogen molecule, Bravyi-Kitaev representation, in Hartree.
ProblemHamiltonian make_h2();

/// U diag(spectrum) U^dag with U Haar-distributed. Stored eigenvectors are
/// the columns of U.
ProblemHamiltonian sample_random_hamiltonian(std::span<const double> spectrum, Rng& rng,
                                             std::string id = "random");

/// Ensemble member i is drawn from seed derive_seed(master_seed, {tag, i})
/// and named "ens-NNN".
std::vector<ProblemHamiltonian> sample_ensemble(std::span<const double> spectrum,
                                                std::size_t count, std::uint64_t master_seed);

/// {"schema_version", "id", "unit_label", "seed", "matrix": [[[re, im], ...], ...]}
std::string hamiltonian_to_json(const ProblemHamiltonian& h, int indent = -1);
ProblemHamiltonian hamiltonian_from_json(const std::string& text);

/// A JSON document with a "hamiltonians" array of the objects above.
void save_hamiltonians(const std::string& path, std::span<const ProblemHamiltonian> hs);
std::vector<ProblemHamiltonian> load_hamiltonians(const std::string& path);

/// Dumps a density matrix as {"dim", "matrix": [[[re, im], ...], ...]}.
std::string density_matrix_to_json(const DensityMatrix& rho, int indent = -1);
DensityMatrix density_matrix_from_json(const std::string& text);

}  // namespace qgabench
