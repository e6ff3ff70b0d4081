#pragma once

// Classical baselines: a bit-string GA (BGA) and four complex-vector GAs.
//
//   CGAai   linear-combination crossover, Gaussian mutation
//   CGAaii  linear-combination crossover, Pauli mutation
//   CGAbi   coefficient-swap crossover,   Gaussian mutation
//   CGAbii  coefficient-swap crossover,   Pauli mutation
//
// All variants share one generation scheme: keep the lower-energy half,
// duplicate it, cross the copies pairwise in energy order, then mutate the
// whole population.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qgabench/hamiltonians.hpp"
#include "qgabench/linalg.hpp"
#include "qgabench/record.hpp"
#include "qgabench/rng.hpp"

namespace qgabench {

/// A c-bit string; bit 0 is the most significant, matching qubit order.
class BitIndividual {
 public:
  BitIndividual(std::uint32_t value, std::size_t n_bits);

  std::uint32_t value() const noexcept { return value_; }
  std::size_t n_bits() const noexcept { return n_bits_; }
  bool bit(std::size_t i) const;
  BitIndividual with_flipped(std::size_t i) const;

  bool operator==(const BitIndividual&) const = default;

 private:
  std::uint32_t value_;
  std::size_t n_bits_;
};

/// A unit vector of 2^c complex amplitudes.
class VectorIndividual {
 public:
  /// Requires unit norm within kEqualityTol.
  explicit VectorIndividual(ComplexVector amplitudes);
  static VectorIndividual normalized(ComplexVector v);

  const ComplexVector& amplitudes() const noexcept { return amps_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }

 private:
  ComplexVector amps_;
};

enum class Crossover { linear, coefficient_swap };
enum class Mutation { gaussian, pauli };
enum class Pauli { x, y, z };

struct CgaConfig {
  Crossover crossover = Crossover::linear;
  Mutation mutation = Mutation::gaussian;
  double p = 1.0 / 24.0;  // Pauli mutation, per qubit
  double q = 1.0 / 24.0;  // Gaussian mutation, per coefficient
  double sigma = 0.228;
  std::size_t generations = 10;
  std::size_t n = 4;
  std::size_t c = 2;

  void validate() const;
};

struct BgaConfig {
  double p = 1.0 / 24.0;
  std::size_t generations = 10;
  std::size_t n = 4;
  std::size_t c = 2;

  void validate() const;
};

/// Energy of a bit string: the diagonal entry it indexes (BGA requires a
/// diagonal Hamiltonian, whose eigenstates are the basis states).
double energy(const BitIndividual& b, const ProblemHamiltonian& h);
/// v^dag H v.
double energy(const VectorIndividual& v, const ProblemHamiltonian& h);
/// 1 if the string indexes the ground eigenstate, else 0.
double fidelity(const BitIndividual& b, const ProblemHamiltonian& h);
/// |<u_1|v>|^2.
double fidelity(const VectorIndividual& v, const ProblemHamiltonian& h);

/// Stable ascending sort by energy, truncated to the first half.
std::vector<BitIndividual> select_halve(std::span<const BitIndividual> pop,
                                        const ProblemHamiltonian& h);
std::vector<VectorIndividual> select_halve(std::span<const VectorIndividual> pop,
                                           const ProblemHamiltonian& h);

/// normalize(2 v1 + v2), normalize(v1 + 2 v2). A child with zero norm falls
/// back to v1.
std::pair<VectorIndividual, VectorIndividual> crossover_linear(const VectorIndividual& v1,
                                                               const VectorIndividual& v2);

/// Child 1 takes the first half of v1's coefficients and the second half of
/// v2's; child 2 the reverse; both renormalized. A child with zero norm falls
/// back to the parent that contributed its first half.
std::pair<VectorIndividual, VectorIndividual> crossover_coeff_swap(const VectorIndividual& v1,
                                                                   const VectorIndividual& v2);

/// With probability q per coefficient, adds re + i im with re, im ~ N(0, sigma);
/// then renormalizes.
VectorIndividual mutate_gaussian(const VectorIndividual& v, double q, double sigma, Rng& rng);

/// With probability p per qubit, applies a uniformly chosen X, Y or Z.
VectorIndividual mutate_pauli(const VectorIndividual& v, double p, Rng& rng);

/// Applies one Pauli to one qubit of a state vector.
VectorIndividual apply_pauli(const VectorIndividual& v, std::size_t qubit, Pauli pauli);

/// Survivors followed by their crossed copies; then per-bit NOT with
/// probability p on every individual. Rejects non-diagonal Hamiltonians.
std::vector<BitIndividual> bga_step(std::span<const BitIndividual> pop, const ProblemHamiltonian& h,
                                    double p, Rng& rng);

std::vector<VectorIndividual> cga_step(std::span<const VectorIndividual> pop,
                                       const ProblemHamiltonian& h, const CgaConfig& cfg, Rng& rng);

RunRecord run_bga(const ProblemHamiltonian& h, const BgaConfig& cfg,
                  std::vector<BitIndividual> initial, Rng& rng);
RunRecord run_cga(const ProblemHamiltonian& h, const CgaConfig& cfg,
                  std::vector<VectorIndividual> initial, Rng& rng);

}  // namespace qgabench
