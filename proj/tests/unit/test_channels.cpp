#include <numeric>

#include "qgabench/channels.hpp"
#include "test_support.hpp"

namespace qgabench {
namespace {

using namespace testing;

const std::vector<std::vector<std::size_t>> kTargetSets{
    {0}, {3}, {7}, {0, 1}, {2, 3}, {6, 7}, {1, 0}, {3, 6}, {0, 1, 2, 3}, {4, 5, 6, 7}, {2, 3, 0, 1}};

TEST(LocalKernels, RowsMatchEmbeddedOperator) {
  Rng rng(31);
  const RegisterLayout layout(4, 2);
  for (const auto& t : kTargetSets) {
    const ComplexMatrix op = random_matrix(std::size_t{1} << t.size(), rng);
    const ComplexMatrix m = random_matrix(256, rng);
    ComplexMatrix got = m;
    apply_on_rows(got, op, t);
    EXPECT_LE(max_abs(got - embed_operator(op, layout, t) * m), 1e-10);
  }
}

TEST(LocalKernels, ColsMatchEmbeddedOperator) {
  Rng rng(32);
  const RegisterLayout layout(4, 2);
  for (const auto& t : kTargetSets) {
    const ComplexMatrix op = random_matrix(std::size_t{1} << t.size(), rng);
    const ComplexMatrix m = random_matrix(256, rng);
    ComplexMatrix got = m;
    apply_adjoint_on_cols(got, op, t);
    EXPECT_LE(max_abs(got - m * embed_operator(op, layout, t).adjoint()), 1e-10);
  }
}

TEST(LocalKernels, ConjugateLocalMatchesApplyChannel) {
  Rng rng(33);
  const RegisterLayout layout(4, 2);
  for (const auto& t : kTargetSets) {
    const ComplexMatrix u = haar_random_unitary(std::size_t{1} << t.size(), rng);
    const auto rho = random_density(256, rng);
    const auto got = conjugate_local(rho, u, t);
    const auto want = apply_channel(rho, KrausChannel({embed_operator(u, layout, t)}));
    EXPECT_LE(max_abs(got.matrix() - want.matrix()), 1e-10);
    expect_valid_state(got);
  }
}

TEST(LocalKernels, ConjugateHermitianOverAllRegisters) {
  Rng rng(34);
  const RegisterLayout layout(4, 2);
  const ComplexMatrix u = haar_random_unitary(4, rng);
  std::vector<std::vector<std::size_t>> groups;
  ComplexMatrix full = identity(1);
  for (std::size_t r = 0; r < 4; ++r) {
    groups.push_back(layout.register_qubits(r));
    full = tensor_product(full, u);
  }
  const auto rho = random_density(256, rng);
  ComplexMatrix got = rho.matrix();
  conjugate_hermitian(got, u, groups);
  EXPECT_LE(max_abs(got - full * rho.matrix() * full.adjoint()), 1e-10);
}

TEST(LocalKernels, LocalChannelMatchesEmbeddedKraus) {
  Rng rng(35);
  const RegisterLayout layout(4, 2);
  const ComplexMatrix v = haar_random_unitary(8, rng).leftCols(4);
  const KrausChannel local({v.topRows(4), v.bottomRows(4)});
  const std::vector<std::size_t> t{2, 5};
  std::vector<ComplexMatrix> full;
  for (const auto& k : local.operators()) {
    full.push_back(embed_operator(k, layout, t));
  }
  const auto rho = random_density(256, rng);
  const auto got = apply_local_channel(rho, local, t);
  const auto want = apply_channel(rho, KrausChannel(full));
  EXPECT_LE(max_abs(got.matrix() - want.matrix()), 1e-10);
}

TEST(Permutations, SwapPermutationMatchesEmbeddedSwap) {
  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  Rng rng(36);
  const auto rho = random_density(16, rng);
  const std::vector<std::size_t> t{1, 3};
  const ComplexMatrix e = embed_operator(swap, RegisterLayout::qubits(4), t);
  const auto got = permute_basis(rho, swap_permutation(4, 1, 3));
  EXPECT_LE(max_abs(got.matrix() - e * rho.matrix() * e.adjoint()), 1e-12);
}

TEST(Permutations, CnotPermutationMatchesEmbeddedCnot) {
  ComplexMatrix cnot = ComplexMatrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = 1.0;
  cnot(2, 3) = cnot(3, 2) = 1.0;
  Rng rng(37);
  const auto rho = random_density(16, rng);
  const std::vector<std::size_t> t{3, 0};
  const ComplexMatrix e = embed_operator(cnot, RegisterLayout::qubits(4), t);
  const auto got = permute_basis(rho, cnot_permutation(4, 3, 0));
  EXPECT_LE(max_abs(got.matrix() - e * rho.matrix() * e.adjoint()), 1e-12);
}

TEST(Permutations, RejectsNonBijection) {
  const std::vector<std::size_t> bad{0, 0, 1, 2};
  EXPECT_THROW(permute_basis(DensityMatrix::maximally_mixed(4), bad), std::invalid_argument);
}

TEST(PauliNoise, MatchesFourKrausChannel) {
  Rng rng(38);
  const auto rho = random_density(16, rng);
  const RegisterLayout layout = RegisterLayout::qubits(4);
  for (double p : {0.0, 0.1, 0.75, 1.0}) {
    const std::vector<std::size_t> t{2};
    const KrausChannel full({embed_operator(std::sqrt(1 - p) * identity(2), layout, t),
                             embed_operator(std::sqrt(p / 3) * pauli_x(), layout, t),
                             embed_operator(std::sqrt(p / 3) * pauli_y(), layout, t),
                             embed_operator(std::sqrt(p / 3) * pauli_z(), layout, t)});
    const auto got = pauli_noise_qubit(rho, 2, p);
    EXPECT_LE(max_abs(got.matrix() - apply_channel(rho, full).matrix()), 1e-12) << "p=" << p;
  }
}

TEST(PauliNoise, RejectsBadProbability) {
  EXPECT_THROW(pauli_noise_qubit(DensityMatrix::maximally_mixed(2), 0, 1.5), std::invalid_argument);
}

TEST(Reset, ProductStateKeepsOtherFactor) {
  Rng rng(39);
  const auto a = random_density(4, rng);
  const auto b = random_density(4, rng);
  const DensityMatrix ab(tensor_product(a.matrix(), b.matrix()));
  const std::vector<std::size_t> q{2, 3};
  const auto got = reset_qubits(ab, q);
  EXPECT_TRUE(approx_equal(got.matrix(), tensor_product(a.matrix(), projector(ket(4, 0))), 1e-12));
  EXPECT_NEAR(zero_population(got, q), 1.0, 1e-12);
}

TEST(Reset, EntangledStateKeepsMarginal) {
  Rng rng(40);
  const auto rho = random_density(16, rng);
  const std::vector<std::size_t> reset{1, 3};
  const std::vector<std::size_t> kept{0, 2};
  const auto got = reset_qubits(rho, reset);
  const auto layout = RegisterLayout::qubits(4);
  EXPECT_LE(max_abs(partial_trace(got, layout, kept).matrix() -
                    partial_trace(rho, layout, kept).matrix()),
            1e-12);
  EXPECT_NEAR(zero_population(got, reset), 1.0, 1e-12);
  expect_valid_state(got);
}

TEST(ZeroPopulation, MaximallyMixed) {
  const std::vector<std::size_t> q{0, 2};
  EXPECT_NEAR(zero_population(DensityMatrix::maximally_mixed(16), q), 0.25, 1e-12);
}

}  // namespace
}  // namespace qgabench
