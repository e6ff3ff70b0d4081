#include <algorithm>
#include <numeric>

#include "qgabench/hamiltonians.hpp"
#include "qgabench/linalg.hpp"
#include "test_support.hpp"

namespace qgabench {
namespace {

using namespace testing;

// Brute-force embedding oracle: <y|E|x> = op[sub(y), sub(x)] when the
// non-target bits of x and y agree. sub() reads the targets in listed order,
// first target as the most significant bit of the local index.
ComplexMatrix embed_oracle(const ComplexMatrix& op, std::size_t n_qubits,
                           const std::vector<std::size_t>& targets) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  auto bit = [&](std::size_t x, std::size_t q) { return (x >> (n_qubits - 1 - q)) & 1U; };
  auto sub = [&](std::size_t x) {
    std::size_t s = 0;
    for (std::size_t t : targets) {
      s = (s << 1) | bit(x, t);
    }
    return s;
  };
  auto rest_equal = [&](std::size_t x, std::size_t y) {
    for (std::size_t q = 0; q < n_qubits; ++q) {
      if (std::find(targets.begin(), targets.end(), q) == targets.end() && bit(x, q) != bit(y, q)) {
        return false;
      }
    }
    return true;
  };
  ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
  for (std::size_t y = 0; y < dim; ++y) {
    for (std::size_t x = 0; x < dim; ++x) {
      if (rest_equal(x, y)) {
        e(y, x) = op(sub(y), sub(x));
      }
    }
  }
  return e;
}

TEST(TensorProduct, IdentityTimesIdentity) {
  EXPECT_TRUE(approx_equal(tensor_product(identity(2), identity(2)), identity(4)));
}

TEST(TensorProduct, DiagonalTimesIdentity) {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(1, 1) = 1.0;
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(2, 2) = expected(3, 3) = 1.0;
  EXPECT_TRUE(approx_equal(tensor_product(d, identity(2)), expected));
}

TEST(TensorProduct, XXFlipsBothQubits) {
  const ComplexVector out = tensor_product(pauli_x(), pauli_x()) * ket(4, 0b00);
  EXPECT_TRUE(approx_equal(out, ket(4, 0b11)));
}

TEST(TensorProduct, VectorOrderMatchesQubitOrder) {
  EXPECT_TRUE(approx_equal(tensor_product(ket(2, 1), ket(2, 0)), ket(4, 0b10)));
}

TEST(PartialTrace, ProductStateGivesFactors) {
  Rng rng(11);
  const auto a = random_density(2, rng);
  const auto b = random_density(2, rng);
  const DensityMatrix ab(tensor_product(a.matrix(), b.matrix()));
  const auto layout = RegisterLayout::qubits(2);
  const std::vector<std::size_t> keep0{0};
  const std::vector<std::size_t> keep1{1};
  EXPECT_TRUE(approx_equal(partial_trace(ab, layout, keep0).matrix(), a.matrix(), 1e-12));
  EXPECT_TRUE(approx_equal(partial_trace(ab, layout, keep1).matrix(), b.matrix(), 1e-12));
}

TEST(PartialTrace, BellStateMarginalIsMaximallyMixed) {
  ComplexVector bell = (ket(4, 0) + ket(4, 3)) / std::sqrt(2.0);
  const DensityMatrix rho(projector(bell));
  const std::vector<std::size_t> keep{0};
  EXPECT_TRUE(approx_equal(partial_trace(rho, RegisterLayout::qubits(2), keep).matrix(),
                           identity(2) / 2.0));
}

TEST(PartialTrace, KeepAllIsIdentity) {
  Rng rng(12);
  const auto rho = random_density(8, rng);
  const std::vector<std::size_t> keep{2, 0, 1};
  EXPECT_TRUE(approx_equal(partial_trace(rho, RegisterLayout::qubits(3), keep).matrix(),
                           rho.matrix()));
}

TEST(PartialTrace, RejectsOutOfRangeIndex) {
  const auto rho = DensityMatrix::maximally_mixed(4);
  const std::vector<std::size_t> keep{2};
  EXPECT_THROW(partial_trace(rho, RegisterLayout::qubits(2), keep), std::out_of_range);
}

TEST(PartialTrace, RandomProductsProperty) {
  Rng rng(13);
  const RegisterLayout layout(2, 2);
  const std::vector<std::size_t> keep_a{0, 1};
  const std::vector<std::size_t> keep_b{2, 3};
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_density(4, rng);
    const auto b = random_density(4, rng);
    const DensityMatrix ab(tensor_product(a.matrix(), b.matrix()));
    EXPECT_LE(max_abs(partial_trace(ab, layout, keep_a).matrix() - a.matrix()), 1e-10);
    EXPECT_LE(max_abs(partial_trace(ab, layout, keep_b).matrix() - b.matrix()), 1e-10);
  }
}

TEST(EmbedOperator, XOnQubit0IsXTensorI) {
  const std::vector<std::size_t> t{0};
  EXPECT_TRUE(approx_equal(embed_operator(pauli_x(), RegisterLayout::qubits(2), t),
                           tensor_product(pauli_x(), identity(2))));
}

TEST(EmbedOperator, XOnQubit1IsITensorX) {
  const std::vector<std::size_t> t{1};
  EXPECT_TRUE(approx_equal(embed_operator(pauli_x(), RegisterLayout::qubits(2), t),
                           tensor_product(identity(2), pauli_x())));
}

TEST(EmbedOperator, SwapOnQubits20MatchesPermutationOracle) {
  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  const std::vector<std::size_t> t{2, 0};
  const ComplexMatrix e = embed_operator(swap, RegisterLayout::qubits(3), t);
  // On basis states, SWAP(q2, q0) exchanges the first and last bit.
  for (std::size_t x = 0; x < 8; ++x) {
    const std::size_t b0 = (x >> 2) & 1U;
    const std::size_t b2 = x & 1U;
    const std::size_t y = (x & 0b010) | (b2 << 2) | b0;
    EXPECT_TRUE(approx_equal(e * ket(8, x), ket(8, y))) << "basis state " << x;
  }
}

TEST(EmbedOperator, AgreesWithOracleForQgaTargets) {
  Rng rng(14);
  const RegisterLayout layout(4, 2);
  const std::vector<std::vector<std::size_t>> target_sets{
      {0, 1}, {2, 3}, {6, 7}, {0, 1, 2, 3}, {2, 3, 4, 5}, {0, 1, 4, 5}, {3, 7}, {5}, {7, 0}};
  for (const auto& t : target_sets) {
    const ComplexMatrix op = random_matrix(std::size_t{1} << t.size(), rng);
    EXPECT_LE(max_abs(embed_operator(op, layout, t) - embed_oracle(op, 8, t)), 1e-12);
  }
}

TEST(EmbedOperator, RejectsDimensionMismatch) {
  const std::vector<std::size_t> t{0, 1};
  EXPECT_THROW(embed_operator(pauli_x(), RegisterLayout::qubits(3), t), std::invalid_argument);
}

TEST(ApplyChannel, IdentityKrausLeavesStateUnchanged) {
  Rng rng(15);
  const auto rho = random_density(4, rng);
  const KrausChannel id({identity(4)});
  EXPECT_TRUE(approx_equal(apply_channel(rho, id).matrix(), rho.matrix()));
}

TEST(ApplyChannel, DepolarizingThreeQuartersGivesMaximallyMixed) {
  const double p = 0.75;
  const KrausChannel ch({std::sqrt(1 - p) * identity(2), std::sqrt(p / 3) * pauli_x(),
                         std::sqrt(p / 3) * pauli_y(), std::sqrt(p / 3) * pauli_z()});
  const DensityMatrix zero(projector(ket(2, 0)));
  EXPECT_TRUE(approx_equal(apply_channel(zero, ch).matrix(), identity(2) / 2.0));
}

TEST(ApplyChannel, PreservesTraceForRandomChannels) {
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    // Kraus operators from a random isometry V (8x4): K_k = rows 4k..4k+3.
    const ComplexMatrix u = haar_random_unitary(8, rng);
    const ComplexMatrix v = u.leftCols(4);
    const KrausChannel ch({v.topRows(4), v.bottomRows(4)});
    const auto out = apply_channel(random_density(4, rng), ch);
    expect_valid_state(out);
  }
}

TEST(ApplyChannel, RejectsIncompleteKrausSet) {
  const KrausChannel half({0.5 * identity(2)});
  EXPECT_THROW(apply_channel(DensityMatrix::maximally_mixed(2), half), std::domain_error);
}

TEST(ApplyChannel, RejectsDimensionMismatch) {
  const KrausChannel id({identity(4)});
  EXPECT_THROW(apply_channel(DensityMatrix::maximally_mixed(2), id), std::invalid_argument);
}

TEST(HaarUnitary, UnitaryForThousandSamples) {
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const ComplexMatrix u = haar_random_unitary(4, rng);
    ASSERT_LE(max_abs(u.adjoint() * u - identity(4)), 1e-10);
  }
}

TEST(HaarUnitary, DimensionOneIsUnitModulus) {
  Rng rng(18);
  const ComplexMatrix u = haar_random_unitary(1, rng);
  ASSERT_EQ(u.rows(), 1);
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-12);
}

TEST(HaarUnitary, MeanSquaredModulusOfCornerIsQuarter) {
  Rng rng(19);
  double acc = 0.0;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    acc += std::norm(haar_random_unitary(4, rng)(0, 0));
  }
  EXPECT_NEAR(acc / samples, 0.25, 0.01);
}

// A Haar column is uniform on the sphere, so |U_00|^2 ~ Beta(1, d-1) with
// variance (d-1)/(d^2 (d+1)); QR without the phase fix fails this.
TEST(HaarUnitary, SecondMomentMatchesBetaDistribution) {
  Rng rng(20);
  double m2 = 0.0;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    const double x = std::norm(haar_random_unitary(4, rng)(0, 0));
    m2 += x * x;
  }
  // E[x^2] = 2 / (d (d+1)) for Beta(1, d-1).
  EXPECT_NEAR(m2 / samples, 2.0 / 20.0, 0.005);
}

TEST(HaarUnitary, PhaseOfDiagonalIsUniform) {
  // With R's phases folded into Q, E[U_00 / |U_00|] = 0.
  Rng rng(21);
  Complex acc = 0.0;
  const int samples = 20000;
  for (int i = 0; i < samples; ++i) {
    const Complex z = haar_random_unitary(4, rng)(0, 0);
    acc += z / std::abs(z);
  }
  EXPECT_LT(std::abs(acc / static_cast<double>(samples)), 0.03);
}

TEST(HaarPureState, UnitNorm) {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    EXPECT_NEAR(haar_random_pure_state(4, rng).amplitudes().norm(), 1.0, 1e-12);
  }
}

TEST(HaarPureState, QubitAmplitudeMeanIsHalf) {
  Rng rng(23);
  double acc = 0.0;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    acc += std::norm(haar_random_pure_state(2, rng).amplitudes()(0));
  }
  EXPECT_NEAR(acc / samples, 0.5, 0.01);
}

TEST(HaarPureState, DeterministicForSeed) {
  Rng a(24);
  Rng b(24);
  EXPECT_EQ(haar_random_pure_state(4, a).amplitudes(), haar_random_pure_state(4, b).amplitudes());
}

TEST(Eigh, DiagonalInputSortsWithCanonicalVectors) {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  h.diagonal() << 3, 0, 2, 1;
  const auto e = eigh(h);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(e.values(i), i, 1e-12);
  }
  // eigenvalue k sits at diagonal position {1, 3, 2, 0}[k].
  const std::size_t pos[] = {1, 3, 2, 0};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_TRUE(approx_equal(e.vectors.col(static_cast<Eigen::Index>(k)), ket(4, pos[k])));
  }
}

TEST(Eigh, H2GroundEnergy) {
  EXPECT_NEAR(eigh(make_h2().matrix()).values(0), -1.382, 5e-4);
}

TEST(Eigh, PauliX) {
  const auto e = eigh(pauli_x());
  EXPECT_NEAR(e.values(0), -1.0, 1e-12);
  EXPECT_NEAR(e.values(1), 1.0, 1e-12);
  const double s = 1.0 / std::sqrt(2.0);
  // Largest-magnitude component real positive; ties resolved to the first.
  EXPECT_TRUE(approx_equal(e.vectors.col(0), Eigen::Vector2cd(s, -s)));
  EXPECT_TRUE(approx_equal(e.vectors.col(1), Eigen::Vector2cd(s, s)));
}

TEST(Eigh, RejectsNonHermitian) {
  ComplexMatrix m = identity(2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eigh(m), std::invalid_argument);
}

TEST(Eigh, RandomHermitianReconstructionProperty) {
  Rng rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix g = random_matrix(4, rng);
    const ComplexMatrix h = 0.5 * (g + g.adjoint());
    const auto e = eigh(h);
    const ComplexMatrix rec = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LE((rec - h).norm(), 1e-9);
    EXPECT_LE(max_abs(e.vectors.adjoint() * e.vectors - identity(4)), 1e-9);
    for (int i = 0; i + 1 < 4; ++i) {
      EXPECT_LE(e.values(i), e.values(i + 1));
    }
    for (int k = 0; k < 4; ++k) {
      Eigen::Index arg = 0;
      e.vectors.col(k).cwiseAbs().maxCoeff(&arg);
      EXPECT_NEAR(e.vectors(arg, k).imag(), 0.0, 1e-12);
      EXPECT_GT(e.vectors(arg, k).real(), 0.0);
    }
  }
}

TEST(Fidelity, PureCases) {
  Rng rng(26);
  const PureState u = haar_random_pure_state(4, rng);
  EXPECT_NEAR(fidelity_to_pure(DensityMatrix::from_pure(u), u), 1.0, 1e-12);
  // Orthogonal complement vector via Gram-Schmidt on a basis state.
  ComplexVector v = ket(4, 0);
  v -= u.amplitudes() * u.amplitudes().dot(v);
  const PureState w = PureState::normalized(v);
  EXPECT_NEAR(fidelity_to_pure(DensityMatrix::from_pure(w), u), 0.0, 1e-12);
  EXPECT_NEAR(fidelity_to_pure(DensityMatrix::maximally_mixed(4), u), 0.25, 1e-12);
}

TEST(Fidelity, RejectsDimensionMismatch) {
  EXPECT_THROW(fidelity_to_pure(DensityMatrix::maximally_mixed(4), PureState::basis(2, 0)),
               std::invalid_argument);
}

TEST(Expectation, Cases) {
  const auto hc = make_hc();
  const auto h2 = make_h2();
  EXPECT_NEAR(expectation(DensityMatrix::maximally_mixed(4), hc.matrix()), 1.5, 1e-12);
  EXPECT_NEAR(expectation(DensityMatrix::from_pure(hc.ground_state()), hc.matrix()), 0.0, 1e-12);
  EXPECT_NEAR(expectation(DensityMatrix::from_pure(h2.ground_state()), h2.matrix()), -1.382, 5e-4);
}

TEST(Expectation, RejectsDimensionMismatch) {
  EXPECT_THROW(expectation(DensityMatrix::maximally_mixed(2), make_hc().matrix()),
               std::invalid_argument);
}

TEST(DensityMatrix, ConstructorChecksInvariants) {
  ComplexMatrix bad_trace = identity(2);
  EXPECT_THROW(DensityMatrix{bad_trace}, std::domain_error);
  ComplexMatrix non_herm = identity(2) / 2.0;
  non_herm(0, 1) = 0.3;
  EXPECT_THROW(DensityMatrix{non_herm}, std::domain_error);
  ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  const DensityMatrix neg(negative);
  EXPECT_THROW(neg.validate(), std::domain_error);
}

TEST(PureState, RequiresUnitNorm) {
  EXPECT_THROW(PureState(ket(2, 0) * 2.0), std::invalid_argument);
  EXPECT_THROW(PureState::normalized(ComplexVector::Zero(2)), std::invalid_argument);
}

TEST(KrausChannel, CompletenessError) {
  const KrausChannel ok({identity(2)});
  EXPECT_TRUE(ok.is_trace_preserving());
  const KrausChannel bad({identity(2), identity(2)});
  EXPECT_NEAR(bad.completeness_error(), 1.0, 1e-12);
}

TEST(RegisterLayout, DimensionsAndQgaShape) {
  const RegisterLayout l(4, 2);
  EXPECT_EQ(l.dim(), 256U);
  EXPECT_EQ(l.register_dim(), 4U);
  EXPECT_EQ(l.register_qubits(3), (std::vector<std::size_t>{6, 7}));
  EXPECT_NO_THROW(l.require_qga_shape());
  EXPECT_THROW(RegisterLayout(3, 2).require_qga_shape(), std::invalid_argument);
  EXPECT_THROW(RegisterLayout(4, 1).require_qga_shape(), std::invalid_argument);
  EXPECT_THROW(RegisterLayout(0, 2), std::invalid_argument);
}

}  // namespace
}  // namespace qgabench
