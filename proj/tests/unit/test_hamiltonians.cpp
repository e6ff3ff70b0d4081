#include <cstdio>
#include <filesystem>

#include "qgabench/hamiltonians.hpp"
#include "test_support.hpp"

namespace qgabench {
namespace {

using namespace testing;

void expect_consistent(const ProblemHamiltonian& h) {
  EXPECT_TRUE(is_hermitian(h.matrix()));
  for (std::size_t i = 0; i < h.dim(); ++i) {
    const ComplexVector u = h.eigenstate(i).amplitudes();
    EXPECT_LE(max_abs(h.matrix() * u - h.eigenvalues()(static_cast<Eigen::Index>(i)) * u), 1e-9);
    if (i + 1 < h.dim()) {
      EXPECT_LE(h.eigenvalues()(static_cast<Eigen::Index>(i)),
                h.eigenvalues()(static_cast<Eigen::Index>(i + 1)));
    }
  }
}

TEST(MakeHc, SpectrumAndGroundState) {
  const auto h = make_hc();
  for (int i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(h.eigenvalues()(i), i);
  }
  EXPECT_TRUE(approx_equal(h.ground_state().amplitudes(), ket(4, 0)));
  EXPECT_DOUBLE_EQ(h.ground_energy(), 0.0);
  EXPECT_TRUE(h.is_diagonal());
  EXPECT_NEAR(expectation(DensityMatrix::maximally_mixed(4), h.matrix()), 1.5, 1e-12);
  expect_consistent(h);
}

TEST(MakeH2, Entries) {
  const auto h = make_h2();
  const auto& m = h.matrix();
  EXPECT_DOUBLE_EQ(m(0, 0).real(), 0.469);
  EXPECT_DOUBLE_EQ(m(1, 1).real(), 0.216);
  EXPECT_DOUBLE_EQ(m(2, 2).real(), -1.361);
  EXPECT_DOUBLE_EQ(m(3, 3).real(), 0.676);
  EXPECT_DOUBLE_EQ(m(1, 2).real(), 0.181);
  EXPECT_DOUBLE_EQ(m(2, 1).real(), 0.181);
  EXPECT_FALSE(h.is_diagonal());
  EXPECT_EQ(h.unit_label(), "Eh");
  expect_consistent(h);
}

TEST(MakeH2, GroundEnergy) {
  // Closed form of the 2x2 block.
  const double a = 0.216;
  const double d = -1.361;
  const double b = 0.181;
  const double oracle = 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + b * b);
  EXPECT_NEAR(make_h2().ground_energy(), oracle, 1e-12);
  EXPECT_NEAR(make_h2().ground_energy(), -1.382, 5e-4);
}

TEST(RandomHamiltonian, ReproducesSpectrum) {
  Rng rng(41);
  const std::vector<double> spectrum{0, 1, 2, 3};
  for (int trial = 0; trial < 50; ++trial) {
    const auto h = sample_random_hamiltonian(spectrum, rng);
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(h.eigenvalues()(i), spectrum[static_cast<std::size_t>(i)], 1e-9);
    }
    const ComplexMatrix rec = h.eigenvectors() *
                              h.eigenvalues().cast<Complex>().asDiagonal() *
                              h.eigenvectors().adjoint();
    EXPECT_LE(max_abs(rec - h.matrix()), 1e-9);
    expect_consistent(h);
  }
}

TEST(RandomHamiltonian, DeterministicForSeed) {
  const std::vector<double> spectrum{0, 1, 2, 3};
  Rng a(42);
  Rng b(42);
  EXPECT_EQ(sample_random_hamiltonian(spectrum, a).matrix(),
            sample_random_hamiltonian(spectrum, b).matrix());
}

TEST(RandomHamiltonian, RejectsDescendingSpectrum) {
  Rng rng(43);
  const std::vector<double> spectrum{3, 2, 1, 0};
  EXPECT_THROW(sample_random_hamiltonian(spectrum, rng), std::invalid_argument);
}

TEST(RandomHamiltonian, MutualGroundFidelityAveragesQuarter) {
  Rng rng(44);
  const std::vector<double> spectrum{0, 1, 2, 3};
  double acc = 0.0;
  const int pairs = 10000;
  for (int i = 0; i < pairs; ++i) {
    const auto h1 = sample_random_hamiltonian(spectrum, rng);
    const auto h2 = sample_random_hamiltonian(spectrum, rng);
    const double f = std::norm(h1.ground_state().amplitudes().dot(h2.ground_state().amplitudes()));
    EXPECT_LT(f, 1.0);
    acc += f;
  }
  EXPECT_NEAR(acc / pairs, 0.25, 0.02);
}

TEST(Ensemble, NamesSeedsAndDeterminism) {
  const std::vector<double> spectrum{0, 1, 2, 3};
  const auto a = sample_ensemble(spectrum, 5, 7);
  const auto b = sample_ensemble(spectrum, 5, 7);
  const auto c = sample_ensemble(spectrum, 5, 8);
  ASSERT_EQ(a.size(), 5U);
  EXPECT_EQ(a[0].id(), "ens-000");
  EXPECT_EQ(a[4].id(), "ens-004");
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(a[i].matrix(), b[i].matrix());
    EXPECT_NE(a[i].matrix(), c[i].matrix());
    EXPECT_TRUE(a[i].seed().has_value());
  }
  EXPECT_NE(a[0].matrix(), a[1].matrix());
  // A prefix of a larger ensemble is the smaller ensemble.
  const auto big = sample_ensemble(spectrum, 8, 7);
  EXPECT_EQ(big[3].matrix(), a[3].matrix());
}

TEST(HamiltonianJson, RoundTripIsExact) {
  const std::vector<double> spectrum{0, 1, 2, 3};
  for (const auto& h : sample_ensemble(spectrum, 3, 9)) {
    const auto back = hamiltonian_from_json(hamiltonian_to_json(h));
    EXPECT_EQ(back.id(), h.id());
    EXPECT_EQ(back.unit_label(), h.unit_label());
    EXPECT_EQ(back.seed(), h.seed());
    EXPECT_EQ(back.matrix(), h.matrix());
    // Reload re-diagonalizes the stored matrix.
    EXPECT_LE((back.eigenvalues() - h.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
  }
  const auto h2 = hamiltonian_from_json(hamiltonian_to_json(make_h2(), 2));
  EXPECT_EQ(h2.matrix(), make_h2().matrix());
  EXPECT_FALSE(h2.seed().has_value());
}

TEST(HamiltonianJson, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "qgabench_test_hams.json";
  std::vector<ProblemHamiltonian> hs{make_hc(), make_h2()};
  save_hamiltonians(path.string(), hs);
  const auto back = load_hamiltonians(path.string());
  std::filesystem::remove(path);
  ASSERT_EQ(back.size(), 2U);
  EXPECT_EQ(back[0].id(), "hc");
  EXPECT_EQ(back[1].matrix(), make_h2().matrix());
}

TEST(HamiltonianJson, RejectsMalformed) {
  EXPECT_ANY_THROW(hamiltonian_from_json("{}"));
  EXPECT_ANY_THROW(hamiltonian_from_json(
      R"({"schema_version":1,"id":"x","unit_label":"a.u.","matrix":[[[1,0],[0,0]]]})"));
  EXPECT_ANY_THROW(hamiltonian_from_json(
      R"({"schema_version":1,"id":"x","unit_label":"a.u.","matrix":[[[0,0],[1,0]],[[0,0],[0,0]]]})"));
}

TEST(DensityJson, RoundTrip) {
  Rng rng(45);
  const auto rho = random_density(4, rng);
  EXPECT_EQ(density_matrix_from_json(density_matrix_to_json(rho)).matrix(), rho.matrix());
}

TEST(ProblemHamiltonian, RejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(ProblemHamiltonian("bad", m, "a.u."), std::invalid_argument);
}

}  // namespace
}  // namespace qgabench
