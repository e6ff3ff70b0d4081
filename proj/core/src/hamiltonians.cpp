#include "qgabench/hamiltonians.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qgabench {

using nlohmann::json;

namespace {

constexpr int kHamiltonianSchemaVersion = 1;
constexpr std::uint64_t kEnsembleTag = 0x48414d494c54ULL;

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty()) {
    throw std::invalid_argument("matrix must be a nonempty array of rows");
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw std::invalid_argument("matrix must be square");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& e = row.at(static_cast<std::size_t>(j));
      if (!e.is_array() || e.size() != 2) {
        throw std::invalid_argument("matrix entries must be [re, im] pairs");
      }
      m(i, j) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

json hamiltonian_json(const ProblemHamiltonian& h) {
  json j;
  j["schema_version"] = kHamiltonianSchemaVersion;
  j["id"] = h.id();
  j["unit_label"] = h.unit_label();
  j["seed"] = h.seed() ? json(*h.seed()) : json(nullptr);
  j["matrix"] = matrix_to_json(h.matrix());
  return j;
}

ProblemHamiltonian hamiltonian_from(const json& j) {
  const int version = j.at("schema_version").get<int>();
  if (version != kHamiltonianSchemaVersion) {
    throw std::invalid_argument("unsupported hamiltonian schema_version " + std::to_string(version));
  }
  std::optional<std::uint64_t> seed;
  if (j.contains("seed") && !j.at("seed").is_null()) {
    seed = j.at("seed").get<std::uint64_t>();
  }
  return ProblemHamiltonian(j.at("id").get<std::string>(), matrix_from_json(j.at("matrix")),
                            j.at("unit_label").get<std::string>(), seed);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ProblemHamiltonian::ProblemHamiltonian(std::string id, ComplexMatrix matrix, std::string unit_label,
                                       std::optional<std::uint64_t> seed)
    : id_(std::move(id)),
      matrix_(std::move(matrix)),
      eig_(eigh(matrix_)),
      unit_label_(std::move(unit_label)),
      seed_(seed) {
  check();
}

ProblemHamiltonian::ProblemHamiltonian(std::string id, ComplexMatrix matrix, Eigensystem eig,
                                       std::string unit_label, std::optional<std::uint64_t> seed)
    : id_(std::move(id)),
      matrix_(std::move(matrix)),
      eig_(std::move(eig)),
      unit_label_(std::move(unit_label)),
      seed_(seed) {
  check();
}

void ProblemHamiltonian::check() const {
  if (!is_hermitian(matrix_, kStructuralTol)) {
    throw std::invalid_argument("problem Hamiltonian " + id_ + " is not Hermitian");
  }
  const auto n = matrix_.rows();
  if (eig_.values.size() != n || eig_.vectors.rows() != n || eig_.vectors.cols() != n) {
    throw std::invalid_argument("eigensystem shape does not match Hamiltonian " + id_);
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    if (eig_.values(i) < eig_.values(i - 1)) {
      throw std::invalid_argument("eigenvalues of " + id_ + " are not ascending");
    }
  }
  const ComplexMatrix recon = eig_.vectors * eig_.values.cast<Complex>().asDiagonal() *
                              eig_.vectors.adjoint();
  if (!approx_equal(recon, matrix_, kSpectralTol)) {
    throw std::invalid_argument("eigensystem does not reconstruct Hamiltonian " + id_);
  }
}

PureState ProblemHamiltonian::eigenstate(std::size_t i) const {
  if (i >= dim()) {
    throw std::out_of_range("eigenstate index out of range");
  }
  return PureState::normalized(eig_.vectors.col(static_cast<Eigen::Index>(i)));
}

bool ProblemHamiltonian::is_diagonal(double tol) const {
  for (Eigen::Index j = 0; j < matrix_.cols(); ++j) {
    for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
      if (i != j && std::abs(matrix_(i, j)) > tol) {
        return false;
      }
    }
  }
  return true;
}

ProblemHamiltonian make_hc() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    m(i, i) = static_cast<double>(i);
  }
  return ProblemHamiltonian("hc", std::move(m), "a.u.");
}

ProblemHamiltonian make_h2() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 0.469;
  m(1, 1) = 0.216;
  m(1, 2) = 0.181;
  m(2, 1) = 0.181;
  m(2, 2) = -1.361;
  m(3, 3) = 0.676;
  return ProblemHamiltonian("h2", std::move(m), "Eh");
}

ProblemHamiltonian sample_random_hamiltonian(std::span<const double> spectrum, Rng& rng,
                                             std::string id) {
  if (spectrum.empty()) {
    throw std::invalid_argument("spectrum must be nonempty");
  }
  if (!std::is_sorted(spectrum.begin(), spectrum.end())) {
    throw std::invalid_argument("spectrum must be ascending");
  }
  const std::uint64_t seed = rng.seed();
  const std::size_t dim = spectrum.size();
  const ComplexMatrix u = haar_random_unitary(dim, rng);
  RealVector values(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    values(static_cast<Eigen::Index>(i)) = spectrum[i];
  }
  ComplexMatrix h = u * values.cast<Complex>().asDiagonal() * u.adjoint();
  h = 0.5 * (h + h.adjoint());
  return ProblemHamiltonian(std::move(id), std::move(h), Eigensystem{values, u}, "a.u.", seed);
}

std::vector<ProblemHamiltonian> sample_ensemble(std::span<const double> spectrum,
                                                std::size_t count, std::uint64_t master_seed) {
  std::vector<ProblemHamiltonian> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(master_seed, {kEnsembleTag, i}));
    char name[32];
    std::snprintf(name, sizeof name, "ens-%03zu", i);
    out.push_back(sample_random_hamiltonian(spectrum, rng, name));
  }
  return out;
}

std::string hamiltonian_to_json(const ProblemHamiltonian& h, int indent) {
  return hamiltonian_json(h).dump(indent);
}

ProblemHamiltonian hamiltonian_from_json(const std::string& text) {
  return hamiltonian_from(json::parse(text));
}

void save_hamiltonians(const std::string& path, std::span<const ProblemHamiltonian> hs) {
  json doc;
  doc["schema_version"] = kHamiltonianSchemaVersion;
  doc["hamiltonians"] = json::array();
  for (const auto& h : hs) {
    doc["hamiltonians"].push_back(hamiltonian_json(h));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << doc.dump(1) << '\n';
}

std::vector<ProblemHamiltonian> load_hamiltonians(const std::string& path) {
  const json doc = json::parse(read_file(path));
  std::vector<ProblemHamiltonian> out;
  for (const auto& j : doc.at("hamiltonians")) {
    out.push_back(hamiltonian_from(j));
  }
  if (out.empty()) {
    throw std::invalid_argument(path + " contains no hamiltonians");
  }
  return out;
}

std::string density_matrix_to_json(const DensityMatrix& rho, int indent) {
  json j;
  j["schema_version"] = kHamiltonianSchemaVersion;
  j["dim"] = rho.dim();
  j["matrix"] = matrix_to_json(rho.matrix());
  return j.dump(indent);
}

DensityMatrix density_matrix_from_json(const std::string& text) {
  const json j = json::parse(text);
  return DensityMatrix(matrix_from_json(j.at("matrix")));
}

}  // namespace qgabench
