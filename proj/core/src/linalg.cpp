#include "qgabench/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "index_tables.hpp"

namespace qgabench {

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return false;
  }
  if (a.size() == 0) {
    return true;
  }
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    return false;
  }
  if (m.size() == 0) {
    return true;
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_power_of_two(std::size_t x) noexcept { return x != 0 && (x & (x - 1)) == 0; }

std::size_t log2_exact(std::size_t x) {
  if (!is_power_of_two(x)) {
    throw std::invalid_argument("dimension " + std::to_string(x) + " is not a power of two");
  }
  std::size_t k = 0;
  while ((std::size_t{1} << k) < x) {
    ++k;
  }
  return k;
}

// ---------------------------------------------------------------------------
// RegisterLayout

RegisterLayout::RegisterLayout(std::size_t n_registers, std::size_t qubits_per_register)
    : n_(n_registers), c_(qubits_per_register) {
  if (n_ == 0 || c_ == 0) {
    throw std::invalid_argument("register layout needs at least one register and one qubit");
  }
  if (n_ * c_ > 20) {
    throw std::invalid_argument("register layout exceeds 20 qubits (dense simulation limit)");
  }
}

std::vector<std::size_t> RegisterLayout::register_qubits(std::size_t reg) const {
  if (reg >= n_) {
    throw std::out_of_range("register index " + std::to_string(reg) + " out of range");
  }
  std::vector<std::size_t> q(c_);
  for (std::size_t k = 0; k < c_; ++k) {
    q[k] = reg * c_ + k;
  }
  return q;
}

void RegisterLayout::require_qga_shape() const {
  if (n_ % 4 != 0) {
    throw std::invalid_argument("number of registers must be divisible by four (got " +
                                std::to_string(n_) + ")");
  }
  if (c_ % 2 != 0) {
    throw std::invalid_argument("qubits per register must be even (got " + std::to_string(c_) +
                                ")");
  }
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) {
    throw std::invalid_argument("pure state must be nonempty");
  }
  if (std::abs(amps_.norm() - 1.0) > kEqualityTol) {
    throw std::invalid_argument("pure state is not normalized");
  }
}

PureState PureState::normalized(ComplexVector v) {
  const double norm = v.norm();
  if (norm == 0.0 || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalize a zero vector");
  }
  v /= norm;
  return PureState(std::move(v));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw std::out_of_range("basis index out of range");
  }
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || !is_power_of_two(static_cast<std::size_t>(m_.rows()))) {
    throw std::invalid_argument("density matrix must be square with power-of-two dimension");
  }
  if (!is_hermitian(m_, kStructuralTol)) {
    throw std::domain_error("density matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - Complex(1.0, 0.0)) > kStructuralTol) {
    throw std::domain_error("density matrix does not have unit trace");
  }
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) { return DensityMatrix(std::move(m), Unchecked{}); }

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const auto& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint(), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  log2_exact(dim);
  const auto d = static_cast<Eigen::Index>(dim);
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(dim), Unchecked{});
}

double DensityMatrix::min_eigenvalue() const {
  // Symmetrize so the solver sees an exactly Hermitian input.
  const ComplexMatrix h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::validate(double structural_tol, double psd_tol) const {
  if (!is_hermitian(m_, structural_tol)) {
    throw std::domain_error("density matrix is not Hermitian");
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > structural_tol) {
    std::ostringstream os;
    os << "density matrix trace is " << tr << ", expected 1";
    throw std::domain_error(os.str());
  }
  const double lo = min_eigenvalue();
  if (lo < -psd_tol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << lo;
    throw std::domain_error(os.str());
  }
}

// ---------------------------------------------------------------------------
// KrausChannel

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators) : ops_(std::move(operators)) {
  if (ops_.empty()) {
    throw std::invalid_argument("Kraus channel needs at least one operator");
  }
  const auto d = ops_.front().rows();
  for (const auto& k : ops_) {
    if (k.rows() != d || k.cols() != d) {
      throw std::invalid_argument("Kraus operators must all be square of equal dimension");
    }
  }
}

double KrausChannel::completeness_error() const {
  const auto d = ops_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& k : ops_) {
    sum.noalias() += k.adjoint() * k;
  }
  sum -= ComplexMatrix::Identity(d, d);
  return sum.size() == 0 ? 0.0 : sum.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Products, traces, embedding

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const RegisterLayout& layout,
                            std::span<const std::size_t> keep) {
  const std::size_t nq = layout.total_qubits();
  if (rho.dim() != layout.dim()) {
    throw std::invalid_argument("partial_trace: state dimension does not match layout");
  }
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::invalid_argument("partial_trace: duplicate qubit index");
  }
  if (!kept.empty() && kept.back() >= nq) {
    throw std::out_of_range("partial_trace: qubit index out of range");
  }
  const auto traced = detail::complement(kept, nq);
  const auto ko = detail::subset_offsets(kept, nq);
  const auto to = detail::subset_offsets(traced, nq);

  const auto& m = rho.matrix();
  const auto kd = static_cast<Eigen::Index>(ko.size());
  ComplexMatrix out = ComplexMatrix::Zero(kd, kd);
  for (Eigen::Index b = 0; b < kd; ++b) {
    for (Eigen::Index a = 0; a < kd; ++a) {
      Complex s = 0.0;
      for (std::size_t t : to) {
        s += m(static_cast<Eigen::Index>(ko[a] | t), static_cast<Eigen::Index>(ko[b] | t));
      }
      out(a, b) = s;
    }
  }
  return DensityMatrix::trusted(std::move(out));
}

ComplexMatrix embed_operator(const ComplexMatrix& op, const RegisterLayout& layout,
                             std::span<const std::size_t> targets) {
  const std::size_t nq = layout.total_qubits();
  const std::vector<std::size_t> tq(targets.begin(), targets.end());
  detail::check_targets(tq, nq);
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != (std::size_t{1} << tq.size())) {
    throw std::invalid_argument("embed_operator: operator dimension does not match target count");
  }
  // Permuted order: targets first (as listed), remaining qubits after, in
  // ascending order. In that order the operator is op (x) I_rest; mapping
  // indices back through the permutation conjugates it into place.
  std::vector<std::size_t> rest = detail::complement(tq, nq);
  std::vector<std::size_t> order = tq;
  order.insert(order.end(), rest.begin(), rest.end());

  const std::size_t dim = layout.dim();
  const ComplexMatrix local = tensor_product(
      op, ComplexMatrix::Identity(static_cast<Eigen::Index>(dim >> tq.size()),
                                  static_cast<Eigen::Index>(dim >> tq.size())));
  // perm[x] = index of basis state x in the permuted order.
  std::vector<std::size_t> perm(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t p = 0;
    for (std::size_t pos = 0; pos < nq; ++pos) {
      const std::size_t bit = (x >> (nq - 1 - order[pos])) & 1U;
      p |= bit << (nq - 1 - pos);
    }
    perm[x] = p;
  }
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix out(d, d);
  for (Eigen::Index y = 0; y < d; ++y) {
    for (Eigen::Index x = 0; x < d; ++x) {
      out(x, y) = local(static_cast<Eigen::Index>(perm[x]), static_cast<Eigen::Index>(perm[y]));
    }
  }
  return out;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch) {
  if (ch.dim() != rho.dim()) {
    throw std::invalid_argument("apply_channel: dimension mismatch");
  }
  const double err = ch.completeness_error();
  if (err > kStructuralTol) {
    std::ostringstream os;
    os << "apply_channel: Kraus set is not trace preserving (error " << err << ")";
    throw std::domain_error(os.str());
  }
  const auto d = static_cast<Eigen::Index>(rho.dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& k : ch.operators()) {
    out.noalias() += k * rho.matrix() * k.adjoint();
  }
  return DensityMatrix::trusted(std::move(out));
}

// ---------------------------------------------------------------------------
// Random sampling

ComplexMatrix haar_random_unitary(std::size_t dim, Rng& rng) {
  if (dim == 0) {
    throw std::invalid_argument("haar_random_unitary: dim must be positive");
  }
  const auto d = static_cast<Eigen::Index>(dim);
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix z(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double re = rng.normal(0.0, s);
      const double im = rng.normal(0.0, s);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

PureState haar_random_pure_state(std::size_t dim, Rng& rng) {
  if (dim == 0) {
    throw std::invalid_argument("haar_random_pure_state: dim must be positive");
  }
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = rng.normal(0.0, 1.0);
    const double im = rng.normal(0.0, 1.0);
    v(i) = Complex(re, im);
  }
  return PureState::normalized(std::move(v));
}

// ---------------------------------------------------------------------------
// Spectra and readouts

Eigensystem eigh(const ComplexMatrix& h) {
  if (!is_hermitian(h, kStructuralTol)) {
    throw std::invalid_argument("eigh: input is not Hermitian");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigh: eigensolver did not converge");
  }
  Eigensystem out{es.eigenvalues(), es.eigenvectors()};
  for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) {
    auto col = out.vectors.col(j);
    Eigen::Index best = 0;
    double best_mag = -1.0;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      const double mag = std::abs(col(i));
      if (mag > best_mag + 1e-12) {
        best_mag = mag;
        best = i;
      }
    }
    if (best_mag > 0.0) {
      col *= std::conj(col(best)) / best_mag;
      col(best) = Complex(col(best).real(), 0.0);
    }
  }
  return out;
}

double fidelity_to_pure(const DensityMatrix& rho, const PureState& u) {
  if (u.dim() != rho.dim()) {
    throw std::invalid_argument("fidelity_to_pure: dimension mismatch");
  }
  const Complex f = u.amplitudes().dot(rho.matrix() * u.amplitudes());
  return f.real();
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& h) {
  if (static_cast<std::size_t>(h.rows()) != rho.dim() || h.rows() != h.cols()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  // Tr[H rho] = sum_ij H_ij rho_ji
  return (h.transpose().cwiseProduct(rho.matrix())).sum().real();
}

}  // namespace qgabench
