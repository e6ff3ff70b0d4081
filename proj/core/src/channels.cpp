#include "qgabench/channels.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "index_tables.hpp"

namespace qgabench {
namespace {

struct LocalGeometry {
  std::size_t n_qubits;
  std::vector<std::size_t> targets;
};

LocalGeometry geometry(const ComplexMatrix& m, const ComplexMatrix& op,
                       std::span<const std::size_t> targets) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("local kernel: state must be square");
  }
  LocalGeometry g{log2_exact(static_cast<std::size_t>(m.rows())), {targets.begin(), targets.end()}};
  detail::check_targets(g.targets, g.n_qubits);
  if (op.rows() != op.cols() ||
      static_cast<std::size_t>(op.rows()) != (std::size_t{1} << g.targets.size())) {
    throw std::invalid_argument("local kernel: operator dimension does not match target count");
  }
  return g;
}

// Targets forming an ascending run [q0, q0+k) split a basis index into
// (high, local, low) fields, so the embedded operator is I (x) op (x) I.
// Computes m <- m (I (x) op (x) I)^dag one whole column at a time; columns
// are contiguous, and the complex product is spelled out so it vectorizes.
void cols_contiguous(ComplexMatrix& m, const ComplexMatrix& op, const LocalGeometry& g) {
  const auto d = static_cast<std::size_t>(op.rows());
  const std::size_t q0 = g.targets.front();
  const std::size_t low = std::size_t{1} << (g.n_qubits - q0 - g.targets.size());
  const std::size_t high = std::size_t{1} << q0;
  const std::size_t rows = static_cast<std::size_t>(m.rows());
  const std::size_t block = d * low;
  std::vector<double> tmp(2 * rows * block);
  double* data = reinterpret_cast<double*>(m.data());
  for (std::size_t h = 0; h < high; ++h) {
    double* base = data + 2 * rows * h * block;
    std::copy(base, base + tmp.size(), tmp.begin());
    for (std::size_t s = 0; s < d; ++s) {
      for (std::size_t l = 0; l < low; ++l) {
        double* dst = base + 2 * rows * (s * low + l);
        std::fill(dst, dst + 2 * rows, 0.0);
        for (std::size_t t = 0; t < d; ++t) {
          const Complex w = std::conj(op(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)));
          const double wr = w.real();
          const double wi = w.imag();
          if (wr == 0.0 && wi == 0.0) {
            continue;
          }
          const double* src = tmp.data() + 2 * rows * (t * low + l);
          for (std::size_t x = 0; x < 2 * rows; x += 2) {
            dst[x] += wr * src[x] - wi * src[x + 1];
            dst[x + 1] += wr * src[x + 1] + wi * src[x];
          }
        }
      }
    }
  }
}

template <bool Rows>
void apply_gathered(ComplexMatrix& m, const ComplexMatrix& op, const LocalGeometry& g) {
  const auto off = detail::subset_offsets(g.targets, g.n_qubits);
  const auto rest = detail::subset_offsets(detail::complement(g.targets, g.n_qubits), g.n_qubits);
  const auto d = op.rows();
  const auto dim = m.rows();
  ComplexVector v(d);
  ComplexVector w(d);
  const ComplexMatrix opc = op.conjugate();
  for (Eigen::Index other = 0; other < dim; ++other) {
    for (std::size_t base : rest) {
      for (Eigen::Index t = 0; t < d; ++t) {
        const auto idx = static_cast<Eigen::Index>(base | off[t]);
        v(t) = Rows ? m(idx, other) : m(other, idx);
      }
      if constexpr (Rows) {
        w.noalias() = op * v;
      } else {
        w.noalias() = opc * v;
      }
      for (Eigen::Index s = 0; s < d; ++s) {
        const auto idx = static_cast<Eigen::Index>(base | off[s]);
        (Rows ? m(idx, other) : m(other, idx)) = w(s);
      }
    }
  }
}

}  // namespace

void apply_on_rows(ComplexMatrix& m, const ComplexMatrix& op, std::span<const std::size_t> targets) {
  const auto g = geometry(m, op, targets);
  if (detail::is_contiguous_ascending(g.targets)) {
    // A m = (m^T conj(A)^dag)^T.
    ComplexMatrix t = m.transpose();
    cols_contiguous(t, op.conjugate(), g);
    m = t.transpose();
  } else {
    apply_gathered<true>(m, op, g);
  }
}

void apply_adjoint_on_cols(ComplexMatrix& m, const ComplexMatrix& op,
                           std::span<const std::size_t> targets) {
  const auto g = geometry(m, op, targets);
  if (detail::is_contiguous_ascending(g.targets)) {
    cols_contiguous(m, op, g);
  } else {
    apply_gathered<false>(m, op, g);
  }
}

void conjugate_hermitian(ComplexMatrix& m, const ComplexMatrix& op,
                         std::span<const std::vector<std::size_t>> groups) {
  for (const auto& g : groups) {
    apply_adjoint_on_cols(m, op, g);
  }
  m.adjointInPlace();
  for (const auto& g : groups) {
    apply_adjoint_on_cols(m, op, g);
  }
}

DensityMatrix conjugate_local(const DensityMatrix& rho, const ComplexMatrix& u,
                              std::span<const std::size_t> targets) {
  ComplexMatrix m = rho.matrix();
  const std::vector<std::vector<std::size_t>> groups{{targets.begin(), targets.end()}};
  conjugate_hermitian(m, u, groups);
  return DensityMatrix::trusted(std::move(m));
}

DensityMatrix apply_local_channel(const DensityMatrix& rho, const KrausChannel& local,
                                  std::span<const std::size_t> targets) {
  if (!local.is_trace_preserving()) {
    throw std::domain_error("apply_local_channel: Kraus set is not trace preserving");
  }
  const auto d = static_cast<Eigen::Index>(rho.dim());
  ComplexMatrix acc = ComplexMatrix::Zero(d, d);
  ComplexMatrix term;
  for (const auto& k : local.operators()) {
    term = rho.matrix();
    apply_on_rows(term, k, targets);
    apply_adjoint_on_cols(term, k, targets);
    acc += term;
  }
  return DensityMatrix::trusted(std::move(acc));
}

DensityMatrix permute_basis(const DensityMatrix& rho, std::span<const std::size_t> perm) {
  const auto d = static_cast<Eigen::Index>(rho.dim());
  if (static_cast<Eigen::Index>(perm.size()) != d) {
    throw std::invalid_argument("permute_basis: permutation size mismatch");
  }
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t p : perm) {
    if (p >= perm.size() || seen[p]) {
      throw std::invalid_argument("permute_basis: not a bijection");
    }
    seen[p] = true;
  }
  const auto& m = rho.matrix();
  ComplexMatrix out(d, d);
  for (Eigen::Index y = 0; y < d; ++y) {
    const auto py = static_cast<Eigen::Index>(perm[y]);
    for (Eigen::Index x = 0; x < d; ++x) {
      out(static_cast<Eigen::Index>(perm[x]), py) = m(x, y);
    }
  }
  return DensityMatrix::trusted(std::move(out));
}

std::vector<std::size_t> swap_permutation(std::size_t n_qubits, std::size_t a, std::size_t b) {
  detail::check_targets({a, b}, n_qubits);
  const std::size_t ba = detail::qubit_bit(a, n_qubits);
  const std::size_t bb = detail::qubit_bit(b, n_qubits);
  std::vector<std::size_t> perm(std::size_t{1} << n_qubits);
  for (std::size_t x = 0; x < perm.size(); ++x) {
    const bool xa = (x & ba) != 0;
    const bool xb = (x & bb) != 0;
    perm[x] = xa == xb ? x : (x ^ ba ^ bb);
  }
  return perm;
}

std::vector<std::size_t> cnot_permutation(std::size_t n_qubits, std::size_t control,
                                          std::size_t target) {
  detail::check_targets({control, target}, n_qubits);
  const std::size_t bc = detail::qubit_bit(control, n_qubits);
  const std::size_t bt = detail::qubit_bit(target, n_qubits);
  std::vector<std::size_t> perm(std::size_t{1} << n_qubits);
  for (std::size_t x = 0; x < perm.size(); ++x) {
    perm[x] = (x & bc) ? (x ^ bt) : x;
  }
  return perm;
}

DensityMatrix pauli_noise_qubit(const DensityMatrix& rho, std::size_t qubit, double p) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("pauli_noise_qubit: probability outside [0, 1]");
  }
  const std::size_t nq = log2_exact(rho.dim());
  detail::check_targets({qubit}, nq);
  if (p == 0.0) {
    return rho;
  }
  // sum over {I,X,Y,Z} of P rho P = 2 Tr_q(rho) (x) I, hence
  // rho' = (1 - 4p/3) rho + (4p/3) Tr_q(rho) (x) I/2.
  const double keep = 1.0 - 4.0 * p / 3.0;
  const double mix = 4.0 * p / 3.0;
  const std::size_t bit = detail::qubit_bit(qubit, nq);
  const auto& m = rho.matrix();
  const auto d = static_cast<Eigen::Index>(rho.dim());
  ComplexMatrix out(d, d);
  for (Eigen::Index y = 0; y < d; ++y) {
    const auto uy = static_cast<std::size_t>(y);
    for (Eigen::Index x = 0; x < d; ++x) {
      const auto ux = static_cast<std::size_t>(x);
      Complex v = keep * m(x, y);
      if ((ux & bit) == (uy & bit)) {
        const auto x0 = static_cast<Eigen::Index>(ux & ~bit);
        const auto y0 = static_cast<Eigen::Index>(uy & ~bit);
        const auto x1 = static_cast<Eigen::Index>(ux | bit);
        const auto y1 = static_cast<Eigen::Index>(uy | bit);
        v += mix * 0.5 * (m(x0, y0) + m(x1, y1));
      }
      out(x, y) = v;
    }
  }
  return DensityMatrix::trusted(std::move(out));
}

DensityMatrix reset_qubits(const DensityMatrix& rho, std::span<const std::size_t> qubits) {
  const std::size_t nq = log2_exact(rho.dim());
  const std::vector<std::size_t> rq(qubits.begin(), qubits.end());
  detail::check_targets(rq, nq);
  const auto reset_off = detail::subset_offsets(rq, nq);
  const auto kept_off = detail::subset_offsets(detail::complement(rq, nq), nq);
  const auto& m = rho.matrix();
  const auto d = static_cast<Eigen::Index>(rho.dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (std::size_t b : kept_off) {
    for (std::size_t a : kept_off) {
      Complex s = 0.0;
      for (std::size_t r : reset_off) {
        s += m(static_cast<Eigen::Index>(a | r), static_cast<Eigen::Index>(b | r));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = s;
    }
  }
  return DensityMatrix::trusted(std::move(out));
}

double zero_population(const DensityMatrix& rho, std::span<const std::size_t> qubits) {
  const std::size_t nq = log2_exact(rho.dim());
  const std::vector<std::size_t> q(qubits.begin(), qubits.end());
  detail::check_targets(q, nq);
  const auto kept_off = detail::subset_offsets(detail::complement(q, nq), nq);
  double s = 0.0;
  for (std::size_t a : kept_off) {
    const auto i = static_cast<Eigen::Index>(a);
    s += rho.matrix()(i, i).real();
  }
  return s;
}

}  // namespace qgabench
