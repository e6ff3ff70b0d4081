#include "qgabench/qga.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "index_tables.hpp"
#include "qgabench/channels.hpp"
#include "qgabench/metrics.hpp"

namespace qgabench {
namespace {

constexpr double kBlankTol = 1e-8;

void require_register(const RegisterLayout& layout, std::size_t reg) {
  if (reg >= layout.n_registers()) {
    throw std::out_of_range("register index " + std::to_string(reg) + " out of range for " +
                            std::to_string(layout.n_registers()) + " registers");
  }
}

void require_blank(const QuantumPopulation& pop, std::span<const std::size_t> qubits,
                   const char* who) {
  const double p0 = zero_population(pop.state, qubits);
  if (p0 < 1.0 - kBlankTol) {
    std::ostringstream os;
    os << who << ": destination register is not blank (|0..0> population " << p0 << ")";
    throw std::domain_error(os.str());
  }
}

std::vector<std::size_t> concat(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Comparator> odd_even_merge_network(std::size_t n) {
  std::vector<Comparator> net;
  for (std::size_t p = 1; p < n; p *= 2) {
    for (std::size_t k = p; k >= 1; k /= 2) {
      for (std::size_t j = k % p; j + k < n; j += 2 * k) {
        for (std::size_t i = 0; i < k && i + j + k < n; ++i) {
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p)) {
            net.emplace_back(i + j, i + j + k);
          }
        }
      }
    }
  }
  return net;
}

std::vector<Comparator> odd_even_transposition_network(std::size_t n) {
  std::vector<Comparator> net;
  for (std::size_t round = 0; round < n; ++round) {
    for (std::size_t i = round % 2; i + 1 < n; i += 2) {
      net.emplace_back(i, i + 1);
    }
  }
  return net;
}

// Comparator acting on a population already rotated into the eigenbasis of
// h on every register: basis labels are eigen-indices, so K0 is a projector
// and K1 a label swap restricted to the out-of-order subspace.
ComplexMatrix compare_in_eigenbasis(const ComplexMatrix& m, const RealVector& energies,
                                    const RegisterLayout& layout, std::size_t a, std::size_t b) {
  const std::size_t nq = layout.total_qubits();
  const std::size_t c = layout.qubits_per_register();
  const std::size_t mask = layout.register_dim() - 1;
  const std::size_t shift_a = nq - (a + 1) * c;
  const std::size_t shift_b = nq - (b + 1) * c;
  const std::size_t dim = layout.dim();

  std::vector<std::size_t> target(dim);
  std::vector<unsigned char> swapped(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    const std::size_t i = (x >> shift_a) & mask;
    const std::size_t j = (x >> shift_b) & mask;
    const bool sw = energies(static_cast<Eigen::Index>(j)) < energies(static_cast<Eigen::Index>(i));
    swapped[x] = sw ? 1 : 0;
    target[x] = sw ? ((x & ~((mask << shift_a) | (mask << shift_b))) | (j << shift_a) | (i << shift_b))
                   : x;
  }
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Eigen::Index y = 0; y < d; ++y) {
    const auto uy = static_cast<std::size_t>(y);
    const auto ty = static_cast<Eigen::Index>(target[uy]);
    for (Eigen::Index x = 0; x < d; ++x) {
      const auto ux = static_cast<std::size_t>(x);
      if (swapped[ux] == swapped[uy]) {
        out(static_cast<Eigen::Index>(target[ux]), ty) += m(x, y);
      }
    }
  }
  return out;
}

// 2/(d+1) P_sym (rho_{dst=0} (x) I) P_sym on qubit lists src/dst of equal size.
DensityMatrix uqcm_fast(const DensityMatrix& rho, const std::vector<std::size_t>& src,
                        const std::vector<std::size_t>& dst) {
  const std::size_t nq = log2_exact(rho.dim());
  const std::size_t dim = rho.dim();
  const std::size_t d = std::size_t{1} << src.size();
  const auto dst_off = detail::subset_offsets(dst, nq);
  const auto rest_off = detail::subset_offsets(detail::complement(dst, nq), nq);

  // sigma = rho restricted to dst = |0>, tensored with I on dst.
  const auto& m = rho.matrix();
  const auto D = static_cast<Eigen::Index>(dim);
  ComplexMatrix sigma = ComplexMatrix::Zero(D, D);
  for (std::size_t y : rest_off) {
    for (std::size_t x : rest_off) {
      const Complex v = m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
      for (std::size_t t : dst_off) {
        sigma(static_cast<Eigen::Index>(x | t), static_cast<Eigen::Index>(y | t)) = v;
      }
    }
  }

  // pi swaps src[k] <-> dst[k]; P_sym = (I + pi) / 2.
  std::vector<std::size_t> pi(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t px = x;
    for (std::size_t k = 0; k < src.size(); ++k) {
      const std::size_t bs = detail::qubit_bit(src[k], nq);
      const std::size_t bd = detail::qubit_bit(dst[k], nq);
      if (((x & bs) != 0) != ((x & bd) != 0)) {
        px ^= bs | bd;
      }
    }
    pi[x] = px;
  }
  const double scale = 2.0 / static_cast<double>(d + 1) / 4.0;
  ComplexMatrix out(D, D);
  for (Eigen::Index y = 0; y < D; ++y) {
    const auto py = static_cast<Eigen::Index>(pi[static_cast<std::size_t>(y)]);
    for (Eigen::Index x = 0; x < D; ++x) {
      const auto px = static_cast<Eigen::Index>(pi[static_cast<std::size_t>(x)]);
      out(x, y) = scale * (sigma(x, y) + sigma(px, y) + sigma(x, py) + sigma(px, py));
    }
  }
  return DensityMatrix::trusted(std::move(out));
}

}  // namespace

std::string_view to_string(UqcmGranularity g) {
  return g == UqcmGranularity::register_level ? "register" : "qubit";
}

std::string_view to_string(CloningBasis b) {
  return b == CloningBasis::computational ? "computational" : "eigen";
}

UqcmGranularity parse_uqcm_granularity(std::string_view s) {
  if (s == "register") return UqcmGranularity::register_level;
  if (s == "qubit") return UqcmGranularity::qubit_level;
  throw std::invalid_argument("uqcm_granularity must be 'register' or 'qubit'");
}

CloningBasis parse_cloning_basis(std::string_view s) {
  if (s == "computational") return CloningBasis::computational;
  if (s == "eigen") return CloningBasis::eigenbasis;
  throw std::invalid_argument("cloning_basis must be 'computational' or 'eigen'");
}

std::vector<Comparator> sorting_network(std::size_t n) {
  if (n < 2) {
    return {};
  }
  if (is_power_of_two(n)) {
    return odd_even_merge_network(n);
  }
  return odd_even_transposition_network(n);
}

QuantumPopulation QuantumPopulation::from_registers(const RegisterLayout& layout,
                                                    const std::vector<PureState>& registers) {
  if (registers.size() != layout.n_registers()) {
    throw std::invalid_argument("need one initial state per register");
  }
  ComplexVector psi = ComplexVector::Ones(1);
  for (const auto& r : registers) {
    if (r.dim() != layout.register_dim()) {
      throw std::invalid_argument("initial register state has wrong dimension");
    }
    psi = tensor_product(psi, r.amplitudes());
  }
  return {layout, DensityMatrix::from_pure(PureState::normalized(std::move(psi)))};
}

DensityMatrix QuantumPopulation::register_marginal(std::size_t reg) const {
  const auto q = layout.register_qubits(reg);
  return partial_trace(state, layout, q);
}

void QgaConfig::validate() const {
  layout.require_qga_shape();
  if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) {
    throw std::invalid_argument("mutation probability must lie in [0, 1]");
  }
  for (const auto& [a, b] : network) {
    if (a == b || a >= layout.n_registers() || b >= layout.n_registers()) {
      throw std::invalid_argument("sorting network references an invalid register pair");
    }
  }
}

KrausChannel comparator_kraus(const ProblemHamiltonian& h) {
  const auto d = static_cast<Eigen::Index>(h.dim());
  const auto& u = h.eigenvectors();
  const auto& lam = h.eigenvalues();
  ComplexMatrix k0 = ComplexMatrix::Zero(d * d, d * d);
  ComplexMatrix k1 = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const ComplexVector uij = tensor_product(ComplexVector(u.col(i)), ComplexVector(u.col(j)));
      if (lam(j) < lam(i)) {
        const ComplexVector uji = tensor_product(ComplexVector(u.col(j)), ComplexVector(u.col(i)));
        k1.noalias() += uji * uij.adjoint();
      } else {
        k0.noalias() += uij * uij.adjoint();
      }
    }
  }
  return KrausChannel({std::move(k0), std::move(k1)});
}

KrausChannel comparator_channel(const ProblemHamiltonian& h, std::size_t reg_a, std::size_t reg_b,
                                const RegisterLayout& layout) {
  require_register(layout, reg_a);
  require_register(layout, reg_b);
  if (reg_a == reg_b) {
    throw std::invalid_argument("comparator needs two distinct registers");
  }
  if (h.dim() != layout.register_dim()) {
    throw std::invalid_argument("Hamiltonian dimension does not match register size");
  }
  const auto targets = concat(layout.register_qubits(reg_a), layout.register_qubits(reg_b));
  const KrausChannel pair = comparator_kraus(h);
  std::vector<ComplexMatrix> ops;
  for (const auto& k : pair.operators()) {
    ops.push_back(embed_operator(k, layout, targets));
  }
  return KrausChannel(std::move(ops));
}

QuantumPopulation sort_channel(const QuantumPopulation& pop, const ProblemHamiltonian& h,
                               const std::vector<Comparator>& network) {
  const auto& layout = pop.layout;
  if (h.dim() != layout.register_dim()) {
    throw std::invalid_argument("Hamiltonian dimension does not match register size");
  }
  const auto& net = network.empty() ? sorting_network(layout.n_registers()) : network;
  for (const auto& [a, b] : net) {
    require_register(layout, a);
    require_register(layout, b);
    if (a == b) {
      throw std::invalid_argument("comparator needs two distinct registers");
    }
  }
  const ComplexMatrix& u = h.eigenvectors();
  const ComplexMatrix u_dag = u.adjoint();

  std::vector<std::vector<std::size_t>> regs;
  for (std::size_t r = 0; r < layout.n_registers(); ++r) {
    const auto q = layout.register_qubits(r);
    regs.emplace_back(q.begin(), q.end());
  }
  ComplexMatrix m = pop.state.matrix();
  conjugate_hermitian(m, u_dag, regs);
  for (const auto& [a, b] : net) {
    m = compare_in_eigenbasis(m, h.eigenvalues(), layout, a, b);
  }
  conjugate_hermitian(m, u, regs);
  return {layout, DensityMatrix::trusted(std::move(m))};
}

QuantumPopulation reset_discarded(const QuantumPopulation& pop) {
  const auto& layout = pop.layout;
  std::vector<std::size_t> qubits;
  for (std::size_t r = layout.n_registers() / 2; r < layout.n_registers(); ++r) {
    const auto q = layout.register_qubits(r);
    qubits.insert(qubits.end(), q.begin(), q.end());
  }
  return {layout, reset_qubits(pop.state, qubits)};
}

QuantumPopulation clone_bcqo(const QuantumPopulation& pop, std::size_t src, std::size_t dst,
                             const ComplexMatrix& basis) {
  const auto& layout = pop.layout;
  require_register(layout, src);
  require_register(layout, dst);
  if (src == dst) {
    throw std::invalid_argument("clone_bcqo: source and destination coincide");
  }
  const auto sq = layout.register_qubits(src);
  const auto dq = layout.register_qubits(dst);
  require_blank(pop, dq, "clone_bcqo");

  const bool rotate = basis.size() != 0;
  if (rotate && static_cast<std::size_t>(basis.rows()) != layout.register_dim()) {
    throw std::invalid_argument("clone_bcqo: cloning basis has wrong dimension");
  }
  DensityMatrix rho = pop.state;
  if (rotate) {
    rho = conjugate_local(rho, basis.adjoint(), sq);
  }
  const std::size_t nq = layout.total_qubits();
  for (std::size_t k = 0; k < sq.size(); ++k) {
    rho = permute_basis(rho, cnot_permutation(nq, sq[k], dq[k]));
  }
  if (rotate) {
    rho = conjugate_local(rho, basis, sq);
    rho = conjugate_local(rho, basis, dq);
  }
  return {layout, std::move(rho)};
}

KrausChannel uqcm_kraus(std::size_t d) {
  if (d < 2) {
    throw std::invalid_argument("uqcm_kraus: dimension must be at least 2");
  }
  const auto dd = static_cast<Eigen::Index>(d);
  const auto n = dd * dd;
  ComplexMatrix swap = ComplexMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < dd; ++a) {
    for (Eigen::Index b = 0; b < dd; ++b) {
      swap(b * dd + a, a * dd + b) = 1.0;
    }
  }
  const ComplexMatrix p_sym = 0.5 * (ComplexMatrix::Identity(n, n) + swap);
  const ComplexMatrix id = ComplexMatrix::Identity(dd, dd);
  std::vector<ComplexMatrix> ops;
  const double s = std::sqrt(2.0 / static_cast<double>(d + 1));
  for (Eigen::Index m = 0; m < dd; ++m) {
    ComplexMatrix e = ComplexMatrix::Zero(dd, dd);
    e(m, 0) = 1.0;
    ops.push_back(s * p_sym * tensor_product(id, e));
  }
  ComplexMatrix not_blank = id;
  not_blank(0, 0) = 0.0;
  ops.push_back(tensor_product(id, not_blank));
  return KrausChannel(std::move(ops));
}

QuantumPopulation clone_uqcm(const QuantumPopulation& pop, std::size_t src, std::size_t dst,
                             UqcmGranularity granularity) {
  const auto& layout = pop.layout;
  require_register(layout, src);
  require_register(layout, dst);
  if (src == dst) {
    throw std::invalid_argument("clone_uqcm: source and destination coincide");
  }
  const auto sq = layout.register_qubits(src);
  const auto dq = layout.register_qubits(dst);
  require_blank(pop, dq, "clone_uqcm");
  if (granularity == UqcmGranularity::register_level) {
    return {layout, uqcm_fast(pop.state, sq, dq)};
  }
  DensityMatrix rho = pop.state;
  for (std::size_t k = 0; k < sq.size(); ++k) {
    rho = uqcm_fast(rho, {sq[k]}, {dq[k]});
  }
  return {layout, std::move(rho)};
}

QuantumPopulation crossover_swap(const QuantumPopulation& pop) {
  const auto& layout = pop.layout;
  const std::size_t n = layout.n_registers();
  const std::size_t c = layout.qubits_per_register();
  const std::size_t nq = layout.total_qubits();
  std::vector<std::size_t> perm(layout.dim());
  for (std::size_t x = 0; x < perm.size(); ++x) {
    perm[x] = x;
  }
  for (std::size_t i = 0; i < n / 4; ++i) {
    const std::size_t ra = n / 2 + 2 * i;
    const std::size_t rb = ra + 1;
    for (std::size_t k = c - c / 2; k < c; ++k) {
      const auto sw = swap_permutation(nq, ra * c + k, rb * c + k);
      for (auto& p : perm) {
        p = sw[p];
      }
    }
  }
  return {layout, permute_basis(pop.state, perm)};
}

QuantumPopulation mutation_channel(const QuantumPopulation& pop, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("mutation probability must lie in [0, 1]");
  }
  DensityMatrix rho = pop.state;
  if (p > 0.0) {
    for (std::size_t q = 0; q < pop.layout.total_qubits(); ++q) {
      rho = pauli_noise_qubit(rho, q, p);
    }
  }
  return {pop.layout, std::move(rho)};
}

QuantumPopulation breed(const QuantumPopulation& sorted, const ProblemHamiltonian& h,
                        const QgaConfig& cfg) {
  const std::size_t half = cfg.layout.n_registers() / 2;
  QuantumPopulation pop = reset_discarded(sorted);
  ComplexMatrix basis;
  if (cfg.cloner == Cloner::bcqo && cfg.cloning_basis == CloningBasis::eigenbasis) {
    basis = h.eigenvectors();
  }
  for (std::size_t r = 0; r < half; ++r) {
    pop = cfg.cloner == Cloner::uqcm ? clone_uqcm(pop, r, half + r, cfg.uqcm_granularity)
                                     : clone_bcqo(pop, r, half + r, basis);
  }
  pop = crossover_swap(pop);
  if (cfg.mutation_enabled) {
    pop = mutation_channel(pop, cfg.mutation_probability);
  }
  return pop;
}

QuantumPopulation qga_generation(const QuantumPopulation& pop, const ProblemHamiltonian& h,
                                 const QgaConfig& cfg) {
  cfg.validate();
  if (!(pop.layout == cfg.layout)) {
    throw std::invalid_argument("population layout does not match configuration");
  }
  return breed(sort_channel(pop, h, cfg.network), h, cfg);
}

RunRecord run_qga(const ProblemHamiltonian& h, const QgaConfig& cfg,
                  const std::vector<PureState>& initial, const QgaObserver& observer) {
  cfg.validate();
  if (h.dim() != cfg.layout.register_dim()) {
    throw std::invalid_argument("Hamiltonian dimension does not match register size");
  }
  QuantumPopulation pop = QuantumPopulation::from_registers(cfg.layout, initial);
  RunRecord rec;
  for (std::size_t g = 0;; ++g) {
    // The sort that starts the next generation doubles as the best-individual
    // readout for this one.
    QuantumPopulation sorted = sort_channel(pop, h, cfg.network);
    if (cfg.best_rule == BestIndividualRule::sorted_top) {
      rec.push(individual_metrics(sorted.register_marginal(0), h));
    } else {
      rec.push(best_individual_metrics(pop, h, BestIndividualRule::register_extremes));
    }
    if (observer) {
      observer(g, pop);
    }
    if (g == cfg.generations) {
      break;
    }
    pop = breed(sorted, h, cfg);
  }
  return rec;
}

}  // namespace qgabench
