#include "qgabench/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "qgabench/metrics.hpp"

namespace qgabench {
namespace {

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

void require_population_size(std::size_t n) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("population size must be even and at least 2");
  }
}

template <typename Individual>
std::vector<Individual> stable_halve(std::span<const Individual> pop, const ProblemHamiltonian& h) {
  require_population_size(pop.size());
  std::vector<double> e(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    e[i] = energy(pop[i], h);
  }
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return e[a] < e[b]; });
  std::vector<Individual> out;
  out.reserve(pop.size() / 2);
  for (std::size_t i = 0; i < pop.size() / 2; ++i) {
    out.push_back(pop[order[i]]);
  }
  return out;
}

// Copies of the survivors crossed in consecutive pairs; an odd one out is
// copied unchanged.
template <typename Individual, typename Cross>
std::vector<Individual> breed_copies(const std::vector<Individual>& survivors, Cross&& cross) {
  std::vector<Individual> next = survivors;
  for (std::size_t i = 0; i + 1 < survivors.size(); i += 2) {
    auto [a, b] = cross(survivors[i], survivors[i + 1]);
    next.push_back(std::move(a));
    next.push_back(std::move(b));
  }
  if (survivors.size() % 2 == 1) {
    next.push_back(survivors.back());
  }
  return next;
}

std::optional<VectorIndividual> try_normalize(ComplexVector v) {
  const double norm = v.norm();
  if (!(norm > 1e-300) || !std::isfinite(norm)) {
    return std::nullopt;
  }
  return VectorIndividual::normalized(std::move(v));
}

}  // namespace

// ---------------------------------------------------------------------------
// Individuals

BitIndividual::BitIndividual(std::uint32_t value, std::size_t n_bits) : value_(value), n_bits_(n_bits) {
  if (n_bits_ == 0 || n_bits_ > 31) {
    throw std::invalid_argument("bit strings must have between 1 and 31 bits");
  }
  if (value_ >> n_bits_) {
    throw std::invalid_argument("bit string value exceeds its width");
  }
}

bool BitIndividual::bit(std::size_t i) const {
  if (i >= n_bits_) {
    throw std::out_of_range("bit index out of range");
  }
  return (value_ >> (n_bits_ - 1 - i)) & 1U;
}

BitIndividual BitIndividual::with_flipped(std::size_t i) const {
  if (i >= n_bits_) {
    throw std::out_of_range("bit index out of range");
  }
  return {value_ ^ (1U << (n_bits_ - 1 - i)), n_bits_};
}

VectorIndividual::VectorIndividual(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0 || !is_power_of_two(static_cast<std::size_t>(amps_.size()))) {
    throw std::invalid_argument("vector individual must have 2^c entries");
  }
  if (std::abs(amps_.norm() - 1.0) > kEqualityTol) {
    throw std::invalid_argument("vector individual is not normalized");
  }
}

VectorIndividual VectorIndividual::normalized(ComplexVector v) {
  const double norm = v.norm();
  if (!(norm > 0.0)) {
    throw std::invalid_argument("cannot normalize a zero vector");
  }
  v /= norm;
  return VectorIndividual(std::move(v));
}

void CgaConfig::validate() const {
  require_probability(p, "p");
  require_probability(q, "q");
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("sigma must be nonnegative");
  }
  require_population_size(n);
  if (c == 0 || c > 20) {
    throw std::invalid_argument("c must be between 1 and 20");
  }
}

void BgaConfig::validate() const {
  require_probability(p, "p");
  require_population_size(n);
  if (c == 0 || c > 31) {
    throw std::invalid_argument("c must be between 1 and 31");
  }
}

// ---------------------------------------------------------------------------
// Readouts

double energy(const BitIndividual& b, const ProblemHamiltonian& h) {
  if (h.dim() != (std::size_t{1} << b.n_bits())) {
    throw std::invalid_argument("bit string width does not match Hamiltonian");
  }
  const auto i = static_cast<Eigen::Index>(b.value());
  return h.matrix()(i, i).real();
}

double energy(const VectorIndividual& v, const ProblemHamiltonian& h) {
  if (v.dim() != h.dim()) {
    throw std::invalid_argument("vector dimension does not match Hamiltonian");
  }
  return v.amplitudes().dot(h.matrix() * v.amplitudes()).real();
}

double fidelity(const BitIndividual& b, const ProblemHamiltonian& h) {
  // Ground state of a diagonal Hamiltonian: the basis vector carrying the
  // largest weight of u_1.
  Eigen::Index ground = 0;
  h.eigenvectors().col(0).cwiseAbs().maxCoeff(&ground);
  return static_cast<Eigen::Index>(b.value()) == ground ? 1.0 : 0.0;
}

double fidelity(const VectorIndividual& v, const ProblemHamiltonian& h) {
  if (v.dim() != h.dim()) {
    throw std::invalid_argument("vector dimension does not match Hamiltonian");
  }
  return std::norm(h.eigenvectors().col(0).dot(v.amplitudes()));
}

std::vector<BitIndividual> select_halve(std::span<const BitIndividual> pop,
                                        const ProblemHamiltonian& h) {
  return stable_halve(pop, h);
}

std::vector<VectorIndividual> select_halve(std::span<const VectorIndividual> pop,
                                           const ProblemHamiltonian& h) {
  return stable_halve(pop, h);
}

// ---------------------------------------------------------------------------
// Variation operators

std::pair<VectorIndividual, VectorIndividual> crossover_linear(const VectorIndividual& v1,
                                                               const VectorIndividual& v2) {
  if (v1.dim() != v2.dim()) {
    throw std::invalid_argument("crossover of vectors with different dimensions");
  }
  const auto& a = v1.amplitudes();
  const auto& b = v2.amplitudes();
  auto c1 = try_normalize(2.0 * a + b);
  auto c2 = try_normalize(a + 2.0 * b);
  return {c1 ? std::move(*c1) : v1, c2 ? std::move(*c2) : v1};
}

std::pair<VectorIndividual, VectorIndividual> crossover_coeff_swap(const VectorIndividual& v1,
                                                                   const VectorIndividual& v2) {
  if (v1.dim() != v2.dim()) {
    throw std::invalid_argument("crossover of vectors with different dimensions");
  }
  const auto n = static_cast<Eigen::Index>(v1.dim());
  const Eigen::Index half = n / 2;
  ComplexVector c1 = v1.amplitudes();
  ComplexVector c2 = v2.amplitudes();
  c1.tail(n - half) = v2.amplitudes().tail(n - half);
  c2.tail(n - half) = v1.amplitudes().tail(n - half);
  auto n1 = try_normalize(std::move(c1));
  auto n2 = try_normalize(std::move(c2));
  return {n1 ? std::move(*n1) : v1, n2 ? std::move(*n2) : v2};
}

VectorIndividual mutate_gaussian(const VectorIndividual& v, double q, double sigma, Rng& rng) {
  require_probability(q, "q");
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("sigma must be nonnegative");
  }
  for (int attempt = 0; attempt < 2; ++attempt) {
    ComplexVector w = v.amplitudes();
    bool touched = false;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      if (rng.bernoulli(q)) {
        const double re = rng.normal(0.0, sigma);
        const double im = rng.normal(0.0, sigma);
        w(i) += Complex(re, im);
        touched = true;
      }
    }
    if (!touched) {
      return v;
    }
    if (auto out = try_normalize(std::move(w))) {
      return std::move(*out);
    }
  }
  return v;
}

VectorIndividual apply_pauli(const VectorIndividual& v, std::size_t qubit, Pauli pauli) {
  const std::size_t c = log2_exact(v.dim());
  if (qubit >= c) {
    throw std::out_of_range("qubit index out of range");
  }
  const std::size_t bit = std::size_t{1} << (c - 1 - qubit);
  const auto& a = v.amplitudes();
  ComplexVector w(a.size());
  const Complex i_unit(0.0, 1.0);
  for (Eigen::Index x = 0; x < a.size(); ++x) {
    const auto ux = static_cast<std::size_t>(x);
    const bool set = (ux & bit) != 0;
    const auto flipped = static_cast<Eigen::Index>(ux ^ bit);
    switch (pauli) {
      case Pauli::x:
        w(x) = a(flipped);
        break;
      case Pauli::y:
        // Y|0> = i|1>, Y|1> = -i|0>
        w(x) = (set ? i_unit : -i_unit) * a(flipped);
        break;
      case Pauli::z:
        w(x) = set ? -a(x) : a(x);
        break;
    }
  }
  return VectorIndividual(std::move(w));
}

VectorIndividual mutate_pauli(const VectorIndividual& v, double p, Rng& rng) {
  require_probability(p, "p");
  const std::size_t c = log2_exact(v.dim());
  VectorIndividual out = v;
  for (std::size_t k = 0; k < c; ++k) {
    if (rng.bernoulli(p)) {
      const auto which = static_cast<Pauli>(rng.uniform_int(0, 2));
      out = apply_pauli(out, k, which);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generations

std::vector<BitIndividual> bga_step(std::span<const BitIndividual> pop, const ProblemHamiltonian& h,
                                    double p, Rng& rng) {
  require_probability(p, "p");
  if (!h.is_diagonal()) {
    throw std::invalid_argument("BGA requires a diagonal Hamiltonian");
  }
  const auto survivors = select_halve(pop, h);
  const std::size_t c = survivors.front().n_bits();
  const std::uint32_t tail = (1U << (c / 2)) - 1U;
  auto next = breed_copies(survivors, [tail](const BitIndividual& a, const BitIndividual& b) {
    return std::pair{BitIndividual((a.value() & ~tail) | (b.value() & tail), a.n_bits()),
                     BitIndividual((b.value() & ~tail) | (a.value() & tail), b.n_bits())};
  });
  for (auto& ind : next) {
    for (std::size_t i = 0; i < ind.n_bits(); ++i) {
      if (rng.bernoulli(p)) {
        ind = ind.with_flipped(i);
      }
    }
  }
  return next;
}

std::vector<VectorIndividual> cga_step(std::span<const VectorIndividual> pop,
                                       const ProblemHamiltonian& h, const CgaConfig& cfg, Rng& rng) {
  if (pop.size() != cfg.n) {
    throw std::invalid_argument("population size does not match configuration");
  }
  const auto survivors = select_halve(pop, h);
  auto next = cfg.crossover == Crossover::linear
                  ? breed_copies(survivors, crossover_linear)
                  : breed_copies(survivors, crossover_coeff_swap);
  for (auto& ind : next) {
    ind = cfg.mutation == Mutation::gaussian ? mutate_gaussian(ind, cfg.q, cfg.sigma, rng)
                                             : mutate_pauli(ind, cfg.p, rng);
  }
  return next;
}

RunRecord run_bga(const ProblemHamiltonian& h, const BgaConfig& cfg,
                  std::vector<BitIndividual> initial, Rng& rng) {
  cfg.validate();
  if (initial.size() != cfg.n) {
    throw std::invalid_argument("initial population size does not match configuration");
  }
  RunRecord rec;
  rec.push(best_individual_metrics(std::span<const BitIndividual>(initial), h));
  for (std::size_t g = 0; g < cfg.generations; ++g) {
    initial = bga_step(initial, h, cfg.p, rng);
    rec.push(best_individual_metrics(std::span<const BitIndividual>(initial), h));
  }
  return rec;
}

RunRecord run_cga(const ProblemHamiltonian& h, const CgaConfig& cfg,
                  std::vector<VectorIndividual> initial, Rng& rng) {
  cfg.validate();
  if (initial.size() != cfg.n) {
    throw std::invalid_argument("initial population size does not match configuration");
  }
  RunRecord rec;
  rec.push(best_individual_metrics(std::span<const VectorIndividual>(initial), h));
  for (std::size_t g = 0; g < cfg.generations; ++g) {
    initial = cga_step(initial, h, cfg, rng);
    rec.push(best_individual_metrics(std::span<const VectorIndividual>(initial), h));
  }
  return rec;
}

}  // namespace qgabench
