#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qgabench/classical.hpp"
#include "qgabench/hamiltonians.hpp"
#include "qgabench/qga.hpp"
#include "qgabench/record.hpp"
#include "qgabench/stats.hpp"

namespace qgabench {

enum class Algorithm { cga_ai, cga_aii, cga_bi, cga_bii, qga_bnm, qga_bwm, qga_unm, qga_uwm, bga };

/// "CGAai", ..., "QGAuwm", "BGA".
std::string_view algorithm_name(Algorithm a);
Algorithm parse_algorithm(std::string_view name);
const std::vector<Algorithm>& all_algorithms();
bool is_quantum(Algorithm a);

/// Classical aggregation levels across seeds.
inline constexpr double kFidelityQuantile = 0.90;
inline constexpr double kEnergyQuantile = 0.10;

/// Thrown for any specification that fails validation.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a run is cancelled through the cancel flag.
class Cancelled : public std::runtime_error {
 public:
  Cancelled() : std::runtime_error("experiment cancelled") {}
};

struct ExperimentSpec {
  std::vector<Algorithm> algorithms;

  /// Hamiltonians, in this order: `ensemble_size` random members with the
  /// given spectrum, then the named ones ("hc", "h2"), then those loaded
  /// from `hamiltonian_file`.
  std::size_t ensemble_size = 0;
  std::vector<double> spectrum = kDefaultSpectrum;
  std::vector<std::string> named_hamiltonians;
  std::string hamiltonian_file;

  std::size_t qga_seeds = 10;
  std::size_t classical_seeds = 100;
  std::size_t generations = 10;

  std::size_t n = 4;
  std::size_t c = 2;
  double p = 1.0 / 24.0;     // classical Pauli / bit-flip mutation
  double q = 1.0 / 24.0;     // Gaussian mutation
  double sigma = 0.228;
  double p_m = 1.0 / 24.0;   // quantum mutation

  UqcmGranularity uqcm_granularity = UqcmGranularity::register_level;
  CloningBasis cloning_basis = CloningBasis::computational;
  BestIndividualRule best_rule = BestIndividualRule::sorted_top;
  WinRateReference win_rate_reference = WinRateReference::mean;

  std::uint64_t master_seed = 0;

  /// Throws ConfigError.
  void validate() const;

  QgaConfig qga_config(Algorithm a) const;
  CgaConfig cga_config(Algorithm a) const;
  BgaConfig bga_config() const;
  std::size_t seeds_for(Algorithm a) const { return is_quantum(a) ? qga_seeds : classical_seeds; }
};

/// Materializes the Hamiltonian list of a spec. Ids must be unique.
std::vector<ProblemHamiltonian> resolve_hamiltonians(const ExperimentSpec& spec);

/// Seed of the initial population shared by every algorithm for
/// (Hamiltonian, replicate).
std::uint64_t initial_population_seed(std::uint64_t master, std::string_view hamiltonian_id,
                                      std::size_t replicate);
/// Seed of one run's own random stream.
std::uint64_t run_seed(std::uint64_t master, Algorithm a, std::string_view hamiltonian_id,
                       std::size_t replicate);

std::vector<PureState> initial_quantum_population(std::uint64_t seed, std::size_t n, std::size_t c);
std::vector<VectorIndividual> initial_vector_population(std::uint64_t seed, std::size_t n,
                                                        std::size_t c);
std::vector<BitIndividual> initial_bit_population(std::uint64_t seed, std::size_t n, std::size_t c);

/// Final-generation aggregate across seeds for one (algorithm, Hamiltonian).
struct GroupSummary {
  std::string algorithm;
  std::string hamiltonian_id;
  std::size_t runs = 0;
  /// QGA: means. Classical: kFidelityQuantile / kEnergyQuantile quantiles.
  double fidelity = 0.0;
  double energy = 0.0;
  /// Plain means and sample standard deviations across seeds.
  double fidelity_mean = 0.0;
  double fidelity_std = 0.0;
  double energy_mean = 0.0;
  double energy_std = 0.0;
};

/// Mean and standard deviation of the group aggregates across Hamiltonians.
struct AlgorithmSummary {
  std::string algorithm;
  std::size_t hamiltonians = 0;
  double fidelity_mean = 0.0;
  double fidelity_std = 0.0;
  double energy_mean = 0.0;
  double energy_std = 0.0;
};

/// Per-generation statistics of one (algorithm, Hamiltonian) group.
struct SeriesPoint {
  std::string algorithm;
  std::string hamiltonian_id;
  std::size_t generation = 0;
  double fidelity = 0.0;  // aggregate as in GroupSummary
  double energy = 0.0;
  double energy_min = 0.0;
  double energy_q25 = 0.0;
  double energy_median = 0.0;
  double energy_q75 = 0.0;
  double energy_max = 0.0;
};

struct WinRateSeries {
  std::string reference;  // always QGAunm
  std::string versus;
  std::vector<double> rate;
};

struct WilcoxonEntry {
  std::string metric;  // "fidelity" or "energy"
  std::string a;
  std::string b;
  std::size_t pairs = 0;
  std::optional<WilcoxonResult> result;
  std::string error;
};

struct Exclusion {
  std::string algorithm;
  std::string hamiltonian_id;
  std::string reason;
};

struct SummaryStats {
  std::vector<GroupSummary> groups;
  std::vector<AlgorithmSummary> algorithms;
  std::vector<SeriesPoint> series;
  std::vector<WinRateSeries> win_rates;
  std::vector<WilcoxonEntry> wilcoxon;
  std::vector<Exclusion> excluded;

  const GroupSummary* group(std::string_view algorithm, std::string_view hamiltonian_id) const;
  const AlgorithmSummary* algorithm(std::string_view name) const;
  const WinRateSeries* win_rate(std::string_view versus) const;
  const WilcoxonEntry* wilcoxon_entry(std::string_view metric, std::string_view a,
                                      std::string_view b) const;
};

struct ExperimentResult {
  std::vector<ProblemHamiltonian> hamiltonians;
  std::vector<RunRecord> records;
  SummaryStats summary;
};

struct RunOptions {
  std::size_t workers = 1;
  /// Polled between jobs; when set the run throws Cancelled.
  const std::atomic<bool>* cancel = nullptr;
  /// (finished jobs, total jobs); called from worker threads under a lock.
  std::function<void(std::size_t, std::size_t)> progress;
  /// If set, receives (algorithm, hamiltonian id, generation, population)
  /// for every generation of replicate 0 of each quantum run. Called from
  /// worker threads without locking.
  std::function<void(std::string_view, std::string_view, std::size_t, const QuantumPopulation&)>
      snapshot;
};

/// Runs every (algorithm, Hamiltonian, replicate) job and aggregates.
/// Records come out ordered by algorithm (spec order), Hamiltonian, replicate
/// regardless of worker count.
ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

/// Aggregation only; independent of record order.
SummaryStats summarize(const ExperimentSpec& spec, const std::vector<RunRecord>& records,
                       std::vector<Exclusion> excluded = {});

/// Fractions of Hamiltonians shared by both algorithms on which `a` has a
/// strictly lower aggregate energy / strictly higher aggregate fidelity than `b`.
struct Dominance {
  std::size_t hamiltonians = 0;
  double energy = 0.0;
  double fidelity = 0.0;
};
Dominance dominance(const SummaryStats& s, std::string_view a, std::string_view b);

}  // namespace qgabench
