#include "qgabench/experiment.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_set>
#include <utility>

namespace qgabench {
namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 9> kNames{{
    {Algorithm::cga_ai, "CGAai"},
    {Algorithm::cga_aii, "CGAaii"},
    {Algorithm::cga_bi, "CGAbi"},
    {Algorithm::cga_bii, "CGAbii"},
    {Algorithm::qga_bnm, "QGAbnm"},
    {Algorithm::qga_bwm, "QGAbwm"},
    {Algorithm::qga_unm, "QGAunm"},
    {Algorithm::qga_uwm, "QGAuwm"},
    {Algorithm::bga, "BGA"},
}};

const std::uint64_t kInitTag = hash_label("initial-population");
const std::uint64_t kRunTag = hash_label("run");
const std::uint64_t kEnsembleTag = hash_label("ensemble");
const std::uint64_t kBitsTag = hash_label("bits");

struct Job {
  Algorithm algorithm;
  std::size_t hamiltonian;
  std::size_t replicate;
  std::uint64_t init_seed;
  std::uint64_t seed;
};

RunRecord execute(const Job& job, const ExperimentSpec& spec, const ProblemHamiltonian& h,
                  const RunOptions& options) {
  RunRecord rec;
  switch (job.algorithm) {
    case Algorithm::qga_bnm:
    case Algorithm::qga_bwm:
    case Algorithm::qga_unm:
    case Algorithm::qga_uwm: {
      QgaObserver observer;
      if (options.snapshot && job.replicate == 0) {
        observer = [&](std::size_t g, const QuantumPopulation& pop) {
          options.snapshot(algorithm_name(job.algorithm), h.id(), g, pop);
        };
      }
      rec = run_qga(h, spec.qga_config(job.algorithm),
                    initial_quantum_population(job.init_seed, spec.n, spec.c), observer);
      break;
    }
    case Algorithm::bga: {
      Rng rng(job.seed);
      rec = run_bga(h, spec.bga_config(), initial_bit_population(job.init_seed, spec.n, spec.c), rng);
      break;
    }
    default: {
      Rng rng(job.seed);
      rec = run_cga(h, spec.cga_config(job.algorithm),
                    initial_vector_population(job.init_seed, spec.n, spec.c), rng);
      break;
    }
  }
  rec.algorithm = std::string(algorithm_name(job.algorithm));
  rec.hamiltonian_id = h.id();
  rec.seed = job.seed;
  rec.replicate = job.replicate;
  return rec;
}

std::pair<double, double> mean_std(const std::vector<double>& v) {
  return {mean(v), stddev(v)};
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  for (const auto& [alg, name] : kNames) {
    if (alg == a) {
      return name;
    }
  }
  throw std::invalid_argument("unknown algorithm");
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto& [alg, n] : kNames) {
    if (n == name) {
      return alg;
    }
  }
  std::string valid;
  for (const auto& [alg, n] : kNames) {
    valid += valid.empty() ? "" : ", ";
    valid += n;
  }
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (valid: " + valid + ")");
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> algs = [] {
    std::vector<Algorithm> v;
    for (const auto& [alg, name] : kNames) {
      v.push_back(alg);
    }
    return v;
  }();
  return algs;
}

bool is_quantum(Algorithm a) {
  return a == Algorithm::qga_bnm || a == Algorithm::qga_bwm || a == Algorithm::qga_unm ||
         a == Algorithm::qga_uwm;
}

// ---------------------------------------------------------------------------
// Spec

void ExperimentSpec::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (algorithms.empty()) {
    fail("at least one algorithm is required");
  }
  if (std::set<Algorithm>(algorithms.begin(), algorithms.end()).size() != algorithms.size()) {
    fail("algorithm list contains duplicates");
  }
  if (ensemble_size == 0 && named_hamiltonians.empty() && hamiltonian_file.empty()) {
    fail("no Hamiltonians selected");
  }
  if (ensemble_size > 0 && spectrum.size() != (std::size_t{1} << std::min<std::size_t>(c, 20))) {
    fail("spectrum must have 2^c entries");
  }
  for (const auto& name : named_hamiltonians) {
    if (name != "hc" && name != "h2") {
      fail("unknown named Hamiltonian '" + name + "' (valid: hc, h2)");
    }
  }
  if (qga_seeds == 0 || classical_seeds == 0) {
    fail("seed counts must be at least 1");
  }
  try {
    for (Algorithm a : algorithms) {
      if (is_quantum(a)) {
        qga_config(a).validate();
      } else if (a == Algorithm::bga) {
        bga_config().validate();
      } else {
        cga_config(a).validate();
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(e.what());
  }
  if (!(p_m >= 0.0 && p_m <= 1.0)) {
    fail("p_m must lie in [0, 1]");
  }
}

QgaConfig ExperimentSpec::qga_config(Algorithm a) const {
  if (!is_quantum(a)) {
    throw std::invalid_argument("not a quantum algorithm");
  }
  QgaConfig cfg;
  cfg.cloner = (a == Algorithm::qga_bnm || a == Algorithm::qga_bwm) ? Cloner::bcqo : Cloner::uqcm;
  cfg.mutation_enabled = (a == Algorithm::qga_bwm || a == Algorithm::qga_uwm);
  cfg.mutation_probability = p_m;
  cfg.generations = generations;
  cfg.layout = RegisterLayout(n, c);
  cfg.uqcm_granularity = uqcm_granularity;
  cfg.cloning_basis = cloning_basis;
  cfg.best_rule = best_rule;
  return cfg;
}

CgaConfig ExperimentSpec::cga_config(Algorithm a) const {
  CgaConfig cfg;
  switch (a) {
    case Algorithm::cga_ai:
      cfg.crossover = Crossover::linear;
      cfg.mutation = Mutation::gaussian;
      break;
    case Algorithm::cga_aii:
      cfg.crossover = Crossover::linear;
      cfg.mutation = Mutation::pauli;
      break;
    case Algorithm::cga_bi:
      cfg.crossover = Crossover::coefficient_swap;
      cfg.mutation = Mutation::gaussian;
      break;
    case Algorithm::cga_bii:
      cfg.crossover = Crossover::coefficient_swap;
      cfg.mutation = Mutation::pauli;
      break;
    default:
      throw std::invalid_argument("not a complex-vector GA");
  }
  cfg.p = p;
  cfg.q = q;
  cfg.sigma = sigma;
  cfg.generations = generations;
  cfg.n = n;
  cfg.c = c;
  return cfg;
}

BgaConfig ExperimentSpec::bga_config() const {
  BgaConfig cfg;
  cfg.p = p;
  cfg.generations = generations;
  cfg.n = n;
  cfg.c = c;
  return cfg;
}

std::vector<ProblemHamiltonian> resolve_hamiltonians(const ExperimentSpec& spec) {
  std::vector<ProblemHamiltonian> hs;
  if (spec.ensemble_size > 0) {
    hs = sample_ensemble(spec.spectrum, spec.ensemble_size,
                         derive_seed(spec.master_seed, {kEnsembleTag}));
  }
  for (const auto& name : spec.named_hamiltonians) {
    hs.push_back(name == "hc" ? make_hc() : make_h2());
  }
  if (!spec.hamiltonian_file.empty()) {
    for (auto& h : load_hamiltonians(spec.hamiltonian_file)) {
      hs.push_back(std::move(h));
    }
  }
  std::set<std::string> ids;
  const std::size_t dim = std::size_t{1} << spec.c;
  for (const auto& h : hs) {
    if (!ids.insert(h.id()).second) {
      throw ConfigError("duplicate Hamiltonian id '" + h.id() + "'");
    }
    if (h.dim() != dim) {
      throw ConfigError("Hamiltonian '" + h.id() + "' does not act on c qubits");
    }
  }
  return hs;
}

std::uint64_t initial_population_seed(std::uint64_t master, std::string_view hamiltonian_id,
                                      std::size_t replicate) {
  return derive_seed(master, {kInitTag, hash_label(hamiltonian_id), replicate});
}

std::uint64_t run_seed(std::uint64_t master, Algorithm a, std::string_view hamiltonian_id,
                       std::size_t replicate) {
  return derive_seed(master,
                     {kRunTag, hash_label(algorithm_name(a)), hash_label(hamiltonian_id), replicate});
}

std::vector<PureState> initial_quantum_population(std::uint64_t seed, std::size_t n, std::size_t c) {
  Rng rng(seed);
  std::vector<PureState> pop;
  pop.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pop.push_back(haar_random_pure_state(std::size_t{1} << c, rng));
  }
  return pop;
}

std::vector<VectorIndividual> initial_vector_population(std::uint64_t seed, std::size_t n,
                                                        std::size_t c) {
  std::vector<VectorIndividual> pop;
  for (const auto& s : initial_quantum_population(seed, n, c)) {
    pop.emplace_back(s.amplitudes());
  }
  return pop;
}

std::vector<BitIndividual> initial_bit_population(std::uint64_t seed, std::size_t n, std::size_t c) {
  Rng rng = Rng(seed).split(kBitsTag);
  std::vector<BitIndividual> pop;
  const auto top = static_cast<std::int64_t>((std::uint64_t{1} << c) - 1);
  for (std::size_t i = 0; i < n; ++i) {
    pop.emplace_back(static_cast<std::uint32_t>(rng.uniform_int(0, top)), c);
  }
  return pop;
}

// ---------------------------------------------------------------------------
// Execution

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  spec.validate();
  ExperimentResult result;
  result.hamiltonians = resolve_hamiltonians(spec);
  const auto& hs = result.hamiltonians;

  std::vector<Job> jobs;
  std::vector<Exclusion> excluded;
  std::unordered_set<std::uint64_t> seen;
  for (Algorithm a : spec.algorithms) {
    for (std::size_t hi = 0; hi < hs.size(); ++hi) {
      if (a == Algorithm::bga && !hs[hi].is_diagonal()) {
        excluded.push_back({std::string(algorithm_name(a)), hs[hi].id(),
                            "bit-string GA needs a diagonal Hamiltonian"});
        continue;
      }
      for (std::size_t r = 0; r < spec.seeds_for(a); ++r) {
        Job job{a, hi, r, initial_population_seed(spec.master_seed, hs[hi].id(), r),
                run_seed(spec.master_seed, a, hs[hi].id(), r)};
        if (!seen.insert(job.seed).second) {
          throw std::runtime_error("seed fan-out collision");
        }
        jobs.push_back(job);
      }
    }
  }

  std::vector<RunRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::size_t finished = 0;
  std::exception_ptr error;
  std::mutex mu;

  auto worker = [&] {
    while (!failed.load()) {
      if (options.cancel != nullptr && options.cancel->load()) {
        return;
      }
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) {
        return;
      }
      try {
        records[i] = execute(jobs[i], spec, hs[jobs[i].hamiltonian], options);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) {
          error = std::current_exception();
        }
        failed = true;
        return;
      }
      if (options.progress) {
        std::lock_guard lock(mu);
        options.progress(++finished, jobs.size());
      }
    }
  };

  const std::size_t n_workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(jobs.size(), 1));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) {
      pool.emplace_back(worker);
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
  if (options.cancel != nullptr && options.cancel->load()) {
    throw Cancelled();
  }

  result.summary = summarize(spec, records, std::move(excluded));
  result.records = std::move(records);
  return result;
}

// ---------------------------------------------------------------------------
// Aggregation

SummaryStats summarize(const ExperimentSpec& spec, const std::vector<RunRecord>& records,
                       std::vector<Exclusion> excluded) {
  SummaryStats s;
  s.excluded = std::move(excluded);

  // (algorithm rank, hamiltonian id) -> records sorted by replicate, seed.
  std::map<std::size_t, std::map<std::string, std::vector<const RunRecord*>>> groups;
  std::vector<Algorithm> order = spec.algorithms;
  for (const auto& r : records) {
    const Algorithm a = parse_algorithm(r.algorithm);
    auto it = std::find(order.begin(), order.end(), a);
    if (it == order.end()) {
      order.push_back(a);
      it = order.end() - 1;
    }
    groups[static_cast<std::size_t>(it - order.begin())][r.hamiltonian_id].push_back(&r);
  }
  for (auto& [rank, by_h] : groups) {
    for (auto& [id, rs] : by_h) {
      std::sort(rs.begin(), rs.end(), [](const RunRecord* x, const RunRecord* y) {
        return std::tie(x->replicate, x->seed) < std::tie(y->replicate, y->seed);
      });
    }
  }

  for (const auto& [rank, by_h] : groups) {
    const Algorithm a = order[rank];
    const std::string name(algorithm_name(a));
    const bool quantum = is_quantum(a);
    std::vector<double> agg_f;
    std::vector<double> agg_e;
    for (const auto& [id, rs] : by_h) {
      const std::size_t gens = rs.front()->best_energy.size();
      for (const auto* r : rs) {
        if (r->best_energy.size() != gens) {
          throw std::invalid_argument("records of one group differ in length");
        }
      }
      auto column = [&](std::size_t g, bool fid) {
        std::vector<double> v;
        v.reserve(rs.size());
        for (const auto* r : rs) {
          v.push_back(fid ? r->best_fidelity[g] : r->best_energy[g]);
        }
        return v;
      };
      auto aggregate = [&](const std::vector<double>& v, bool fid) {
        if (quantum) {
          return mean(v);
        }
        return quantile(v, fid ? kFidelityQuantile : kEnergyQuantile);
      };
      for (std::size_t g = 0; g < gens; ++g) {
        const auto f = column(g, true);
        const auto e = column(g, false);
        SeriesPoint pt;
        pt.algorithm = name;
        pt.hamiltonian_id = id;
        pt.generation = g;
        pt.fidelity = aggregate(f, true);
        pt.energy = aggregate(e, false);
        pt.energy_min = *std::min_element(e.begin(), e.end());
        pt.energy_max = *std::max_element(e.begin(), e.end());
        pt.energy_q25 = quantile(e, 0.25);
        pt.energy_median = quantile(e, 0.5);
        pt.energy_q75 = quantile(e, 0.75);
        s.series.push_back(pt);
      }
      const auto f = column(gens - 1, true);
      const auto e = column(gens - 1, false);
      GroupSummary gs;
      gs.algorithm = name;
      gs.hamiltonian_id = id;
      gs.runs = rs.size();
      gs.fidelity = aggregate(f, true);
      gs.energy = aggregate(e, false);
      std::tie(gs.fidelity_mean, gs.fidelity_std) = mean_std(f);
      std::tie(gs.energy_mean, gs.energy_std) = mean_std(e);
      agg_f.push_back(gs.fidelity);
      agg_e.push_back(gs.energy);
      s.groups.push_back(gs);
    }
    AlgorithmSummary as;
    as.algorithm = name;
    as.hamiltonians = agg_f.size();
    std::tie(as.fidelity_mean, as.fidelity_std) = mean_std(agg_f);
    std::tie(as.energy_mean, as.energy_std) = mean_std(agg_e);
    s.algorithms.push_back(as);
  }

  // Win rates against QGAunm, restricted to the Hamiltonians both cover.
  const auto ref_it = std::find(order.begin(), order.end(), Algorithm::qga_unm);
  if (ref_it != order.end()) {
    const auto& ref_groups = groups[static_cast<std::size_t>(ref_it - order.begin())];
    for (const auto& [rank, by_h] : groups) {
      if (order[rank] == Algorithm::qga_unm) {
        continue;
      }
      std::vector<RunRecord> qrs;
      std::vector<RunRecord> crs;
      for (const auto& [id, rs] : by_h) {
        const auto q = ref_groups.find(id);
        if (q == ref_groups.end()) {
          continue;
        }
        for (const auto* r : q->second) {
          qrs.push_back(*r);
        }
        for (const auto* r : rs) {
          crs.push_back(*r);
        }
      }
      if (qrs.empty()) {
        continue;
      }
      s.win_rates.push_back({"QGAunm", std::string(algorithm_name(order[rank])),
                             win_rate_series(qrs, crs, spec.win_rate_reference)});
    }
  }

  // Paired tests over per-Hamiltonian aggregates.
  for (const char* metric : {"fidelity", "energy"}) {
    const bool fid = std::string_view(metric) == "fidelity";
    for (std::size_t i = 0; i < s.algorithms.size(); ++i) {
      for (std::size_t j = i + 1; j < s.algorithms.size(); ++j) {
        WilcoxonEntry w;
        w.metric = metric;
        w.a = s.algorithms[i].algorithm;
        w.b = s.algorithms[j].algorithm;
        std::vector<double> xa;
        std::vector<double> xb;
        for (const auto& g : s.groups) {
          if (g.algorithm != w.a) {
            continue;
          }
          if (const auto* other = s.group(w.b, g.hamiltonian_id)) {
            xa.push_back(fid ? g.fidelity : g.energy);
            xb.push_back(fid ? other->fidelity : other->energy);
          }
        }
        w.pairs = xa.size();
        try {
          w.result = wilcoxon_signed_rank(xa, xb);
        } catch (const std::invalid_argument& e) {
          w.error = e.what();
        }
        s.wilcoxon.push_back(std::move(w));
      }
    }
  }
  return s;
}

const GroupSummary* SummaryStats::group(std::string_view algorithm,
                                        std::string_view hamiltonian_id) const {
  for (const auto& g : groups) {
    if (g.algorithm == algorithm && g.hamiltonian_id == hamiltonian_id) {
      return &g;
    }
  }
  return nullptr;
}

const AlgorithmSummary* SummaryStats::algorithm(std::string_view name) const {
  for (const auto& a : algorithms) {
    if (a.algorithm == name) {
      return &a;
    }
  }
  return nullptr;
}

const WinRateSeries* SummaryStats::win_rate(std::string_view versus) const {
  for (const auto& w : win_rates) {
    if (w.versus == versus) {
      return &w;
    }
  }
  return nullptr;
}

const WilcoxonEntry* SummaryStats::wilcoxon_entry(std::string_view metric, std::string_view a,
                                                  std::string_view b) const {
  for (const auto& w : wilcoxon) {
    if (w.metric == metric && ((w.a == a && w.b == b) || (w.a == b && w.b == a))) {
      return &w;
    }
  }
  return nullptr;
}

Dominance dominance(const SummaryStats& s, std::string_view a, std::string_view b) {
  Dominance d;
  std::size_t wins_e = 0;
  std::size_t wins_f = 0;
  for (const auto& g : s.groups) {
    if (g.algorithm != a) {
      continue;
    }
    if (const auto* other = s.group(b, g.hamiltonian_id)) {
      ++d.hamiltonians;
      wins_e += g.energy < other->energy ? 1 : 0;
      wins_f += g.fidelity > other->fidelity ? 1 : 0;
    }
  }
  if (d.hamiltonians > 0) {
    d.energy = static_cast<double>(wins_e) / static_cast<double>(d.hamiltonians);
    d.fidelity = static_cast<double>(wins_f) / static_cast<double>(d.hamiltonians);
  }
  return d;
}

}  // namespace qgabench
