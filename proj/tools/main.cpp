// qgabench: runs the benchmark presets and custom configurations.
//
//   qgabench run --preset fig3-table2 --seed 42 --out results/
//   qgabench run --config my.cfg --generations 20 --workers 4
//   qgabench presets
//   qgabench show-config --preset fig1-table1-desk
//   qgabench export-hamiltonians --preset fig1-table1 --seed 7 --out ens.json
//
// Settings are resolved preset -> config file -> flags, later ones winning.
// Exit status: 0 success, 1 runtime failure, 2 invalid configuration,
// 130 interrupted.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgabench/experiment.hpp"
#include "qgabench/presets.hpp"
#include "qgabench/report.hpp"

namespace {

using namespace qgabench;

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int) { g_interrupted.store(true); }

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

// --seeds comes before the per-class counts so that those win when both are given.
const std::vector<FlagSpec> kOverrideFlags{
    {"--algorithms", "algorithms", "Comma-separated algorithm ids"},
    {"--ensemble-size", "ensemble_size", "Number of random Hamiltonians"},
    {"--spectrum", "spectrum", "Comma-separated ensemble spectrum"},
    {"--hamiltonians", "hamiltonians", "Named Hamiltonians (hc, h2)"},
    {"--hamiltonian-file", "hamiltonian_file", "JSON file of extra Hamiltonians"},
    {"--seeds", "seeds", "Initial populations per Hamiltonian, all algorithms"},
    {"--qga-seeds", "qga_seeds", "Initial populations per Hamiltonian, QGAs"},
    {"--classical-seeds", "classical_seeds", "Initial populations per Hamiltonian, classical GAs"},
    {"--generations", "generations", "Generations per run"},
    {"--n", "n", "Population size"},
    {"--c", "c", "Qubits per individual"},
    {"--p", "p", "Classical Pauli / bit-flip mutation probability"},
    {"--q", "q", "Gaussian mutation probability per coefficient"},
    {"--sigma", "sigma", "Gaussian mutation standard deviation"},
    {"--p-m", "p_m", "Quantum mutation probability per qubit"},
    {"--uqcm-granularity", "uqcm_granularity", "register or qubit"},
    {"--cloning-basis", "cloning_basis", "computational or eigen"},
    {"--best-rule", "best_rule", "sorted_top or register_extremes"},
    {"--win-rate-reference", "win_rate_reference", "mean or paired"},
};

struct SpecOptions {
  std::string preset;
  std::string config;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> values;
};

void add_spec_options(CLI::App* app, SpecOptions& o) {
  app->add_option("--preset", o.preset, "Named preset (see `qgabench presets`)");
  app->add_option("--config", o.config, "Flat key=value configuration file")->check(CLI::ExistingFile);
  app->add_option("--seed", o.seed, "Master seed");
  for (const auto& f : kOverrideFlags) {
    app->add_option(f.flag, o.values[f.key], f.help);
  }
}

ExperimentSpec resolve_spec(const CLI::App* app, const SpecOptions& o) {
  std::vector<Setting> file;
  std::string preset_name = o.preset;
  if (!o.config.empty()) {
    for (auto& s : read_config_file(o.config)) {
      if (s.first == "preset") {
        if (preset_name.empty()) {
          preset_name = s.second;
        }
      } else {
        file.push_back(std::move(s));
      }
    }
  }
  ExperimentSpec spec;
  if (!preset_name.empty()) {
    spec = preset(preset_name);
  } else if (o.config.empty()) {
    throw ConfigError("either --preset or --config is required");
  }
  for (const auto& [k, v] : file) {
    apply_setting(spec, k, v);
  }
  for (const auto& f : kOverrideFlags) {
    if (app->count(f.flag) > 0) {
      apply_setting(spec, f.key, o.values.at(f.key));
    }
  }
  if (app->count("--seed") > 0) {
    spec.master_seed = o.seed;
  }
  spec.validate();
  return spec;
}

std::string default_out_dir() {
  if (const char* env = std::getenv("QGABENCH_OUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return "qgabench-out";
}

int cmd_run(const CLI::App* app, const SpecOptions& o, const std::string& out, std::size_t workers,
            bool quiet, bool snapshots, const std::string& argv_line) {
  const ExperimentSpec spec = resolve_spec(app, o);
  std::signal(SIGINT, on_sigint);

  RunOptions ro;
  ro.workers = workers;
  ro.cancel = &g_interrupted;
  std::size_t last_pct = 101;
  if (!quiet) {
    ro.progress = [&](std::size_t done, std::size_t total) {
      const std::size_t pct = done * 100 / total;
      if (pct / 5 != last_pct / 5 || done == total) {
        last_pct = pct;
        std::cerr << "\r" << done << "/" << total << " runs (" << pct << "%)" << std::flush;
      }
    };
  }
  std::filesystem::path snap_dir;
  if (snapshots) {
    std::filesystem::path target(out);
    if (!target.has_filename()) {
      target = target.parent_path();
    }
    snap_dir = target.string() + ".snapshots-tmp";
    std::filesystem::remove_all(snap_dir);
    std::filesystem::create_directories(snap_dir);
    ro.snapshot = [&](std::string_view alg, std::string_view hid, std::size_t g,
                      const QuantumPopulation& pop) {
      char name[128];
      std::snprintf(name, sizeof name, "%.*s_%.*s_g%03zu.json", static_cast<int>(alg.size()),
                    alg.data(), static_cast<int>(hid.size()), hid.data(), g);
      std::ofstream f(snap_dir / name, std::ios::binary);
      f << density_matrix_to_json(pop.state) << "\n";
    };
  }
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentResult result;
  try {
    result = run_experiment(spec, ro);
  } catch (...) {
    if (!snap_dir.empty()) {
      std::filesystem::remove_all(snap_dir);
    }
    throw;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!quiet) {
    std::cerr << "\n";
  }
  ManifestInfo info{argv_line, wall, workers};
  write_artifacts(out, spec, result, info, snap_dir);

  if (!quiet) {
    std::cout << "wrote " << out << " (" << result.records.size() << " runs, " << wall << " s)\n";
    std::cout << "algorithm   fidelity        energy\n";
    for (const auto& a : result.summary.algorithms) {
      std::printf("%-10s  %.3f (%.3f)   %.3f (%.3f)\n", a.algorithm.c_str(), a.fidelity_mean,
                  a.fidelity_std, a.energy_mean, a.energy_std);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum and classical genetic algorithm benchmark"};
  app.require_subcommand(1);
  app.set_version_flag("--version", QGABENCH_TOOL_VERSION);

  std::string argv_line;
  for (int i = 0; i < argc; ++i) {
    argv_line += (i ? " " : "") + std::string(argv[i]);
  }

  SpecOptions run_opts;
  std::string out_dir = default_out_dir();
  std::size_t workers = 1;
  bool quiet = false;
  bool snapshots = false;
  auto* run = app.add_subcommand("run", "Run an experiment and write its artifacts");
  add_spec_options(run, run_opts);
  run->add_option("--out", out_dir, "Output directory (default $QGABENCH_OUT_DIR or ./qgabench-out)");
  run->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1, 256));
  run->add_flag("--quiet", quiet, "No progress or summary output");
  run->add_flag("--dump-snapshots", snapshots,
                "Write every generation's population of replicate 0 of each QGA run");

  auto* presets = app.add_subcommand("presets", "List presets");

  SpecOptions show_opts;
  auto* show = app.add_subcommand("show-config", "Print the resolved configuration");
  add_spec_options(show, show_opts);

  SpecOptions export_opts;
  std::string export_path;
  auto* exp = app.add_subcommand("export-hamiltonians", "Write the resolved Hamiltonians as JSON");
  add_spec_options(exp, export_opts);
  exp->add_option("--out", export_path, "Output JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      return cmd_run(run, run_opts, out_dir, workers, quiet, snapshots, argv_line);
    }
    if (*presets) {
      for (const auto& name : preset_names()) {
        const ExperimentSpec s = preset(name);
        std::cout << name << ": " << s.algorithms.size() << " algorithms, ";
        if (s.ensemble_size > 0) {
          std::cout << s.ensemble_size << " random Hamiltonians, ";
        } else {
          std::cout << "Hamiltonians " << s.named_hamiltonians.front() << ","
                    << s.named_hamiltonians.back() << ", ";
        }
        std::cout << s.qga_seeds << "/" << s.classical_seeds << " seeds (quantum/classical), "
                  << s.generations << " generations\n";
      }
      return 0;
    }
    if (*show) {
      std::cout << format_config(resolve_spec(show, show_opts));
      return 0;
    }
    if (*exp) {
      const ExperimentSpec spec = resolve_spec(exp, export_opts);
      const auto hs = resolve_hamiltonians(spec);
      save_hamiltonians(export_path, hs);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "qgabench: invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const Cancelled&) {
    std::cerr << "\nqgabench: interrupted; no artifacts written\n";
    return 130;
  } catch (const std::exception& e) {
    std::cerr << "qgabench: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
