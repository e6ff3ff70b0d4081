#include "qgabench/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

#include "json.hpp"
#include "qgabench/presets.hpp"

#ifndef QGABENCH_VERSION
#define QGABENCH_VERSION "unknown"
#endif

namespace qgabench {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json wilcoxon_json(const WilcoxonEntry& w) {
  Json j{{"metric", w.metric}, {"a", w.a}, {"b", w.b}, {"pairs", w.pairs}};
  if (w.result) {
    j["statistic"] = w.result->statistic;
    j["w_plus"] = w.result->w_plus;
    j["n"] = w.result->n;
    j["p_value"] = w.result->p_value;
    j["exact"] = w.result->exact;
  } else {
    j["error"] = w.error;
  }
  return j;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) {
    throw std::runtime_error("failed to write " + path.string());
  }
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "algorithm,hamiltonian_id,seed,generation,best_energy,best_fidelity\n";
  for (const auto& r : records) {
    for (std::size_t g = 0; g < r.best_energy.size(); ++g) {
      out << r.algorithm << ',' << r.hamiltonian_id << ',' << r.seed << ',' << g << ','
          << num(r.best_energy[g]) << ',' << num(r.best_fidelity[g]) << '\n';
    }
  }
}

void write_series_csv(std::ostream& out, const SummaryStats& s) {
  out << "algorithm,hamiltonian_id,generation,fidelity,energy,energy_min,energy_q25,"
         "energy_median,energy_q75,energy_max\n";
  for (const auto& p : s.series) {
    out << p.algorithm << ',' << p.hamiltonian_id << ',' << p.generation << ',' << num(p.fidelity)
        << ',' << num(p.energy) << ',' << num(p.energy_min) << ',' << num(p.energy_q25) << ','
        << num(p.energy_median) << ',' << num(p.energy_q75) << ',' << num(p.energy_max) << '\n';
  }
}

void write_winrate_csv(std::ostream& out, const SummaryStats& s) {
  out << "reference,versus,generation,rate\n";
  for (const auto& w : s.win_rates) {
    for (std::size_t g = 0; g < w.rate.size(); ++g) {
      out << w.reference << ',' << w.versus << ',' << g << ',' << num(w.rate[g]) << '\n';
    }
  }
}

std::string summary_json(const ExperimentSpec& spec, const SummaryStats& s) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["aggregation"] = {{"quantum", "mean"},
                      {"classical_fidelity_quantile", kFidelityQuantile},
                      {"classical_energy_quantile", kEnergyQuantile},
                      {"win_rate_reference", to_string(spec.win_rate_reference)}};
  Json algs = Json::array();
  for (const auto& a : s.algorithms) {
    algs.push_back({{"algorithm", a.algorithm},
                    {"hamiltonians", a.hamiltonians},
                    {"fidelity_mean", a.fidelity_mean},
                    {"fidelity_std", a.fidelity_std},
                    {"energy_mean", a.energy_mean},
                    {"energy_std", a.energy_std}});
  }
  j["algorithms"] = std::move(algs);
  Json groups = Json::array();
  for (const auto& g : s.groups) {
    groups.push_back({{"algorithm", g.algorithm},
                      {"hamiltonian_id", g.hamiltonian_id},
                      {"runs", g.runs},
                      {"fidelity", g.fidelity},
                      {"energy", g.energy},
                      {"fidelity_mean", g.fidelity_mean},
                      {"fidelity_std", g.fidelity_std},
                      {"energy_mean", g.energy_mean},
                      {"energy_std", g.energy_std}});
  }
  j["groups"] = std::move(groups);
  Json wins = Json::array();
  for (const auto& w : s.win_rates) {
    wins.push_back({{"reference", w.reference}, {"versus", w.versus}, {"rate", w.rate}});
  }
  j["win_rates"] = std::move(wins);
  Json tests = Json::array();
  for (const auto& w : s.wilcoxon) {
    tests.push_back(wilcoxon_json(w));
  }
  j["wilcoxon"] = std::move(tests);
  Json excl = Json::array();
  for (const auto& e : s.excluded) {
    excl.push_back({{"algorithm", e.algorithm}, {"hamiltonian_id", e.hamiltonian_id},
                    {"reason", e.reason}});
  }
  j["excluded"] = std::move(excl);
  return j.dump(2) + "\n";
}

std::string manifest_json(const ExperimentSpec& spec, const ExperimentResult& r,
                          const ManifestInfo& info, const std::vector<std::string>& files) {
  Json config = Json::object();
  for (const auto& [k, v] : spec_settings(spec)) {
    config[k] = v;
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "qgabench";
  j["code_version"] = QGABENCH_VERSION;
  j["master_seed"] = spec.master_seed;
  j["config"] = std::move(config);
  j["command_line"] = info.command_line;
  j["workers"] = info.workers;
  j["hamiltonians"] = r.hamiltonians.size();
  j["records"] = r.records.size();
  j["finished_utc"] = utc_now();
  j["wall_time_seconds"] = info.wall_time_seconds;
  j["files"] = files;
  return j.dump(2) + "\n";
}

std::vector<std::string> write_artifacts(const fs::path& dir_in, const ExperimentSpec& spec,
                                         const ExperimentResult& r, const ManifestInfo& info,
                                         const fs::path& snapshots) {
  fs::path dir = dir_in;
  if (!dir.has_filename()) {
    dir = dir.parent_path();
  }
  if (dir.empty()) {
    throw std::runtime_error("empty output directory");
  }
  if (fs::exists(dir) && !fs::exists(dir / "manifest.json")) {
    if (!fs::is_directory(dir) || !fs::is_empty(dir)) {
      throw std::runtime_error("refusing to replace " + dir.string() +
                               ": not a previous qgabench output directory");
    }
  }
  const fs::path parent = dir.has_parent_path() ? dir.parent_path() : fs::path(".");
  fs::create_directories(parent);
  const fs::path staging =
      parent / ("." + dir.filename().string() + ".staging-" + std::to_string(::getpid()));
  fs::remove_all(staging);
  fs::create_directory(staging);

  std::vector<std::string> files{"records.csv", "series.csv", "winrate.csv", "summary.json",
                                 "hamiltonians.json", "config.txt", "manifest.json"};
  const bool with_snapshots = !snapshots.empty() && fs::exists(snapshots);
  if (with_snapshots) {
    files.push_back("snapshots/");
  }
  try {
    {
      std::ofstream out(staging / "records.csv", std::ios::binary);
      write_records_csv(out, r.records);
      if (!out) throw std::runtime_error("failed to write records.csv");
    }
    {
      std::ofstream out(staging / "series.csv", std::ios::binary);
      write_series_csv(out, r.summary);
      if (!out) throw std::runtime_error("failed to write series.csv");
    }
    {
      std::ofstream out(staging / "winrate.csv", std::ios::binary);
      write_winrate_csv(out, r.summary);
      if (!out) throw std::runtime_error("failed to write winrate.csv");
    }
    write_file(staging / "summary.json", summary_json(spec, r.summary));
    save_hamiltonians((staging / "hamiltonians.json").string(), r.hamiltonians);
    write_file(staging / "config.txt", format_config(spec));
    write_file(staging / "manifest.json", manifest_json(spec, r, info, files));
    if (with_snapshots) {
      fs::rename(snapshots, staging / "snapshots");
    }

    if (fs::exists(dir)) {
      fs::remove_all(dir);
    }
    fs::rename(staging, dir);
  } catch (...) {
    std::error_code ec;
    fs::remove_all(staging, ec);
    throw;
  }
  return files;
}

}  // namespace qgabench
