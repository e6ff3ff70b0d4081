#pragma once

// Artifact writers. Every numeric field is printed with 17 significant
// digits so that identical runs give byte-identical files.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qgabench/experiment.hpp"

namespace qgabench {

inline constexpr int kSchemaVersion = 1;

/// algorithm,hamiltonian_id,seed,generation,best_energy,best_fidelity
void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records);
/// algorithm,hamiltonian_id,generation,fidelity,energy,energy_min,energy_q25,
/// energy_median,energy_q75,energy_max
void write_series_csv(std::ostream& out, const SummaryStats& s);
/// reference,versus,generation,rate
void write_winrate_csv(std::ostream& out, const SummaryStats& s);

std::string summary_json(const ExperimentSpec& spec, const SummaryStats& s);

struct ManifestInfo {
  std::string command_line;
  double wall_time_seconds = 0.0;
  std::size_t workers = 1;
};

std::string manifest_json(const ExperimentSpec& spec, const ExperimentResult& r,
                          const ManifestInfo& info, const std::vector<std::string>& files);

/// Writes records.csv, series.csv, winrate.csv, summary.json,
/// hamiltonians.json, config.txt and manifest.json into a staging directory
/// next to `dir`, then renames it into place. An existing `dir` is replaced
/// only if it holds a previous manifest.json. A non-empty `snapshots` dir is
/// moved in as snapshots/. Returns the file names.
std::vector<std::string> write_artifacts(const std::filesystem::path& dir,
                                         const ExperimentSpec& spec, const ExperimentResult& r,
                                         const ManifestInfo& info,
                                         const std::filesystem::path& snapshots = {});

}  // namespace qgabench
