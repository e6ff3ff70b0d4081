#pragma once

// Named experiment presets and the flat key=value configuration format.
//
//   # comment
//   preset = fig3-table2-desk
//   seed = 42
//   generations = 50
//   p = 1/24
//
// Keys mirror ExperimentSpec fields (see settings_keys()). List values are
// comma separated. Later assignments win, so flags applied after a file
// override it, and the file overrides its preset.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgabench/experiment.hpp"

namespace qgabench {

using Setting = std::pair<std::string, std::string>;

const std::vector<std::string>& preset_names();
/// Throws ConfigError naming the valid presets.
ExperimentSpec preset(std::string_view name);

const std::vector<std::string>& settings_keys();
/// Throws ConfigError on an unknown key or malformed value.
void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view value);

/// Parses key=value lines; blank lines and '#' comments are ignored.
std::vector<Setting> parse_config_text(std::string_view text);
std::vector<Setting> read_config_file(const std::string& path);

/// Every key with its current value; feeding these back reproduces `spec`.
std::vector<Setting> spec_settings(const ExperimentSpec& spec);
std::string format_config(const ExperimentSpec& spec);

std::string_view to_string(BestIndividualRule r);
std::string_view to_string(WinRateReference r);

}  // namespace qgabench
