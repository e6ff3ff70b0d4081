#include "qgabench/presets.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qgabench {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) {
      out.emplace_back(item);
    }
    if (comma == std::string_view::npos) {
      break;
    }
    s.remove_prefix(comma + 1);
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view what) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) + ": " +
                    std::string(what));
}

template <typename T>
T parse_integer(std::string_view key, std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    bad_value(key, v, "expected a non-negative integer");
  }
  return out;
}

double parse_plain_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    bad_value(key, v, "expected a number");
  }
  return out;
}

// Accepts "0.25" and fractions such as "1/24".
double parse_double(std::string_view key, std::string_view v) {
  const auto slash = v.find('/');
  if (slash == std::string_view::npos) {
    return parse_plain_double(key, v);
  }
  const double den = parse_plain_double(key, trim(v.substr(slash + 1)));
  if (den == 0.0) {
    bad_value(key, v, "zero denominator");
  }
  return parse_plain_double(key, trim(v.substr(0, slash))) / den;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    out += out.empty() ? "" : ",";
    out += s;
  }
  return out;
}

ExperimentSpec ensemble_base() {
  ExperimentSpec s;
  s.algorithms = {Algorithm::cga_ai,  Algorithm::cga_aii, Algorithm::cga_bi,  Algorithm::cga_bii,
                  Algorithm::qga_bnm, Algorithm::qga_bwm, Algorithm::qga_unm, Algorithm::qga_uwm};
  s.ensemble_size = kDefaultEnsembleSize;
  s.qga_seeds = 10;
  s.classical_seeds = 100;
  s.generations = 10;
  return s;
}

ExperimentSpec named_base() {
  ExperimentSpec s;
  s.algorithms = all_algorithms();
  s.named_hamiltonians = {"hc", "h2"};
  s.qga_seeds = 50;
  s.classical_seeds = 50;
  s.generations = 50;
  return s;
}

const std::vector<Algorithm> kWinRateAlgorithms{Algorithm::qga_unm, Algorithm::cga_ai,
                                                Algorithm::cga_aii, Algorithm::cga_bi,
                                                Algorithm::cga_bii};

}  // namespace

std::string_view to_string(BestIndividualRule r) {
  return r == BestIndividualRule::sorted_top ? "sorted_top" : "register_extremes";
}

std::string_view to_string(WinRateReference r) {
  return r == WinRateReference::mean ? "mean" : "paired";
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{
      "fig1-table1", "fig1-table1-desk", "fig2",      "fig2-desk",
      "fig3-table2", "fig3-table2-desk", "fig4",      "fig4-desk",
  };
  return names;
}

ExperimentSpec preset(std::string_view name) {
  ExperimentSpec s;
  if (name == "fig1-table1" || name == "fig1-table1-desk") {
    s = ensemble_base();
  } else if (name == "fig2" || name == "fig2-desk") {
    s = ensemble_base();
    s.algorithms = kWinRateAlgorithms;
  } else if (name == "fig3-table2" || name == "fig3-table2-desk") {
    s = named_base();
  } else if (name == "fig4" || name == "fig4-desk") {
    s = named_base();
    s.algorithms = kWinRateAlgorithms;
    s.algorithms.push_back(Algorithm::bga);
  } else {
    std::string valid;
    for (const auto& n : preset_names()) {
      valid += valid.empty() ? "" : ", ";
      valid += n;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "' (valid: " + valid + ")");
  }
  if (name.ends_with("-desk")) {
    if (s.ensemble_size > 0) {
      s.ensemble_size = 20;
    } else {
      s.qga_seeds = 10;
      s.classical_seeds = 10;
    }
  }
  return s;
}

const std::vector<std::string>& settings_keys() {
  static const std::vector<std::string> keys{
      "algorithms", "ensemble_size",    "spectrum",  "hamiltonians", "hamiltonian_file",
      "qga_seeds",  "classical_seeds",  "seeds",     "generations",  "n",
      "c",          "p",                "q",         "sigma",        "p_m",
      "uqcm_granularity", "cloning_basis", "best_rule", "win_rate_reference", "seed",
  };
  return keys;
}

void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view raw) {
  const std::string_view v = trim(raw);
  if (key == "algorithms") {
    spec.algorithms.clear();
    for (const auto& name : split_list(v)) {
      spec.algorithms.push_back(parse_algorithm(name));
    }
  } else if (key == "ensemble_size") {
    spec.ensemble_size = parse_integer<std::size_t>(key, v);
  } else if (key == "spectrum") {
    spec.spectrum.clear();
    for (const auto& x : split_list(v)) {
      spec.spectrum.push_back(parse_double(key, x));
    }
  } else if (key == "hamiltonians") {
    spec.named_hamiltonians = split_list(v);
  } else if (key == "hamiltonian_file") {
    spec.hamiltonian_file = std::string(v);
  } else if (key == "qga_seeds") {
    spec.qga_seeds = parse_integer<std::size_t>(key, v);
  } else if (key == "classical_seeds") {
    spec.classical_seeds = parse_integer<std::size_t>(key, v);
  } else if (key == "seeds") {
    spec.qga_seeds = spec.classical_seeds = parse_integer<std::size_t>(key, v);
  } else if (key == "generations") {
    spec.generations = parse_integer<std::size_t>(key, v);
  } else if (key == "n") {
    spec.n = parse_integer<std::size_t>(key, v);
  } else if (key == "c") {
    spec.c = parse_integer<std::size_t>(key, v);
  } else if (key == "p") {
    spec.p = parse_double(key, v);
  } else if (key == "q") {
    spec.q = parse_double(key, v);
  } else if (key == "sigma") {
    spec.sigma = parse_double(key, v);
  } else if (key == "p_m") {
    spec.p_m = parse_double(key, v);
  } else if (key == "uqcm_granularity") {
    try {
      spec.uqcm_granularity = parse_uqcm_granularity(v);
    } catch (const std::invalid_argument& e) {
      bad_value(key, v, e.what());
    }
  } else if (key == "cloning_basis") {
    try {
      spec.cloning_basis = parse_cloning_basis(v);
    } catch (const std::invalid_argument& e) {
      bad_value(key, v, e.what());
    }
  } else if (key == "best_rule") {
    if (v == "sorted_top") {
      spec.best_rule = BestIndividualRule::sorted_top;
    } else if (v == "register_extremes") {
      spec.best_rule = BestIndividualRule::register_extremes;
    } else {
      bad_value(key, v, "expected sorted_top or register_extremes");
    }
  } else if (key == "win_rate_reference") {
    if (v == "mean") {
      spec.win_rate_reference = WinRateReference::mean;
    } else if (v == "paired") {
      spec.win_rate_reference = WinRateReference::paired;
    } else {
      bad_value(key, v, "expected mean or paired");
    }
  } else if (key == "seed") {
    spec.master_seed = parse_integer<std::uint64_t>(key, v);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

std::vector<Setting> parse_config_text(std::string_view text) {
  std::vector<Setting> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || trim(line.substr(0, eq)).empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    out.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

std::vector<Setting> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::vector<Setting> spec_settings(const ExperimentSpec& spec) {
  std::vector<std::string> algs;
  for (Algorithm a : spec.algorithms) {
    algs.emplace_back(algorithm_name(a));
  }
  std::vector<std::string> spectrum;
  for (double x : spec.spectrum) {
    spectrum.push_back(format_double(x));
  }
  return {
      {"algorithms", join(algs)},
      {"ensemble_size", std::to_string(spec.ensemble_size)},
      {"spectrum", join(spectrum)},
      {"hamiltonians", join(spec.named_hamiltonians)},
      {"hamiltonian_file", spec.hamiltonian_file},
      {"qga_seeds", std::to_string(spec.qga_seeds)},
      {"classical_seeds", std::to_string(spec.classical_seeds)},
      {"generations", std::to_string(spec.generations)},
      {"n", std::to_string(spec.n)},
      {"c", std::to_string(spec.c)},
      {"p", format_double(spec.p)},
      {"q", format_double(spec.q)},
      {"sigma", format_double(spec.sigma)},
      {"p_m", format_double(spec.p_m)},
      {"uqcm_granularity", std::string(to_string(spec.uqcm_granularity))},
      {"cloning_basis", std::string(to_string(spec.cloning_basis))},
      {"best_rule", std::string(to_string(spec.best_rule))},
      {"win_rate_reference", std::string(to_string(spec.win_rate_reference))},
      {"seed", std::to_string(spec.master_seed)},
  };
}

std::string format_config(const ExperimentSpec& spec) {
  std::string out;
  for (const auto& [k, v] : spec_settings(spec)) {
    out += k + " = " + v + "\n";
  }
  return out;
}

}  // namespace qgabench
