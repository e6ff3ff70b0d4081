#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qgabench/record.hpp"

namespace qgabench {

double mean(std::span<const double> values);
/// Sample standard deviation (n - 1 denominator); 0 for a single value.
double stddev(std::span<const double> values);

/// Linear interpolation between closest ranks on the sorted values:
/// h = (n - 1) * level, result = x[floor h] + (h - floor h)(x[ceil h] - x[floor h]).
/// Requires a nonempty input and 0 < level < 1.
double quantile(std::span<const double> values, double level);

struct WilcoxonResult {
  double statistic = 0.0;  // min(W+, W-)
  double w_plus = 0.0;
  std::size_t n = 0;       // pairs after dropping zero differences
  double p_value = 1.0;    // two-sided
  bool exact = false;
};

/// Paired Wilcoxon signed-rank test. Zero differences are dropped and tied
/// |differences| get average ranks. For n <= 25 the p-value comes from the
/// exact null distribution of W+ (with the observed ranks), otherwise from
/// the normal approximation with tie and continuity corrections.
/// Throws std::invalid_argument if all differences are zero or fewer than
/// five remain.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

inline constexpr std::size_t kWilcoxonExactMaxN = 25;

enum class WinRateReference {
  /// Classical fidelity compared with the mean QGA fidelity at each generation.
  mean,
  /// Classical seed i compared with QGA seed (i mod #QGA seeds).
  paired,
};

/// Per generation, the fraction of classical runs whose best fidelity is
/// <= the QGA reference, averaged over Hamiltonians. Both record sets must
/// cover the same Hamiltonians with equal generation counts.
std::vector<double> win_rate_series(std::span<const RunRecord> qga,
                                    std::span<const RunRecord> classical,
                                    WinRateReference reference = WinRateReference::mean);

}  // namespace qgabench
