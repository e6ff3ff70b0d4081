#include "qgabench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qgabench {
namespace {

// Absorbs rounding in the QGA mean so exact ties still count as ties.
constexpr double kWinTieSlack = 1e-12;

std::map<std::string, std::vector<const RunRecord*>> by_hamiltonian(std::span<const RunRecord> rs) {
  std::map<std::string, std::vector<const RunRecord*>> out;
  for (const auto& r : rs) {
    out[r.hamiltonian_id].push_back(&r);
  }
  return out;
}

}  // namespace

double mean(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("mean of empty sample");
  }
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
  if (values.size() < 2) {
    if (values.empty()) {
      throw std::invalid_argument("stddev of empty sample");
    }
    return 0.0;
  }
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) {
    ss += (v - m) * (v - m);
  }
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double quantile(std::span<const double> values, double level) {
  if (values.empty()) {
    throw std::invalid_argument("quantile of empty sample");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("quantile level must lie in (0, 1)");
  }
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double h = static_cast<double>(v.size() - 1) * level;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("wilcoxon: samples must have equal length");
  }
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    if (diff != 0.0) {
      d.push_back(diff);
    }
  }
  if (d.empty()) {
    throw std::invalid_argument("wilcoxon: all differences zero");
  }
  const std::size_t n = d.size();
  if (n < 5) {
    throw std::invalid_argument("wilcoxon: fewer than five nonzero differences");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return std::abs(d[i]) < std::abs(d[j]); });
  // Ranks are kept doubled so that average ranks stay integral.
  std::vector<std::size_t> rank2(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) {
      ++j;
    }
    const std::size_t r2 = (i + 1) + (j + 1);  // 2 * average of ranks i+1 .. j+1
    for (std::size_t k = i; k <= j; ++k) {
      rank2[order[k]] = r2;
    }
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }

  std::size_t w_plus2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] > 0.0) {
      w_plus2 += rank2[i];
    }
  }
  const std::size_t total2 = n * (n + 1);
  WilcoxonResult res;
  res.n = n;
  res.w_plus = static_cast<double>(w_plus2) / 2.0;
  res.statistic = static_cast<double>(std::min(w_plus2, total2 - w_plus2)) / 2.0;

  if (n <= kWilcoxonExactMaxN) {
    // Null distribution of 2 W+: each rank enters with an independent fair sign.
    std::vector<double> count(total2 + 1, 0.0);
    count[0] = 1.0;
    std::size_t reach = 0;
    for (std::size_t r : rank2) {
      for (std::size_t s = reach + 1; s-- > 0;) {
        if (count[s] != 0.0) {
          count[s + r] += count[s];
        }
      }
      reach += r;
    }
    const std::size_t t2 = std::min(w_plus2, total2 - w_plus2);
    double tail = 0.0;
    for (std::size_t s = 0; s <= t2; ++s) {
      tail += count[s];
    }
    res.p_value = std::min(1.0, 2.0 * tail / std::ldexp(1.0, static_cast<int>(n)));
    res.exact = true;
    return res;
  }

  const double nn = static_cast<double>(n);
  const double mu = nn * (nn + 1.0) / 4.0;
  const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
  const double z = std::max(0.0, std::abs(res.w_plus - mu) - 0.5) / std::sqrt(var);
  res.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  res.exact = false;
  return res;
}

std::vector<double> win_rate_series(std::span<const RunRecord> qga,
                                    std::span<const RunRecord> classical,
                                    WinRateReference reference) {
  const auto q = by_hamiltonian(qga);
  const auto c = by_hamiltonian(classical);
  if (q.empty() || q.size() != c.size()) {
    throw std::invalid_argument("win_rate_series: record sets cover different Hamiltonians");
  }
  const std::size_t gens = qga.front().best_fidelity.size();
  std::vector<double> total(gens, 0.0);
  for (const auto& [id, qruns] : q) {
    const auto it = c.find(id);
    if (it == c.end()) {
      throw std::invalid_argument("win_rate_series: no classical runs for " + id);
    }
    const auto& cruns = it->second;
    for (const auto* r : qruns) {
      if (r->best_fidelity.size() != gens) {
        throw std::invalid_argument("win_rate_series: generation counts differ");
      }
    }
    for (const auto* r : cruns) {
      if (r->best_fidelity.size() != gens) {
        throw std::invalid_argument("win_rate_series: generation counts differ");
      }
    }
    for (std::size_t g = 0; g < gens; ++g) {
      double ref = 0.0;
      if (reference == WinRateReference::mean) {
        for (const auto* r : qruns) {
          ref += r->best_fidelity[g];
        }
        ref /= static_cast<double>(qruns.size());
      }
      std::size_t wins = 0;
      for (std::size_t i = 0; i < cruns.size(); ++i) {
        const double target =
            reference == WinRateReference::mean ? ref : qruns[i % qruns.size()]->best_fidelity[g];
        if (cruns[i]->best_fidelity[g] <= target + kWinTieSlack) {
          ++wins;
        }
      }
      total[g] += static_cast<double>(wins) / static_cast<double>(cruns.size());
    }
  }
  for (auto& t : total) {
    t /= static_cast<double>(q.size());
  }
  return total;
}

}  // namespace qgabench
