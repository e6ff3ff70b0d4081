#include <algorithm>
#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "qgabench/rng.hpp"
#include "qgabench/stats.hpp"

namespace qgabench {
namespace {

// Average ranks of |d| by direct counting: rank = #smaller + (#equal + 1) / 2.
std::vector<double> average_ranks(const std::vector<double>& d) {
  std::vector<double> r(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    double smaller = 0.0;
    double equal = 0.0;
    for (double x : d) {
      if (std::abs(x) < std::abs(d[i])) smaller += 1.0;
      if (std::abs(x) == std::abs(d[i])) equal += 1.0;
    }
    r[i] = smaller + (equal + 1.0) / 2.0;
  }
  return r;
}

// Two-sided p by enumerating all 2^n sign assignments: the fraction whose
// W+ is at least as far from its mean as the observed one.
double brute_force_p(const std::vector<double>& d) {
  const auto r = average_ranks(d);
  const std::size_t n = d.size();
  double total = 0.0;
  double observed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += r[i];
    if (d[i] > 0) observed += r[i];
  }
  const double mu = total / 2.0;
  const double dev = std::abs(observed - mu);
  std::size_t extreme = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) w += r[i];
    }
    if (std::abs(w - mu) >= dev - 1e-9) ++extreme;
  }
  return static_cast<double>(extreme) / std::ldexp(1.0, static_cast<int>(n));
}

TEST(Quantile, Examples) {
  const std::vector<double> five{5, 3, 1, 4, 2};
  EXPECT_DOUBLE_EQ(quantile(five, 0.5), 3.0);
  const std::vector<double> constant(7, 2.5);
  for (double level : {0.01, 0.1, 0.5, 0.9, 0.99}) {
    EXPECT_DOUBLE_EQ(quantile(constant, level), 2.5);
  }
  const std::vector<double> two{0, 1};
  EXPECT_NEAR(quantile(two, 0.9), 0.9, 1e-15);
  const std::vector<double> one{4.0};
  EXPECT_DOUBLE_EQ(quantile(one, 0.1), 4.0);
  // h = 9 * 0.9 = 8.1 on 0..9.
  std::vector<double> ten;
  for (int i = 9; i >= 0; --i) ten.push_back(i);
  EXPECT_NEAR(quantile(ten, 0.9), 8.1, 1e-12);
  EXPECT_NEAR(quantile(ten, 0.1), 0.9, 1e-12);
}

TEST(Quantile, Errors) {
  const std::vector<double> empty;
  EXPECT_THROW(quantile(empty, 0.5), std::invalid_argument);
  const std::vector<double> v{1, 2};
  EXPECT_THROW(quantile(v, 0.0), std::invalid_argument);
  EXPECT_THROW(quantile(v, 1.0), std::invalid_argument);
}

TEST(Quantile, PermutationInvariant) {
  Rng rng(111);
  std::vector<double> v(50);
  for (auto& x : v) x = rng.uniform();
  const double q = quantile(v, 0.9);
  for (int t = 0; t < 10; ++t) {
    std::shuffle(v.begin(), v.end(), rng);
    EXPECT_EQ(quantile(v, 0.9), q);
  }
}

TEST(MeanStd, Basics) {
  const std::vector<double> v{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(mean(v), 2.5);
  EXPECT_NEAR(stddev(v), std::sqrt(5.0 / 3.0), 1e-15);
  const std::vector<double> one{7};
  EXPECT_DOUBLE_EQ(stddev(one), 0.0);
}

TEST(Wilcoxon, SixPositiveDifferences) {
  const std::vector<double> a{1, 2, 3, 4, 5, 6};
  const std::vector<double> b(6, 0.0);
  const auto r = wilcoxon_signed_rank(a, b);
  EXPECT_EQ(r.n, 6U);
  EXPECT_TRUE(r.exact);
  EXPECT_DOUBLE_EQ(r.w_plus, 21.0);
  EXPECT_DOUBLE_EQ(r.statistic, 0.0);
  EXPECT_DOUBLE_EQ(r.p_value, 0.03125);
}

TEST(Wilcoxon, AllZeroDifferences) {
  const std::vector<double> a{1, 2, 3, 4, 5, 6};
  try {
    wilcoxon_signed_rank(a, a);
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("all differences zero"), std::string::npos);
  }
}

TEST(Wilcoxon, TooFewOrMismatched) {
  const std::vector<double> a{1, 2, 3, 4, 5, 6};
  const std::vector<double> b{1, 2, 0, 0, 0, 0};
  EXPECT_THROW(wilcoxon_signed_rank(a, b), std::invalid_argument);
  const std::vector<double> c{1, 2, 3};
  EXPECT_THROW(wilcoxon_signed_rank(a, c), std::invalid_argument);
}

TEST(Wilcoxon, ExactMatchesBruteForceEnumeration) {
  Rng rng(112);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(5, 14));
    std::vector<double> a(n);
    std::vector<double> b(n, 0.0);
    // Coarse values force ties in |d|; the odd one out adds zero differences.
    for (auto& x : a) x = static_cast<double>(rng.uniform_int(-4, 4)) * 0.5;
    std::vector<double> d;
    for (double x : a) {
      if (x != 0.0) d.push_back(x);
    }
    if (d.size() < 5) {
      continue;
    }
    const auto r = wilcoxon_signed_rank(a, b);
    EXPECT_EQ(r.n, d.size());
    EXPECT_NEAR(r.p_value, brute_force_p(d), 1e-12) << "trial " << trial;
  }
}

TEST(Wilcoxon, SymmetricInArguments) {
  Rng rng(113);
  std::vector<double> a(20);
  std::vector<double> b(20);
  for (std::size_t i = 0; i < 20; ++i) {
    a[i] = rng.uniform();
    b[i] = rng.uniform() + 0.1;
  }
  const auto ab = wilcoxon_signed_rank(a, b);
  const auto ba = wilcoxon_signed_rank(b, a);
  EXPECT_DOUBLE_EQ(ab.p_value, ba.p_value);
  EXPECT_DOUBLE_EQ(ab.statistic, ba.statistic);
  EXPECT_DOUBLE_EQ(ab.w_plus + ba.w_plus, 210.0);
}

double normal_p(const std::vector<double>& d) {
  const auto r = average_ranks(d);
  const double n = static_cast<double>(d.size());
  double w = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 0) w += r[i];
  }
  // Tie correction from group sizes.
  std::vector<double> abs_d;
  for (double x : d) abs_d.push_back(std::abs(x));
  std::sort(abs_d.begin(), abs_d.end());
  double ties = 0.0;
  for (std::size_t i = 0; i < abs_d.size();) {
    std::size_t j = i;
    while (j < abs_d.size() && abs_d[j] == abs_d[i]) ++j;
    const double t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  const double mu = n * (n + 1) / 4;
  const double sd = std::sqrt(n * (n + 1) * (2 * n + 1) / 24 - ties / 48);
  const double z = std::max(0.0, std::abs(w - mu) - 0.5) / sd;
  return std::erfc(z / std::sqrt(2.0));
}

TEST(Wilcoxon, NormalApproximationAboveTwentyFive) {
  Rng rng(114);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(40);
    const std::vector<double> b(40, 0.0);
    for (auto& x : a) x = rng.normal(0.3, 1.0);
    a[3] = 0.0;
    a[7] = a[8] = 0.75;  // a tie
    const auto r = wilcoxon_signed_rank(a, b);
    std::vector<double> d;
    for (double x : a) {
      if (x != 0.0) d.push_back(x);
    }
    EXPECT_FALSE(r.exact);
    EXPECT_EQ(r.n, 39U);
    EXPECT_NEAR(r.p_value, normal_p(d), 1e-12);
  }
}

TEST(Wilcoxon, ExactAndNormalAgreeNearTheSwitch) {
  Rng rng(115);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(25);
    const std::vector<double> b(25, 0.0);
    for (auto& x : a) x = rng.normal(0.2, 1.0);
    const auto r = wilcoxon_signed_rank(a, b);
    EXPECT_TRUE(r.exact);
    EXPECT_NEAR(r.p_value, normal_p(a), 0.01);
  }
}

RunRecord rec(const std::string& alg, const std::string& hid, std::vector<double> fid) {
  RunRecord r;
  r.algorithm = alg;
  r.hamiltonian_id = hid;
  r.best_fidelity = fid;
  r.best_energy.assign(fid.size(), 0.0);
  return r;
}

TEST(WinRate, ClassicalZeroIsAlwaysWin) {
  const std::vector<RunRecord> q{rec("q", "h", {0.2, 0.5, 0.9}), rec("q", "h", {0.1, 0.4, 0.8})};
  const std::vector<RunRecord> c{rec("c", "h", {0, 0, 0}), rec("c", "h", {0, 0, 0}),
                                 rec("c", "h", {0, 0, 0})};
  EXPECT_EQ(win_rate_series(q, c), (std::vector<double>{1.0, 1.0, 1.0}));
}

TEST(WinRate, TiesCountAsWins) {
  const std::vector<RunRecord> q{rec("q", "h", {0.3, 0.6})};
  const std::vector<RunRecord> c{rec("c", "h", {0.3, 0.6})};
  EXPECT_EQ(win_rate_series(q, c), (std::vector<double>{1.0, 1.0}));
  // Mean of 0.1, 0.2, 0.3 is not exactly 0.2 in floating point.
  const std::vector<RunRecord> q3{rec("q", "h", {0.1}), rec("q", "h", {0.2}), rec("q", "h", {0.3})};
  const std::vector<RunRecord> c3{rec("c", "h", {0.2})};
  EXPECT_EQ(win_rate_series(q3, c3), (std::vector<double>{1.0}));
}

TEST(WinRate, FractionsAveragedOverHamiltonians) {
  const std::vector<RunRecord> q{rec("q", "a", {0.5}), rec("q", "b", {0.5})};
  const std::vector<RunRecord> c{rec("c", "a", {0.4}), rec("c", "a", {0.6}),
                                 rec("c", "b", {0.1}), rec("c", "b", {0.2}),
                                 rec("c", "b", {0.3}), rec("c", "b", {0.9})};
  // a: 1/2, b: 3/4.
  const auto w = win_rate_series(q, c);
  ASSERT_EQ(w.size(), 1U);
  EXPECT_DOUBLE_EQ(w[0], 0.625);
}

TEST(WinRate, PairedReference) {
  const std::vector<RunRecord> q{rec("q", "h", {0.2}), rec("q", "h", {0.8})};
  const std::vector<RunRecord> c{rec("c", "h", {0.5}), rec("c", "h", {0.5}),
                                 rec("c", "h", {0.1}), rec("c", "h", {0.9})};
  // Pairs: (0.5 vs 0.2) loss, (0.5 vs 0.8) win, (0.1 vs 0.2) win, (0.9 vs 0.8) loss.
  EXPECT_DOUBLE_EQ(win_rate_series(q, c, WinRateReference::paired)[0], 0.5);
  // Against the mean 0.5: 0.5, 0.5, 0.1 win.
  EXPECT_DOUBLE_EQ(win_rate_series(q, c, WinRateReference::mean)[0], 0.75);
}

TEST(WinRate, MismatchedShapesRejected) {
  const std::vector<RunRecord> q{rec("q", "a", {0.5, 0.5})};
  const std::vector<RunRecord> c_short{rec("c", "a", {0.5})};
  const std::vector<RunRecord> c_other{rec("c", "b", {0.5, 0.5})};
  EXPECT_THROW(win_rate_series(q, c_short), std::invalid_argument);
  EXPECT_THROW(win_rate_series(q, c_other), std::invalid_argument);
  EXPECT_THROW(win_rate_series({}, c_other), std::invalid_argument);
}

}  // namespace
}  // namespace qgabench
