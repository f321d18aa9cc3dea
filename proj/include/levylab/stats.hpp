/*
   Copyright 2026 The levylab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "levylab/measure.hpp"
#include "levylab/parallel.hpp"
#include "levylab/samplers.hpp"

namespace levylab {

enum class Verdict { kPass, kFail, kWarn };

const char* to_string(Verdict v);

/// Monte Carlo mean with standard error. With a reference value the verdict
/// is pass iff |mean - reference| <= 3 se + allowance.
struct EstimatorSummary {
  double mean = 0.0;
  double se = 0.0;
  std::size_t n = 0;
  std::optional<double> reference;
  double allowance = 0.0;
  /// Kish effective sample size (n for unweighted estimates).
  double ess = 0.0;
  Verdict verdict = Verdict::kPass;
};

EstimatorSummary summarize(std::span<const double> x, std::optional<double> reference = {},
                           double allowance = 0.0);

/// Self-normalized mean sum w x / sum w with delta-method standard error.
/// Verdict is warn when ESS < n / 10 and the reference test passes.
EstimatorSummary summarize_weighted(std::span<const double> x, std::span<const double> w,
                                    std::optional<double> reference = {}, double allowance = 0.0);

/// Mean of statistic(sampler(rng)) over n draws on the chunked stream layout.
template <class Sampler, class Statistic>
EstimatorSummary mc_estimate(Statistic&& statistic, Sampler&& sampler, std::size_t n,
                             std::uint64_t seed, std::optional<double> reference = {},
                             double allowance = 0.0) {
  const auto values =
      collect_draws(n, seed, [&](RandomStream& rng) { return static_cast<double>(statistic(sampler(rng))); });
  return summarize(values, reference, allowance);
}

/// Self-normalized version for samplers returning WeightedMeasure.
template <class Sampler, class Statistic>
EstimatorSummary weighted_mc_estimate(Statistic&& statistic, Sampler&& sampler, std::size_t n,
                                      std::uint64_t seed, std::optional<double> reference = {},
                                      double allowance = 0.0) {
  const auto pairs = collect_draws(n, seed, [&](RandomStream& rng) {
    const WeightedMeasure wm = sampler(rng);
    return std::pair<double, double>(statistic(wm.measure), wm.weight);
  });
  std::vector<double> x, w;
  x.reserve(n);
  w.reserve(n);
  for (const auto& [v, weight] : pairs) {
    x.push_back(v);
    w.push_back(weight);
  }
  return summarize_weighted(x, w, reference, allowance);
}

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool exact = false;
};

/// Two-sample Kolmogorov-Smirnov. Exact lattice-path p-value when
/// n + m <= 400 and n m <= 10000, asymptotic Kolmogorov distribution otherwise.
KsResult ks_two_sample(std::span<const double> x, std::span<const double> y);

/// Two-sample KS where x carries importance weights; the asymptotic p-value
/// uses the Kish effective size of x.
KsResult ks_two_sample_weighted(std::span<const double> x, std::span<const double> wx,
                                std::span<const double> y);

/// One-sample KS against a continuous CDF (asymptotic, Stephens correction).
KsResult ks_one_sample(std::span<const double> x, const std::function<double(double)>& cdf);

/// Exact P(D >= d) for the two-sample statistic with sample sizes n, m.
double ks_two_sample_exact_sf(std::size_t n, std::size_t m, double d);

struct IndependenceReport {
  double rank_correlation = 0.0;
  double chi_square = 0.0;
  double chi_square_p = 1.0;
  std::size_t n = 0;
  bool pass = false;
};

/// Spearman rank correlation plus a 4x4 quartile contingency chi-square
/// (9 df). Passes iff |rho| < 3 / sqrt(N) and p > 0.01; under independence
/// the false-alarm rate is at most about 0.0127 by the union bound.
IndependenceReport independence_test(std::span<const double> u, std::span<const double> v);

/// Ranks 1..N with ties averaged.
std::vector<double> ranks(std::span<const double> x);

/// Least-squares slope of log z_n against n over the 1-based window
/// [first, last]. Throws InsufficientTerms if the sequence is shorter.
double tail_slope(std::span<const double> terms, std::size_t first, std::size_t last);

struct IntervalEstimate {
  double estimate = 0.0;
  /// 95% normal-theory half width across draws.
  double ci_half_width = 0.0;
  std::size_t draws = 0;
};

IntervalEstimate mean_interval(std::span<const double> values);

struct TailConstant {
  /// Median of n^{1/alpha} z_n over the window.
  double estimate = 0.0;
  /// (c / Gamma(1-alpha))^{1/alpha}.
  double target = 0.0;
  /// False when the window values drift (late/early medians differ by > 25%).
  bool converged = false;
};

TailConstant stable_tail_constant(std::span<const double> terms, double alpha, double c,
                                  std::size_t first, std::size_t last);

/// Holm step-down adjusted p-values, same order as the input.
std::vector<double> holm_adjust(std::span<const double> p_values);

}  // namespace levylab
