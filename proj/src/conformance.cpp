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

#include "levylab/conformance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levylab/densities.hpp"
#include "levylab/error.hpp"
#include "levylab/format.hpp"
#include "levylab/parallel.hpp"
#include "levylab/stats.hpp"
#include "levylab/transforms.hpp"

namespace levylab {

namespace {

constexpr double kRoundingSlack = 1e-12;

struct Paired {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

/// Adds the row comparing mean lhs with mean rhs using the SE of the paired
/// difference.
bool add_paired_row(Check& check, double x, const std::vector<Paired>& draws) {
  const std::size_t n = draws.size();
  std::vector<double> l(n), r(n), d(n);
  double slack = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    l[i] = draws[i].lhs;
    r[i] = draws[i].rhs;
    d[i] = l[i] - r[i];
    slack += draws[i].slack;
  }
  const auto sl = summarize(l);
  const auto sr = summarize(r);
  const auto sd = summarize(d);
  slack /= static_cast<double>(n);
  return check.add_row(x, sl.mean, sd.se, sr.mean,
                       slack + kRoundingSlack * std::max(1.0, std::abs(sr.mean)));
}

}  // namespace

Check quasi_invariance_test(const TestFunction& a, const NamedStatistic& k, double theta,
                            std::size_t n, std::uint64_t seed, const TruncationPolicy& trunc) {
  const BaseSpace base(theta);
  const LevyModel model = LevyModel::gamma();
  const double spread = a.lower() > 0.0
                            ? std::max(std::abs(1.0 / a.lower() - 1.0), std::abs(1.0 / a.upper() - 1.0))
                            : std::numeric_limits<double>::infinity();
  // Missing atoms change log rho by at most spread * tail. When 1/a is
  // unbounded the bound assumes a singularity no worse than 1/x, for which
  // E min(1, z / U) <= z (1 + log(1/z)).
  auto tail_effect = [&](double tail) {
    if (tail <= 0.0) return 0.0;
    if (std::isfinite(spread)) return std::min(1.0, spread * tail);
    return std::min(1.0, tail * (2.0 + std::abs(std::log(tail)) + std::abs(std::log(theta))));
  };
  const auto draws = collect_draws(n, seed, [&](RandomStream& rng) {
    const DiscreteMeasure eta = sample_levy(model, base, trunc, rng);
    const double moved = k.fn(apply_multiplicator(a, eta));
    const double weighted = k.fn(eta) * rn_density_gamma(a, eta, base).value;
    return Paired{moved, weighted, std::abs(weighted) * tail_effect(eta.tail_bound())};
  });
  Check check;
  check.check = "quasi-invariance";
  check.params = {{"function", a.label()}, {"statistic", k.label}, {"theta", theta},
                  {"n", n},                {"seed", seed}};
  check.pass = add_paired_row(check, 0.0, draws);
  return check;
}

double cocycle_log_error(const TestFunction& a, const TestFunction& b, const DiscreteMeasure& eta,
                         const BaseSpace& base) {
  const double joint = rn_density_gamma(a * b, eta, base).log_value;
  const double split = rn_density_gamma(b, eta, base).log_value +
                       rn_density_gamma(a, apply_multiplicator(b.reciprocal(), eta), base).log_value;
  return std::abs(joint - split) / std::max(1.0, std::abs(joint));
}

Check quasi_lebesgue_invariance_test(const TestFunction& a, const NamedStatistic& g,
                                     double cutoff, double theta, std::size_t n,
                                     std::uint64_t seed, const TruncationPolicy& trunc) {
  const BaseSpace base(theta);
  const LevyModel model = LevyModel::gamma();
  const double log_int = log_integral(a, base);
  const auto draws = collect_draws(n, seed, [&](RandomStream& rng) {
    const DiscreteMeasure eta = sample_levy(model, base, trunc, rng);
    const DiscreteMeasure xi = apply_multiplicator(a, eta);
    const double weight = std::exp(eta.total_charge());
    const double lhs = xi.total_charge() <= cutoff ? g.fn(xi) * weight : 0.0;
    const double rhs = quasi_lebesgue_weight(eta, cutoff) * g.fn(eta);
    const double slack =
        (std::abs(lhs) + std::abs(rhs)) * eta.tail_bound() * (1.0 + std::max(1.0, a.upper()));
    return Paired{lhs, rhs, slack};
  });
  Check check;
  check.check = "quasi-lebesgue";
  check.params = {{"function", a.label()}, {"statistic", g.label}, {"cutoff", cutoff},
                  {"theta", theta},        {"log_integral", log_int},
                  {"n", n},                {"seed", seed}};
  if (std::abs(log_int) > 1e-10)
    check.warnings.push_back("int log a dnu is not zero; invariance is not expected");
  check.pass = add_paired_row(check, 0.0, draws);
  return check;
}

Check pd_quasi_invariance_test(const TestFunction& a, std::span<const NamedSimplexStatistic> ks,
                               double theta, std::size_t n_terms, std::size_t n,
                               std::uint64_t seed) {
  require(a.is_step(), ErrorCode::kInvalidArgument, "pd_quasi_invariance_test needs a step function");
  const std::size_t m = ks.size();
  std::size_t fallbacks = 0;
  const auto draws = collect_draws(n, seed, [&](RandomStream& rng) {
    const SimplexSequence y = sample_pd_theta(theta, n_terms, rng);
    const SimplexSequence sy = markov_S_a(y, a, rng);
    const PdDensity dens = pd_density(y, a, theta);
    std::vector<Paired> row(m);
    for (std::size_t j = 0; j < m; ++j) {
      const double rhs = ks[j].fn(y) * dens.density.value;
      row[j] = Paired{ks[j].fn(sy), rhs, std::abs(rhs) * dens.tail_error};
    }
    return std::pair(row, dens.adaptive_fallback);
  });
  Check check;
  check.check = "pd-quasi-invariance";
  std::vector<std::string> labels;
  for (const auto& k : ks) labels.push_back(k.label);
  bool ok = true;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Paired> column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = draws[i].first[j];
    ok = add_paired_row(check, static_cast<double>(j), column) && ok;
  }
  for (const auto& d : draws) fallbacks += d.second ? 1 : 0;
  check.params = {{"function", a.label()}, {"statistics", labels}, {"theta", theta},
                  {"n_terms", n_terms},    {"n", n},               {"seed", seed},
                  {"quadrature_fallbacks", fallbacks}};
  check.pass = ok;
  return check;
}

std::vector<Check> subordination_test(std::span<const double> t_grid, std::size_t n,
                                      std::uint64_t seed, const TruncationPolicy& trunc) {
  const LevyModel model = LevyModel::gamma();
  Check scaled, control;
  scaled.check = "subordination";
  control.check = "subordination-unscaled-control";
  scaled.params = {{"n", n}, {"seed", seed}, {"rule", "lhs is the KS p-value; pass iff lhs > rhs"}};
  control.params = {{"n", n}, {"seed", seed}, {"rule", "lhs is the KS p-value; pass iff lhs < rhs"}};
  scaled.pass = true;
  control.pass = true;
  std::vector<double> variances;
  for (double t : t_grid) {
    const BaseSpace base(t);
    struct Draw {
      double mixed, diff;
    };
    const auto draws = collect_draws(n, derive_seed(seed, "t=" + format_double(t)),
                                     [&](RandomStream& rng) {
      const double g = rng.gamma(t);
      const double mixed = std::sqrt(g) * rng.normal();
      const double g1 = sample_levy(model, base, trunc, rng).total_charge();
      const double g2 = sample_levy(model, base, trunc, rng).total_charge();
      return Draw{mixed, g1 - g2};
    });
    std::vector<double> mixed(n), diff(n), unscaled(n);
    for (std::size_t i = 0; i < n; ++i) {
      mixed[i] = draws[i].mixed;
      unscaled[i] = draws[i].diff;
      diff[i] = draws[i].diff / std::sqrt(2.0);
    }
    const auto ks = ks_two_sample(mixed, diff);
    const auto ctl = ks_two_sample(mixed, unscaled);
    scaled.add_row(t, ks.p_value, 0.0, 0.01);
    control.add_row(t, ctl.p_value, 0.0, 1e-6);
    scaled.pass = scaled.pass && ks.p_value > 0.01;
    control.pass = control.pass && ctl.p_value < 1e-6;
    double v = 0.0;
    for (double x : diff) v += x * x;
    variances.push_back(v / static_cast<double>(n));
  }
  scaled.params["grid"] = std::vector<double>(t_grid.begin(), t_grid.end());
  scaled.params["second_moment_of_difference"] = variances;
  return {scaled, control};
}

double weak_limit_target(const TestFunction& a, double alpha, double k, double theta) {
  const double integral = integrate_composed(
      a, [alpha](double v) { return std::pow(1.0 + v, alpha) - 1.0; }, BaseSpace(theta));
  return std::exp(-std::pow(k, alpha) / alpha * integral);
}

WeakLimitResult weak_limit_test(double k, std::span<const double> alpha_grid,
                                std::span<const TestFunction> panel, double theta,
                                std::size_t n, std::uint64_t seed,
                                const TruncationPolicy& trunc) {
  const std::vector<std::size_t> sizes(alpha_grid.size(), n);
  return weak_limit_test(k, alpha_grid, panel, theta, sizes, seed, trunc);
}

WeakLimitResult weak_limit_test(double k, std::span<const double> alpha_grid,
                                std::span<const TestFunction> panel, double theta,
                                std::span<const std::size_t> sizes, std::uint64_t seed,
                                const TruncationPolicy& trunc) {
  require(sizes.size() == alpha_grid.size(), ErrorCode::kInvalidArgument,
          "need one sample size per grid point");
  const BaseSpace base(theta);
  const std::size_t m = panel.size();
  WeakLimitResult out;
  out.exactness.resize(m);
  out.discrepancy.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    auto& e = out.exactness[j];
    e.check = "weak-limit-exactness";
    e.params = {{"function", panel[j].label()}, {"k", k}, {"theta", theta},
                {"n", std::vector<std::size_t>(sizes.begin(), sizes.end())}, {"seed", seed}};
    e.pass = true;
    auto& d = out.discrepancy[j];
    d.check = "weak-limit-discrepancy";
    d.params = e.params;
    d.params["rule"] = "|lhs - rhs| strictly decreases along the grid";
  }
  std::vector<std::vector<double>> gaps(m);
  for (std::size_t g = 0; g < alpha_grid.size(); ++g) {
    const double alpha = alpha_grid[g];
    const std::size_t n = sizes[g];
    require(n >= 2, ErrorCode::kInvalidArgument, "need at least two draws");
    struct Draw {
      std::vector<double> values;
      double tail;
    };
    const auto draws = collect_draws(n, derive_seed(seed, "alpha=" + format_double(alpha)),
                                     [&](RandomStream& rng) {
      const DiscreteMeasure eta = sample_tilted_scaled_stable(alpha, k, base, trunc, rng);
      Draw dr{std::vector<double>(m), eta.tail_bound()};
      for (std::size_t j = 0; j < m; ++j) dr.values[j] = std::exp(-functional_f_a(panel[j], eta));
      return dr;
    });
    double tail = 0.0;
    for (const auto& dr : draws) tail += dr.tail;
    tail /= static_cast<double>(n);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = draws[i].values[j];
      const auto s = summarize(v);
      const double allowance = panel[j].upper() * tail + kRoundingSlack;
      const double target = weak_limit_target(panel[j], alpha, k, theta);
      const bool ok = out.exactness[j].add_row(alpha, s.mean, s.se, target, allowance);
      out.exactness[j].pass = out.exactness[j].pass && ok;
      const double limit = laplace_gamma(panel[j], base);
      out.discrepancy[j].add_row(alpha, s.mean, s.se, limit, allowance);
      gaps[j].push_back(std::abs(s.mean - limit));
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    bool mono = true;
    for (std::size_t i = 1; i < gaps[j].size(); ++i) mono = mono && gaps[j][i] < gaps[j][i - 1];
    out.monotone.push_back(mono);
    out.discrepancy[j].pass = mono;
  }
  return out;
}

}  // namespace levylab
