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

#include "levylab/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "levylab/conformance.hpp"
#include "levylab/densities.hpp"
#include "levylab/error.hpp"
#include "levylab/format.hpp"
#include "levylab/parallel.hpp"
#include "levylab/special.hpp"
#include "levylab/stats.hpp"
#include "levylab/transforms.hpp"

namespace levylab {

nlohmann::json SuiteOptions::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["n"] = n ? nlohmann::json(*n) : nlohmann::json(nullptr);
  j["theta"] = theta ? nlohmann::json(*theta) : nlohmann::json(nullptr);
  j["alpha"] = alpha ? nlohmann::json(*alpha) : nlohmann::json(nullptr);
  j["c"] = c ? nlohmann::json(*c) : nlohmann::json(nullptr);
  j["k"] = k ? nlohmann::json(*k) : nlohmann::json(nullptr);
  j["alpha_grid"] = alpha_grid;
  j["trunc_atoms"] = trunc.max_atoms;
  j["trunc_tail"] = trunc.tail_mass_cap;
  j["trunc_compensate"] = trunc.compensate;
  return j;
}

std::vector<TestFunction> standard_panel() {
  return {
      TestFunction::constant(0.5),
      TestFunction::constant(2.0),
      TestFunction::step({0.0, 0.5, 1.0}, {2.0, 1.0}),
      TestFunction::step({0.0, 0.3, 0.7, 1.0}, {0.5, 3.0, 1.5}),
      TestFunction::callable([](double x) { return x; }, {0.0, 1.0}, "x", true),
      TestFunction::callable([](double x) { return 1.0 + x; }, {1.0, 2.0}, "1+x", true),
  };
}

namespace {

using Sampler = std::function<DiscreteMeasure(RandomStream&)>;

Check make_check(std::string name, nlohmann::json params = nlohmann::json::object()) {
  Check c;
  c.check = std::move(name);
  c.params = std::move(params);
  c.pass = true;
  return c;
}

/// Row whose value must lie above (or below) a threshold.
void threshold_row(Check& c, double x, double value, double threshold, bool above) {
  c.add_row(x, value, 0.0, threshold);
  c.pass = c.pass && (above ? value > threshold : value < threshold);
  c.params["rule"] = above ? "lhs > rhs" : "lhs < rhs";
}

std::vector<std::string> labels_of(const std::vector<TestFunction>& panel) {
  std::vector<std::string> out;
  for (const auto& a : panel) out.push_back(a.label());
  return out;
}

struct PanelMeans {
  std::vector<EstimatorSummary> means;
  double tail = 0.0;
};

/// Means of exp(-f_a(eta)) over the panel, one pass over the draws.
PanelMeans laplace_means(const Sampler& sampler, const std::vector<TestFunction>& panel,
                         std::size_t n, std::uint64_t seed) {
  const std::size_t m = panel.size();
  const auto draws = collect_draws(n, seed, [&](RandomStream& rng) {
    const DiscreteMeasure eta = sampler(rng);
    std::vector<double> v(m + 1);
    for (std::size_t j = 0; j < m; ++j) v[j] = std::exp(-functional_f_a(panel[j], eta));
    v[m] = eta.tail_bound();
    return v;
  });
  PanelMeans out;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = draws[i][j];
    out.means.push_back(summarize(col));
  }
  for (const auto& d : draws) out.tail += d[m];
  out.tail /= static_cast<double>(n);
  return out;
}

std::uint64_t sub_seed(const SuiteOptions& o, const std::string& tag) {
  return derive_seed(o.seed, tag);
}

// -- laplace ---------------------------------------------------------------

SuiteReport laplace_suite(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t n = o.n.value_or(100000);
  const auto panel = standard_panel();
  const std::vector<double> thetas =
      o.theta ? std::vector<double>{*o.theta} : std::vector<double>{0.5, 1.0, 2.0};
  const LevyModel gamma = LevyModel::gamma();
  for (double theta : thetas) {
    const BaseSpace base(theta);
    const auto pm = laplace_means([&](RandomStream& rng) { return sample_levy(gamma, base, o.trunc, rng); },
                                  panel, n, sub_seed(o, "laplace/gamma/" + format_double(theta)));
    Check c = make_check("laplace-gamma", {{"theta", theta}, {"n", n}, {"functions", labels_of(panel)}});
    for (std::size_t j = 0; j < panel.size(); ++j) {
      const double rhs = laplace_gamma(panel[j], base);
      c.pass = c.add_row(static_cast<double>(j), pm.means[j].mean, pm.means[j].se, rhs,
                         panel[j].upper() * pm.tail + 1e-12) && c.pass;
    }
    r.checks.push_back(c);
    if (theta == thetas.front()) {
      // Power check: the same draws against the transform at 1.1 theta.
      Check ctl = make_check("laplace-gamma-wrong-theta-control",
                             {{"theta", theta}, {"rhs_theta", 1.1 * theta}, {"function", panel[1].label()},
                              {"rule", "pass iff |lhs - rhs| exceeds 3 se + allowance"}});
      const bool agrees = ctl.add_row(1.0, pm.means[1].mean, pm.means[1].se,
                                      laplace_gamma(panel[1], BaseSpace(1.1 * theta)),
                                      panel[1].upper() * pm.tail);
      ctl.pass = !agrees;
      r.checks.push_back(ctl);
    }
  }
  const std::vector<double> alphas =
      o.alpha ? std::vector<double>{*o.alpha} : std::vector<double>{0.3, 0.5, 0.7};
  const double c_scale = o.c.value_or(1.0);
  const BaseSpace base(o.theta.value_or(1.0));
  for (double alpha : alphas) {
    const LevyModel stable = LevyModel::stable(alpha, c_scale);
    const auto pm = laplace_means([&](RandomStream& rng) { return sample_levy(stable, base, o.trunc, rng); },
                                  panel, n, sub_seed(o, "laplace/stable/" + format_double(alpha)));
    Check c = make_check("laplace-stable", {{"alpha", alpha},
                                            {"c", c_scale},
                                            {"theta", base.theta},
                                            {"n", n},
                                            {"mean_tail_bound", pm.tail},
                                            {"functions", labels_of(panel)}});
    for (std::size_t j = 0; j < panel.size(); ++j) {
      const double rhs = laplace_stable(panel[j], alpha, c_scale, base);
      c.pass = c.add_row(static_cast<double>(j), pm.means[j].mean, pm.means[j].se, rhs,
                         panel[j].upper() * pm.tail + 1e-12) && c.pass;
    }
    r.checks.push_back(c);
  }
  return r;
}

// -- decomposition ---------------------------------------------------------

SuiteReport decomposition_suite(const SuiteOptions& o) {
  SuiteReport r;
  constexpr std::size_t kTop = 5;
  const std::size_t n = o.n.value_or(100000);
  const BaseSpace base(o.theta.value_or(1.0));
  const LevyModel gamma = LevyModel::gamma();
  const TestFunction probe = TestFunction::callable([](double x) { return x; }, {0.0, 1.0}, "x");
  struct Draw {
    std::array<double, kTop> loc{}, charge{};
    std::size_t atoms = 0;
    double total = 0.0, mean_x = 0.0;
  };
  const auto draws = collect_draws(n, sub_seed(o, "decomposition"), [&](RandomStream& rng) {
    const DiscreteMeasure eta = sample_levy(gamma, base, o.trunc, rng);
    const auto atoms = eta.atoms();
    std::vector<std::size_t> idx(atoms.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const std::size_t top = std::min(kTop, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(top), idx.end(),
                      [&](auto p, auto q) { return atoms[p].charge > atoms[q].charge; });
    Draw d;
    d.atoms = top;
    for (std::size_t k = 0; k < top; ++k) {
      d.loc[k] = atoms[idx[k]].location;
      d.charge[k] = atoms[idx[k]].charge;
    }
    d.total = eta.total_charge();
    d.mean_x = functional_f_a(probe, normalize(eta).measure);
    return d;
  });

  std::vector<double> ks_p, chi_p, rho;
  std::vector<std::size_t> counts;
  for (std::size_t k = 0; k < kTop; ++k) {
    std::vector<double> loc, charge;
    for (const auto& d : draws) {
      if (d.atoms > k) {
        loc.push_back(d.loc[k]);
        charge.push_back(d.charge[k]);
      }
    }
    counts.push_back(loc.size());
    ks_p.push_back(ks_one_sample(loc, [](double x) { return std::clamp(x, 0.0, 1.0); }).p_value);
    const auto ind = independence_test(loc, charge);
    chi_p.push_back(ind.chi_square_p);
    rho.push_back(ind.rank_correlation * std::sqrt(static_cast<double>(loc.size())));
  }
  const auto ks_adj = holm_adjust(ks_p);
  const auto chi_adj = holm_adjust(chi_p);
  Check uni = make_check("top-location-uniform",
                         {{"theta", base.theta}, {"n", n}, {"family_size", kTop}, {"raw_p", ks_p},
                          {"sample_sizes", counts}});
  for (std::size_t k = 0; k < kTop; ++k) threshold_row(uni, static_cast<double>(k + 1), ks_adj[k], 0.01, true);
  r.checks.push_back(uni);

  Check ind = make_check("location-charge-independence",
                         {{"theta", base.theta}, {"n", n}, {"family_size", kTop},
                          {"sqrt_n_rank_correlation", rho}, {"raw_chi_square_p", chi_p}});
  for (std::size_t k = 0; k < kTop; ++k) {
    threshold_row(ind, static_cast<double>(k + 1), chi_adj[k], 0.01, true);
    ind.pass = ind.pass && std::abs(rho[k]) < 3.0;
  }
  ind.params["rule"] = "Holm-adjusted chi-square p > 0.01 and sqrt(N) |rank correlation| < 3";
  r.checks.push_back(ind);

  std::vector<double> total(n), mean_x(n), top_charge(n);
  for (std::size_t i = 0; i < n; ++i) {
    total[i] = draws[i].total;
    mean_x[i] = draws[i].mean_x;
    top_charge[i] = draws[i].charge[0];
  }
  const auto lemma = independence_test(total, mean_x);
  Check lem = make_check("total-normalized-independence",
                         {{"theta", base.theta}, {"n", n}, {"function", probe.label()},
                          {"rank_correlation", lemma.rank_correlation}});
  threshold_row(lem, 0.0, lemma.chi_square_p, 0.01, true);
  lem.pass = lemma.pass;
  r.checks.push_back(lem);

  const auto dep = independence_test(total, top_charge);
  Check ctl = make_check("dependence-control",
                         {{"pair", "total charge vs largest charge"},
                          {"rank_correlation", dep.rank_correlation},
                          {"rule", "pass iff independence is rejected"}});
  ctl.add_row(0.0, dep.chi_square_p, 0.0, 0.01);
  ctl.pass = !dep.pass;
  r.checks.push_back(ctl);
  return r;
}

// -- product type ------------------------------------------------------------

SuiteReport product_type_suite(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t n = o.n.value_or(100000);
  const double theta = o.theta.value_or(1.0);
  const BaseSpace base(theta);
  const std::array<double, 3> p{0.2, 0.3, 0.5};
  const std::array<double, 3> edge{0.2, 0.5, 1.0};
  const LevyModel gamma = LevyModel::gamma();
  // KS sees every scale: with a 1e-8 cap a Gamma(0.2) block is empty (sum 0) about 3% of
  // the time. Gamma charges decay geometrically, so a far lower cap is cheap.
  TruncationPolicy trunc = o.trunc;
  trunc.tail_mass_cap = std::min(trunc.tail_mass_cap, 1e-60);
  const auto draws = collect_draws(n, sub_seed(o, "product-type"), [&](RandomStream& rng) {
    const DiscreteMeasure eta = sample_levy(gamma, base, trunc, rng);
    std::array<double, 3> sums{};
    for (const auto& at : eta.atoms()) {
      std::size_t b = 0;
      while (b < 2 && at.location >= edge[b]) ++b;
      sums[b] += at.charge;
    }
    return sums;
  });
  std::array<std::vector<double>, 3> blocks;
  for (auto& b : blocks) b.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t b = 0; b < 3; ++b) blocks[b][i] = draws[i][b];

  std::vector<double> ks_p;
  for (std::size_t b = 0; b < 3; ++b) {
    const double shape = theta * p[b];
    ks_p.push_back(ks_one_sample(blocks[b], [shape](double x) { return gamma_cdf(shape, x); }).p_value);
  }
  const auto ks_adj = holm_adjust(ks_p);
  Check marg = make_check("block-gamma-marginals",
                          {{"theta", theta}, {"partition", p}, {"n", n}, {"raw_p", ks_p},
                           {"tail_mass_cap", trunc.tail_mass_cap}});
  for (std::size_t b = 0; b < 3; ++b) threshold_row(marg, static_cast<double>(b), ks_adj[b], 0.01, true);
  r.checks.push_back(marg);

  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  std::vector<double> chi_p, rho;
  for (const auto& [u, v] : pairs) {
    const auto t = independence_test(blocks[u], blocks[v]);
    chi_p.push_back(t.chi_square_p);
    rho.push_back(t.rank_correlation * std::sqrt(static_cast<double>(n)));
  }
  const auto chi_adj = holm_adjust(chi_p);
  Check ind = make_check("block-independence", {{"pairs", "01,02,12"}, {"n", n},
                                                {"sqrt_n_rank_correlation", rho}, {"raw_chi_square_p", chi_p}});
  for (std::size_t k = 0; k < 3; ++k) {
    threshold_row(ind, static_cast<double>(k), chi_adj[k], 0.01, true);
    ind.pass = ind.pass && std::abs(rho[k]) < 3.0;
  }
  ind.params["rule"] = "Holm-adjusted chi-square p > 0.01 and sqrt(N) |rank correlation| < 3";
  r.checks.push_back(ind);

  const double wrong = theta * p[1];
  Check ctl = make_check("block-marginal-control", {{"block", 0}, {"tested_shape", wrong}});
  threshold_row(ctl, 0.0,
                ks_one_sample(blocks[0], [wrong](double x) { return gamma_cdf(wrong, x); }).p_value,
                1e-6, false);
  r.checks.push_back(ctl);
  return r;
}

// -- quasi-invariance ------------------------------------------------------

SuiteReport quasi_invariance_suite(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t n = o.n.value_or(100000);
  const double theta = o.theta.value_or(1.0);
  const BaseSpace base(theta);
  const NamedStatistic k{"exp(-eta(X))", [](const DiscreteMeasure& e) { return std::exp(-e.total_charge()); }};
  for (const auto& a : standard_panel()) {
    if (!a.in_group()) continue;
    r.checks.push_back(quasi_invariance_test(a, k, theta, n, sub_seed(o, "qi/" + a.label()), o.trunc));
  }

  // Cocycle identity on random step pairs.
  RandomStream rng(sub_seed(o, "qi/cocycle"), 0);
  const LevyModel gamma = LevyModel::gamma();
  auto random_step = [&]() {
    const int pieces = 1 + static_cast<int>(rng.uniform() * 4.0);
    std::vector<double> cuts{0.0};
    for (int i = 1; i < pieces; ++i) cuts.push_back(rng.uniform());
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(1.0);
    std::vector<double> br{0.0}, vals;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
      if (cuts[i] <= br.back()) continue;
      br.push_back(cuts[i]);
      vals.push_back(0.3 + 2.7 * rng.uniform());
    }
    if (br.back() != 1.0) {
      br.back() = 1.0;
    }
    return TestFunction::step(br, vals);
  };
  double worst = 0.0;
  constexpr int kPairs = 1000;
  for (int t = 0; t < kPairs; ++t) {
    const TestFunction a = random_step();
    const TestFunction b = random_step();
    const DiscreteMeasure eta = sample_levy(gamma, base, o.trunc, rng);
    worst = std::max(worst, cocycle_log_error(a, b, eta, base));
  }
  Check coc = make_check("cocycle-identity", {{"pairs", kPairs}, {"theta", theta},
                                              {"form", "rho_ab(eta) = rho_b(eta) rho_a(M_{1/b} eta)"}});
  coc.pass = coc.add_row(0.0, worst, 0.0, 0.0, 1e-10);
  r.checks.push_back(coc);

  // Constant multipliers: the density depends on the total charge only.
  Check cst = make_check("constant-multiplier-formula", {{"theta", theta}, {"grid", "c x s"}});
  double row = 0.0;
  for (double c : {0.5, 2.0, 3.0}) {
    for (double s : {0.5, 1.0, 2.0}) {
      const DiscreteMeasure eta({Atom{0.7, 0.75 * s}, Atom{0.2, 0.25 * s}});
      const double got = rn_density_gamma(TestFunction::constant(c), eta, base).value;
      const double want = std::pow(c, -theta) * std::exp((1.0 - 1.0 / c) * s);
      cst.pass = cst.add_row(row++, got, 0.0, want, 1e-12 * want) && cst.pass;
    }
  }
  r.checks.push_back(cst);
  if (theta == 1.0) {
    Check pin = make_check("constant-multiplier-example", {{"c", 2.0}, {"theta", 1.0}, {"s", 1.0}});
    const DiscreteMeasure eta({Atom{0.5, 1.0}});
    pin.pass = pin.add_row(0.0, rn_density_gamma(TestFunction::constant(2.0), eta, base).value, 0.0,
                           0.824361, 5e-7);
    r.checks.push_back(pin);
  }

  // Power check: dropping the density must be detected.
  const TestFunction two = TestFunction::constant(2.0);
  const auto diffs = collect_draws(n, sub_seed(o, "qi/control"), [&](RandomStream& g) {
    const DiscreteMeasure eta = sample_levy(gamma, base, o.trunc, g);
    return k.fn(apply_multiplicator(two, eta)) - k.fn(eta);
  });
  const auto s = summarize(diffs);
  Check ctl = make_check("missing-density-control",
                         {{"function", two.label()}, {"rule", "pass iff |lhs| exceeds 3 se"}});
  ctl.pass = !ctl.add_row(0.0, s.mean, s.se, 0.0);
  r.checks.push_back(ctl);
  return r;
}

// -- PD quasi-invariance ---------------------------------------------------

std::vector<NamedSimplexStatistic> simplex_statistics() {
  return {
      {"y1", [](const SimplexSequence& y) { return y.terms.empty() ? 0.0 : y.terms[0]; }},
      {"sum y^2",
       [](const SimplexSequence& y) {
         double s = 0.0;
         for (double t : y.terms) s += t * t;
         return s;
       }},
      {"y2", [](const SimplexSequence& y) { return y.terms.size() < 2 ? 0.0 : y.terms[1]; }},
  };
}

SuiteReport pd_quasi_invariance_suite(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t n = o.n.value_or(50000);
  const double theta = o.theta.value_or(1.0);
  const auto stats = simplex_statistics();
  const TestFunction a = TestFunction::step({0.0, 0.5, 1.0}, {1.5, 0.75});
  r.checks.push_back(pd_quasi_invariance_test(a, stats, theta, 100, n, sub_seed(o, "pdqi")));

  // Power check: without the density the shift in E[y1] is visible.
  const TestFunction strong = TestFunction::step({0.0, 0.5, 1.0}, {8.0, 0.5});
  const auto diffs = collect_draws(n, sub_seed(o, "pdqi/control"), [&](RandomStream& rng) {
    const SimplexSequence y = sample_pd_theta(theta, 100, rng);
    const SimplexSequence sy = markov_S_a(y, strong, rng);
    return stats[1].fn(sy) - stats[1].fn(y);
  });
  const auto s = summarize(diffs);
  Check ctl = make_check("missing-density-control", {{"function", strong.label()},
                                                     {"statistic", stats[1].label},
                                                     {"rule", "pass iff |lhs| exceeds 3 se"}});
  ctl.pass = !ctl.add_row(0.0, s.mean, s.se, 0.0);
  r.checks.push_back(ctl);
  return r;
}

// -- quasi-Lebesgue ------------------------------------------------------------

SuiteReport quasi_lebesgue_suite(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t n = o.n.value_or(100000);
  const double theta = o.theta.value_or(1.0);
  const double cutoff = 10.0;
  const TestFunction b = TestFunction::step({0.0, 0.5, 1.0}, {1.5, 2.0});
  const NamedStatistic g{"exp(-f_b) b=" + b.label(),
                         [b](const DiscreteMeasure& xi) { return std::exp(-functional_f_a(b, xi)); }};
  const std::vector<TestFunction> zero_log = {
      TestFunction::step({0.0, 0.5, 1.0}, {2.0, 0.5}),
      TestFunction::step({0.0, 0.25, 0.75, 1.0}, {4.0, 0.5, 1.0}),
      TestFunction::step({0.0, 0.6, 1.0}, {2.0 / 3.0, std::pow(1.5, 1.5)}),
  };
  for (const auto& a : zero_log)
    r.checks.push_back(
        quasi_lebesgue_invariance_test(a, g, cutoff, theta, n, sub_seed(o, "ql/" + a.label()), o.trunc));
  Check ctl = quasi_lebesgue_invariance_test(TestFunction::constant(2.0), g, cutoff, theta, n,
                                             sub_seed(o, "ql/control"), o.trunc);
  ctl.check = "nonzero-log-integral-control";
  ctl.params["rule"] = "pass iff the invariance comparison fails";
  ctl.pass = !ctl.pass;
  ctl.warnings.clear();
  r.checks.push_back(ctl);
  return r;
}

// -- asymptotics ---------------------------------------------------------------

SuiteReport asymptotics_suite(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t draws = o.n.value_or(200);
  const double theta = o.theta.value_or(2.0);
  const auto cpd = collect_draws(draws, sub_seed(o, "asym/cpd"), [&](RandomStream& rng) {
    return tail_slope(sample_cpd(theta, 600, rng).terms, 100, 400);
  });
  const auto ci = mean_interval(cpd);
  Check slope = make_check("cpd-tail-slope", {{"theta", theta}, {"draws", draws}, {"window", {100, 400}},
                                              {"ci_half_width", ci.ci_half_width},
                                              {"rule", "|lhs - rhs| <= 0.05"}});
  slope.pass = slope.add_row(theta, ci.estimate, ci.ci_half_width / 1.96, -1.0 / theta, 0.05, 0.0);
  r.checks.push_back(slope);

  const auto pd = collect_draws(draws, sub_seed(o, "asym/pd"), [&](RandomStream& rng) {
    return tail_slope(sample_pd_theta(1.0, 600, rng).terms, 100, 400);
  });
  const auto ci_pd = mean_interval(pd);
  Check slope_pd = make_check("pd-tail-slope", {{"theta", 1.0}, {"draws", draws}, {"window", {100, 400}},
                                                {"ci_half_width", ci_pd.ci_half_width},
                                                {"rule", "|lhs - rhs| <= 0.05"}});
  slope_pd.pass = slope_pd.add_row(1.0, ci_pd.estimate, ci_pd.ci_half_width / 1.96, -1.0, 0.05, 0.0);
  r.checks.push_back(slope_pd);

  const double alpha = o.alpha.value_or(0.5);
  const double c = o.c.value_or(1.0);
  TruncationPolicy fixed = o.trunc;
  fixed.max_atoms = std::max<std::size_t>(fixed.max_atoms, 1500);
  fixed.tail_mass_cap = 0.0;
  const LevyModel stable = LevyModel::stable(alpha, c);
  struct Draw {
    double constant, recovered, total;
    bool converged;
  };
  const auto st = collect_draws(draws, sub_seed(o, "asym/stable"), [&](RandomStream& rng) {
    const DiscreteMeasure eta = sample_levy(stable, BaseSpace(1.0), fixed, rng);
    const ConicSequence z = conic_part(eta);
    const auto tc = stable_tail_constant(z.terms, alpha, c, 500, 1500);
    const auto rec = recover_stable_scale(simplicial_part(eta), alpha, c);
    return Draw{tc.estimate, rec.scale, eta.total_charge(), tc.converged && rec.converged};
  });
  std::vector<double> consts, ratio;
  std::size_t converged = 0;
  for (const auto& d : st) {
    consts.push_back(d.constant);
    ratio.push_back(d.recovered / d.total);
    converged += d.converged ? 1 : 0;
  }
  const auto ci_st = mean_interval(consts);
  const double target = std::pow(c / std::tgamma(1.0 - alpha), 1.0 / alpha);
  Check tail = make_check("stable-tail-constant",
                          {{"alpha", alpha}, {"c", c}, {"draws", draws}, {"window", {500, 1500}},
                           {"converged_draws", converged}, {"rule", "|lhs / rhs - 1| <= 0.05"}});
  tail.pass = tail.add_row(alpha, ci_st.estimate, ci_st.ci_half_width / 1.96, target, 0.05 * target, 0.0);
  r.checks.push_back(tail);

  const auto rs = summarize(ratio);
  Check rec = make_check("stable-scale-recovery",
                         {{"alpha", alpha}, {"c", c}, {"draws", draws},
                          {"rule", "mean recovered/true total within 3 se + 0.01 of 1"}});
  rec.pass = rec.add_row(alpha, rs.mean, rs.se, 1.0, 0.01);
  r.checks.push_back(rec);

  RandomStream rng(sub_seed(o, "asym/diagnostic"), 0);
  const auto wrong = stable_tail_constant(sample_cpd(2.0, 1024, rng).terms, alpha, c, 200, 600);
  Check diag = make_check("cpd-tail-regime-diagnostic",
                          {{"estimate", wrong.estimate}, {"rule", "pass iff flagged as not converged"}});
  diag.add_row(0.0, wrong.converged ? 1.0 : 0.0, 0.0, 0.0);
  diag.pass = !wrong.converged;
  r.checks.push_back(diag);
  return r;
}

// -- weak limit ------------------------------------------------------------------

SuiteReport weak_limit_suite(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t n = o.n.value_or(200000);
  const double theta = o.theta.value_or(1.0);
  const double k = o.k.value_or(1.0);
  const std::vector<double> grid =
      o.alpha_grid.empty() ? std::vector<double>{0.4, 0.2, 0.1, 0.05} : o.alpha_grid;
  const std::vector<TestFunction> panel = {TestFunction::constant(1.0),
                                           TestFunction::step({0.0, 0.5, 1.0}, {2.0, 1.0})};
  // Coarse grid points are the expensive ones (many atoms) and carry large gaps, so they
  // get fewer draws: n / 2^(points after it), at least 1000.
  std::vector<std::size_t> sizes(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::size_t shift = std::min<std::size_t>(grid.size() - 1 - i, 20);
    sizes[i] = std::max<std::size_t>(std::min<std::size_t>(n, 1000), n >> shift);
  }
  const auto res = weak_limit_test(k, grid, panel, theta, sizes, sub_seed(o, "weak-limit"), o.trunc);
  for (const auto& c : res.exactness) r.checks.push_back(c);
  for (const auto& c : res.discrepancy) r.checks.push_back(c);

  // Final grid point, a = 1.
  const auto& d = res.discrepancy[0];
  Check fin = make_check("weak-limit-final-discrepancy",
                         {{"alpha", grid.back()}, {"function", panel[0].label()},
                          {"rule", "|mean - gamma value| < 0.005"},
                          {"exact_gap", std::abs(weak_limit_target(panel[0], grid.back(), k, theta) -
                                                 laplace_gamma(panel[0], BaseSpace(theta)))}});
  threshold_row(fin, grid.back(), std::abs(d.lhs.back() - d.rhs.back()), 0.005, false);
  r.checks.push_back(fin);

  const BaseSpace base(theta);
  if (std::find(grid.begin(), grid.end(), 0.4) != grid.end()) {
    const double alpha = 0.4;
    const auto& a = panel[0];
    const std::size_t at =
        static_cast<std::size_t>(std::find(grid.begin(), grid.end(), alpha) - grid.begin());
    const auto w = weighted_mc_estimate(
        [&](const DiscreteMeasure& eta) { return std::exp(-functional_f_a(a, eta)); },
        [&](RandomStream& rng) { return sample_tilted_stable_weighted(alpha, k, base, o.trunc, rng); },
        sizes[at], sub_seed(o, "weak-limit/weighted"));
    const auto& e = res.exactness[0];
    Check cross = make_check("weighted-sampler-agreement",
                             {{"alpha", alpha}, {"function", a.label()}, {"ess", w.ess},
                              {"se_direct", e.se[at]}, {"se_weighted", w.se}});
    const double se = std::hypot(e.se[at], w.se);
    cross.pass = cross.add_row(alpha, w.mean, se, e.lhs[at], e.allowance[at]);
    if (w.verdict == Verdict::kWarn) cross.warnings.push_back("effective sample size below n/10");
    r.checks.push_back(cross);
  }
  return r;
}

// -- Markov-Krein ------------------------------------------------------------------

SuiteReport markov_krein_suite(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t n = o.n.value_or(100000);
  const std::vector<double> thetas = o.theta ? std::vector<double>{*o.theta} : std::vector<double>{1.0, 3.0};
  const std::vector<double> z_grid{0.5, 1.0, 2.0};
  const std::vector<TestFunction> fns = {
      TestFunction::callable([](double x) { return x; }, {0.0, 1.0}, "x"),
      TestFunction::step({0.0, 0.3, 0.7, 1.0}, {0.5, 3.0, 1.5}),
      TestFunction::constant(2.0),
  };
  for (double theta : thetas)
    for (const auto& a : fns)
      r.checks.push_back(mk_check(a, z_grid, theta, a.is_constant() ? 1000 : n,
                                  sub_seed(o, "mk/" + format_double(theta) + "/" + a.label()), o.trunc));
  Check pin = make_check("markov-krein-rhs-example", {{"theta", 1.0}, {"z", 1.0}, {"function", "x"}});
  pin.pass = pin.add_row(1.0, mk_rhs(fns[0], 1.0, 1.0), 0.0, std::exp(1.0) / 4.0, 1e-12);
  r.checks.push_back(pin);
  return r;
}

// -- two-parameter Markov-Krein -------------------------------------------------------

SuiteReport two_param_mk_suite(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t n = o.n.value_or(100000);
  const double alpha = o.alpha.value_or(0.5);
  const std::vector<double> thetas = o.theta ? std::vector<double>{*o.theta} : std::vector<double>{0.0, 0.5};
  const std::vector<double> z_grid{0.5, 1.0, 2.0};
  const std::vector<TestFunction> fns = {
      TestFunction::callable([](double x) { return x; }, {0.0, 1.0}, "x"),
      TestFunction::step({0.0, 0.5, 1.0}, {2.0, 1.0}),
  };
  for (double theta : thetas) {
    for (const auto& a : fns)
      r.checks.push_back(two_param_mk_check(a, z_grid, alpha, theta, n,
                                            sub_seed(o, "tpmk/" + format_double(theta) + "/" + a.label()),
                                            o.trunc));
    Check cst = two_param_mk_check(TestFunction::constant(2.0), z_grid, alpha, theta, 256,
                                   sub_seed(o, "tpmk/const/" + format_double(theta)), o.trunc);
    cst.check = "two-param-markov-krein-constant";
    // Both sides collapse to 1 + z c.
    for (std::size_t i = 0; i < cst.grid.size(); ++i) {
      const double exact = 1.0 + 2.0 * cst.grid[i];
      cst.pass = cst.pass && std::abs(cst.lhs[i] - exact) <= 1e-9 * exact &&
                 std::abs(cst.rhs[i] - exact) <= 1e-9 * exact;
    }
    r.checks.push_back(cst);
  }
  return r;
}

// -- zero stability ----------------------------------------------------------------

SuiteReport zero_stability_suite(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t n = o.n.value_or(100000);
  const BaseSpace base(o.theta.value_or(1.0));
  const std::vector<std::pair<TestFunction, TestFunction>> pairs = {
      {TestFunction::step({0.0, 0.5, 1.0}, {2.0, 0.5}), TestFunction::constant(1.0)},
      {TestFunction::step({0.0, 0.25, 0.75, 1.0}, {4.0, 0.5, 1.0}),
       TestFunction::step({0.0, 0.5, 1.0}, {0.75, 4.0 / 3.0})},
  };
  for (const auto& [a1, a2] : pairs)
    for (auto& c : zero_stability_witness(a1, a2, base, n, sub_seed(o, "zs/" + a1.label() + a2.label()), o.trunc))
      r.checks.push_back(c);

  Check guard = make_check("norm-mismatch-guard", {{"a1", "const(2)"}, {"a2", "const(1)"},
                                                   {"rule", "pass iff NormMismatch is raised"}});
  guard.pass = false;
  try {
    zero_stability_witness(TestFunction::constant(2.0), TestFunction::constant(1.0), base, 16, o.seed, o.trunc);
  } catch (const Error& e) {
    guard.pass = e.code() == ErrorCode::kNormMismatch;
  }
  guard.add_row(0.0, guard.pass ? 1.0 : 0.0, 0.0, 1.0);
  r.checks.push_back(guard);

  const TestFunction a = TestFunction::step({0.0, 0.5, 1.0}, {1.0, 4.0});
  const double target = std::pow(zero_norm(a, base), 1.0 / base.theta);
  Check lim = make_check("alpha-norm-limit", {{"function", a.label()}, {"theta", base.theta},
                                              {"rule", "distance to rhs strictly decreases along the grid"}});
  double last = std::numeric_limits<double>::infinity();
  for (double alpha : {0.5, 0.1, 0.02}) {
    const double v = normalized_alpha_norm(a, alpha, base);
    lim.add_row(alpha, v, 0.0, target);
    lim.pass = lim.pass && std::abs(v - target) < last && v >= target;
    last = std::abs(v - target);
  }
  r.checks.push_back(lim);
  return r;
}

// -- quasi-multiplicative criterion --------------------------------------------------

SuiteReport quasi_mult_suite(const SuiteOptions&) {
  SuiteReport r;
  auto add = [&](const std::string& name, const std::string& g_label,
                 const std::function<double(double)>& g, double a, bool expect_finite) {
    const auto q = quasi_mult_criterion(g, a);
    Check c = make_check(name, {{"g", g_label}, {"a", a}, {"decay", q.decay}, {"rate", q.rate},
                                {"value", q.value}, {"finite", q.finite}, {"shells", q.shells},
                                {"expected_finite", expect_finite}});
    c.add_row(a, q.finite ? 1.0 : 0.0, 0.0, expect_finite ? 1.0 : 0.0);
    c.pass = q.finite == expect_finite;
    if (expect_finite) {
      bool mono = true;
      for (std::size_t j = 1; j < q.shells.size(); ++j) mono = mono && q.shells[j] <= q.shells[j - 1];
      c.params["shells_monotone"] = mono;
      c.pass = c.pass && mono;
    }
    r.checks.push_back(c);
  };
  const auto gamma_g = [](double x) { return std::exp(-x); };
  for (double a : {0.5, 2.0, 4.0}) add("quasi-mult-gamma", "exp(-x)", gamma_g, a, true);
  add("quasi-mult-k_m", "(log 1/x)^0.5",
      [](double x) { return x >= 1.0 ? 0.0 : std::sqrt(std::log(1.0 / x)); }, 2.0, true);
  add("quasi-mult-divergent-control", "(log 1/x)^2",
      [](double x) { return x >= 1.0 ? 0.0 : std::pow(std::log(1.0 / x), 2.0); }, 2.0, false);
  const auto id = quasi_mult_criterion(gamma_g, 1.0);
  Check triv = make_check("quasi-mult-identity", {{"a", 1.0}});
  triv.pass = triv.add_row(1.0, id.value, 0.0, 0.0) && id.finite;
  r.checks.push_back(triv);
  return r;
}

// -- subordination -------------------------------------------------------------------

SuiteReport subordination_suite(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t n = o.n.value_or(100000);
  const std::vector<double> t_grid{0.5, 1.0, 2.0};
  for (auto& c : subordination_test(t_grid, n, sub_seed(o, "subordination"), o.trunc)) r.checks.push_back(c);
  return r;
}

// -- oracle equivalence ------------------------------------------------------------------

SuiteReport oracle_equivalence_suite(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t n = o.n.value_or(100000);
  const double theta = o.theta.value_or(1.0);
  const BaseSpace base(theta);
  const std::vector<TestFunction> fns = {
      TestFunction::callable([](double x) { return x; }, {0.0, 1.0}, "x"),
      TestFunction::step({0.0, 0.3, 0.7, 1.0}, {0.5, 3.0, 1.5}),
  };
  const std::size_t m = fns.size() + 1;
  const LevyModel gamma = LevyModel::gamma();
  auto stats_of = [&](const DiscreteMeasure& eta) {
    std::vector<double> v{eta.total_charge()};
    for (const auto& a : fns) v.push_back(functional_f_a(a, eta));
    return v;
  };
  const std::size_t n_terms = 64 + static_cast<std::size_t>(40.0 * theta);
  auto cpd_measure = [&](double th, RandomStream& rng) {
    const ConicSequence z = sample_cpd(th, n_terms, rng);
    std::vector<Atom> atoms;
    for (double t : z.terms) atoms.push_back({rng.uniform(), t});
    return DiscreteMeasure::from_unsorted(std::move(atoms), z.tail_bound);
  };
  const auto inv = collect_draws(n, sub_seed(o, "oracle/inverse-tail"), [&](RandomStream& rng) {
    return stats_of(sample_levy(gamma, base, o.trunc, rng));
  });
  const auto stick = collect_draws(n, sub_seed(o, "oracle/cpd"), [&](RandomStream& rng) {
    return stats_of(cpd_measure(theta, rng));
  });
  const auto wrong = collect_draws(n, sub_seed(o, "oracle/control"), [&](RandomStream& rng) {
    return stats_of(cpd_measure(1.1 * theta, rng));
  });
  std::vector<double> p;
  std::vector<std::string> names{"total"};
  for (const auto& a : fns) names.push_back("f_a " + a.label());
  double control_p = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> x(n), y(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = inv[i][j];
      y[i] = stick[i][j];
      w[i] = wrong[i][j];
    }
    p.push_back(ks_two_sample(x, y).p_value);
    if (j == 0) control_p = ks_two_sample(x, w).p_value;
  }
  const auto adj = holm_adjust(p);
  Check eq = make_check("inverse-tail-vs-stick-breaking",
                        {{"theta", theta}, {"n", n}, {"statistics", names}, {"raw_p", p}});
  for (std::size_t j = 0; j < m; ++j) threshold_row(eq, static_cast<double>(j), adj[j], 0.01, true);
  r.checks.push_back(eq);
  Check ctl = make_check("stick-breaking-wrong-theta-control", {{"theta", 1.1 * theta}, {"statistic", "total"}});
  threshold_row(ctl, 0.0, control_p, 1e-6, false);
  r.checks.push_back(ctl);
  return r;
}

using SuiteFn = SuiteReport (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"laplace", laplace_suite},
      {"decomposition", decomposition_suite},
      {"product-type", product_type_suite},
      {"quasi-invariance", quasi_invariance_suite},
      {"pd-quasi-invariance", pd_quasi_invariance_suite},
      {"quasi-lebesgue", quasi_lebesgue_suite},
      {"asymptotics", asymptotics_suite},
      {"weak-limit", weak_limit_suite},
      {"markov-krein", markov_krein_suite},
      {"two-param-mk", two_param_mk_suite},
      {"zero-stability", zero_stability_suite},
      {"quasi-mult", quasi_mult_suite},
      {"subordination", subordination_suite},
      {"oracle-equivalence", oracle_equivalence_suite},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  for (const auto& [key, fn] : registry()) {
    if (key != name) continue;
    SuiteReport r = fn(options);
    r.suite = name;
    r.config = options.to_json();
    r.config["suite"] = name;
    return r;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace levylab
