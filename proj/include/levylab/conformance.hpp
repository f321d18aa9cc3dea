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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "levylab/measure.hpp"
#include "levylab/report.hpp"
#include "levylab/samplers.hpp"

namespace levylab {

using MeasureStatistic = std::function<double(const DiscreteMeasure&)>;
using SimplexStatistic = std::function<double(const SimplexSequence&)>;

struct NamedStatistic {
  std::string label;
  MeasureStatistic fn;
};

/// Change of variables under M_a for the gamma process: mean of k(M_a eta)
/// against mean of k(eta) rho_a(eta), paired on the same draws.
Check quasi_invariance_test(const TestFunction& a, const NamedStatistic& k, double theta,
                            std::size_t n, std::uint64_t seed, const TruncationPolicy& trunc = {});

/// |log rho_ab(eta) - log rho_b(eta) - log rho_a(M_{1/b} eta)| divided by
/// max(1, |log rho_ab(eta)|).
double cocycle_log_error(const TestFunction& a, const TestFunction& b, const DiscreteMeasure& eta,
                         const BaseSpace& base);

/// Invariance of the quasi-Lebesgue measure under M_a (requires
/// int log a dnu = 0, else NotInGroup is not raised but the check fails).
/// lhs = E[F(M_a eta) e^{eta(X)}], rhs = E[F(eta) e^{eta(X)}] where
/// F(xi) = G(xi) 1{xi(X) <= cutoff}.
Check quasi_lebesgue_invariance_test(const TestFunction& a, const NamedStatistic& g,
                                     double cutoff, double theta, std::size_t n,
                                     std::uint64_t seed, const TruncationPolicy& trunc = {});

struct NamedSimplexStatistic {
  std::string label;
  SimplexStatistic fn;
};

/// E[k(S_a Y)] against E[k(Y) pd_density(Y)] for Y ~ PD(theta), one row per
/// statistic. Y carries n_terms sticks; pd_density uses its defaults.
Check pd_quasi_invariance_test(const TestFunction& a, std::span<const NamedSimplexStatistic> ks,
                               double theta, std::size_t n_terms, std::size_t n,
                               std::uint64_t seed);

/// Brownian motion at an independent Gamma(t) time against the difference of
/// two independent gamma-process totals over sqrt 2, one KS row per t
/// (lhs = KS statistic, rhs = p-value). The second check is the same
/// comparison without the sqrt 2, expected to be rejected.
std::vector<Check> subordination_test(std::span<const double> t_grid, std::size_t n,
                                      std::uint64_t seed, const TruncationPolicy& trunc = {});

struct WeakLimitResult {
  /// Per function: sampler against its own analytic target along the grid.
  std::vector<Check> exactness;
  /// Per function: empirical discrepancy to the gamma value along the grid.
  std::vector<Check> discrepancy;
  /// Per function: true iff the discrepancy strictly decreases along the grid.
  std::vector<bool> monotone;
};

/// Laplace functionals of the tilted scaled stable process (tilt 1, scale k)
/// along alpha_grid, against both the exact tempered target and the gamma limit.
WeakLimitResult weak_limit_test(double k, std::span<const double> alpha_grid,
                                std::span<const TestFunction> panel, double theta,
                                std::size_t n, std::uint64_t seed,
                                const TruncationPolicy& trunc = {});
/// Same, with one sample size per grid point.
WeakLimitResult weak_limit_test(double k, std::span<const double> alpha_grid,
                                std::span<const TestFunction> panel, double theta,
                                std::span<const std::size_t> sizes, std::uint64_t seed,
                                const TruncationPolicy& trunc = {});

/// Exact target exp(theta k^alpha/alpha int (1 - (1 + a)^alpha) dx).
double weak_limit_target(const TestFunction& a, double alpha, double k, double theta);

}  // namespace levylab
