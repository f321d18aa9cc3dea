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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "levylab/levy_model.hpp"
#include "levylab/measure.hpp"
#include "levylab/report.hpp"
#include "levylab/samplers.hpp"

namespace levylab {

/// E exp(-f_a(eta)) for the gamma process: exp(-int log(1 + a) dnu).
double laplace_gamma(const TestFunction& a, const BaseSpace& base);

/// E exp(-f_a(eta)) for the stable process: exp(-c int a^alpha dnu).
/// Throws DivergentIntegral when the integral is not finite.
double laplace_stable(const TestFunction& a, double alpha, double c, const BaseSpace& base);

/// -int (1 - e^{-ts}) dLambda(s) by quadrature of the Levy density, independent
/// of the closed forms in LevyModel::log_laplace.
double log_laplace_quadrature(const LevyModel& model, double t);

/// Generic exp(int log psi(a(x)) dnu(x)) with log psi from log_laplace_quadrature.
double laplace_levy(const TestFunction& a, const LevyModel& model, const BaseSpace& base);

/// Samples with optional positive weights (self-normalized when present).
struct EmpiricalDistribution {
  std::vector<double> samples;
  std::vector<double> weights;

  void validate() const;
};

struct ValueWithError {
  double estimate = 0.0;
  double se = 0.0;
};

/// Weighted mean of (1 + z u)^{-theta}. Throws DomainError if 1 + z u <= 0.
ValueWithError cauchy_stieltjes(const EmpiricalDistribution& mu, double z, double theta);

/// exp(-theta int_0^1 log(1 + z a(x)) dx).
double mk_rhs(const TestFunction& a, double z, double theta);

/// Markov-Krein identity for the normalized gamma process with total mass
/// theta: per z, lhs = E (1 + z f_a(bar eta))^{-theta}, rhs = mk_rhs.
Check mk_check(const TestFunction& a, std::span<const double> z_grid, double theta, std::size_t n,
               std::uint64_t seed, const TruncationPolicy& trunc = {});

/// Two-parameter identity for PD(alpha, theta) means. For theta != 0 compares
/// (E (1 + z u)^{-theta})^{-1/theta} with (int (1 + z a)^alpha dx)^{1/alpha};
/// for theta = 0 compares exp(E log(1 + z u)) with the same right side. u is
/// f_a of the normalized weighted stable draw.
Check two_param_mk_check(const TestFunction& a, std::span<const double> z_grid, double alpha,
                         double theta, std::size_t n, std::uint64_t seed,
                         const TruncationPolicy& trunc = {});

/// exp(int log|a| dnu). Throws NotInGroup.
double zero_norm(const TestFunction& a, const BaseSpace& base);

/// (int a^alpha dnu)^{1/alpha}. Throws DivergentIntegral.
double alpha_norm(const TestFunction& a, double alpha, const BaseSpace& base);

/// (int a^alpha dnu / theta)^{1/alpha}; tends to zero_norm^{1/theta} as alpha -> 0
/// and is non-increasing along the way.
double normalized_alpha_norm(const TestFunction& a, double alpha, const BaseSpace& base);

/// Checks that M_{a2/a1} carries f_{a1} to f_{a2} on sampled gamma draws and
/// preserves the truncated quasi-Lebesgue weight. Throws NormMismatch unless
/// the zero-norms agree to 1e-10.
std::vector<Check> zero_stability_witness(const TestFunction& a1, const TestFunction& a2,
                                          const BaseSpace& base, std::size_t n,
                                          std::uint64_t seed, const TruncationPolicy& trunc = {});

struct QuasiMultResult {
  double value = 0.0;
  bool finite = false;
  /// Contributions of the dyadic shells [2^{-j-1}, 2^{-j}], j = 0..39.
  std::vector<double> shells;
  /// "zero", "geometric", "power" or "none".
  std::string decay;
  /// Fitted ratio (geometric) or exponent (power) over the last ten shells.
  double rate = 0.0;
};

/// int_0^1 (sqrt(g(x/a)) - sqrt(g(x)))^2 dx / x on dyadic shells. Summability is
/// accepted on geometric decay (ratio < 0.9) or power decay j^{-p} with
/// p > 1.2; the remainder is extrapolated. Throws EvaluationError when g is
/// negative or not finite.
QuasiMultResult quasi_mult_criterion(const std::function<double(double)>& g, double a,
                                     double singular_tol = 1e6);

}  // namespace levylab
