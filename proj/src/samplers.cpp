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

#include "levylab/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "levylab/error.hpp"

namespace levylab {

namespace {

double log_add(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

DiscreteMeasure sample_series(const LevyModel& model, const BaseSpace& base,
                              const TruncationPolicy& trunc, RandomStream& rng,
                              std::vector<double>* arrivals) {
  require(trunc.max_atoms > 0, ErrorCode::kInvalidArgument, "max_atoms must be positive");
  std::vector<Atom> atoms;
  atoms.reserve(std::min<std::size_t>(trunc.max_atoms, 4096));
  double arrival = 0.0;
  double tail = std::numeric_limits<double>::infinity();
  // Charges above this floor certainly leave more than the cap behind; the exact
  // tail is only evaluated below it.
  const double floor = model.small_jump_mean_inverse(trunc.tail_mass_cap / base.theta)
                           .value_or(std::numeric_limits<double>::infinity());
  while (atoms.size() < trunc.max_atoms) {
    arrival += rng.exponential();
    const double z = model.inverse_tail(arrival / base.theta);
    const double x = rng.uniform();
    if (!(z > 0.0)) break;  // charges below the double range
    atoms.push_back({x, z});
    if (arrivals) arrivals->push_back(arrival);
    if (z > floor * (1.0 + 1e-9) ||
        base.theta * model.small_jump_mean_lower(z) > trunc.tail_mass_cap) {
      tail = -1.0;  // above the cap; exact value filled in after the loop
      continue;
    }
    tail = base.theta * model.small_jump_mean(z);
    if (tail <= trunc.tail_mass_cap) break;
  }
  if (tail < 0.0) tail = base.theta * model.small_jump_mean(atoms.back().charge);
  if (trunc.hard_cap && tail > trunc.tail_mass_cap) {
    throw Error(ErrorCode::kTruncationOverflow,
                "tail mass cap not reached within max_atoms for " + model.name());
  }
  if (trunc.compensate && !arrivals && tail > 0.0 && std::isfinite(tail)) {
    const Atom extra{rng.uniform(), tail};
    const auto pos = std::upper_bound(atoms.begin(), atoms.end(), extra.charge,
                                      [](double v, const Atom& a) { return v > a.charge; });
    atoms.insert(pos, extra);
  }
  return DiscreteMeasure(std::move(atoms), std::isfinite(tail) ? tail : 0.0);
}

SimplexSequence order_sticks(std::vector<double> sticks, double residual) {
  std::stable_sort(sticks.begin(), sticks.end(), std::greater<>());
  SimplexSequence out{std::move(sticks), residual};
  return out;
}

}  // namespace

std::vector<double> charges_from_arrivals(const LevyModel& model, const BaseSpace& base,
                                          std::span<const double> arrivals) {
  std::vector<double> out;
  out.reserve(arrivals.size());
  for (double g : arrivals) out.push_back(model.inverse_tail(g / base.theta));
  return out;
}

DiscreteMeasure sample_levy(const LevyModel& model, const BaseSpace& base,
                            const TruncationPolicy& trunc, RandomStream& rng) {
  return sample_series(model, base, trunc, rng, nullptr);
}

TracedSample sample_levy_traced(const LevyModel& model, const BaseSpace& base,
                                const TruncationPolicy& trunc, RandomStream& rng) {
  TracedSample out;
  out.measure = sample_series(model, base, trunc, rng, &out.arrivals);
  return out;
}

std::vector<double> sample_gem(double alpha, double theta, std::size_t n_terms, RandomStream& rng,
                               double* residual) {
  require(alpha >= 0.0 && alpha < 1.0, ErrorCode::kInvalidArgument, "GEM needs alpha in [0,1)");
  require(theta > -alpha && (alpha > 0.0 || theta > 0.0), ErrorCode::kInvalidArgument,
          "GEM needs theta > -alpha");
  require(n_terms >= 1, ErrorCode::kInvalidArgument, "n_terms must be at least 1");
  constexpr double kLogFloor = -690.0;  // exp(-690) ~ 1e-300
  std::vector<double> sticks;
  sticks.reserve(n_terms);
  double log_rest = 0.0;
  for (std::size_t n = 1; n <= n_terms; ++n) {
    double log_frac;
    double log_keep;
    if (alpha == 0.0) {
      // Beta(1, theta) fraction: 1 - V = U^{1/theta}.
      log_keep = std::log(rng.uniform()) / theta;
      log_frac = std::log(-std::expm1(log_keep));
    } else {
      const double lx = rng.log_gamma(1.0 - alpha);
      const double ly = rng.log_gamma(theta + static_cast<double>(n) * alpha);
      const double ls = log_add(lx, ly);
      log_frac = lx - ls;
      log_keep = ly - ls;
    }
    const double log_stick = log_rest + log_frac;
    if (log_stick < kLogFloor) break;
    sticks.push_back(std::exp(log_stick));
    log_rest += log_keep;
    if (log_rest < kLogFloor) {
      log_rest = -std::numeric_limits<double>::infinity();
      break;
    }
  }
  if (residual) *residual = std::exp(log_rest);
  return sticks;
}

SimplexSequence sample_pd_theta(double theta, std::size_t n_terms, RandomStream& rng) {
  require(theta > 0.0, ErrorCode::kInvalidArgument, "PD(theta) needs theta > 0");
  double residual = 0.0;
  auto sticks = sample_gem(0.0, theta, n_terms, rng, &residual);
  return order_sticks(std::move(sticks), residual);
}

SimplexSequence sample_pd_alpha_theta(double alpha, double theta, std::size_t n_terms,
                                      RandomStream& rng) {
  double residual = 0.0;
  auto sticks = sample_gem(alpha, theta, n_terms, rng, &residual);
  return order_sticks(std::move(sticks), residual);
}

ConicSequence sample_cpd(double theta, std::size_t n_terms, RandomStream& rng) {
  require(theta > 0.0, ErrorCode::kInvalidArgument, "CPD(theta) needs theta > 0");
  const double length = rng.gamma(theta);
  SimplexSequence y = sample_pd_theta(theta, n_terms, rng);
  ConicSequence out;
  out.terms.reserve(y.terms.size());
  for (double t : y.terms) {
    const double v = length * t;
    if (!(v > 0.0)) break;
    out.terms.push_back(v);
  }
  out.tail_bound = length * y.tail_tolerance;
  return out;
}

LevyModel tilted_scaled_stable_model(double alpha, double k) {
  require(alpha > 0.0 && alpha < 1.0 && k > 0.0, ErrorCode::kInvalidArgument,
          "tilted stable needs alpha in (0,1), k > 0");
  // c alpha = k^alpha, tilt 1.
  return LevyModel::tempered_stable(alpha, std::pow(k, alpha) / alpha, 1.0);
}

DiscreteMeasure sample_tilted_scaled_stable(double alpha, double k, const BaseSpace& base,
                                            const TruncationPolicy& trunc, RandomStream& rng) {
  return sample_levy(tilted_scaled_stable_model(alpha, k), base, trunc, rng);
}

WeightedMeasure sample_tilted_stable_weighted(double alpha, double k, const BaseSpace& base,
                                              const TruncationPolicy& trunc, RandomStream& rng) {
  require(alpha >= 0.3 && alpha < 1.0 && k > 0.0, ErrorCode::kInvalidArgument,
          "weighted tilted sampler needs alpha in [0.3, 1), k > 0");
  const double gamma_scale = k / std::pow(alpha, 1.0 / alpha);
  const DiscreteMeasure eta = sample_levy(LevyModel::stable(alpha, 1.0), base, trunc, rng);
  return {scale(eta, gamma_scale), std::exp(-gamma_scale * eta.total_charge())};
}

WeightedMeasure sample_p_alpha_theta_weighted(double alpha, double theta, const BaseSpace& base,
                                              const TruncationPolicy& trunc, RandomStream& rng) {
  require(alpha > 0.0 && alpha < 1.0 && theta > -alpha, ErrorCode::kInvalidArgument,
          "P(alpha, theta) needs alpha in (0,1), theta > -alpha");
  DiscreteMeasure eta = sample_levy(LevyModel::stable(alpha, 1.0), base, trunc, rng);
  require(eta.total_charge() > 0.0, ErrorCode::kZeroMass, "stable draw with zero total charge");
  const double weight = theta == 0.0 ? 1.0 : std::exp(-theta * std::log(eta.total_charge()));
  return {std::move(eta), weight};
}

StableScaleEstimate recover_stable_scale(const SimplexSequence& q, double alpha, double c) {
  require(alpha > 0.0 && alpha < 1.0 && c > 0.0, ErrorCode::kInvalidArgument,
          "recover_stable_scale needs alpha in (0,1), c > 0");
  const std::size_t n = q.terms.size();
  require(n >= 64, ErrorCode::kInsufficientTerms, "recover_stable_scale needs >= 64 terms");
  const std::size_t first = (3 * n) / 4;  // 0-based start of the last quartile
  std::vector<double> values;
  values.reserve(n - first);
  for (std::size_t i = first; i < n; ++i) {
    values.push_back(std::pow(static_cast<double>(i + 1), 1.0 / alpha) * q.terms[i]);
  }
  const auto median_of = [](std::vector<double> v) {
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
  };
  StableScaleEstimate out;
  out.limit = median_of(values);
  const std::size_t half = values.size() / 2;
  const double early = median_of({values.begin(), values.begin() + static_cast<std::ptrdiff_t>(half)});
  const double late = median_of({values.begin() + static_cast<std::ptrdiff_t>(half), values.end()});
  out.converged = out.limit > 0.0 && std::fabs(late / early - 1.0) < 0.25;
  out.scale = std::pow(c / std::tgamma(1.0 - alpha), 1.0 / alpha) / out.limit;
  return out;
}

}  // namespace levylab
