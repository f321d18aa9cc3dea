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
#include <span>
#include <vector>

#include "levylab/levy_model.hpp"
#include "levylab/measure.hpp"
#include "levylab/rng.hpp"

namespace levylab {

/// Series truncation. Sampling stops at whichever of max_atoms or
/// tail_mass_cap triggers first; the achieved tail bound is recorded on the
/// output measure.
struct TruncationPolicy {
  std::size_t max_atoms = 2048;
  double tail_mass_cap = 1e-8;
  /// Add one atom carrying the expected truncated mass at a uniform location.
  bool compensate = false;
  /// Throw TruncationOverflow instead of stopping at max_atoms above the cap.
  bool hard_cap = false;
};

/// Charges m^{-1}(arrival / theta) for given unit-rate Poisson arrival times.
std::vector<double> charges_from_arrivals(const LevyModel& model, const BaseSpace& base,
                                          std::span<const double> arrivals);

/// Levy random measure by the inverse-tail series: charges are the inverse
/// tail at the ordered arrivals of a unit-rate Poisson process (scaled by
/// 1/theta), locations i.i.d. uniform on [0,1]. tail_bound is
/// theta * int_0^{Z_last} s dLambda(s).
DiscreteMeasure sample_levy(const LevyModel& model, const BaseSpace& base,
                            const TruncationPolicy& trunc, RandomStream& rng);

struct TracedSample {
  DiscreteMeasure measure;
  std::vector<double> arrivals;
};

/// sample_levy that also returns the arrival times it consumed (compensation is
/// not applied).
TracedSample sample_levy_traced(const LevyModel& model, const BaseSpace& base,
                                const TruncationPolicy& trunc, RandomStream& rng);

/// Stick lengths of GEM(alpha, theta) in breaking order; residual fraction n
/// is Beta(1 - alpha, theta + n alpha). Stops at n_terms sticks or when the
/// next stick would underflow. *residual receives the unbroken length.
std::vector<double> sample_gem(double alpha, double theta, std::size_t n_terms, RandomStream& rng,
                               double* residual);

/// PD(theta): order statistics of Beta(1, theta) stick breaking.
SimplexSequence sample_pd_theta(double theta, std::size_t n_terms, RandomStream& rng);

/// PD(alpha, theta), alpha in [0,1), theta > -alpha.
SimplexSequence sample_pd_alpha_theta(double alpha, double theta, std::size_t n_terms,
                                      RandomStream& rng);

/// CPD(theta) = Gamma(theta, 1) x PD(theta): a PD(theta) draw scaled by an
/// independent Gamma(theta, 1) length.
ConicSequence sample_cpd(double theta, std::size_t n_terms, RandomStream& rng);

/// Levy model of gamma * eta where eta follows the stable law (c = 1)
/// exponentially tilted by exp(-gamma eta(X)), gamma = k / alpha^{1/alpha}:
/// density k^alpha / Gamma(1-alpha) s^{-alpha-1} e^{-s}.
LevyModel tilted_scaled_stable_model(double alpha, double k);

DiscreteMeasure sample_tilted_scaled_stable(double alpha, double k, const BaseSpace& base,
                                            const TruncationPolicy& trunc, RandomStream& rng);

struct WeightedMeasure {
  DiscreteMeasure measure;
  double weight = 1.0;
};

/// Importance-weighted route to the same law: gamma * eta for a stable (c = 1)
/// draw eta, weight exp(-gamma eta(X)) up to a constant. Requires alpha >= 0.3
/// so that gamma stays representable.
WeightedMeasure sample_tilted_stable_weighted(double alpha, double k, const BaseSpace& base,
                                              const TruncationPolicy& trunc, RandomStream& rng);

/// Stable (c = 1) draw with unnormalized weight eta(X)^{-theta}; self-normalized
/// averages reproduce expectations under the law with density proportional to
/// eta(X)^{-theta}. Requires theta > -alpha.
WeightedMeasure sample_p_alpha_theta_weighted(double alpha, double theta, const BaseSpace& base,
                                              const TruncationPolicy& trunc, RandomStream& rng);

struct StableScaleEstimate {
  /// Recovered total charge S(Q).
  double scale = 0.0;
  /// Estimated lim n^{1/alpha} Q_n.
  double limit = 0.0;
  /// False when n^{1/alpha} Q_n drifts across the last quartile (wrong tail regime).
  bool converged = false;
};

/// Recovers the total charge of a stable process from its simplicial part:
/// L = median of n^{1/alpha} Q_n over the last quartile of indices,
/// S = (c / Gamma(1-alpha))^{1/alpha} / L. Needs at least 64 terms.
StableScaleEstimate recover_stable_scale(const SimplexSequence& q, double alpha, double c);

}  // namespace levylab
