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

#include "levylab/measure.hpp"
#include "levylab/rng.hpp"

namespace levylab {

/// A density in log and linear form; overflow is set when the linear value
/// is not representable.
struct Density {
  double log_value = 0.0;
  double value = 1.0;
  bool overflow = false;

  static Density from_log(double log_value);
};

/// M_a eta = sum a(x_i) z_i delta_{x_i}, re-sorted. Throws ZeroCharge when a
/// vanishes at an atom.
DiscreteMeasure apply_multiplicator(const TestFunction& a, const DiscreteMeasure& eta);

/// d(M_a P_Gamma)/dP_Gamma (eta) = exp(-int log a dnu) exp(-int (1/a - 1) deta).
Density rn_density_gamma(const TestFunction& a, const DiscreteMeasure& eta, const BaseSpace& base);

/// exp(eta(X)) when eta(X) <= charge_cutoff, else 0.
double quasi_lebesgue_weight(const DiscreteMeasure& eta, double charge_cutoff);

/// Random image of y under the Markov operator induced by M_a on the simplex:
/// each term is multiplied by a(U_i) for i.i.d. uniform U_i, then the series is
/// renormalized (the truncated tail contributes E[a] times its mass).
SimplexSequence markov_S_a(const SimplexSequence& y, const TestFunction& a, RandomStream& rng);

/// Cone version of markov_S_a without renormalization.
ConicSequence markov_R_a(const ConicSequence& z, const TestFunction& a, RandomStream& rng);

struct PdDensity {
  Density density;
  /// Tail mass 1 - sum_{i <= n_product} y_i handled by the exponential surrogate.
  double tail_mass = 0.0;
  /// Second-order error estimate of the surrogate, relative.
  double tail_error = 0.0;
  int nodes_used = 0;
  bool adaptive_fallback = false;
};

/// Density of S_a PD(theta) with respect to PD(theta) at y, for a step
/// function a:
///   exp(-theta int_0^1 log a) int_0^inf s^{theta-1}/Gamma(theta) prod_i L(s y_i) ds
/// where L(s) = E exp(-s / a(U)). Terms beyond n_product are replaced by
/// exp(-s E[1/a] tail). The s-integral uses generalized Gauss-Laguerre
/// quadrature starting at quad_nodes and doubling until successive values
/// agree to 1e-8, with an adaptive exp-sinh fallback.
PdDensity pd_density(const SimplexSequence& y, const TestFunction& a, double theta,
                     std::size_t n_product = 64, int quad_nodes = 64);

}  // namespace levylab
