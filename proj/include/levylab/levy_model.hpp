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

#include <optional>
#include <string>
#include <variant>

namespace levylab {

/// Gamma Levy measure lambda(s) = s^-1 e^{-rate s}.
struct GammaLevy {
  double rate = 1.0;
};

/// Stable Levy measure lambda(s) = c alpha / Gamma(1-alpha) s^{-alpha-1}.
struct StableLevy {
  double alpha = 0.5;
  double c = 1.0;
};

/// Exponentially tilted stable measure lambda(s) = c alpha / Gamma(1-alpha) s^{-alpha-1} e^{-tilt s}.
struct TemperedStableLevy {
  double alpha = 0.5;
  double c = 1.0;
  double tilt = 1.0;
};

/// A Levy measure on (0, inf) with infinite total mass, finite tail at 1 and
/// finite first moment near zero. Tail and inverse tail refer to the measure
/// itself (not multiplied by the base-space charge).
class LevyModel {
 public:
  using Variant = std::variant<GammaLevy, StableLevy, TemperedStableLevy>;

  LevyModel(Variant v);  // NOLINT(google-explicit-constructor)

  static LevyModel gamma(double rate = 1.0) { return LevyModel(GammaLevy{rate}); }
  static LevyModel stable(double alpha, double c = 1.0) { return LevyModel(StableLevy{alpha, c}); }
  static LevyModel tempered_stable(double alpha, double c, double tilt) {
    return LevyModel(TemperedStableLevy{alpha, c, tilt});
  }

  const Variant& variant() const noexcept { return v_; }
  std::string name() const;

  /// Density lambda(s), s > 0.
  double density(double s) const;
  /// m(t) = Lambda(t, inf).
  double tail(double t) const;
  /// m^{-1}(u) for u > 0, relative accuracy ~1e-13.
  double inverse_tail(double u) const;
  /// log psi(t) = -int (1 - e^{-ts}) dLambda(s), closed form per variant.
  double log_laplace(double t) const;
  /// int_0^eps s dLambda(s).
  double small_jump_mean(double eps) const;
  /// Cheap lower bound on small_jump_mean; equals it where the exact form is cheap.
  double small_jump_mean_lower(double eps) const;
  /// int_0^eps s^2 dLambda(s).
  double small_jump_second_moment(double eps) const;
  /// Largest eps with small_jump_mean(eps) <= target when that has a closed form.
  std::optional<double> small_jump_mean_inverse(double target) const;

 private:
  Variant v_;
  double gamma_1ma_ = 1.0;  // Gamma(1 - alpha) for the stable variants
};

}  // namespace levylab
