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
#include <functional>
#include <vector>

namespace levylab {

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Exponential integral E1(x) for x > 0: power series for x <= 1, Lentz
/// continued fraction above.
double expint_e1(double x);

/// Upper incomplete gamma Gamma(s, x) for s < 1 (including s <= 0) and x > 0.
/// s == 0 dispatches to expint_e1.
double upper_incomplete_gamma(double s, double x);

/// Regularized lower incomplete gamma P(s, x), s > 0.
double gamma_p(double s, double x);
/// Regularized upper incomplete gamma Q(s, x), s > 0.
double gamma_q(double s, double x);

/// CDF of Gamma(shape, scale 1).
double gamma_cdf(double shape, double x);

/// Survival function of the chi-square distribution with df degrees of freedom.
double chi_square_sf(double statistic, double df);

/// Standard normal CDF.
double normal_cdf(double x);

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda);

}  // namespace levylab
