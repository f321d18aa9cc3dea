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

#include <functional>
#include <vector>

namespace levylab::quad {

/// Integral of f over [a, b]. Double-exponential (tanh-sinh) rule, so
/// integrable endpoint singularities such as log(x) or x^-0.7 are handled.
/// Throws QuadratureFailure when the reported error exceeds abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

/// Adaptive 15-point Gauss-Kronrod on [a, b] for smooth integrands.
double integrate_smooth(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10);

/// Integral of f over [a, inf) by the exp-sinh rule.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double abs_tol = 1e-10);

/// Nodes and weights of generalized Gauss-Laguerre quadrature for the weight
/// x^alpha e^-x on (0, inf), computed by Golub-Welsch and cached.
struct LaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const LaguerreRule& gauss_laguerre(int n, double alpha);

}  // namespace levylab::quad
