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

#include "levylab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "levylab/error.hpp"

namespace levylab::quad {

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  if (a == b) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  // Abscissae can round onto an endpoint, or land close enough that an integrable
  // singularity overflows; such points carry no mass.
  const double edge = 1e-100 * (b - a);
  const auto g = [&](double x) {
    if (x <= a || x >= b) return 0.0;
    const double v = f(x);
    if (!std::isfinite(v) && std::min(x - a, b - x) < edge) return 0.0;
    return v;
  };
  double error = 0.0;
  double l1 = 0.0;
  const double value = rule.integrate(g, a, b, 1e-13, &error, &l1);
  if (!std::isfinite(value) || error > std::max(abs_tol, 1e-12 * l1)) {
    // Fall back to subdivided Gauss-Kronrod before giving up.
    const double gk = integrate_smooth(f, a, b, abs_tol);
    return gk;
  }
  return value;
}

double integrate_smooth(const std::function<double(double)>& f, double a, double b,
                        double abs_tol) {
  if (a == b) return 0.0;
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 30, 1e-13, &error);
  require(std::isfinite(value) && error <= std::max(abs_tol, 1e-12 * std::fabs(value)),
          ErrorCode::kQuadratureFailure, "adaptive Gauss-Kronrod did not reach tolerance");
  return value;
}

double integrate_to_infinity(const std::function<double(double)>& f, double a, double abs_tol) {
  thread_local boost::math::quadrature::exp_sinh<double> rule;
  double error = 0.0;
  double l1 = 0.0;
  const auto shifted = [&](double t) { return f(a + t); };
  const double value = rule.integrate(shifted, 0.0, std::numeric_limits<double>::infinity(),
                                      1e-13, &error, &l1);
  require(std::isfinite(value) && error <= std::max(abs_tol, 1e-12 * l1),
          ErrorCode::kQuadratureFailure, "exp-sinh quadrature did not reach tolerance");
  return value;
}

const LaguerreRule& gauss_laguerre(int n, double alpha) {
  require(n >= 1 && alpha > -1.0, ErrorCode::kInvalidArgument, "gauss_laguerre: bad arguments");
  static std::mutex mutex;
  static std::map<std::pair<int, double>, LaguerreRule> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_pair(n, alpha);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  // Jacobi matrix of the monic generalized Laguerre recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    jacobi(i, i) = 2.0 * i + 1.0 + alpha;
    if (i + 1 < n) {
      const double off = std::sqrt((i + 1.0) * (i + 1.0 + alpha));
      jacobi(i, i + 1) = off;
      jacobi(i + 1, i) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  require(solver.info() == Eigen::Success, ErrorCode::kQuadratureFailure,
          "Golub-Welsch eigen decomposition failed");
  LaguerreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mu0 = std::tgamma(alpha + 1.0);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return cache.emplace(key, std::move(rule)).first->second;
}

}  // namespace levylab::quad
