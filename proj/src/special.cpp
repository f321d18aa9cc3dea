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

#include "levylab/special.hpp"

#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "levylab/error.hpp"

namespace levylab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// Modified Lentz evaluation of
//   Gamma(s, x) = e^-x x^s / (x + 1 - s - 1(1-s)/(x + 3 - s - 2(2-s)/(x + 5 - s - ...)))
// valid for x > 1 and any real s.
double upper_gamma_cf(double s, double x) {
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) {
      return std::exp(-x + s * std::log(x)) * h;
    }
  }
  throw Error(ErrorCode::kEvaluationError, "incomplete gamma continued fraction did not converge");
}

}  // namespace

double expint_e1(double x) {
  require(x > 0.0, ErrorCode::kDomainError, "expint_e1 needs x > 0");
  if (x > 1.0) return upper_gamma_cf(0.0, x);
  // E1(x) = -gamma - log x - sum_{n>=1} (-x)^n / (n n!)
  double sum = 0.0;
  double term = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= -x / n;
    const double add = term / n;
    sum += add;
    if (std::fabs(add) < kEps * std::fabs(sum)) break;
  }
  return -kEulerGamma - std::log(x) - sum;
}

double upper_incomplete_gamma(double s, double x) {
  require(x > 0.0, ErrorCode::kDomainError, "upper_incomplete_gamma needs x > 0");
  require(s < 1.0, ErrorCode::kDomainError, "upper_incomplete_gamma supports s < 1 only");
  if (s == 0.0) return expint_e1(x);
  if (x > 1.0) return upper_gamma_cf(s, x);
  // Gamma(s, x) = Gamma(s) - x^s sum_{n>=0} (-x)^n / (n! (s + n))
  double sum = 1.0 / s;
  double term = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= -x / n;
    const double add = term / (s + n);
    sum += add;
    if (std::fabs(add) < kEps * std::fabs(sum)) break;
  }
  return std::tgamma(s) - std::exp(s * std::log(x)) * sum;
}

double gamma_p(double s, double x) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(s, x);
}

double gamma_q(double s, double x) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(s, x);
}

double gamma_cdf(double shape, double x) { return gamma_p(shape, x); }

double chi_square_sf(double statistic, double df) {
  return gamma_q(0.5 * df, 0.5 * statistic);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Jacobi theta form of the CDF converges fast for small lambda.
    const double pi = 3.14159265358979323846;
    double cdf = 0.0;
    for (int k = 1; k < 50; ++k) {
      const double odd = 2.0 * k - 1.0;
      cdf += std::exp(-odd * odd * pi * pi / (8.0 * lambda * lambda));
    }
    cdf *= std::sqrt(2.0 * pi) / lambda;
    return 1.0 - cdf;
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::fabs(term) < 1e-18) break;
    sign = -sign;
  }
  const double q = 2.0 * sum;
  return q < 0.0 ? 0.0 : (q > 1.0 ? 1.0 : q);
}

}  // namespace levylab
