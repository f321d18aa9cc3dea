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

#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "doctest.h"
#include "levylab/quadrature.hpp"
#include "levylab/special.hpp"

using namespace levylab;

TEST_CASE("E1 agrees with boost expint") {
  for (double x : {1e-8, 1e-3, 0.1, 0.5, 0.999, 1.0, 1.001, 2.5, 10.0, 40.0, 300.0}) {
    const double ref = boost::math::expint(1, x);
    CHECK(expint_e1(x) == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("upper incomplete gamma for negative and fractional s") {
  boost::math::quadrature::exp_sinh<double> rule;
  for (double s : {-0.9, -0.5, -0.05, 0.3, 0.7}) {
    for (double x : {0.01, 0.3, 1.0, 4.0, 20.0}) {
      const double ref = rule.integrate(
          [&](double t) { return std::pow(x + t, s - 1.0) * std::exp(-(x + t)); }, 0.0,
          std::numeric_limits<double>::infinity());
      CHECK(upper_incomplete_gamma(s, x) == doctest::Approx(ref).epsilon(1e-10));
    }
  }
  CHECK(upper_incomplete_gamma(0.0, 0.7) == doctest::Approx(expint_e1(0.7)));
}

TEST_CASE("regularized gammas and distribution tails") {
  CHECK(gamma_p(1.0, 2.0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
  CHECK(gamma_p(2.5, 1.3) + gamma_q(2.5, 1.3) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(chi_square_sf(2.0 * 1.5, 2.0) == doctest::Approx(std::exp(-1.5)).epsilon(1e-13));
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  // Q(1.36) ~ 0.0494 (classical 5% point of the Kolmogorov law)
  CHECK(kolmogorov_sf(1.3580986393225507) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(kolmogorov_sf(0.0) == doctest::Approx(1.0));
}

TEST_CASE("generalized Gauss-Laguerre integrates polynomials exactly") {
  for (double alpha : {-0.7, -0.2, 0.0, 0.5, 2.0}) {
    const auto& rule = quad::gauss_laguerre(24, alpha);
    REQUIRE(rule.nodes.size() == 24);
    for (int k = 0; k <= 12; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * std::pow(rule.nodes[i], k);
      CHECK(sum == doctest::Approx(std::tgamma(k + alpha + 1.0)).epsilon(1e-10));
    }
  }
}

TEST_CASE("quadrature wrappers") {
  CHECK(quad::integrate([](double x) { return std::log(x); }, 0.0, 1.0) ==
        doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(quad::integrate([](double x) { return std::pow(x, -0.7); }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 0.3).epsilon(1e-9));
  CHECK(quad::integrate_smooth([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(quad::integrate_to_infinity([](double x) { return std::exp(-x * x); }, 0.0) ==
        doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-12));
}
