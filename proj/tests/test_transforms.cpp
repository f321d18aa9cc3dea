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
#include <vector>

#include "doctest.h"
#include "levylab/error.hpp"
#include "levylab/transforms.hpp"

using namespace levylab;

namespace {

TestFunction identity() {
  return TestFunction::callable([](double x) { return x; }, {0.0, 1.0}, "x", true);
}

}  // namespace

TEST_CASE("gamma and stable Laplace closed forms") {
  CHECK(laplace_gamma(TestFunction::constant(0.0), BaseSpace(1.0)) == 1.0);
  CHECK(laplace_gamma(TestFunction::constant(1.0), BaseSpace(1.0)) == doctest::Approx(0.5));
  // exp(-2 (2 log 2 - 1))
  CHECK(laplace_gamma(identity(), BaseSpace(2.0)) ==
        doctest::Approx(0.4618160061831657).epsilon(1e-10));
  CHECK(laplace_stable(TestFunction::constant(0.0), 0.5, 1.0, BaseSpace(1.0)) == 1.0);
  CHECK(laplace_stable(TestFunction::constant(4.0), 0.5, 1.0, BaseSpace(1.0)) ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("generic Laplace path reproduces the closed forms") {
  const std::vector<TestFunction> fns{TestFunction::constant(0.0), TestFunction::constant(1.0),
                                      TestFunction::constant(4.0), identity(),
                                      TestFunction::step({0.0, 0.3, 1.0}, {2.0, 0.5})};
  for (const auto& a : fns) {
    CAPTURE(a.label());
    for (double theta : {1.0, 2.0}) {
      const BaseSpace base(theta);
      CHECK(laplace_levy(a, LevyModel::gamma(), base) ==
            doctest::Approx(laplace_gamma(a, base)).epsilon(1e-8));
      CHECK(laplace_levy(a, LevyModel::stable(0.5), base) ==
            doctest::Approx(laplace_stable(a, 0.5, 1.0, base)).epsilon(1e-8));
    }
  }
}

TEST_CASE("Cauchy-Stieltjes transform") {
  const EmpiricalDistribution point{{1.0}, {}};
  CHECK(cauchy_stieltjes(point, 0.0, 2.0).estimate == 1.0);
  CHECK(cauchy_stieltjes(point, 0.0, 2.0).se == 0.0);
  CHECK(cauchy_stieltjes(point, 1.0, 2.0).estimate == doctest::Approx(0.25));
  const EmpiricalDistribution weighted{{0.0, 1.0}, {3.0, 1.0}};
  CHECK(cauchy_stieltjes(weighted, 1.0, 1.0).estimate == doctest::Approx(0.75 + 0.125));
  CHECK_THROWS_AS(cauchy_stieltjes(point, -2.0, 1.0), Error);
}

TEST_CASE("Markov-Krein right side") {
  CHECK(mk_rhs(identity(), 0.0, 1.0) == 1.0);
  CHECK(mk_rhs(identity(), 1.0, 1.0) == doctest::Approx(0.6795704571147613).epsilon(1e-12));
  CHECK(mk_rhs(TestFunction::constant(2.0), 0.5, 3.0) == doctest::Approx(std::pow(2.0, -3.0)));
}

TEST_CASE("Markov-Krein and two-parameter checks at small n") {
  const std::vector<double> z{0.5, 1.0, 2.0};
  const auto c = mk_check(TestFunction::constant(2.0), z, 1.0, 200, 1);
  CHECK(c.pass);
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(c.lhs[i] == doctest::Approx(c.rhs[i]).epsilon(1e-9));
  CHECK(mk_check(identity(), z, 1.0, 5000, 2).pass);

  for (double theta : {0.0, 0.5}) {
    const auto t = two_param_mk_check(TestFunction::constant(2.0), z, 0.5, theta, 200, 3);
    CHECK(t.pass);
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(t.lhs[i] == doctest::Approx(1.0 + 2.0 * z[i]).epsilon(1e-9));
  }
}

TEST_CASE("zero and alpha norms") {
  const BaseSpace one(1.0);
  CHECK(zero_norm(TestFunction::constant(3.0), one) == doctest::Approx(3.0));
  CHECK(alpha_norm(TestFunction::constant(3.0), 0.4, one) == doctest::Approx(3.0));
  const auto two_valued = TestFunction::step({0.0, 0.5, 1.0}, {1.0, 4.0});
  CHECK(zero_norm(two_valued, one) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(zero_norm(TestFunction::constant(0.0), one), Error);

  double prev = normalized_alpha_norm(two_valued, 0.5, one);
  for (double alpha : {0.1, 0.02}) {
    const double v = normalized_alpha_norm(two_valued, alpha, one);
    CHECK(v < prev);
    CHECK(v > 2.0);
    prev = v;
  }
  CHECK(std::abs(prev - 2.0) < 0.03);
  const BaseSpace three(3.0);
  CHECK(normalized_alpha_norm(two_valued, 1e-4, three) ==
        doctest::Approx(std::pow(zero_norm(two_valued, three), 1.0 / 3.0)).epsilon(1e-3));
}

TEST_CASE("zero-stability witness") {
  const auto a1 = TestFunction::step({0.0, 0.5, 1.0}, {1.0, 4.0});
  const auto a2 = TestFunction::step({0.0, 0.25, 1.0}, {2.0 * std::sqrt(2.0), std::pow(2.0, 5.0 / 6.0)});
  REQUIRE(std::abs(log_integral(a1, BaseSpace(1.0)) - log_integral(a2, BaseSpace(1.0))) < 1e-12);
  const auto same = zero_stability_witness(a1, a1, BaseSpace(1.0), 500, 4);
  for (const auto& c : same) CHECK(c.pass);
  const auto checks = zero_stability_witness(a1, a2, BaseSpace(1.0), 3000, 5);
  for (const auto& c : checks) CHECK(c.pass);
  CHECK_THROWS_AS(zero_stability_witness(a1, TestFunction::constant(3.0), BaseSpace(1.0), 10, 6),
                  Error);
}

TEST_CASE("quasi-multiplicative criterion") {
  // g(x) = x * Levy density
  const auto one = quasi_mult_criterion([](double x) { return std::exp(-x); }, 1.0);
  CHECK(one.finite);
  CHECK(one.value == 0.0);
  const auto gamma2 = quasi_mult_criterion([](double x) { return std::exp(-x); }, 2.0);
  CHECK(gamma2.finite);
  CHECK(gamma2.value > 0.0);
  CHECK(gamma2.value < 1.0);
  CHECK(gamma2.shells.size() == 40);
  const auto km = quasi_mult_criterion(
      [](double x) { return x >= 1.0 ? 0.0 : std::sqrt(std::log(1.0 / x)); }, 2.0);
  CHECK(km.finite);
  const auto divergent = quasi_mult_criterion(
      [](double x) { return x >= 1.0 ? 0.0 : std::pow(std::log(1.0 / x), 2.0); }, 2.0);
  CHECK_FALSE(divergent.finite);
  CHECK_THROWS_AS(quasi_mult_criterion([](double) { return -1.0; }, 2.0), Error);
}
