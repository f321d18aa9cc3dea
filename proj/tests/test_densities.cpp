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
#include "levylab/conformance.hpp"
#include "levylab/densities.hpp"
#include "levylab/error.hpp"
#include "levylab/samplers.hpp"

using namespace levylab;

TEST_CASE("apply_multiplicator") {
  const DiscreteMeasure eta({{0.25, 1.0}, {0.75, 1.0}});
  CHECK(apply_multiplicator(TestFunction::constant(1.0), eta) == eta);
  const auto out = apply_multiplicator(TestFunction::step({0.0, 0.5, 1.0}, {2.0, 1.0}), eta);
  REQUIRE(out.size() == 2);
  CHECK(out.atoms()[0] == Atom{0.25, 2.0});
  CHECK(out.atoms()[1] == Atom{0.75, 1.0});
  // re-sorted by charge
  const auto flipped = apply_multiplicator(TestFunction::step({0.0, 0.5, 1.0}, {0.25, 1.0}),
                                           DiscreteMeasure({{0.25, 2.0}, {0.75, 1.0}}));
  CHECK(flipped.atoms()[0] == Atom{0.75, 1.0});
  CHECK_THROWS_AS(apply_multiplicator(TestFunction::constant(0.0), eta), Error);
}

TEST_CASE("gamma Radon-Nikodym density") {
  const DiscreteMeasure eta({{0.2, 0.6}, {0.7, 0.4}});
  CHECK(rn_density_gamma(TestFunction::constant(1.0), eta, BaseSpace(1.0)).value ==
        doctest::Approx(1.0));
  CHECK(rn_density_gamma(TestFunction::constant(2.0), eta, BaseSpace(1.0)).value ==
        doctest::Approx(0.8243606353500641).epsilon(1e-12));
  // step a = 2 on [0, .5), 1/2 on [.5, 1]: int log a = 0 and sum (1/a - 1) z = -0.5*0.6 + 0.4.
  const auto a = TestFunction::step({0.0, 0.5, 1.0}, {2.0, 0.5});
  const auto d = rn_density_gamma(a, eta, BaseSpace(3.0));
  CHECK(d.log_value == doctest::Approx(0.3 - 0.4).epsilon(1e-14));
  CHECK(d.value == doctest::Approx(std::exp(-0.1)));
}

TEST_CASE("quasi-Lebesgue weight") {
  CHECK(quasi_lebesgue_weight(DiscreteMeasure(), 10.0) == 1.0);
  CHECK(quasi_lebesgue_weight(DiscreteMeasure({{0.5, 2.0}}), 10.0) ==
        doctest::Approx(7.38905609893065).epsilon(1e-14));
  CHECK(quasi_lebesgue_weight(DiscreteMeasure({{0.5, 12.0}}), 10.0) == 0.0);
}

TEST_CASE("Markov operators") {
  RandomStream rng(1, 0);
  const SimplexSequence y{{0.5, 0.3, 0.15}, 0.05};
  const auto same = markov_S_a(y, TestFunction::constant(3.0), rng);
  for (std::size_t i = 0; i < y.terms.size(); ++i)
    CHECK(same.terms[i] == doctest::Approx(y.terms[i]).epsilon(1e-15));
  CHECK(same.tail_tolerance == doctest::Approx(0.05));

  const ConicSequence z{{2.0, 1.0}, 0.1};
  const auto scaled = markov_R_a(z, TestFunction::constant(3.0), rng);
  CHECK(scaled.terms[0] == 6.0);
  CHECK(scaled.terms[1] == 3.0);
  CHECK(scaled.tail_bound == doctest::Approx(0.3));

  const auto two = TestFunction::step({0.0, 0.5, 1.0}, {4.0, 0.25});
  int high = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double v = markov_R_a(ConicSequence{{1.0}, 0.0}, two, rng).terms[0];
    REQUIRE((v == 4.0 || v == 0.25));
    high += v == 4.0;
  }
  CHECK(std::abs(high / double(n) - 0.5) < 4.0 * 0.5 / std::sqrt(double(n)));
}

TEST_CASE("PD density for trivial multipliers") {
  RandomStream rng(2, 0);
  for (double theta : {0.5, 1.0, 3.0}) {
    for (int i = 0; i < 5; ++i) {
      const auto y = sample_pd_theta(theta, 100, rng);
      CHECK(pd_density(y, TestFunction::constant(1.0), theta).density.value ==
            doctest::Approx(1.0).epsilon(1e-8));
      CHECK(pd_density(y, TestFunction::constant(2.5), theta).density.value ==
            doctest::Approx(1.0).epsilon(1e-8));
    }
  }
  const SimplexSequence y{{0.6, 0.4}, 0.0};
  CHECK_THROWS_AS(pd_density(y, TestFunction::constant(0.0), 1.0), Error);
}

TEST_CASE("PD density change of variables") {
  const auto a = TestFunction::step({0.0, 0.5, 1.0}, {1.5, 0.75});
  const std::vector<NamedSimplexStatistic> ks{
      {"y1", [](const SimplexSequence& y) { return y.terms[0]; }}};
  const auto c = pd_quasi_invariance_test(a, ks, 1.0, 100, 8000, 3);
  CHECK(c.pass);
}
