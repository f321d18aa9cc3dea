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

#include "doctest.h"
#include "levylab/error.hpp"
#include "levylab/measure.hpp"

using namespace levylab;

namespace {

TestFunction identity() {
  return TestFunction::callable([](double x) { return x; }, {0.0, 1.0}, "x", true);
}

TestFunction one_plus_x() {
  return TestFunction::callable([](double x) { return 1.0 + x; }, {1.0, 2.0}, "1+x");
}

}  // namespace

TEST_CASE("f_a on small measures") {
  const DiscreteMeasure eta({{0.25, 1.0}, {0.5, 0.5}});
  CHECK(functional_f_a(TestFunction::constant(0.0), eta) == 0.0);
  CHECK(functional_f_a(identity(), eta) == doctest::Approx(0.5).epsilon(1e-15));
  const DiscreteMeasure big({{0.1, 1.5}, {0.8, 1.0}});
  CHECK(functional_f_a(TestFunction::constant(1.0), big) == doctest::Approx(2.5));
}

TEST_CASE("conic part, normalization, simplicial part") {
  const auto eta = DiscreteMeasure::from_unsorted({{0.1, 0.5}, {0.9, 1.0}});
  const auto conic = conic_part(eta);
  REQUIRE(conic.terms.size() == 2);
  CHECK(conic.terms[0] == 1.0);
  CHECK(conic.terms[1] == 0.5);
  CHECK(conic.sum() == doctest::Approx(eta.total_charge()));
  CHECK(conic_part(DiscreteMeasure()).terms.empty());

  const auto n = normalize(DiscreteMeasure({{0.2, 2.0}, {0.4, 2.0}}));
  CHECK(n.total == 4.0);
  CHECK(n.measure.atoms()[0].charge == 0.5);
  CHECK(n.measure.atoms()[1].charge == 0.5);
  const auto single = normalize(DiscreteMeasure({{0.3, 3.0}}));
  CHECK(single.total == 3.0);
  CHECK(single.measure.atoms()[0].charge == 1.0);
  CHECK_THROWS_AS(normalize(DiscreteMeasure()), Error);

  const auto s = simplicial_part(DiscreteMeasure({{0.2, 3.0}, {0.4, 1.0}}, 0.5));
  CHECK(s.terms[0] == 0.75);
  CHECK(s.tail_tolerance == doctest::Approx(0.125));
}

TEST_CASE("measure validation and JSON round trip") {
  CHECK_THROWS_AS(DiscreteMeasure({{0.2, 1.0}, {0.4, 2.0}}), Error);
  CHECK_THROWS_AS(DiscreteMeasure({{1.5, 1.0}}), Error);
  CHECK_THROWS_AS(DiscreteMeasure({{0.5, -1.0}}), Error);
  const DiscreteMeasure eta({{0.123456789012345678, 1.0 / 3.0}, {0.9, 1e-300}}, 2.5e-9);
  const std::string text = eta.to_json();
  CHECK(text.find("\"atoms\"") != std::string::npos);
  CHECK(text.find("\"tail_bound\"") != std::string::npos);
  const auto back = DiscreteMeasure::from_json(text);
  CHECK(back == eta);
  CHECK(back.to_json() == text);
  CHECK_THROWS_AS(DiscreteMeasure::from_json("{\"atoms\":3}"), Error);
}

TEST_CASE("log integrals") {
  const BaseSpace one(1.0), two(2.0);
  CHECK(log_integral(TestFunction::constant(1.0), one) == 0.0);
  CHECK(log_integral(TestFunction::constant(std::exp(1.0)), one) == doctest::Approx(1.0));
  CHECK(log_integral(one_plus_x(), two) ==
        doctest::Approx(2.0 * (2.0 * std::log(2.0) - 1.0)).epsilon(1e-10));
  CHECK(log_integral(identity(), one) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK_THROWS_AS(log_integral(TestFunction::constant(0.0), one), Error);

  CHECK(log1p_integral(identity(), 0.0, one) == 0.0);
  CHECK(log1p_integral(TestFunction::constant(1.0), 1.0, one) == doctest::Approx(std::log(2.0)));
  CHECK(log1p_integral(identity(), 1.0, one) ==
        doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-10));
  CHECK_THROWS_AS(log1p_integral(TestFunction::constant(1.0), -2.0, one), Error);
}

TEST_CASE("step function algebra") {
  const auto a = TestFunction::step({0.0, 0.5, 1.0}, {2.0, 1.0});
  const auto b = TestFunction::step({0.0, 0.25, 1.0}, {4.0, 0.5});
  const auto ab = a * b;
  REQUIRE(ab.is_step());
  CHECK(ab(0.1) == 8.0);
  CHECK(ab(0.3) == 1.0);
  CHECK(ab(0.7) == 0.5);
  CHECK(a.reciprocal()(0.1) == 0.5);
  CHECK(a.pow(2.0)(0.1) == 4.0);
  CHECK(a.in_group());
  CHECK(TestFunction::constant(3.0).is_constant());
  CHECK_FALSE(TestFunction::constant(0.0).in_group());
  CHECK(identity().in_group());
  CHECK_THROWS_AS(TestFunction::step({0.0, 0.6, 0.5, 1.0}, {1.0, 1.0, 1.0}), Error);
}
