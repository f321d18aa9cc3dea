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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "levylab/error.hpp"
#include "levylab/parallel.hpp"
#include "levylab/samplers.hpp"
#include "levylab/special.hpp"
#include "levylab/stats.hpp"

using namespace levylab;

namespace {

bool non_increasing(const std::vector<double>& v) {
  return std::is_sorted(v.begin(), v.end(), std::greater<>());
}

}  // namespace

TEST_CASE("stable charges from forced arrivals") {
  const auto m = LevyModel::stable(0.5, std::tgamma(0.5));
  const std::vector<double> arrivals{1.0, 2.0, 3.0};
  const auto z = charges_from_arrivals(m, BaseSpace(1.0), arrivals);
  CHECK(z[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(z[1] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(z[2] == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("series draws regenerate from their arrivals and record the tail") {
  const BaseSpace base(1.7);
  for (const auto& m : {LevyModel::gamma(), LevyModel::stable(0.6),
                        LevyModel::tempered_stable(0.3, 1.0, 1.0)}) {
    CAPTURE(m.name());
    RandomStream rng(3, 0);
    const auto traced = sample_levy_traced(m, base, {}, rng);
    const auto z = charges_from_arrivals(m, base, traced.arrivals);
    REQUIRE(z.size() == traced.measure.size());
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(z[i] == traced.measure.atoms()[i].charge);
    const double last = traced.measure.atoms().back().charge;
    CHECK(traced.measure.tail_bound() == doctest::Approx(base.theta * m.small_jump_mean(last)));
    CHECK(traced.measure.size() <= 2048);
  }
}

TEST_CASE("truncation policy") {
  RandomStream rng(4, 0);
  TruncationPolicy small;
  small.max_atoms = 10;
  const auto eta = sample_levy(LevyModel::stable(0.5), BaseSpace(1.0), small, rng);
  CHECK(eta.size() == 10);
  CHECK(eta.tail_bound() > 1e-8);
  small.hard_cap = true;
  CHECK_THROWS_AS(sample_levy(LevyModel::stable(0.5), BaseSpace(1.0), small, rng), Error);

  TruncationPolicy comp;
  comp.compensate = true;
  comp.max_atoms = 50;
  RandomStream a(5, 0), b(5, 0);
  const auto plain = sample_levy(LevyModel::gamma(), BaseSpace(1.0), {.max_atoms = 50}, a);
  const auto extra = sample_levy(LevyModel::gamma(), BaseSpace(1.0), comp, b);
  CHECK(extra.size() == plain.size() + 1);
  CHECK(extra.total_charge() == doctest::Approx(plain.total_charge() + plain.tail_bound()));
}

TEST_CASE("gamma total charge follows Gamma(theta)") {
  const BaseSpace base(2.0);
  const auto totals = collect_draws(10000, 8, [&](RandomStream& rng) {
    return sample_levy(LevyModel::gamma(), base, {}, rng).total_charge();
  });
  CHECK(ks_one_sample(totals, [](double x) { return gamma_p(2.0, x); }).p_value > 0.01);
}

TEST_CASE("PD(theta) and GEM") {
  const double theta = 1.5;
  RandomStream rng(10, 0);
  for (int i = 0; i < 50; ++i) {
    const auto y = sample_pd_theta(theta, 200, rng);
    CHECK(non_increasing(y.terms));
    CHECK(y.sum() >= 1.0 - y.tail_tolerance - 1e-12);
  }
  const auto first = collect_draws(20000, 12, [&](RandomStream& r) {
    double residual = 0.0;
    return sample_gem(0.0, theta, 5, r, &residual)[0];
  });
  const auto s = summarize(first);
  CHECK(std::abs(s.mean - 1.0 / (1.0 + theta)) < 4.0 * s.se);

  // log Y_n / n -> -1/theta
  const auto slopes = collect_draws(200, 13, [](RandomStream& r) {
    const auto y = sample_pd_theta(1.0, 500, r);
    return tail_slope(y.terms, 100, 400);
  });
  const auto sl = summarize(slopes);
  CHECK(std::abs(sl.mean + 1.0) < 0.05);
}

TEST_CASE("PD(alpha, theta) limits") {
  const std::size_t n = 10000;
  const auto near_zero = collect_draws(n, 21, [](RandomStream& r) {
    return sample_pd_alpha_theta(1e-6, 1.0, 64, r).terms[0];
  });
  const auto pd = collect_draws(n, 22, [](RandomStream& r) {
    return sample_pd_theta(1.0, 64, r).terms[0];
  });
  CHECK(ks_two_sample(near_zero, pd).p_value > 0.01);

  const auto via_gem = collect_draws(5000, 23, [](RandomStream& r) {
    return sample_pd_alpha_theta(0.5, 0.0, 256, r).terms[0];
  });
  const auto via_stable = collect_draws(5000, 24, [](RandomStream& r) {
    return simplicial_part(sample_levy(LevyModel::stable(0.5), BaseSpace(1.0), {}, r)).terms[0];
  });
  CHECK(ks_two_sample(via_gem, via_stable).p_value > 0.01);

  RandomStream rng(25, 0);
  for (int i = 0; i < 50; ++i) CHECK(non_increasing(sample_pd_alpha_theta(0.3, 2.0, 100, rng).terms));
  CHECK_THROWS_AS(sample_pd_alpha_theta(0.5, -0.6, 10, rng), Error);
}

TEST_CASE("CPD total and independence") {
  const double theta = 2.0;
  struct Row {
    double total, largest;
  };
  const std::size_t n = 20000;
  const auto rows = collect_draws(n, 31, [&](RandomStream& r) {
    const auto z = sample_cpd(theta, 512, r);
    const double total = z.sum() + z.tail_bound;
    return Row{total, z.terms[0] / total};
  });
  std::vector<double> t, l;
  for (const auto& row : rows) {
    t.push_back(row.total);
    l.push_back(row.largest);
  }
  CHECK(ks_one_sample(t, [&](double x) { return gamma_p(theta, x); }).p_value > 0.01);
  CHECK(std::abs(independence_test(t, l).rank_correlation) < 3.0 / std::sqrt(double(n)));
}

TEST_CASE("tilted scaled stable hits its Laplace target") {
  const double alpha = 0.1;
  const BaseSpace base(1.0);
  struct Row {
    double value, tail;
  };
  const auto rows = collect_draws(20000, 41, [&](RandomStream& r) {
    const auto eta = sample_tilted_scaled_stable(alpha, 1.0, base, {}, r);
    REQUIRE(std::isfinite(eta.total_charge()));
    return Row{std::exp(-eta.total_charge()), eta.tail_bound()};
  });
  std::vector<double> v;
  double tail = 0.0;
  for (const auto& row : rows) {
    v.push_back(row.value);
    tail = std::max(tail, row.tail);
  }
  const double target = std::exp(-(std::pow(2.0, alpha) - 1.0) / alpha);
  const auto s = summarize(v);
  CHECK(std::abs(s.mean - target) <= 3.0 * s.se + tail);
}

TEST_CASE("weighted stable draws") {
  RandomStream rng(51, 0);
  for (int i = 0; i < 20; ++i) {
    CHECK(sample_p_alpha_theta_weighted(0.5, 0.0, BaseSpace(1.0), {}, rng).weight == 1.0);
    CHECK(sample_p_alpha_theta_weighted(0.5, 0.7, BaseSpace(1.0), {}, rng).weight > 0.0);
  }
  struct Row {
    double largest, weight;
  };
  const auto rows = collect_draws(20000, 52, [](RandomStream& r) {
    const auto w = sample_p_alpha_theta_weighted(0.5, 1.0, BaseSpace(1.0), {}, r);
    return Row{simplicial_part(w.measure).terms[0], w.weight};
  });
  std::vector<double> x, wx;
  for (const auto& row : rows) {
    x.push_back(row.largest);
    wx.push_back(row.weight);
  }
  const auto direct = collect_draws(20000, 53, [](RandomStream& r) {
    return sample_pd_alpha_theta(0.5, 1.0, 256, r).terms[0];
  });
  CHECK(ks_two_sample_weighted(x, wx, direct).p_value > 0.01);
}

TEST_CASE("stable scale recovery") {
  const double alpha = 0.5, lambda = 0.8;
  SimplexSequence q;
  for (int n = 1; n <= 400; ++n) q.terms.push_back(std::pow(n, -1.0 / alpha) * lambda);
  const auto same_c = recover_stable_scale(q, alpha, std::tgamma(1.0 - alpha));
  CHECK(same_c.scale == doctest::Approx(1.0 / lambda).epsilon(1e-12));
  CHECK(same_c.converged);
  const auto unit_c = recover_stable_scale(q, alpha, 1.0);
  CHECK(unit_c.scale == doctest::Approx(1.0 / (M_PI * lambda)).epsilon(1e-12));

  RandomStream rng(61, 0);
  const auto pd = sample_pd_theta(1.0, 400, rng);
  CHECK_FALSE(recover_stable_scale(pd, alpha, 1.0).converged);
  SimplexSequence short_q{{0.5, 0.3, 0.2}, 0.0};
  CHECK_THROWS_AS(recover_stable_scale(short_q, alpha, 1.0), Error);
}

TEST_CASE("samplers are deterministic per stream") {
  RandomStream a(71, 2), b(71, 2);
  CHECK(sample_levy(LevyModel::gamma(), BaseSpace(1.0), {}, a) ==
        sample_levy(LevyModel::gamma(), BaseSpace(1.0), {}, b));
  CHECK(sample_cpd(2.0, 64, a).terms == sample_cpd(2.0, 64, b).terms);
  CHECK(sample_pd_alpha_theta(0.4, 0.5, 64, a).terms == sample_pd_alpha_theta(0.4, 0.5, 64, b).terms);
}
