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
#include <numeric>
#include <vector>

#include "doctest.h"
#include "levylab/error.hpp"
#include "levylab/stats.hpp"

using namespace levylab;

namespace {

// P(D >= d) by enumerating every interleaving of n x's and m y's.
double brute_force_sf(int n, int m, double d) {
  std::vector<int> pattern(n + m, 0);
  std::fill(pattern.begin() + n, pattern.end(), 1);
  long total = 0, hits = 0;
  do {
    int i = 0, j = 0;
    double dmax = 0.0;
    for (int v : pattern) {
      (v == 0 ? i : j) += 1;
      dmax = std::max(dmax, std::abs(double(i) / n - double(j) / m));
    }
    ++total;
    hits += dmax >= d - 1e-12;
  } while (std::next_permutation(pattern.begin(), pattern.end()));
  return double(hits) / double(total);
}

}  // namespace

TEST_CASE("exact two-sample KS survival matches enumeration") {
  for (int n = 1; n <= 7; ++n) {
    for (int m = 1; m <= 7; ++m) {
      for (int k = 1; k <= n * m; ++k) {
        const double d = double(k) / double(n * m);
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(d);
        CHECK(ks_two_sample_exact_sf(n, m, d) == doctest::Approx(brute_force_sf(n, m, d)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("two-sample KS on fixed data") {
  const std::vector<double> x{0.1, 0.2, 0.3, 0.4};
  const std::vector<double> y{0.5, 0.6, 0.7, 0.8};
  const auto r = ks_two_sample(x, y);
  CHECK(r.statistic == 1.0);
  CHECK(r.exact);
  CHECK(r.p_value == doctest::Approx(2.0 / 70.0));
  const auto self = ks_two_sample(x, x);
  CHECK(self.statistic == 0.0);
  CHECK(self.p_value == doctest::Approx(1.0));
  // unit weights reduce to the plain test statistic
  const std::vector<double> w(4, 1.0);
  CHECK(ks_two_sample_weighted(x, w, y).statistic == 1.0);
}

TEST_CASE("one-sample KS") {
  std::vector<double> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back((i + 0.5) / 1000.0);
  const auto fit = ks_one_sample(grid, [](double x) { return x; });
  CHECK(fit.statistic == doctest::Approx(0.0005));
  CHECK(fit.p_value > 0.99);
  const auto bad = ks_one_sample(grid, [](double x) { return x * x; });
  CHECK(bad.statistic == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(bad.p_value < 1e-10);
}

TEST_CASE("summaries") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const auto s = summarize(x);
  CHECK(s.mean == 2.5);
  CHECK(s.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(s.n == 4);
  const std::vector<double> w{1.0, 1.0, 1.0, 1.0};
  const auto sw = summarize_weighted(x, w);
  CHECK(sw.mean == 2.5);
  CHECK(sw.ess == doctest::Approx(4.0));
  const std::vector<double> skew{1000.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  std::vector<double> xs(skew.size(), 1.0);
  CHECK(summarize_weighted(xs, skew).verdict == Verdict::kWarn);
  const auto iv = mean_interval(x);
  CHECK(iv.ci_half_width == doctest::Approx(1.96 * s.se));
}

TEST_CASE("ranks, independence, Holm") {
  const std::vector<double> x{3.0, 1.0, 3.0, 2.0};
  CHECK(ranks(x) == std::vector<double>{3.5, 1.0, 3.5, 2.0});
  std::vector<double> u;
  for (int i = 0; i < 4000; ++i) u.push_back(i);
  CHECK_FALSE(independence_test(u, u).pass);
  CHECK(independence_test(u, u).rank_correlation == doctest::Approx(1.0));
  const std::vector<double> p{0.01, 0.04, 0.03};
  const auto h = holm_adjust(p);
  CHECK(h[0] == doctest::Approx(0.03));
  CHECK(h[1] == doctest::Approx(0.06));
  CHECK(h[2] == doctest::Approx(0.06));
}

TEST_CASE("tail diagnostics") {
  std::vector<double> geometric;
  for (int n = 1; n <= 100; ++n) geometric.push_back(std::exp(-0.5 * n));
  CHECK(tail_slope(geometric, 10, 90) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK_THROWS_AS(tail_slope(geometric, 10, 200), Error);
  std::vector<double> power;
  const double target = std::pow(1.0 / std::tgamma(0.5), 2.0);
  for (int n = 1; n <= 2000; ++n) power.push_back(target * std::pow(n, -2.0));
  const auto tc = stable_tail_constant(power, 0.5, 1.0, 500, 1500);
  CHECK(tc.target == doctest::Approx(1.0 / M_PI));
  CHECK(tc.estimate == doctest::Approx(tc.target));
  CHECK(tc.converged);
}
