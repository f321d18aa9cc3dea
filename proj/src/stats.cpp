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

#include "levylab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "levylab/error.hpp"
#include "levylab/special.hpp"

namespace levylab {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kWarn: return "warn";
  }
  return "fail";
}

namespace {

Verdict judge(double mean, double se, const std::optional<double>& reference, double allowance) {
  if (!reference) return Verdict::kPass;
  if (!std::isfinite(mean) || !std::isfinite(se)) return Verdict::kFail;
  return std::abs(mean - *reference) <= 3.0 * se + allowance ? Verdict::kPass : Verdict::kFail;
}

}  // namespace

EstimatorSummary summarize(std::span<const double> x, std::optional<double> reference,
                           double allowance) {
  require(x.size() >= 2, ErrorCode::kInvalidArgument, "summarize needs at least two values");
  long double s = 0.0L;
  for (double v : x) s += v;
  const long double mean = s / static_cast<long double>(x.size());
  long double ss = 0.0L;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double var = static_cast<double>(ss / static_cast<long double>(x.size() - 1));
  EstimatorSummary out;
  out.mean = static_cast<double>(mean);
  out.se = std::sqrt(var / static_cast<double>(x.size()));
  out.n = x.size();
  out.reference = reference;
  out.allowance = allowance;
  out.ess = static_cast<double>(x.size());
  out.verdict = judge(out.mean, out.se, reference, allowance);
  return out;
}

EstimatorSummary summarize_weighted(std::span<const double> x, std::span<const double> w,
                                    std::optional<double> reference, double allowance) {
  require(x.size() == w.size() && x.size() >= 2, ErrorCode::kInvalidArgument,
          "summarize_weighted needs matching samples of size >= 2");
  long double sw = 0.0L, sw2 = 0.0L, swx = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(w[i] >= 0.0 && std::isfinite(w[i]), ErrorCode::kInvalidArgument,
            "weights must be finite and non-negative");
    sw += w[i];
    sw2 += static_cast<long double>(w[i]) * w[i];
    swx += static_cast<long double>(w[i]) * x[i];
  }
  require(sw > 0.0L, ErrorCode::kInvalidArgument, "all weights are zero");
  const long double mean = swx / sw;
  long double num = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double d = static_cast<long double>(w[i]) * (x[i] - mean);
    num += d * d;
  }
  EstimatorSummary out;
  out.mean = static_cast<double>(mean);
  out.se = static_cast<double>(std::sqrt(num) / sw);
  out.n = x.size();
  out.reference = reference;
  out.allowance = allowance;
  out.ess = static_cast<double>(sw * sw / sw2);
  out.verdict = judge(out.mean, out.se, reference, allowance);
  if (out.verdict == Verdict::kPass && out.ess < static_cast<double>(x.size()) / 10.0)
    out.verdict = Verdict::kWarn;
  return out;
}

double ks_two_sample_exact_sf(std::size_t n, std::size_t m, double d) {
  require(n > 0 && m > 0, ErrorCode::kInvalidArgument, "empty sample");
  if (d <= 0.0) return 1.0;
  // w[j] holds (paths to (i, j) staying inside the band) / C(i + j, i).
  const double tol = 1e-12;
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  auto inside = [&](std::size_t i, std::size_t j) {
    return std::abs(static_cast<double>(i) / dn - static_cast<double>(j) / dm) < d - tol;
  };
  std::vector<double> w(m + 1, 0.0);
  w[0] = 1.0;
  for (std::size_t j = 1; j <= m; ++j) w[j] = inside(0, j) ? w[j - 1] : 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    w[0] = inside(i, 0) ? w[0] : 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
      if (!inside(i, j)) {
        w[j] = 0.0;
        continue;
      }
      const double s = static_cast<double>(i + j);
      w[j] = w[j] * static_cast<double>(i) / s + w[j - 1] * static_cast<double>(j) / s;
    }
  }
  return std::clamp(1.0 - w[m], 0.0, 1.0);
}

namespace {

double asymptotic_p(double d, double n_eff) {
  const double rn = std::sqrt(n_eff);
  return kolmogorov_sf((rn + 0.12 + 0.11 / rn) * d);
}

std::vector<double> sorted_copy(std::span<const double> x) {
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

KsResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
  require(!x.empty() && !y.empty(), ErrorCode::kInvalidArgument, "empty sample");
  const auto a = sorted_copy(x);
  const auto b = sorted_copy(y);
  const double n = static_cast<double>(a.size()), m = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  KsResult r;
  r.statistic = d;
  if (a.size() * b.size() <= 10000 && a.size() + b.size() <= 400) {
    r.p_value = ks_two_sample_exact_sf(a.size(), b.size(), d);
    r.exact = true;
  } else {
    r.p_value = asymptotic_p(d, n * m / (n + m));
  }
  return r;
}

KsResult ks_two_sample_weighted(std::span<const double> x, std::span<const double> wx,
                                std::span<const double> y) {
  require(x.size() == wx.size() && !x.empty() && !y.empty(), ErrorCode::kInvalidArgument,
          "weighted KS needs matching non-empty samples");
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto p, auto q) { return x[p] < x[q]; });
  long double sw = 0.0L, sw2 = 0.0L;
  for (double w : wx) {
    sw += w;
    sw2 += static_cast<long double>(w) * w;
  }
  require(sw > 0.0L, ErrorCode::kInvalidArgument, "all weights are zero");
  const auto b = sorted_copy(y);
  const double m = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  long double cum = 0.0L;
  double d = 0.0;
  while (i < order.size() && j < b.size()) {
    const double v = std::min(x[order[i]], b[j]);
    while (i < order.size() && x[order[i]] == v) cum += wx[order[i++]];
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(cum / sw) - static_cast<double>(j) / m));
  }
  const double ess = static_cast<double>(sw * sw / sw2);
  KsResult r;
  r.statistic = d;
  r.p_value = asymptotic_p(d, ess * m / (ess + m));
  return r;
}

KsResult ks_one_sample(std::span<const double> x, const std::function<double(double)>& cdf) {
  require(!x.empty(), ErrorCode::kInvalidArgument, "empty sample");
  const auto a = sorted_copy(x);
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  KsResult r;
  r.statistic = d;
  r.p_value = asymptotic_p(d, n);
  return r;
}

std::vector<double> ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto p, auto q) { return x[p] < x[q]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t k = i;
    while (k + 1 < order.size() && x[order[k + 1]] == x[order[i]]) ++k;
    const double avg = 0.5 * static_cast<double>(i + k) + 1.0;
    for (std::size_t t = i; t <= k; ++t) r[order[t]] = avg;
    i = k + 1;
  }
  return r;
}

IndependenceReport independence_test(std::span<const double> u, std::span<const double> v) {
  require(u.size() == v.size() && u.size() >= 16, ErrorCode::kInvalidArgument,
          "independence_test needs paired samples of size >= 16");
  const std::size_t n = u.size();
  const auto ru = ranks(u);
  const auto rv = ranks(v);
  const double mean_rank = 0.5 * static_cast<double>(n + 1);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = ru[i] - mean_rank, b = rv[i] - mean_rank;
    sxy += a * b;
    sxx += a * a;
    syy += b * b;
  }
  IndependenceReport rep;
  rep.n = n;
  rep.rank_correlation = (sxx > 0 && syy > 0) ? sxy / std::sqrt(sxx * syy) : 0.0;

  double counts[4][4] = {};
  const double dn = static_cast<double>(n);
  auto bin = [&](double rank) {
    return std::min<std::size_t>(3, static_cast<std::size_t>(4.0 * (rank - 1.0) / dn));
  };
  for (std::size_t i = 0; i < n; ++i) counts[bin(ru[i])][bin(rv[i])] += 1.0;
  double row[4] = {}, col[4] = {};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      row[a] += counts[a][b];
      col[b] += counts[a][b];
    }
  double chi = 0.0;
  int df_rows = 0, df_cols = 0;
  for (int a = 0; a < 4; ++a) df_rows += row[a] > 0;
  for (int b = 0; b < 4; ++b) df_cols += col[b] > 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double e = row[a] * col[b] / dn;
      if (e > 0) chi += (counts[a][b] - e) * (counts[a][b] - e) / e;
    }
  const int df = (df_rows - 1) * (df_cols - 1);
  rep.chi_square = chi;
  rep.chi_square_p = df > 0 ? chi_square_sf(chi, df) : 1.0;
  rep.pass = std::abs(rep.rank_correlation) < 3.0 / std::sqrt(dn) && rep.chi_square_p > 0.01;
  return rep;
}

double tail_slope(std::span<const double> terms, std::size_t first, std::size_t last) {
  require(first >= 1 && last > first, ErrorCode::kInvalidArgument, "bad slope window");
  require(terms.size() >= last, ErrorCode::kInsufficientTerms,
          "sequence has " + std::to_string(terms.size()) + " terms, window needs " +
              std::to_string(last));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(last - first + 1);
  for (std::size_t n = first; n <= last; ++n) {
    require(terms[n - 1] > 0.0, ErrorCode::kInsufficientTerms, "non-positive term in window");
    const double x = static_cast<double>(n), y = std::log(terms[n - 1]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

IntervalEstimate mean_interval(std::span<const double> values) {
  const auto s = summarize(values);
  return {s.mean, 1.96 * s.se, values.size()};
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

TailConstant stable_tail_constant(std::span<const double> terms, double alpha, double c,
                                  std::size_t first, std::size_t last) {
  require(alpha > 0 && alpha < 1 && c > 0, ErrorCode::kDomainError, "need 0 < alpha < 1, c > 0");
  require(first >= 1 && last >= first + 3, ErrorCode::kInvalidArgument, "bad window");
  require(terms.size() >= last, ErrorCode::kInsufficientTerms, "sequence shorter than window");
  std::vector<double> v;
  for (std::size_t n = first; n <= last; ++n)
    v.push_back(std::pow(static_cast<double>(n), 1.0 / alpha) * terms[n - 1]);
  const std::size_t h = v.size() / 2;
  const double early = median_of({v.begin(), v.begin() + h});
  const double late = median_of({v.begin() + h, v.end()});
  TailConstant out;
  out.estimate = median_of(v);
  out.target = std::pow(c / std::tgamma(1.0 - alpha), 1.0 / alpha);
  out.converged = std::abs(late - early) <= 0.25 * std::max(std::abs(late), std::abs(early));
  return out;
}

std::vector<double> holm_adjust(std::span<const double> p) {
  const std::size_t k = p.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return p[a] < p[b]; });
  std::vector<double> adj(k);
  double running = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    running = std::max(running, std::min(1.0, static_cast<double>(k - r) * p[order[r]]));
    adj[order[r]] = running;
  }
  return adj;
}

}  // namespace levylab
