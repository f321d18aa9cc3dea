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

#include "levylab/levy_model.hpp"

#include <cmath>
#include <limits>

#include "levylab/error.hpp"
#include "levylab/format.hpp"
#include "levylab/special.hpp"

namespace levylab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Solves m(t) = u for a strictly decreasing tail by safeguarded Newton in
// log t; the bracket [lo, hi] falls back to bisection when a step leaves it.
template <class Tail, class Density>
double invert_tail(const Tail& tail, const Density& density, double u, double guess) {
  const double log_u = std::log(u);
  double x = std::log(guess);
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 300; ++iter) {
    const double t = std::exp(x);
    const double m = tail(t);
    const double f = std::log(m) - log_u;
    if (f > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (f == 0.0) return t;
    const double slope = -t * density(t) / m;
    double next = x - f / slope;
    if (!std::isfinite(next) || next <= lo || next >= hi) {
      if (std::isfinite(lo) && std::isfinite(hi)) {
        next = 0.5 * (lo + hi);
      } else {
        next = std::isfinite(lo) ? x + 2.0 : x - 2.0;
      }
    }
    if (std::fabs(next - x) < 1e-15 * std::max(1.0, std::fabs(x))) return std::exp(next);
    if (std::isfinite(lo) && std::isfinite(hi) && hi - lo < 1e-15 * std::max(1.0, std::fabs(x))) {
      return std::exp(0.5 * (lo + hi));
    }
    x = next;
  }
  throw Error(ErrorCode::kEvaluationError, "inverse tail did not converge");
}

void validate(const LevyModel::Variant& v) {
  std::visit(overloaded{
                 [](const GammaLevy& g) {
                   require(g.rate > 0.0, ErrorCode::kInvalidArgument, "gamma rate must be > 0");
                 },
                 [](const StableLevy& s) {
                   require(s.alpha > 0.0 && s.alpha < 1.0 && s.c > 0.0,
                           ErrorCode::kInvalidArgument, "stable needs alpha in (0,1), c > 0");
                 },
                 [](const TemperedStableLevy& s) {
                   require(s.alpha > 0.0 && s.alpha < 1.0 && s.c > 0.0 && s.tilt > 0.0,
                           ErrorCode::kInvalidArgument,
                           "tempered stable needs alpha in (0,1), c > 0, tilt > 0");
                 },
             },
             v);
}

}  // namespace

LevyModel::LevyModel(Variant v) : v_(v) {
  validate(v_);
  if (const auto* m = std::get_if<StableLevy>(&v_)) gamma_1ma_ = std::tgamma(1.0 - m->alpha);
  if (const auto* m = std::get_if<TemperedStableLevy>(&v_)) gamma_1ma_ = std::tgamma(1.0 - m->alpha);
}

std::string LevyModel::name() const {
  return std::visit(
      overloaded{
          [](const GammaLevy& g) { return "gamma(rate=" + format_double(g.rate) + ")"; },
          [](const StableLevy& s) {
            return "stable(alpha=" + format_double(s.alpha) + ",c=" + format_double(s.c) + ")";
          },
          [](const TemperedStableLevy& s) {
            return "tempered_stable(alpha=" + format_double(s.alpha) + ",c=" + format_double(s.c) +
                   ",tilt=" + format_double(s.tilt) + ")";
          },
      },
      v_);
}

double LevyModel::density(double s) const {
  return std::visit(overloaded{
                        [s](const GammaLevy& g) { return std::exp(-g.rate * s) / s; },
                        [this, s](const StableLevy& m) {
                          return m.c * m.alpha / gamma_1ma_ *
                                 std::pow(s, -m.alpha - 1.0);
                        },
                        [this, s](const TemperedStableLevy& m) {
                          return m.c * m.alpha / gamma_1ma_ *
                                 std::exp(-(m.alpha + 1.0) * std::log(s) - m.tilt * s);
                        },
                    },
                    v_);
}

double LevyModel::tail(double t) const {
  require(t > 0.0, ErrorCode::kDomainError, "tail needs t > 0");
  return std::visit(overloaded{
                        [t](const GammaLevy& g) { return expint_e1(g.rate * t); },
                        [this, t](const StableLevy& m) {
                          return m.c / gamma_1ma_ * std::pow(t, -m.alpha);
                        },
                        [this, t](const TemperedStableLevy& m) {
                          return m.c * m.alpha / gamma_1ma_ *
                                 std::pow(m.tilt, m.alpha) *
                                 upper_incomplete_gamma(-m.alpha, m.tilt * t);
                        },
                    },
                    v_);
}

double LevyModel::inverse_tail(double u) const {
  require(u > 0.0 && std::isfinite(u), ErrorCode::kDomainError, "inverse_tail needs u > 0");
  const auto tail_fn = [this](double t) { return tail(t); };
  const auto density_fn = [this](double t) { return density(t); };
  return std::visit(
      overloaded{
          [&](const GammaLevy& g) {
            // E1(y) ~ -gamma - log y for small y, ~ e^-y / y for large y.
            double guess;
            if (u > 1.0) {
              guess = std::exp(-kEulerGamma - u);
            } else {
              const double l = -std::log(u);
              guess = std::max(l - std::log(std::max(l, 1.0)), 0.3);
            }
            return invert_tail(tail_fn, density_fn, u, guess / g.rate);
          },
          [&](const StableLevy& m) {
            return std::pow(m.c / (gamma_1ma_ * u), 1.0 / m.alpha);
          },
          [&](const TemperedStableLevy& m) {
            // Two-term small-x expansion Gamma(-a, x) ~ x^-a / a - Gamma(1-a) / a, exact
            // enough that Newton needs two or three steps.
            const double g1 = gamma_1ma_;
            const double scaled = u * g1 / (m.c * m.alpha * std::pow(m.tilt, m.alpha));
            const double x = std::pow(m.alpha * scaled + g1, -1.0 / m.alpha);
            return invert_tail(tail_fn, density_fn, u, std::min(x, 1.0) / m.tilt);
          },
      },
      v_);
}

double LevyModel::log_laplace(double t) const {
  require(t >= 0.0, ErrorCode::kDomainError, "log_laplace needs t >= 0");
  return std::visit(overloaded{
                        [t](const GammaLevy& g) { return -std::log1p(t / g.rate); },
                        [t](const StableLevy& m) { return -m.c * std::pow(t, m.alpha); },
                        [t](const TemperedStableLevy& m) {
                          // c ((tilt + t)^alpha - tilt^alpha), written without cancellation.
                          return -m.c * std::pow(m.tilt, m.alpha) *
                                 std::expm1(m.alpha * std::log1p(t / m.tilt));
                        },
                    },
                    v_);
}

double LevyModel::small_jump_mean(double eps) const {
  if (eps <= 0.0) return 0.0;
  return std::visit(overloaded{
                        [eps](const GammaLevy& g) { return -std::expm1(-g.rate * eps) / g.rate; },
                        [this, eps](const StableLevy& m) {
                          return m.c * m.alpha / gamma_1ma_ *
                                 std::pow(eps, 1.0 - m.alpha) / (1.0 - m.alpha);
                        },
                        [eps](const TemperedStableLevy& m) {
                          return m.c * m.alpha * std::pow(m.tilt, m.alpha - 1.0) *
                                 gamma_p(1.0 - m.alpha, m.tilt * eps);
                        },
                    },
                    v_);
}

double LevyModel::small_jump_mean_lower(double eps) const {
  if (const auto* m = std::get_if<TemperedStableLevy>(&v_)) {
    if (eps <= 0.0) return 0.0;
    // e^{-tilt s} >= e^{-tilt eps} on (0, eps)
    return std::exp(-m->tilt * eps) * m->c * m->alpha / gamma_1ma_ *
           std::pow(eps, 1.0 - m->alpha) / (1.0 - m->alpha);
  }
  return small_jump_mean(eps);
}

std::optional<double> LevyModel::small_jump_mean_inverse(double target) const {
  if (!(target > 0.0)) return 0.0;
  if (const auto* g = std::get_if<GammaLevy>(&v_)) {
    const double y = g->rate * target;
    if (y >= 1.0) return std::numeric_limits<double>::infinity();
    return -std::log1p(-y) / g->rate;
  }
  if (const auto* m = std::get_if<StableLevy>(&v_)) {
    return std::pow(target * (1.0 - m->alpha) * gamma_1ma_ / (m->c * m->alpha),
                    1.0 / (1.0 - m->alpha));
  }
  return std::nullopt;
}

double LevyModel::small_jump_second_moment(double eps) const {
  if (eps <= 0.0) return 0.0;
  return std::visit(overloaded{
                        [eps](const GammaLevy& g) {
                          const double x = g.rate * eps;
                          return gamma_p(2.0, x) / (g.rate * g.rate);
                        },
                        [this, eps](const StableLevy& m) {
                          return m.c * m.alpha / gamma_1ma_ *
                                 std::pow(eps, 2.0 - m.alpha) / (2.0 - m.alpha);
                        },
                        [eps](const TemperedStableLevy& m) {
                          return m.c * m.alpha * (1.0 - m.alpha) *
                                 std::pow(m.tilt, m.alpha - 2.0) *
                                 gamma_p(2.0 - m.alpha, m.tilt * eps);
                        },
                    },
                    v_);
}

}  // namespace levylab
