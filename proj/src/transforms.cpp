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

#include "levylab/transforms.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "levylab/conformance.hpp"
#include "levylab/densities.hpp"
#include "levylab/error.hpp"
#include "levylab/parallel.hpp"
#include "levylab/quadrature.hpp"
#include "levylab/stats.hpp"

namespace levylab {

namespace {

constexpr double kRoundingSlack = 1e-12;

double sup_abs(const TestFunction& a) { return std::max(std::abs(a.lower()), std::abs(a.upper())); }

}  // namespace

double laplace_gamma(const TestFunction& a, const BaseSpace& base) {
  require(a.lower() >= 0.0, ErrorCode::kDomainError, "laplace_gamma needs a >= 0");
  return std::exp(-log1p_integral(a, 1.0, base));
}

double laplace_stable(const TestFunction& a, double alpha, double c, const BaseSpace& base) {
  require(alpha > 0.0 && alpha < 1.0 && c > 0.0, ErrorCode::kDomainError,
          "laplace_stable needs 0 < alpha < 1, c > 0");
  require(a.lower() >= 0.0, ErrorCode::kDomainError, "laplace_stable needs a >= 0");
  double integral = 0.0;
  try {
    integral = integrate_composed(a, [alpha](double v) { return std::pow(v, alpha); }, base);
  } catch (const Error& e) {
    throw Error(ErrorCode::kDivergentIntegral, std::string("int a^alpha: ") + e.what());
  }
  require(std::isfinite(integral), ErrorCode::kDivergentIntegral,
          "int a^alpha dnu is not finite for " + a.label());
  return std::exp(-c * integral);
}

double log_laplace_quadrature(const LevyModel& model, double t) {
  require(t >= 0.0, ErrorCode::kDomainError, "log_laplace_quadrature needs t >= 0");
  if (t == 0.0) return 0.0;
  const double near = quad::integrate(
      [&](double s) { return s > 0.0 ? -std::expm1(-t * s) * model.density(s) : 0.0; }, 0.0, 1.0,
      1e-12);
  const double far = quad::integrate_to_infinity(
      [&](double s) { return std::exp(-t * s) * model.density(s); }, 1.0, 1e-13);
  return -(near + model.tail(1.0) - far);
}

double laplace_levy(const TestFunction& a, const LevyModel& model, const BaseSpace& base) {
  require(a.lower() >= 0.0, ErrorCode::kDomainError, "laplace_levy needs a >= 0");
  const double integral =
      integrate_composed(a, [&](double v) { return log_laplace_quadrature(model, v); }, base);
  require(std::isfinite(integral), ErrorCode::kDivergentIntegral,
          "int log psi(a) dnu is not finite for " + a.label());
  return std::exp(integral);
}

void EmpiricalDistribution::validate() const {
  require(!samples.empty(), ErrorCode::kInvalidArgument, "empty distribution");
  if (weights.empty()) return;
  require(weights.size() == samples.size(), ErrorCode::kInvalidArgument,
          "weights and samples differ in length");
  double total = 0.0;
  for (double w : weights) {
    require(w >= 0.0 && std::isfinite(w), ErrorCode::kInvalidArgument, "bad weight");
    total += w;
  }
  require(total > 0.0 && std::isfinite(total), ErrorCode::kInvalidArgument,
          "weights must have positive finite sum");
}

ValueWithError cauchy_stieltjes(const EmpiricalDistribution& mu, double z, double theta) {
  mu.validate();
  std::vector<double> x;
  x.reserve(mu.samples.size());
  for (double u : mu.samples) {
    require(1.0 + z * u > 0.0, ErrorCode::kDomainError, "1 + z u must be positive");
    x.push_back(std::pow(1.0 + z * u, -theta));
  }
  if (x.size() == 1) return {x[0], 0.0};
  const auto s = mu.weights.empty() ? summarize(x) : summarize_weighted(x, mu.weights);
  return {s.mean, s.se};
}

double mk_rhs(const TestFunction& a, double z, double theta) {
  return std::exp(-log1p_integral(a, z, BaseSpace(theta)));
}

Check mk_check(const TestFunction& a, std::span<const double> z_grid, double theta, std::size_t n,
               std::uint64_t seed, const TruncationPolicy& trunc) {
  const BaseSpace base(theta);
  const LevyModel model = LevyModel::gamma();
  const auto draws = collect_draws(n, seed, [&](RandomStream& rng) {
    const DiscreteMeasure eta = sample_levy(model, base, trunc, rng);
    const Normalized nm = normalize(eta);
    return std::pair<double, double>(functional_f_a(a, nm.measure), eta.tail_bound() / nm.total);
  });
  std::vector<double> u(n);
  double rel_tail = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = draws[i].first;
    rel_tail += draws[i].second;
  }
  rel_tail /= static_cast<double>(n);

  Check check;
  check.check = "markov-krein";
  check.params = {{"function", a.label()}, {"theta", theta}, {"n", n}, {"seed", seed}};
  bool ok = true;
  for (double z : z_grid) {
    EmpiricalDistribution mu{u, {}};
    const auto lhs = cauchy_stieltjes(mu, z, theta);
    const double rhs = mk_rhs(a, z, theta);
    const double allowance =
        theta * std::abs(z) * 2.0 * sup_abs(a) * rel_tail + kRoundingSlack * rhs;
    ok = check.add_row(z, lhs.estimate, lhs.se, rhs, allowance) && ok;
  }
  check.pass = ok;
  return check;
}

Check two_param_mk_check(const TestFunction& a, std::span<const double> z_grid, double alpha,
                         double theta, std::size_t n, std::uint64_t seed,
                         const TruncationPolicy& trunc) {
  require(alpha > 0.0 && alpha < 1.0 && theta > -alpha, ErrorCode::kDomainError,
          "two_param_mk_check needs 0 < alpha < 1 and theta > -alpha");
  const BaseSpace base(1.0);
  struct Draw {
    double u, w, rel_tail;
  };
  const auto draws = collect_draws(n, seed, [&](RandomStream& rng) {
    const WeightedMeasure wm = sample_p_alpha_theta_weighted(alpha, theta, base, trunc, rng);
    const Normalized nm = normalize(wm.measure);
    return Draw{functional_f_a(a, nm.measure), wm.weight, wm.measure.tail_bound() / nm.total};
  });
  std::vector<double> u(n), w(n);
  double rel_tail = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = draws[i].u;
    w[i] = draws[i].w;
    rel_tail += draws[i].rel_tail;
  }
  rel_tail /= static_cast<double>(n);

  Check check;
  check.check = "two-param-markov-krein";
  check.params = {{"function", a.label()}, {"alpha", alpha}, {"theta", theta},
                  {"n", n},                {"seed", seed}};
  if (theta < 0.0) check.warnings.push_back("theta < 0: weights eta(X)^{-theta} are heavy tailed");
  const double up = sup_abs(a);
  std::vector<double> ess_list;
  bool ok = true;
  for (double z : z_grid) {
    const double rhs = std::pow(
        integrate_composed(a, [&](double v) { return std::pow(1.0 + z * v, alpha); }, base),
        1.0 / alpha);
    std::vector<double> x(n);
    double lhs = 0.0, se = 0.0, allowance = 0.0;
    if (theta == 0.0) {
      for (std::size_t i = 0; i < n; ++i) x[i] = std::log1p(z * u[i]);
      const auto s = summarize(x);
      lhs = std::exp(s.mean);
      se = lhs * s.se;
      allowance = lhs * std::abs(z) * 2.0 * up * rel_tail;
      ess_list.push_back(s.ess);
    } else {
      for (std::size_t i = 0; i < n; ++i) x[i] = std::pow(1.0 + z * u[i], -theta);
      const auto s = summarize_weighted(x, w);
      lhs = std::pow(s.mean, -1.0 / theta);
      const double slope = std::abs(lhs / (theta * s.mean));
      se = slope * s.se;
      const double dx = std::abs(theta * z) * std::max(1.0, std::pow(1.0 + std::abs(z) * up, -theta - 1.0));
      const double x_max = std::max(1.0, std::pow(1.0 + std::abs(z) * up, -theta));
      allowance = slope * (dx * 2.0 * up * rel_tail + 2.0 * std::abs(theta) * rel_tail * x_max);
      ess_list.push_back(s.ess);
      if (s.verdict == Verdict::kWarn || s.ess < static_cast<double>(n) / 10.0) {
        check.warnings.push_back("effective sample size below n/10 at z=" + std::to_string(z));
        ok = false;
      }
    }
    ok = check.add_row(z, lhs, se, rhs, allowance + kRoundingSlack * rhs) && ok;
  }
  check.params["ess"] = ess_list;
  check.pass = ok;
  return check;
}

double zero_norm(const TestFunction& a, const BaseSpace& base) {
  return std::exp(log_integral(a, base));
}

double alpha_norm(const TestFunction& a, double alpha, const BaseSpace& base) {
  require(alpha > 0.0, ErrorCode::kDomainError, "alpha_norm needs alpha > 0");
  const double integral =
      integrate_composed(a, [alpha](double v) { return std::pow(std::abs(v), alpha); }, base);
  require(std::isfinite(integral), ErrorCode::kDivergentIntegral,
          "int |a|^alpha dnu is not finite for " + a.label());
  return std::pow(integral, 1.0 / alpha);
}

double normalized_alpha_norm(const TestFunction& a, double alpha, const BaseSpace& base) {
  require(alpha > 0.0, ErrorCode::kDomainError, "normalized_alpha_norm needs alpha > 0");
  const double integral =
      integrate_composed(a, [alpha](double v) { return std::pow(std::abs(v), alpha); }, base);
  require(std::isfinite(integral), ErrorCode::kDivergentIntegral,
          "int |a|^alpha dnu is not finite for " + a.label());
  // in log form: both factors overflow separately for small alpha
  return std::exp(std::log(integral / base.theta) / alpha);
}

std::vector<Check> zero_stability_witness(const TestFunction& a1, const TestFunction& a2,
                                          const BaseSpace& base, std::size_t n,
                                          std::uint64_t seed, const TruncationPolicy& trunc) {
  const double l1 = log_integral(a1, base);
  const double l2 = log_integral(a2, base);
  require(std::abs(l1 - l2) <= 1e-10, ErrorCode::kNormMismatch,
          "zero-norms differ: " + std::to_string(std::exp(l1)) + " vs " +
              std::to_string(std::exp(l2)));
  const TestFunction b = a2 * a1.reciprocal();
  const LevyModel model = LevyModel::gamma();

  const auto errors = collect_draws(n, seed, [&](RandomStream& rng) {
    const DiscreteMeasure eta = sample_levy(model, base, trunc, rng);
    const double direct = functional_f_a(a2, eta);
    const double via = functional_f_a(a1, apply_multiplicator(b, eta));
    return std::abs(direct - via) / std::max(1.0, std::abs(direct));
  });
  Check identity;
  identity.check = "zero-stability-identity";
  identity.params = {{"a1", a1.label()}, {"a2", a2.label()}, {"theta", base.theta},
                     {"n", n},           {"seed", seed}};
  identity.pass = identity.add_row(0.0, *std::max_element(errors.begin(), errors.end()), 0.0,
                                   0.0, kRoundingSlack);

  const double c = std::max(1.0, 1.0 / b.lower());
  NamedStatistic g{"exp(-" + std::to_string(c) + " xi(X))",
                   [c](const DiscreteMeasure& xi) { return std::exp(-c * xi.total_charge()); }};
  Check preserve = quasi_lebesgue_invariance_test(b, g, 10.0, base.theta, n,
                                                  derive_seed(seed, "preserve"), trunc);
  preserve.check = "zero-stability-preservation";
  preserve.params["a1"] = a1.label();
  preserve.params["a2"] = a2.label();
  return {identity, preserve};
}

namespace {

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return {slope, (sy - slope * sx) / k};
}

}  // namespace

QuasiMultResult quasi_mult_criterion(const std::function<double(double)>& g, double a,
                                     double singular_tol) {
  require(a > 0.0, ErrorCode::kDomainError, "quasi_mult_criterion needs a > 0");
  constexpr int kShells = 40;
  constexpr int kFit = 10;
  auto root = [&](double x) {
    const double v = g(x);
    require(std::isfinite(v) && v >= 0.0, ErrorCode::kEvaluationError,
            "g must be finite and non-negative, got " + std::to_string(v) + " at " +
                std::to_string(x));
    return std::sqrt(v);
  };
  QuasiMultResult out;
  out.shells.assign(kShells, 0.0);
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  const double ln2 = std::log(2.0);
  for (int j = 0; j < kShells; ++j) {
    // x = 2^{-j-1} e^v, dx / x = dv.
    const double left = std::ldexp(1.0, -j - 1);
    auto f = [&](double v) {
      const double x = std::min(1.0, left * std::exp(v));
      const double d = root(x / a) - root(x);
      return d * d;
    };
    double err = 0.0;
    out.shells[j] = a == 1.0 ? 0.0 : rule.integrate(f, 0.0, ln2, 1e-10, &err);
    require(std::isfinite(out.shells[j]), ErrorCode::kEvaluationError, "shell integral diverged");
  }
  double partial = 0.0;
  for (double s : out.shells) partial += s;

  const double peak = *std::max_element(out.shells.begin(), out.shells.end());
  if (peak == 0.0 || out.shells[kShells - 1] <= 1e-300) {
    out.decay = "zero";
    out.finite = true;
    out.value = partial;
    return out;
  }
  std::vector<double> j_lin, j_log, c_log;
  bool positive = true;
  for (int j = kShells - kFit; j < kShells; ++j) {
    positive = positive && out.shells[j] > 0.0;
    if (!positive) break;
    j_lin.push_back(j);
    j_log.push_back(std::log(static_cast<double>(j)));
    c_log.push_back(std::log(out.shells[j]));
  }
  out.decay = "none";
  out.value = partial;
  if (positive) {
    const double last = out.shells[kShells - 1];
    const Fit geo = least_squares(j_lin, c_log);
    const double ratio = std::exp(geo.slope);
    const Fit pw = least_squares(j_log, c_log);
    const double p = -pw.slope;
    if (ratio < 0.9) {
      out.decay = "geometric";
      out.rate = ratio;
      out.value = partial + last * ratio / (1.0 - ratio);
      out.finite = true;
    } else if (p > 1.2) {
      out.decay = "power";
      out.rate = p;
      // sum_{j >= J} C j^{-p} ~ C J^{1-p} / (p - 1) with J = kShells - 1/2.
      const double jj = kShells - 0.5;
      out.value = partial + std::exp(pw.intercept) * std::pow(jj, 1.0 - p) / (p - 1.0);
      out.finite = true;
    }
  }
  if (out.value > singular_tol) out.finite = false;
  return out;
}

}  // namespace levylab
