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

#include "levylab/densities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "levylab/error.hpp"
#include "levylab/quadrature.hpp"

namespace levylab {

Density Density::from_log(double log_value) {
  Density d;
  d.log_value = log_value;
  d.value = std::exp(log_value);
  d.overflow = !std::isfinite(d.value);
  return d;
}

DiscreteMeasure apply_multiplicator(const TestFunction& a, const DiscreteMeasure& eta) {
  std::vector<Atom> atoms(eta.atoms().begin(), eta.atoms().end());
  for (auto& atom : atoms) {
    const double factor = a(atom.location);
    require(factor > 0.0, ErrorCode::kZeroCharge, "multiplicator vanishes at an atom");
    atom.charge *= factor;
  }
  return DiscreteMeasure::from_unsorted(std::move(atoms), eta.tail_bound() * a.upper());
}

Density rn_density_gamma(const TestFunction& a, const DiscreteMeasure& eta, const BaseSpace& base) {
  double log_value = -log_integral(a, base);
  const auto atoms = eta.atoms();
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
    log_value -= (1.0 / a(it->location) - 1.0) * it->charge;
  }
  return Density::from_log(log_value);
}

double quasi_lebesgue_weight(const DiscreteMeasure& eta, double charge_cutoff) {
  const double total = eta.total_charge();
  return total <= charge_cutoff ? std::exp(total) : 0.0;
}

namespace {

double uniform_mean(const TestFunction& a) {
  return integrate_composed(a, [](double v) { return v; }, BaseSpace(1.0));
}

}  // namespace

SimplexSequence markov_S_a(const SimplexSequence& y, const TestFunction& a, RandomStream& rng) {
  const double tail_weight = uniform_mean(a) * y.tail_tolerance;
  std::vector<double> terms;
  terms.reserve(y.terms.size());
  for (double t : y.terms) terms.push_back(a(rng.uniform()) * t);
  double sigma = tail_weight;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) sigma += *it;
  require(sigma > 0.0, ErrorCode::kZeroMass, "S_a image has zero mass");
  std::vector<double> kept;
  kept.reserve(terms.size());
  for (double t : terms) {
    if (t > 0.0) kept.push_back(t / sigma);
  }
  std::stable_sort(kept.begin(), kept.end(), std::greater<>());
  return {std::move(kept), tail_weight / sigma};
}

ConicSequence markov_R_a(const ConicSequence& z, const TestFunction& a, RandomStream& rng) {
  std::vector<double> terms;
  terms.reserve(z.terms.size());
  for (double t : z.terms) {
    const double v = a(rng.uniform()) * t;
    if (v > 0.0) terms.push_back(v);
  }
  std::stable_sort(terms.begin(), terms.end(), std::greater<>());
  return {std::move(terms), uniform_mean(a) * z.tail_bound};
}

PdDensity pd_density(const SimplexSequence& y, const TestFunction& a, double theta,
                     std::size_t n_product, int quad_nodes) {
  require(a.is_step(), ErrorCode::kInvalidArgument, "pd_density needs a step function");
  require(a.in_group(), ErrorCode::kNotInGroup, "pd_density needs a in the multiplicator group");
  require(theta > 0.0, ErrorCode::kInvalidArgument, "pd_density needs theta > 0");

  // Distribution of 1/a under the uniform law.
  std::vector<double> log_p;
  std::vector<double> rate;
  double mean_inverse = 0.0;
  for (const auto& piece : a.pieces()) {
    log_p.push_back(std::log(piece.mass()));
    rate.push_back(1.0 / piece.value);
    mean_inverse += piece.mass() / piece.value;
  }
  const std::size_t n = std::min(n_product, y.terms.size());
  double head = 0.0;
  for (std::size_t i = n; i-- > 0;) head += y.terms[i];
  const double tail = std::max(0.0, 1.0 - head);

  // log prod_i L(s y_i) - s E[1/a] tail
  const auto log_product = [&](double s) {
    double acc = -s * mean_inverse * tail;
    for (std::size_t i = 0; i < n; ++i) {
      const double arg = s * y.terms[i];
      double hi = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < rate.size(); ++j) hi = std::max(hi, log_p[j] - arg * rate[j]);
      double sum = 0.0;
      for (std::size_t j = 0; j < rate.size(); ++j) sum += std::exp(log_p[j] - arg * rate[j] - hi);
      acc += hi + std::log(sum);
    }
    return acc;
  };

  // Substituting s = u / beta turns the weight into u^{theta-1} e^{-u}.
  const double beta = mean_inverse;
  const double log_norm = -theta * std::log(beta) - std::lgamma(theta);
  const auto laguerre = [&](int nodes) {
    const auto& rule = quad::gauss_laguerre(nodes, theta - 1.0);
    double hi = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double u = rule.nodes[i];
      terms[i] = rule.weights[i] > 0.0
                     ? std::log(rule.weights[i]) + u + log_product(u / beta)
                     : -std::numeric_limits<double>::infinity();
      hi = std::max(hi, terms[i]);
    }
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - hi);
    return hi + std::log(sum);
  };

  PdDensity out;
  out.tail_mass = tail;
  out.tail_error = 0.5 * std::pow(mean_inverse * tail, 2);
  const double prefactor = -theta * log_integral(a, BaseSpace(1.0));

  int nodes = std::max(quad_nodes, 8);
  double previous = laguerre(nodes);
  constexpr int kMaxNodes = 512;
  while (nodes < kMaxNodes) {
    nodes *= 2;
    const double current = laguerre(nodes);
    if (std::fabs(current - previous) < 1e-8) {
      out.nodes_used = nodes;
      out.density = Density::from_log(prefactor + log_norm + current);
      return out;
    }
    previous = current;
  }

  // Adaptive fallback on the original variable.
  out.adaptive_fallback = true;
  const auto integrand = [&](double s) {
    if (s <= 0.0) return 0.0;
    return std::exp((theta - 1.0) * std::log(s) - std::lgamma(theta) + log_product(s));
  };
  const double value = quad::integrate_to_infinity(integrand, 0.0, 1e-12);
  require(value > 0.0, ErrorCode::kQuadratureFailure, "pd_density integral is not positive");
  out.nodes_used = nodes;
  out.density = Density::from_log(prefactor + std::log(value));
  return out;
}

}  // namespace levylab
