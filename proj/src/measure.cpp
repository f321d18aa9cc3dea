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

#include "levylab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "levylab/error.hpp"
#include "levylab/format.hpp"
#include "levylab/quadrature.hpp"

namespace levylab {

BaseSpace::BaseSpace(double total_charge) : theta(total_charge) {
  require(total_charge > 0.0 && std::isfinite(total_charge), ErrorCode::kInvalidArgument,
          "base space total charge must be positive");
}

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms, double tail_bound)
    : atoms_(std::move(atoms)), tail_bound_(tail_bound) {
  require(tail_bound >= 0.0, ErrorCode::kInvalidArgument, "tail_bound must be non-negative");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    require(a.charge > 0.0 && std::isfinite(a.charge), ErrorCode::kInvalidArgument,
            "atom charges must be positive and finite");
    require(a.location >= 0.0 && a.location <= 1.0, ErrorCode::kInvalidArgument,
            "atom locations must lie in [0,1]");
    require(i == 0 || atoms_[i - 1].charge >= a.charge, ErrorCode::kInvalidArgument,
            "atoms must be sorted by non-increasing charge");
  }
  // Summing smallest-first keeps the cached total within a few ulps.
  total_ = std::accumulate(atoms_.rbegin(), atoms_.rend(), 0.0,
                           [](double s, const Atom& a) { return s + a.charge; });
}

DiscreteMeasure DiscreteMeasure::from_unsorted(std::vector<Atom> atoms, double tail_bound) {
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& l, const Atom& r) { return l.charge > r.charge; });
  return DiscreteMeasure(std::move(atoms), tail_bound);
}

std::string DiscreteMeasure::to_json() const {
  std::string out = "{\"atoms\":[";
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i) out += ',';
    out += "{\"x\":" + format_double(atoms_[i].location) +
           ",\"z\":" + format_double(atoms_[i].charge) + '}';
  }
  out += "],\"tail_bound\":" + format_double(tail_bound_) + '}';
  return out;
}

DiscreteMeasure DiscreteMeasure::from_json(const std::string& text) {
  std::vector<Atom> atoms;
  double tail = 0.0;
  try {
    const auto j = nlohmann::json::parse(text);
    const auto& list = j.at("atoms");
    if (!list.is_array()) throw Error(ErrorCode::kInvalidArgument, "bad measure JSON: atoms is not an array");
    for (const auto& a : list) atoms.push_back({a.at("x").get<double>(), a.at("z").get<double>()});
    tail = j.value("tail_bound", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad measure JSON: ") + e.what());
  }
  return DiscreteMeasure(std::move(atoms), tail);
}

double ConicSequence::sum() const {
  return std::accumulate(terms.rbegin(), terms.rend(), 0.0);
}

void ConicSequence::validate() const {
  require(tail_bound >= 0.0, ErrorCode::kInvalidArgument, "conic tail_bound negative");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    require(terms[i] > 0.0, ErrorCode::kInvalidArgument, "conic terms must be positive");
    require(i == 0 || terms[i - 1] >= terms[i], ErrorCode::kInvalidArgument,
            "conic terms must be non-increasing");
  }
}

double SimplexSequence::sum() const {
  return std::accumulate(terms.rbegin(), terms.rend(), 0.0);
}

void SimplexSequence::validate() const {
  require(tail_tolerance >= 0.0, ErrorCode::kInvalidArgument, "tail_tolerance negative");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    require(terms[i] > 0.0, ErrorCode::kInvalidArgument, "simplex terms must be positive");
    require(i == 0 || terms[i - 1] >= terms[i], ErrorCode::kInvalidArgument,
            "simplex terms must be non-increasing");
  }
  const double s = sum();
  require(s <= 1.0 + 1e-12 && s >= 1.0 - tail_tolerance - 1e-12, ErrorCode::kInvalidArgument,
          "simplex terms must sum to within tail_tolerance of 1");
}

// ---------------------------------------------------------------------------
// TestFunction

TestFunction TestFunction::constant(double value) {
  return step({0.0, 1.0}, {value});
}

TestFunction TestFunction::step(std::vector<double> breakpoints, std::vector<double> values) {
  require(breakpoints.size() == values.size() + 1 && !values.empty(),
          ErrorCode::kInvalidArgument, "step function needs k values and k+1 breakpoints");
  require(breakpoints.front() == 0.0 && breakpoints.back() == 1.0, ErrorCode::kInvalidArgument,
          "step breakpoints must start at 0 and end at 1");
  TestFunction f;
  f.envelope_ = {values[0], values[0]};
  std::ostringstream label;
  label << "step(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(breakpoints[i] < breakpoints[i + 1], ErrorCode::kInvalidArgument,
            "step breakpoints must be strictly increasing");
    require(values[i] >= 0.0 && std::isfinite(values[i]), ErrorCode::kInvalidArgument,
            "test functions must be non-negative and finite");
    f.pieces_.push_back({breakpoints[i], breakpoints[i + 1], values[i]});
    f.envelope_.lower = std::min(f.envelope_.lower, values[i]);
    f.envelope_.upper = std::max(f.envelope_.upper, values[i]);
    if (i) label << ';';
    label << format_double(breakpoints[i]) << ':' << format_double(values[i]);
  }
  label << ')';
  f.label_ = values.size() == 1 ? "const(" + format_double(values[0]) + ")" : label.str();
  return f;
}

TestFunction TestFunction::callable(std::function<double(double)> fn, Envelope envelope,
                                    std::string label, bool log_summable) {
  require(static_cast<bool>(fn), ErrorCode::kInvalidArgument, "callable test function is empty");
  require(envelope.lower >= 0.0 && envelope.upper >= envelope.lower,
          ErrorCode::kInvalidArgument, "callable envelope must satisfy 0 <= lower <= upper");
  TestFunction f;
  f.fn_ = std::move(fn);
  f.envelope_ = envelope;
  f.label_ = std::move(label);
  f.log_summable_ = log_summable;
  return f;
}

double TestFunction::operator()(double x) const {
  if (fn_) return fn_(x);
  // upper_bound over left endpoints: the piece containing x.
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const StepPiece& p) { return v < p.left; });
  if (it == pieces_.begin()) return pieces_.front().value;
  return std::prev(it)->value;
}

bool TestFunction::in_group() const noexcept {
  if (fn_) return envelope_.lower > 0.0 || log_summable_;
  return std::all_of(pieces_.begin(), pieces_.end(),
                     [](const StepPiece& p) { return p.value > 0.0; });
}

bool TestFunction::is_constant() const noexcept {
  return envelope_.lower == envelope_.upper;
}

TestFunction operator*(const TestFunction& a, const TestFunction& b) {
  if (a.is_step() && b.is_step()) {
    std::vector<double> cuts;
    for (const auto& p : a.pieces_) cuts.push_back(p.left);
    for (const auto& p : b.pieces_) cuts.push_back(p.left);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<double> values;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
      values.push_back(a(mid) * b(mid));
    }
    return TestFunction::step(std::move(cuts), std::move(values));
  }
  auto fa = a;
  auto fb = b;
  return TestFunction::callable([fa, fb](double x) { return fa(x) * fb(x); },
                                {a.lower() * b.lower(), a.upper() * b.upper()},
                                a.label() + "*" + b.label(), a.in_group() && b.in_group());
}

TestFunction TestFunction::reciprocal() const {
  require(in_group(), ErrorCode::kNotInGroup, "reciprocal of a function outside the group");
  if (is_step()) {
    std::vector<double> cuts;
    std::vector<double> values;
    for (const auto& p : pieces_) {
      cuts.push_back(p.left);
      values.push_back(1.0 / p.value);
    }
    cuts.push_back(1.0);
    return step(std::move(cuts), std::move(values));
  }
  auto f = fn_;
  const double hi = envelope_.lower > 0.0 ? 1.0 / envelope_.lower
                                          : std::numeric_limits<double>::infinity();
  return callable([f](double x) { return 1.0 / f(x); }, {1.0 / envelope_.upper, hi},
                  "1/" + label_, true);
}

TestFunction TestFunction::pow(double exponent) const {
  if (is_step()) {
    std::vector<double> cuts;
    std::vector<double> values;
    for (const auto& p : pieces_) {
      cuts.push_back(p.left);
      values.push_back(std::pow(p.value, exponent));
    }
    cuts.push_back(1.0);
    return step(std::move(cuts), std::move(values));
  }
  auto f = fn_;
  const double l = std::pow(envelope_.lower, exponent);
  const double u = std::pow(envelope_.upper, exponent);
  return callable([f, exponent](double x) { return std::pow(f(x), exponent); },
                  {std::min(l, u), std::max(l, u)}, label_ + "^" + format_double(exponent),
                  log_summable_);
}

// ---------------------------------------------------------------------------
// Operations

double functional_f_a(const TestFunction& a, const DiscreteMeasure& eta) {
  double sum = 0.0;
  const auto atoms = eta.atoms();
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) sum += a(it->location) * it->charge;
  return sum;
}

ConicSequence conic_part(const DiscreteMeasure& eta) {
  ConicSequence out;
  out.terms.reserve(eta.size());
  for (const auto& atom : eta.atoms()) out.terms.push_back(atom.charge);
  out.tail_bound = eta.tail_bound();
  return out;
}

DiscreteMeasure scale(const DiscreteMeasure& eta, double c) {
  require(c > 0.0, ErrorCode::kInvalidArgument, "scale factor must be positive");
  std::vector<Atom> atoms(eta.atoms().begin(), eta.atoms().end());
  for (auto& a : atoms) a.charge *= c;
  return DiscreteMeasure(std::move(atoms), eta.tail_bound() * c);
}

Normalized normalize(const DiscreteMeasure& eta) {
  require(eta.total_charge() > 0.0, ErrorCode::kZeroMass, "cannot normalize a zero measure");
  const double total = eta.total_charge();
  return {total, scale(eta, 1.0 / total)};
}

SimplexSequence simplicial_part(const DiscreteMeasure& eta) {
  require(eta.total_charge() > 0.0, ErrorCode::kZeroMass, "simplicial part of a zero measure");
  const double total = eta.total_charge();
  SimplexSequence out;
  out.terms.reserve(eta.size());
  for (const auto& atom : eta.atoms()) out.terms.push_back(atom.charge / total);
  out.tail_tolerance = eta.tail_bound() / total;
  return out;
}

double integrate_composed(const TestFunction& a, const std::function<double(double)>& g,
                          const BaseSpace& base) {
  if (a.is_step()) {
    double sum = 0.0;
    for (const auto& p : a.pieces()) sum += g(p.value) * p.mass();
    return base.theta * sum;
  }
  return base.theta * quad::integrate([&](double x) { return g(a(x)); }, 0.0, 1.0, 1e-11);
}

double log_integral(const TestFunction& a, const BaseSpace& base) {
  require(a.in_group(), ErrorCode::kNotInGroup, "log a is not summable for " + a.label());
  return integrate_composed(a, [](double v) { return std::log(v); }, base);
}

double log1p_integral(const TestFunction& a, double z, const BaseSpace& base) {
  const double worst = z >= 0.0 ? a.lower() : a.upper();
  require(1.0 + z * worst > 0.0, ErrorCode::kDomainError,
          "1 + z a(x) must stay positive for " + a.label());
  if (z == 0.0) return 0.0;
  return integrate_composed(a, [z](double v) { return std::log1p(z * v); }, base);
}

}  // namespace levylab
