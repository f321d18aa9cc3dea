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

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace levylab {

/// The canonical base space ([0,1], theta * Lebesgue); theta is the total charge.
struct BaseSpace {
  double theta = 1.0;

  explicit BaseSpace(double total_charge);
};

struct Atom {
  double location = 0.0;
  double charge = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// A finite positive atomic measure on [0,1], atoms sorted by non-increasing
/// charge. tail_bound bounds the (expected) mass of atoms dropped by
/// truncation.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;

  /// Validates sortedness, positivity and locations; throws InvalidArgument.
  explicit DiscreteMeasure(std::vector<Atom> atoms, double tail_bound = 0.0);

  /// Stable-sorts atoms by non-increasing charge first.
  static DiscreteMeasure from_unsorted(std::vector<Atom> atoms, double tail_bound = 0.0);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  double total_charge() const noexcept { return total_; }
  double tail_bound() const noexcept { return tail_bound_; }

  /// {"atoms":[{"x":..,"z":..},..],"tail_bound":..} with 17 significant digits.
  std::string to_json() const;
  static DiscreteMeasure from_json(const std::string& text);

  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  std::vector<Atom> atoms_;
  double total_ = 0.0;
  double tail_bound_ = 0.0;
};

/// Ordered positive series: a point of the cone (finite truncation).
struct ConicSequence {
  std::vector<double> terms;
  double tail_bound = 0.0;

  double sum() const;
  void validate() const;
};

/// Normalized ordered series: a point of the infinite simplex. The terms sum
/// to at least 1 - tail_tolerance.
struct SimplexSequence {
  std::vector<double> terms;
  double tail_tolerance = 0.0;

  double sum() const;
  void validate() const;
};

/// One constant piece [left, right) of a step function.
struct StepPiece {
  double left;
  double right;
  double value;

  double mass() const { return right - left; }
};

/// Non-negative function on [0,1]. Either a step function (exact integrals)
/// or a callable with declared envelope bounds.
class TestFunction {
 public:
  struct Envelope {
    double lower = 0.0;
    double upper = 0.0;
  };

  static TestFunction constant(double value);
  /// breakpoints: 0 = b_0 < b_1 < ... < b_k = 1; values: k entries, value i on [b_i, b_{i+1}).
  static TestFunction step(std::vector<double> breakpoints, std::vector<double> values);
  /// log_summable declares membership in the multiplicator group even when
  /// the lower envelope is zero (e.g. a(x) = x).
  static TestFunction callable(std::function<double(double)> fn, Envelope envelope,
                               std::string label, bool log_summable = false);

  double operator()(double x) const;

  bool is_step() const noexcept { return !fn_; }
  /// Pieces of a step function; empty for callables.
  std::span<const StepPiece> pieces() const noexcept { return pieces_; }
  double lower() const noexcept { return envelope_.lower; }
  double upper() const noexcept { return envelope_.upper; }
  /// Member of the multiplicator group: log a is summable.
  bool in_group() const noexcept;
  bool is_constant() const noexcept;
  const std::string& label() const noexcept { return label_; }

  /// Pointwise product, reciprocal and power. Step inputs stay step functions.
  friend TestFunction operator*(const TestFunction& a, const TestFunction& b);
  TestFunction reciprocal() const;
  TestFunction pow(double exponent) const;

 private:
  TestFunction() = default;

  std::vector<StepPiece> pieces_;
  std::function<double(double)> fn_;
  Envelope envelope_;
  std::string label_;
  bool log_summable_ = false;
};

/// f_a(eta) = sum_i a(x_i) z_i.
double functional_f_a(const TestFunction& a, const DiscreteMeasure& eta);

/// Charges in non-increasing order, locations dropped.
ConicSequence conic_part(const DiscreteMeasure& eta);

/// eta scaled by c > 0.
DiscreteMeasure scale(const DiscreteMeasure& eta, double c);

struct Normalized {
  double total = 0.0;
  DiscreteMeasure measure;
};

/// eta = (eta / eta(X), eta(X)). Throws ZeroMass on an empty measure.
Normalized normalize(const DiscreteMeasure& eta);

/// Simplicial part: charges / total, tail tolerance = tail_bound / total.
SimplexSequence simplicial_part(const DiscreteMeasure& eta);

/// Integral over the base space of g(a(x)) d nu. Exact for step functions,
/// tanh-sinh quadrature (1e-10) for callables.
double integrate_composed(const TestFunction& a, const std::function<double(double)>& g,
                          const BaseSpace& base);

/// Integral of log a d nu. Throws NotInGroup when log a is not summable.
double log_integral(const TestFunction& a, const BaseSpace& base);

/// Integral of log(1 + z a) d nu. Throws DomainError when 1 + z a <= 0 somewhere.
double log1p_integral(const TestFunction& a, double z, const BaseSpace& base);

}  // namespace levylab
