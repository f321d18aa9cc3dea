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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "levylab/measure.hpp"
#include "levylab/report.hpp"
#include "levylab/samplers.hpp"

namespace levylab {

/// Inputs shared by all verification suites. Unset optionals select the
/// suite's own defaults (documented in the README table).
struct SuiteOptions {
  std::uint64_t seed = 42;
  /// Replaces the suite's Monte Carlo sample size.
  std::optional<std::size_t> n;
  std::optional<double> theta;
  std::optional<double> alpha;
  std::optional<double> c;
  std::optional<double> k;
  std::vector<double> alpha_grid;
  TruncationPolicy trunc;

  nlohmann::json to_json() const;
};

/// a = 0.5, a = 2, two step functions, a(x) = x and a(x) = 1 + x.
std::vector<TestFunction> standard_panel();

/// Names accepted by run_suite, in a fixed order.
const std::vector<std::string>& suite_names();

/// Runs one suite. Throws InvalidArgument for an unknown name; domain errors
/// from the library propagate.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace levylab
