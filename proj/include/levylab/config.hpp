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
#include "levylab/suites.hpp"

namespace levylab {

struct StepSpec {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

/// Flat experiment configuration. Keys mirror the long CLI flags with '-'
/// replaced by '_'; see README for the schema. Command-line flags override
/// keys read from a file, which override the defaults below.
struct ExperimentConfig {
  std::string command;
  std::string suite;
  std::string model = "gamma";
  std::optional<double> theta;
  std::optional<double> alpha;
  std::optional<double> c;
  std::optional<double> k;
  std::optional<double> lambda;
  std::optional<std::size_t> n;
  std::uint64_t seed = 42;
  std::size_t trunc_atoms = 2048;
  double trunc_tail = 1e-8;
  bool trunc_compensate = false;
  std::string out;
  std::string format = "json";
  std::vector<double> alpha_grid;
  std::vector<StepSpec> panel;

  /// Throws ConfigError on unknown keys or wrong types.
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  /// Range and enum checks; throws ConfigError.
  void validate() const;

  TruncationPolicy truncation() const;
  SuiteOptions suite_options() const;
  std::vector<TestFunction> panel_functions() const;
};

/// Reads and parses a JSON config file; throws ConfigError.
ExperimentConfig load_config(const std::string& path);

/// Models accepted by the sample command.
const std::vector<std::string>& sample_models();

}  // namespace levylab
