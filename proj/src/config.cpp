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

#include "levylab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "levylab/error.hpp"

namespace levylab {

namespace {

template <class T>
T get_as(const nlohmann::json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, "key '" + key + "': " + e.what());
  }
}

template <class T>
void read_optional(const nlohmann::json& j, const std::string& key, std::optional<T>& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = get_as<T>(j, key);
}

template <class T>
void read(const nlohmann::json& j, const std::string& key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = get_as<T>(j, key);
}

template <class T>
nlohmann::json opt(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

const std::vector<std::string>& sample_models() {
  static const std::vector<std::string> models = {"gamma", "stable", "tempered-stable",
                                                  "tilted-stable", "pd", "pd-alpha-theta", "cpd"};
  return models;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kConfigError, "config must be a JSON object");
  static const std::set<std::string> known = {
      "command", "suite", "model",      "theta",      "alpha",     "c",
      "k",       "lambda", "n",         "seed",       "trunc_atoms", "trunc_tail",
      "trunc_compensate", "out", "format", "alpha_grid", "panel"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw Error(ErrorCode::kConfigError, "unknown config key '" + key + "'");
  }
  ExperimentConfig c;
  read(j, "command", c.command);
  read(j, "suite", c.suite);
  read(j, "model", c.model);
  read_optional(j, "theta", c.theta);
  read_optional(j, "alpha", c.alpha);
  read_optional(j, "c", c.c);
  read_optional(j, "k", c.k);
  read_optional(j, "lambda", c.lambda);
  read_optional(j, "n", c.n);
  read(j, "seed", c.seed);
  read(j, "trunc_atoms", c.trunc_atoms);
  read(j, "trunc_tail", c.trunc_tail);
  read(j, "trunc_compensate", c.trunc_compensate);
  read(j, "out", c.out);
  read(j, "format", c.format);
  read(j, "alpha_grid", c.alpha_grid);
  if (j.contains("panel")) {
    const auto& p = j.at("panel");
    if (!p.is_array()) throw Error(ErrorCode::kConfigError, "'panel' must be an array");
    for (const auto& item : p) {
      if (!item.is_object()) throw Error(ErrorCode::kConfigError, "panel entries must be objects");
      for (const auto& [key, value] : item.items()) {
        if (key != "breakpoints" && key != "values")
          throw Error(ErrorCode::kConfigError, "unknown panel key '" + key + "'");
      }
      c.panel.push_back({get_as<std::vector<double>>(item, "breakpoints"),
                         get_as<std::vector<double>>(item, "values")});
    }
  }
  return c;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["suite"] = suite;
  j["model"] = model;
  j["theta"] = opt(theta);
  j["alpha"] = opt(alpha);
  j["c"] = opt(c);
  j["k"] = opt(k);
  j["lambda"] = opt(lambda);
  j["n"] = opt(n);
  j["seed"] = seed;
  j["trunc_atoms"] = trunc_atoms;
  j["trunc_tail"] = trunc_tail;
  j["trunc_compensate"] = trunc_compensate;
  j["out"] = out;
  j["format"] = format;
  j["alpha_grid"] = alpha_grid;
  auto p = nlohmann::json::array();
  for (const auto& s : panel) p.push_back({{"breakpoints", s.breakpoints}, {"values", s.values}});
  j["panel"] = p;
  return j;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kConfigError, what); };
  if (format != "json" && format != "csv") fail("format must be json or csv");
  if (theta && !(std::isfinite(*theta) && *theta > -1.0)) fail("theta must be finite and above -1");
  if (alpha && !(*alpha > 0.0 && *alpha < 1.0)) fail("alpha must lie in (0, 1)");
  if (c && !(*c > 0.0)) fail("c must be positive");
  if (k && !(*k > 0.0)) fail("k must be positive");
  if (lambda && !(*lambda > 0.0)) fail("lambda must be positive");
  if (n && *n < 2) fail("n must be at least 2");
  if (trunc_atoms < 1) fail("trunc_atoms must be at least 1");
  if (!(trunc_tail >= 0.0)) fail("trunc_tail must be non-negative");
  for (double a : alpha_grid)
    if (!(a > 0.0 && a < 1.0)) fail("alpha_grid entries must lie in (0, 1)");
  if (command == "verify") {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
      fail("unknown suite '" + suite + "'");
  }
  if (command == "sample") {
    const auto& models = sample_models();
    if (std::find(models.begin(), models.end(), model) == models.end())
      fail("unknown model '" + model + "'");
  }
  try {
    panel_functions();
  } catch (const Error& e) {
    fail(std::string("bad panel: ") + e.what());
  }
}

TruncationPolicy ExperimentConfig::truncation() const {
  TruncationPolicy t;
  t.max_atoms = trunc_atoms;
  t.tail_mass_cap = trunc_tail;
  t.compensate = trunc_compensate;
  return t;
}

SuiteOptions ExperimentConfig::suite_options() const {
  SuiteOptions o;
  o.seed = seed;
  o.n = n;
  o.theta = theta;
  o.alpha = alpha;
  o.c = c;
  o.k = k;
  o.alpha_grid = alpha_grid;
  o.trunc = truncation();
  return o;
}

std::vector<TestFunction> ExperimentConfig::panel_functions() const {
  std::vector<TestFunction> out;
  for (const auto& s : panel) out.push_back(TestFunction::step(s.breakpoints, s.values));
  return out;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, "config '" + path + "' is not valid JSON: " + e.what());
  }
  return ExperimentConfig::from_json(j);
}

}  // namespace levylab
