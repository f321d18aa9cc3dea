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

#include "levylab/report.hpp"

#include <cmath>

#include "levylab/format.hpp"

namespace levylab {

namespace {

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::json numbers(const std::vector<double>& v) {
  auto out = nlohmann::json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

}  // namespace

bool Check::add_row(double x, double lhs_value, double se_value, double rhs_value,
                    double allowance_value, double k) {
  grid.push_back(x);
  lhs.push_back(lhs_value);
  se.push_back(se_value);
  rhs.push_back(rhs_value);
  allowance.push_back(allowance_value);
  return std::fabs(lhs_value - rhs_value) <= k * se_value + allowance_value;
}

nlohmann::json Check::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["params"] = params;
  j["grid"] = numbers(grid);
  j["lhs"] = numbers(lhs);
  j["se"] = numbers(se);
  j["rhs"] = numbers(rhs);
  j["allowance"] = numbers(allowance);
  j["pass"] = pass;
  if (!warnings.empty()) j["warnings"] = warnings;
  return j;
}

bool SuiteReport::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["config"] = config;
  j["pass"] = pass();
  auto arr = nlohmann::json::array();
  for (const auto& c : checks) arr.push_back(c.to_json());
  j["checks"] = arr;
  return j;
}

std::string SuiteReport::dump() const { return to_json().dump(2) + "\n"; }

std::string SuiteReport::to_csv() const {
  std::string out = "suite,check,grid,lhs,se,rhs,allowance,pass\n";
  for (const auto& c : checks) {
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
      out += suite + ',' + c.check + ',' + format_double(c.grid[i]) + ',' +
             format_double(c.lhs[i]) + ',' + format_double(c.se[i]) + ',' +
             format_double(c.rhs[i]) + ',' + format_double(c.allowance[i]) + ',' +
             (c.pass ? "true" : "false") + '\n';
    }
  }
  return out;
}

}  // namespace levylab
