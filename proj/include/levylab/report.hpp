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

#include <string>
#include <vector>

#include <json.hpp>

namespace levylab {

/// One verification check in the shared report schema
/// {check, params, grid, lhs, se, rhs, pass}. allowance holds the declared
/// bias allowance per grid point; warnings are free text.
struct Check {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  std::vector<double> grid;
  std::vector<double> lhs;
  std::vector<double> se;
  std::vector<double> rhs;
  std::vector<double> allowance;
  bool pass = false;
  std::vector<std::string> warnings;

  /// Appends a grid row and returns whether |lhs - rhs| <= k se + allowance.
  bool add_row(double x, double lhs_value, double se_value, double rhs_value,
               double allowance_value = 0.0, double k = 3.0);

  nlohmann::json to_json() const;
};

struct SuiteReport {
  std::string suite;
  nlohmann::json config = nlohmann::json::object();
  std::vector<Check> checks;

  bool pass() const;
  nlohmann::json to_json() const;
  std::string dump() const;
  /// suite,check,grid,lhs,se,rhs,allowance,pass rows, 17 significant digits.
  std::string to_csv() const;
};

}  // namespace levylab
