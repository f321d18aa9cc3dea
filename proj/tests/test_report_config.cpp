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

#include <cmath>
#include <string>

#include "doctest.h"
#include "levylab/config.hpp"
#include "levylab/error.hpp"
#include "levylab/report.hpp"
#include "levylab/suites.hpp"

using namespace levylab;

TEST_CASE("add_row applies k se plus allowance") {
  Check c;
  CHECK(c.add_row(0.0, 1.0, 0.1, 1.25, 0.0));
  CHECK_FALSE(c.add_row(1.0, 1.0, 0.1, 1.35, 0.0));
  CHECK(c.add_row(2.0, 1.0, 0.1, 1.35, 0.06));
  CHECK(c.add_row(3.0, 1.0, 0.0, 1.0, 0.0));
  CHECK(c.grid.size() == 4);
  CHECK(c.allowance[2] == 0.06);
}

TEST_CASE("report serialization") {
  SuiteReport r;
  r.suite = "demo";
  Check c;
  c.check = "thing";
  c.pass = true;
  c.add_row(0.5, 1.0 / 3.0, 0.01, 0.3);
  r.checks.push_back(c);
  CHECK(r.pass());
  const auto j = r.to_json();
  CHECK(j.at("suite") == "demo");
  const auto& jc = j.at("checks").at(0);
  for (const char* key : {"check", "params", "grid", "lhs", "se", "rhs", "pass"}) CHECK(jc.contains(key));
  const std::string csv = r.to_csv();
  CHECK(csv.rfind("suite,check,grid,lhs,se,rhs,allowance,pass\n", 0) == 0);
  CHECK(csv.find("0.33333333333333331") != std::string::npos);
  CHECK(r.dump() == r.dump());
  r.checks.push_back(Check{});
  CHECK_FALSE(r.pass());
}

TEST_CASE("config parsing and validation") {
  const auto cfg = ExperimentConfig::from_json(nlohmann::json::parse(
      R"({"command":"verify","suite":"markov-krein","theta":3,"n":500,"trunc_tail":1e-10,
          "alpha_grid":[0.4,0.1],"panel":[{"breakpoints":[0,0.5,1],"values":[2,1]}]})"));
  CHECK(cfg.theta == 3.0);
  CHECK(cfg.n == 500u);
  CHECK(cfg.seed == 42u);
  CHECK(cfg.truncation().tail_mass_cap == 1e-10);
  CHECK(cfg.truncation().max_atoms == 2048u);
  CHECK(cfg.suite_options().alpha_grid.size() == 2);
  REQUIRE(cfg.panel_functions().size() == 1);
  CHECK(cfg.panel_functions()[0](0.2) == 2.0);
  cfg.validate();

  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json::parse(R"({"thetta":1})")), Error);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json::parse(R"({"theta":"big"})")), Error);
  auto bad = cfg;
  bad.alpha = 1.5;
  CHECK_THROWS_AS(bad.validate(), Error);
  auto bad_model = cfg;
  bad_model.command = "sample";
  bad_model.model = "cauchy";
  CHECK_THROWS_AS(bad_model.validate(), Error);
  const auto round = ExperimentConfig::from_json(cfg.to_json());
  CHECK(round.to_json() == cfg.to_json());
}

TEST_CASE("suite registry") {
  CHECK(suite_names().size() == 14);
  CHECK_THROWS_AS(run_suite("no-such-suite", {}), Error);
  CHECK(standard_panel().size() == 6);
}

TEST_CASE("suite reports are reproducible and carry their config") {
  SuiteOptions o;
  o.n = 1500;
  const auto a = run_suite("markov-krein", o);
  const auto b = run_suite("markov-krein", o);
  CHECK(a.dump() == b.dump());
  CHECK(a.config.at("suite") == "markov-krein");
  o.seed = 43;
  CHECK(run_suite("markov-krein", o).dump() != a.dump());
}
