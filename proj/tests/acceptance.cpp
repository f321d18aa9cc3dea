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

// Runs every verification suite at its default size and seed and prints one
// PASS/FAIL line per acceptance criterion. Usage:
//   levylab_acceptance [report_dir] [criterion ...]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "levylab/error.hpp"
#include "levylab/suites.hpp"

using namespace levylab;

namespace {

struct Criterion {
  int id;
  const char* title;
  const char* suite;
};

const std::vector<Criterion> kCriteria = {
    {1, "Laplace conformance", "laplace"},
    {2, "decomposition", "decomposition"},
    {3, "product type", "product-type"},
    {4, "quasi-invariance", "quasi-invariance"},
    {5, "PD quasi-invariance", "pd-quasi-invariance"},
    {6, "quasi-Lebesgue invariance", "quasi-lebesgue"},
    {7, "asymptotics", "asymptotics"},
    {8, "weak limit", "weak-limit"},
    {9, "Markov-Krein", "markov-krein"},
    {10, "two-parameter Markov-Krein", "two-param-mk"},
    {11, "oracle equivalence", "oracle-equivalence"},
    {12, "subordination", "subordination"},
    {13, "quasi-multiplicative criterion", "quasi-mult"},
};

// Suites re-run for the determinism criterion: one Monte Carlo heavy, one
// deterministic, one with weighted draws.
const std::vector<const char*> kRerun = {"markov-krein", "quasi-mult", "two-param-mk"};

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path dir;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (!arg.empty() && arg.find_first_not_of("0123456789") == std::string::npos) {
      only.insert(std::atoi(arg.c_str()));
    } else {
      dir = arg;
    }
  }
  if (!dir.empty()) std::filesystem::create_directories(dir);
  const auto selected = [&](int id) { return only.empty() || only.count(id); };

  SuiteOptions options;  // defaults: seed 42, suite-specific sizes
  std::map<std::string, std::string> first_dump;
  int failures = 0;
  for (const auto& c : kCriteria) {
    if (!selected(c.id) && !(selected(14) && c.id == 9)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
      const SuiteReport r = run_suite(c.suite, options);
      first_dump[c.suite] = r.dump();
      if (!dir.empty()) {
        write(dir / (std::string(c.suite) + ".json"), r.dump());
        write(dir / (std::string(c.suite) + ".csv"), r.to_csv());
      }
      pass = r.pass();
      std::size_t ok = 0;
      std::string failed;
      for (const auto& ch : r.checks) {
        if (ch.pass) {
          ++ok;
        } else {
          failed += (failed.empty() ? "" : ", ") + ch.check;
        }
      }
      detail = std::to_string(ok) + "/" + std::to_string(r.checks.size()) + " checks";
      if (!failed.empty()) detail += "; failing: " + failed;
    } catch (const std::exception& e) {
      detail = std::string("error: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!selected(c.id)) continue;
    failures += !pass;
    std::printf("criterion %2d %-32s [%s] %s (%s, %.1fs)\n", c.id, c.title, c.suite,
                pass ? "PASS" : "FAIL", detail.c_str(), secs);
    std::fflush(stdout);
  }

  if (selected(14)) {
    std::string detail;
    bool pass = true;
    for (const char* name : kRerun) {
      auto it = first_dump.find(name);
      const std::string a = it != first_dump.end() ? it->second : run_suite(name, options).dump();
      const std::string b = run_suite(name, options).dump();
      const bool same = a == b;
      pass = pass && same;
      detail += std::string(detail.empty() ? "" : ", ") + name + (same ? " identical" : " DIFFERS");
    }
    failures += !pass;
    std::printf("criterion 14 %-32s [rerun] %s (%s)\n", "determinism", pass ? "PASS" : "FAIL",
                detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
