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

// levylab command line: sample, verify, report.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "levylab/config.hpp"
#include "levylab/error.hpp"
#include "levylab/format.hpp"
#include "levylab/parallel.hpp"
#include "levylab/samplers.hpp"
#include "levylab/suites.hpp"

namespace fs = std::filesystem;
using levylab::ErrorCode;
using levylab::ExperimentConfig;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

/// Flag values as parsed; only flags actually given override the config.
struct Flags {
  std::string config;
  std::string suite, model, out, format;
  double theta = 0, alpha = 0, c = 0, k = 0, lambda = 0;
  std::size_t n = 0, trunc_atoms = 0;
  std::uint64_t seed = 0;
  double trunc_tail = 0;
  bool compensate = false;
  std::vector<double> alpha_grid;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file (flat keys); flags override it");
  cmd->add_option("--theta", f.theta, "total charge of the base space");
  cmd->add_option("--alpha", f.alpha, "stability index in (0,1)");
  cmd->add_option("--c", f.c, "stable scale constant");
  cmd->add_option("--k", f.k, "scale of the tilted stable process");
  cmd->add_option("--n", f.n, "number of draws / Monte Carlo sample size");
  cmd->add_option("--seed", f.seed, "root seed");
  cmd->add_option("--trunc-atoms", f.trunc_atoms, "maximum atoms per series draw");
  cmd->add_option("--trunc-tail", f.trunc_tail, "stop once the tail bound falls below this");
  cmd->add_flag("--trunc-compensate", f.compensate, "add one atom carrying the expected tail mass");
  cmd->add_option("--out", f.out, "output path");
  cmd->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

/// Accepts a plain config, or a report/manifest carrying one under "config".
ExperimentConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw levylab::Error(ErrorCode::kConfigError, "cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw levylab::Error(ErrorCode::kConfigError, "config '" + path + "' is not valid JSON: " + e.what());
  }
  if (j.is_object() && j.contains("config") && j.at("config").is_object() &&
      (j.contains("checks") || j.contains("draws")))
    return ExperimentConfig::from_json(j.at("config"));
  return ExperimentConfig::from_json(j);
}

ExperimentConfig resolve(CLI::App* cmd, const Flags& f, const std::string& command) {
  ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : read_config(f.config);
  cfg.command = command;
  auto given = [&](const char* name) { return cmd->get_option_no_throw(name) && cmd->count(name) > 0; };
  if (given("--suite")) cfg.suite = f.suite;
  if (given("--model")) cfg.model = f.model;
  if (given("--theta")) cfg.theta = f.theta;
  if (given("--alpha")) cfg.alpha = f.alpha;
  if (given("--c")) cfg.c = f.c;
  if (given("--k")) cfg.k = f.k;
  if (given("--lambda")) cfg.lambda = f.lambda;
  if (given("--n")) cfg.n = f.n;
  if (given("--seed")) cfg.seed = f.seed;
  if (given("--trunc-atoms")) cfg.trunc_atoms = f.trunc_atoms;
  if (given("--trunc-tail")) cfg.trunc_tail = f.trunc_tail;
  if (given("--trunc-compensate")) cfg.trunc_compensate = f.compensate;
  if (given("--out")) cfg.out = f.out;
  if (given("--format")) cfg.format = f.format;
  if (given("--alpha-grid")) cfg.alpha_grid = f.alpha_grid;
  cfg.validate();
  return cfg;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw levylab::Error(ErrorCode::kConfigError, "cannot write '" + path.string() + "'");
  out << text;
}

std::string json_array(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += levylab::format_double(v[i]);
  }
  return s + "]";
}

// -- sample ------------------------------------------------------------------

int cmd_sample(const ExperimentConfig& cfg) {
  using namespace levylab;
  const std::size_t n = cfg.n.value_or(1000);
  const double theta = cfg.theta.value_or(1.0);
  const TruncationPolicy trunc = cfg.truncation();
  const auto panel = cfg.panel_functions();
  const BaseSpace base(theta);

  std::function<DiscreteMeasure(RandomStream&)> measure_sampler;
  std::function<std::pair<std::vector<double>, double>(RandomStream&)> sequence_sampler;
  const std::size_t n_terms = std::max<std::size_t>(cfg.trunc_atoms, 1);
  if (cfg.model == "gamma") {
    const LevyModel m = LevyModel::gamma(cfg.lambda.value_or(1.0));
    measure_sampler = [=](RandomStream& rng) { return sample_levy(m, base, trunc, rng); };
  } else if (cfg.model == "stable") {
    const LevyModel m = LevyModel::stable(cfg.alpha.value_or(0.5), cfg.c.value_or(1.0));
    measure_sampler = [=](RandomStream& rng) { return sample_levy(m, base, trunc, rng); };
  } else if (cfg.model == "tempered-stable") {
    const LevyModel m = LevyModel::tempered_stable(cfg.alpha.value_or(0.5), cfg.c.value_or(1.0),
                                                   cfg.lambda.value_or(1.0));
    measure_sampler = [=](RandomStream& rng) { return sample_levy(m, base, trunc, rng); };
  } else if (cfg.model == "tilted-stable") {
    const double alpha = cfg.alpha.value_or(0.5), k = cfg.k.value_or(1.0);
    measure_sampler = [=](RandomStream& rng) {
      return sample_tilted_scaled_stable(alpha, k, base, trunc, rng);
    };
  } else if (cfg.model == "pd") {
    sequence_sampler = [=](RandomStream& rng) {
      auto y = sample_pd_theta(theta, n_terms, rng);
      return std::pair(std::move(y.terms), y.tail_tolerance);
    };
  } else if (cfg.model == "pd-alpha-theta") {
    const double alpha = cfg.alpha.value_or(0.5);
    const double th = cfg.theta.value_or(0.0);
    sequence_sampler = [=](RandomStream& rng) {
      auto y = sample_pd_alpha_theta(alpha, th, n_terms, rng);
      return std::pair(std::move(y.terms), y.tail_tolerance);
    };
  } else {
    sequence_sampler = [=](RandomStream& rng) {
      auto z = sample_cpd(theta, n_terms, rng);
      return std::pair(std::move(z.terms), z.tail_bound);
    };
  }

  struct Line {
    std::string text;
    double tail = 0.0;
  };
  const auto lines = collect_draws(n, cfg.seed, [&](RandomStream& rng) {
    Line line;
    if (measure_sampler) {
      const DiscreteMeasure eta = measure_sampler(rng);
      line.tail = eta.tail_bound();
      line.text = "{\"measure\":" + eta.to_json();
      if (!panel.empty()) {
        std::vector<double> f;
        for (const auto& a : panel) f.push_back(functional_f_a(a, eta));
        line.text += ",\"functionals\":" + json_array(f);
      }
    } else {
      auto [terms, tail] = sequence_sampler(rng);
      line.tail = tail;
      line.text = "{\"terms\":" + json_array(terms) + ",\"tail\":" + format_double(tail);
    }
    return line;
  });
  std::string body;
  double tail_sum = 0.0, tail_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    body += "{\"draw\":" + std::to_string(i) + "," + lines[i].text.substr(1) + "}\n";
    tail_sum += lines[i].tail;
    tail_max = std::max(tail_max, lines[i].tail);
  }
  const fs::path out = cfg.out.empty() ? fs::path("levylab-sample.jsonl") : fs::path(cfg.out);
  fs::path manifest = out;
  manifest.replace_extension(".manifest.json");
  nlohmann::json m;
  m["config"] = cfg.to_json();
  m["config"]["out"] = out.string();
  m["draws"] = n;
  m["seed"] = cfg.seed;
  m["model"] = cfg.model;
  m["tail_bound_mean"] = tail_sum / static_cast<double>(n);
  m["tail_bound_max"] = tail_max;
  m["output"] = out.string();
  write_file(out, body);
  write_file(manifest, m.dump(2) + "\n");
  std::cerr << "wrote " << n << " draws to " << out.string() << "\n";
  return kExitPass;
}

// -- verify --------------------------------------------------------------------

int cmd_verify(const ExperimentConfig& cfg) {
  levylab::SuiteReport r = levylab::run_suite(cfg.suite, cfg.suite_options());
  r.config = cfg.to_json();
  const std::string json = r.dump();
  const std::string csv = r.to_csv();
  if (cfg.out.empty()) {
    std::cout << (cfg.format == "csv" ? csv : json);
  } else {
    fs::path base(cfg.out);
    fs::path json_path = base, csv_path = base;
    json_path.replace_extension(".json");
    csv_path.replace_extension(".csv");
    write_file(json_path, json);
    write_file(csv_path, csv);
  }
  std::cerr << "suite " << cfg.suite << ": " << (r.pass() ? "PASS" : "FAIL") << "\n";
  return r.pass() ? kExitPass : kExitFail;
}

// -- report --------------------------------------------------------------------

int cmd_report(const std::vector<std::string>& inputs, const std::string& format,
               const std::string& out, const std::string& plot) {
  struct Row {
    std::string suite, check;
    std::size_t rows;
    bool pass;
    double max_z;
  };
  std::vector<Row> rows;
  std::string plot_csv = "suite,check,x,y,se\n";
  std::vector<nlohmann::json> reports;
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) throw levylab::Error(ErrorCode::kConfigError, "cannot open report '" + path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw levylab::Error(ErrorCode::kConfigError, "'" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.contains("suite") || !j.contains("checks"))
      throw levylab::Error(ErrorCode::kConfigError, "'" + path + "' is not a suite report");
    reports.push_back(std::move(j));
  }
  // Merge deterministically by suite name.
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return a.at("suite").template get<std::string>() < b.at("suite").template get<std::string>();
  });
  auto num = [](const nlohmann::json& v) {
    return v.is_number() ? v.get<double>() : std::numeric_limits<double>::quiet_NaN();
  };
  for (const auto& j : reports) {
    const std::string suite = j.at("suite").get<std::string>();
    for (const auto& c : j.at("checks")) {
      const auto& lhs = c.at("lhs");
      const auto& rhs = c.at("rhs");
      const auto& se = c.at("se");
      const auto& grid = c.at("grid");
      double max_z = 0.0;
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        const double s = num(se[i]);
        if (s > 0.0) max_z = std::max(max_z, std::abs(num(lhs[i]) - num(rhs[i])) / s);
        plot_csv += suite + ',' + c.at("check").get<std::string>() + ',' +
                    levylab::format_double(num(grid[i])) + ',' + levylab::format_double(num(lhs[i])) +
                    ',' + levylab::format_double(s) + '\n';
      }
      rows.push_back({suite, c.at("check").get<std::string>(), lhs.size(), c.at("pass").get<bool>(), max_z});
    }
  }
  std::string text;
  if (format == "md") {
    text = "| suite | check | rows | max abs z | pass |\n|---|---|---|---|---|\n";
    for (const auto& r : rows)
      text += "| " + r.suite + " | " + r.check + " | " + std::to_string(r.rows) + " | " +
              levylab::format_double(r.max_z) + " | " + (r.pass ? "yes" : "no") + " |\n";
  } else {
    text = "suite,check,rows,max_abs_z,pass\n";
    for (const auto& r : rows)
      text += r.suite + ',' + r.check + ',' + std::to_string(r.rows) + ',' + levylab::format_double(r.max_z) +
              ',' + (r.pass ? "true" : "false") + '\n';
  }
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
  if (!plot.empty()) write_file(plot, plot_csv);
  bool all = true;
  for (const auto& r : rows) all = all && r.pass;
  return all ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"levylab: simulation and verification of Levy random measures"};
  app.require_subcommand(1);

  Flags sample_flags, verify_flags;
  auto* sample = app.add_subcommand("sample", "draw random measures or sequences as JSON lines");
  add_common(sample, sample_flags);
  sample->add_option("--model", sample_flags.model, "gamma, stable, tempered-stable, tilted-stable, pd, pd-alpha-theta, cpd");
  sample->add_option("--lambda", sample_flags.lambda, "gamma rate or tempering tilt");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, verify_flags);
  verify->add_option("--suite", verify_flags.suite, "suite name")->required(false);
  verify->add_option("--alpha-grid", verify_flags.alpha_grid, "comma separated alpha grid")->delimiter(',');
  verify->add_option("--model", verify_flags.model, "ignored by most suites");

  std::vector<std::string> inputs;
  std::string report_format = "csv", report_out, report_plot;
  auto* report = app.add_subcommand("report", "summarize suite reports");
  report->add_option("inputs", inputs, "report JSON files")->required();
  report->add_option("--format", report_format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
  report->add_option("--out", report_out, "summary output path (stdout if omitted)");
  report->add_option("--plot", report_plot, "plot-ready CSV (suite,check,x,y,se)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (*sample) return cmd_sample(resolve(sample, sample_flags, "sample"));
    if (*verify) {
      ExperimentConfig cfg = resolve(verify, verify_flags, "verify");
      return cmd_verify(cfg);
    }
    if (*report) return cmd_report(inputs, report_format, report_out, report_plot);
  } catch (const levylab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
