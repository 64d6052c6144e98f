// Copyright 2026 The lindberry Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "lindberry/acceptance.hpp"
#include "lindberry/errors.hpp"
#include "lindberry/scenario.hpp"

namespace {

enum Exit { kOk = 0, kValidationFailed = 1, kUsage = 2, kNumerical = 3 };

namespace lb = lindberry;

int finish(const lb::ValidationReport& report) {
  std::cout << report.text();
  return report.all_pass() ? kOk : kValidationFailed;
}

int simulate(const lb::ScenarioConfig& cfg, const lb::RunOptions& opts) {
  const lb::ScenarioResult result = lb::run_scenario(cfg, opts);
  for (const auto& f : result.files) std::cerr << "wrote " << f.string() << '\n';
  return finish(result.report);
}

int compare(const lb::ScenarioConfig& cfg, const lb::RunOptions& opts) {
  lb::ValidationReport report = lb::compare_modes(cfg, opts.tolerance_scale);
  std::filesystem::create_directories(opts.out_dir);
  std::ofstream(opts.out_dir / "compare_report.txt") << report.text();
  std::ofstream(opts.out_dir / "compare_report.json") << report.json();
  return finish(report);
}

int validate(double scale) {
  bool all = true;
  lb::acceptance::run_all(scale, [&all](const lb::acceptance::CriterionResult& r) {
    std::cout << lb::acceptance::format(r) << std::endl;
    all = all && r.pass;
  });
  return all ? kOk : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative spin-1/2 precession: simulation, spectra and validation"};
  app.require_subcommand(1);

  std::string out = ".";
  bool seedless = false;
  double tolerance_scale = 1.0;
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_flag("--seedless", seedless, "Reserved; runs are deterministic already");
  app.add_option("--tolerance-scale", tolerance_scale, "Multiply every check tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string config;
  auto* sim = app.add_subcommand("simulate", "Run a scenario file");
  sim->add_option("config", config, "Scenario file")->required();
  auto* cmp = app.add_subcommand("compare", "Cross-check solution modes for a scenario");
  cmp->add_option("config", config, "Scenario file")->required();
  auto* spec = app.add_subcommand("spectrum", "Run a scenario with spectrum output");
  spec->add_option("config", config, "Scenario file")->required();
  std::string preset;
  auto* pre = app.add_subcommand("preset", "Run a bundled preset");
  pre->add_option("name", preset, "Preset name")->required();
  bool dump = false;
  pre->add_flag("--print", dump, "Print the preset text instead of running it");
  auto* val = app.add_subcommand("validate", "Run the acceptance suite");
  for (auto* sub : {sim, cmp, spec, pre, val}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const lb::RunOptions opts{out, tolerance_scale};
  try {
    if (val->parsed()) return validate(tolerance_scale);
    if (pre->parsed()) {
      const std::string text(lb::preset_text(preset));
      if (dump) {
        std::cout << text;
        return kOk;
      }
      return simulate(lb::parse_config(text), opts);
    }
    lb::ScenarioConfig cfg = lb::load_config(config);
    if (cmp->parsed()) return compare(cfg, opts);
    if (spec->parsed()) {
      for (lb::Output o : {lb::Output::Magnetization, lb::Output::Spectrum}) {
        if (!cfg.emits(o)) cfg.outputs.push_back(o);
      }
    }
    return simulate(cfg, opts);
  } catch (const lb::ConfigError& e) {
    std::cerr << "config error";
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    if (!e.key().empty()) std::cerr << " [" << e.key() << "]";
    std::cerr << ": " << e.what() << '\n';
    if (pre->parsed()) {
      std::cerr << "available presets:";
      for (const auto& n : lb::preset_names()) std::cerr << ' ' << n;
      std::cerr << '\n';
    }
    return kUsage;
  } catch (const lb::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const lb::RegimeError& e) {
    std::cerr << "regime error: " << e.what() << '\n';
    return kUsage;
  } catch (const lb::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "file error: " << e.what() << '\n';
    return kUsage;
  }
}
