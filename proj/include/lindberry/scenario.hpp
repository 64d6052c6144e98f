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


// Scenario files are flat INI text with four sections:
//
//   [model]       muB, omega, k, theta, nbar, alpha, tracer_a,
//                 adiabatic_threshold, weak_threshold
//   [run]         name, channel, frame, source, duration | duration_periods |
//                 duration_decays, sample_count
//   [integrator]  method, step, rtol, atol, max_step
//   [outputs]     emit, checks, spectrum_lo, spectrum_hi, spectrum_points,
//                 spectrum_window
//
// omega, k, step, max_step, spectrum_lo and spectrum_hi are ratios against
// muB; duration is in units of 1/muB. Angles are radians.

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lindberry/evolution.hpp"
#include "lindberry/generators.hpp"
#include "lindberry/model.hpp"
#include "lindberry/spectrum.hpp"

namespace lindberry {

enum class Source { Numerical, Exact, Adiabatic };

std::string_view to_string(Source source);

enum class Output { Trajectory, Bloch, Magnetization, Spectrum, Compare, Phases };

std::string_view to_string(Output output);

struct SpectrumOptions {
  /// Band edges as multiples of muB; both 0 selects 2 muB +- 20 linewidths.
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 2001;
  Window window = Window::None;
};

struct ScenarioConfig {
  std::string name = "scenario";
  ModelParams params;
  Channel channel = Channel::Thermal;
  Frame frame = Frame::Diagonal;
  Source source = Source::Numerical;
  double duration = 0.0;
  std::size_t sample_count = 1001;
  IntegratorOptions integrator;
  std::vector<Output> outputs;
  std::vector<std::string> checks;
  SpectrumOptions spectrum;

  bool emits(Output o) const;
};

/// Names accepted in [outputs] checks.
const std::vector<std::string>& known_checks();

/// Throws ConfigError naming the line and key for syntax errors, unknown or
/// duplicate keys, missing required keys and out-of-range values.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  /// How measured is judged: "abs_diff", "rel_diff", "max", "below", "ratio_range".
  std::string rule;
};

struct ValidationReport {
  std::string scenario;
  std::vector<CheckResult> rows;
  /// Comparisons that were refused, with the reason.
  std::vector<std::string> notes;

  bool all_pass() const;
  void add(CheckResult row) { rows.push_back(std::move(row)); }
  void merge(const ValidationReport& other);

  std::string text() const;
  std::string json() const;
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  double tolerance_scale = 1.0;
};

struct ScenarioResult {
  ValidationReport report;
  std::vector<std::filesystem::path> files;
};

/// The trajectory the scenario describes, in cfg.frame for numerical runs,
/// the Diagonal frame for exact runs and the Instantaneous frame for
/// adiabatic runs.
Trajectory scenario_trajectory(const ScenarioConfig& cfg);

/// Runs the scenario, writes the requested files plus report.txt and
/// report.json into opts.out_dir.
ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {});

/// Evaluates cfg.checks against `traj` (the scenario trajectory); checks
/// that need companion runs perform them internally.
ValidationReport run_checks(const ScenarioConfig& cfg, const Trajectory& traj,
                            double tolerance_scale = 1.0);

/// Cross-checks exact diagonal, numerical diagonal, numerical instantaneous
/// (mapped back) and, where the regime allows, the adiabatic closed form.
ValidationReport compare_modes(const ScenarioConfig& cfg, double tolerance_scale = 1.0);

/// Magnetization spectrum band and Lorentzian fit for a trajectory.
struct SpectrumResult {
  Spectrum band;
  PeakFit fit;
};
SpectrumResult magnetization_spectrum(const ScenarioConfig& cfg, const Trajectory& traj);

/// Preset scenario text by name; throws ConfigError for unknown names.
std::string_view preset_text(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace lindberry
