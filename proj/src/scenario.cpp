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


#include "lindberry/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "lindberry/adiabatic.hpp"
#include "lindberry/errors.hpp"

namespace lindberry {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kPresets[];
extern const std::size_t kPresetCount;
}  // namespace detail

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------- parsing

struct Entry {
  std::string value;
  std::size_t line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"model",
       {"muB", "omega", "k", "theta", "nbar", "alpha", "tracer_a", "adiabatic_threshold",
        "weak_threshold"}},
      {"run",
       {"name", "channel", "frame", "source", "duration", "duration_periods",
        "duration_decays", "sample_count"}},
      {"integrator", {"method", "step", "rtol", "atol", "max_step"}},
      {"outputs",
       {"emit", "checks", "spectrum_lo", "spectrum_hi", "spectrum_points", "spectrum_window"}},
  };
  return s;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Table {
 public:
  explicit Table(std::string_view text) {
    std::string current;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto end = std::min(text.find('\n', pos), text.size());
      std::string_view raw = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (const auto c = raw.find_first_of("#;"); c != std::string_view::npos) {
        raw = raw.substr(0, c);
      }
      const std::string line = trim(raw);
      if (line.empty()) continue;

      if (line.front() == '[') {
        if (line.back() != ']') throw ConfigError(line_no, line, "unterminated section header");
        current = trim(std::string_view(line).substr(1, line.size() - 2));
        if (!schema().contains(current)) {
          throw ConfigError(line_no, current, "unknown section [" + current + "]");
        }
        sections_[current];
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError(line_no, line, "expected 'key = value'");
      }
      const std::string key = trim(std::string_view(line).substr(0, eq));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      if (key.empty()) throw ConfigError(line_no, key, "empty key");
      if (current.empty()) throw ConfigError(line_no, key, "key outside any section");
      if (!schema().at(current).contains(key)) {
        throw ConfigError(line_no, key, "unknown key '" + key + "' in [" + current + "]");
      }
      if (value.empty()) throw ConfigError(line_no, key, "missing value for '" + key + "'");
      auto [it, fresh] = sections_[current].try_emplace(key, Entry{value, line_no});
      if (!fresh) {
        throw ConfigError(line_no, key,
                          "duplicate key '" + key + "' (first set on line " +
                              std::to_string(it->second.line) + ")");
      }
    }
  }

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto e = s->second.find(key);
    return e == s->second.end() ? nullptr : &e->second;
  }

  std::size_t line(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    return e ? e->line : 0;
  }

  std::optional<double> number(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    double v = 0.0;
    const char* first = e->value.data();
    const char* last = first + e->value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
      throw ConfigError(e->line, key, "'" + e->value + "' is not a finite number");
    }
    return v;
  }

  double number_or(const std::string& section, const std::string& key, double fallback) const {
    return number(section, key).value_or(fallback);
  }

  std::optional<std::string> text(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    return e->value;
  }

 private:
  std::map<std::string, Section> sections_;
};

template <typename Enum>
Enum pick(const Table& t, const std::string& section, const std::string& key, Enum fallback,
          const std::vector<std::pair<std::string, Enum>>& choices) {
  const auto v = t.text(section, key);
  if (!v) return fallback;
  for (const auto& [name, value] : choices) {
    if (*v == name) return value;
  }
  std::string allowed;
  for (const auto& c : choices) allowed += (allowed.empty() ? "" : ", ") + c.first;
  throw ConfigError(t.line(section, key), key,
                    "'" + *v + "' is not one of: " + allowed);
}

void require(bool ok, const Table& t, const std::string& section, const std::string& key,
             const std::string& what) {
  if (!ok) throw ConfigError(t.line(section, key), key, what);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

// ---------------------------------------------------------------- output helpers

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
      : out_(path) {
    if (!out_) throw Error("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }

  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      out_ << (first ? "" : ",") << g17(v);
      first = false;
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

ComplexMatrix2 in_frame(const Sample& s, Frame from, Frame to, const ModelParams& p) {
  return convert_matrix(s.rho.matrix(), from, to, p, s.t);
}

double drive_period(const ModelParams& p) { return 2.0 * kPi / std::abs(p.omega); }

double coherence_rate(Channel c, const ModelParams& p) {
  return c == Channel::Thermal ? p.k * (2.0 * p.nbar + 1.0) : p.k;
}

IntegratorOptions tight_rk45() {
  IntegratorOptions o;
  o.method = Method::RK45Adaptive;
  o.rtol = 1e-12;
  o.atol = 1e-14;
  return o;
}

Trajectory numerical(const ScenarioConfig& cfg, Frame frame, std::span<const double> grid,
                     const IntegratorOptions& opts) {
  const ComplexMatrix2 rho0 =
      convert_matrix(initial_state(cfg.params).matrix(), Frame::Lab, frame, cfg.params, 0.0);
  return evolve({cfg.channel, frame, cfg.params}, DensityMatrix(rho0), grid, opts);
}

Trajectory exact_diagonal(const ScenarioConfig& cfg, std::span<const double> grid) {
  const DensityMatrix rho0(convert_matrix(initial_state(cfg.params).matrix(), Frame::Lab,
                                          Frame::Diagonal, cfg.params, 0.0));
  Trajectory traj{Frame::Diagonal, {}};
  traj.samples.reserve(grid.size());
  for (double t : grid) {
    traj.samples.push_back({t, evolve_exact_diagonal(cfg.channel, cfg.params, rho0, t)});
  }
  return traj;
}

Trajectory adiabatic(const ScenarioConfig& cfg, std::span<const double> grid) {
  Trajectory traj{Frame::Instantaneous, {}};
  traj.samples.reserve(grid.size());
  for (double t : grid) traj.samples.push_back({t, adiabatic_rho_I(cfg.channel, cfg.params, t)});
  return traj;
}

// Largest elementwise difference between two trajectories on the same grid,
// both expressed in `frame`, restricted to t <= t_max.
double max_deviation(const Trajectory& a, const Trajectory& b, Frame frame,
                     const ModelParams& p, double t_max) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.samples.size() && a.samples[i].t <= t_max; ++i) {
    const ComplexMatrix2 x = in_frame(a.samples[i], a.frame, frame, p);
    const ComplexMatrix2 y = in_frame(b.samples[i], b.frame, frame, p);
    worst = std::max(worst, max_abs(x - y));
  }
  return worst;
}

double population_drift(const Trajectory& traj, Frame frame, const ModelParams& p,
                        double t_max = std::numeric_limits<double>::infinity()) {
  const double start = in_frame(traj.samples.front(), traj.frame, frame, p)(0, 0).real();
  double worst = 0.0;
  for (const Sample& s : traj.samples) {
    if (s.t > t_max) break;
    worst = std::max(worst, std::abs(in_frame(s, traj.frame, frame, p)(0, 0).real() - start));
  }
  return worst;
}

CheckResult max_row(std::string name, double measured, double tol) {
  return {std::move(name), measured <= tol, measured, 0.0, tol, "max"};
}

CheckResult abs_row(std::string name, double measured, double expected, double tol) {
  return {std::move(name), std::abs(measured - expected) <= tol, measured, expected, tol,
          "abs_diff"};
}

CheckResult rel_row(std::string name, double measured, double expected, double tol) {
  const bool ok = std::abs(measured - expected) <= tol * std::abs(expected);
  return {std::move(name), ok, measured, expected, tol, "rel_diff"};
}

// ---------------------------------------------------------------- checks

void check_invariants(const Trajectory& traj, double scale, ValidationReport& r) {
  double trace = 0.0, herm = 0.0, min_eig = 1.0;
  for (const Sample& s : traj.samples) {
    const ComplexMatrix2& m = s.rho.matrix();
    trace = std::max(trace, std::abs(m.trace() - 1.0));
    herm = std::max(herm, max_abs(m - m.adjoint()));
    min_eig = std::min(min_eig, hermitian_eigenvalues(m)[0]);
  }
  r.add(max_row("trace_drift", trace, 1e-10 * scale));
  r.add(max_row("hermiticity", herm, 1e-12 * scale));
  r.add({"positivity", min_eig >= -1e-8 * scale, min_eig, 0.0, 1e-8 * scale, "min"});
}

void check_radius_monotone(const Trajectory& traj, ValidationReport& r) {
  double worst = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& [t, s] : bloch_trajectory(traj)) {
    const double radius = std::hypot(s.x, s.y);
    worst = std::max(worst, radius - prev);
    prev = radius;
  }
  r.add(max_row("radius_monotone", worst, 0.0));
}

void check_final_sz(const Trajectory& traj, ValidationReport& r) {
  const double sz = bloch_from_density(traj.samples.back().rho).z;
  r.add({"final_sz_negative", sz < 0.0, sz, 0.0, 0.0, "below"});
}

void check_berry_shift(const ScenarioConfig& cfg, double scale, ValidationReport& r) {
  ScenarioConfig with = cfg;
  with.source = Source::Adiabatic;
  with.frame = Frame::Instantaneous;
  with.params.tracer_a = 1.0;
  ScenarioConfig without = with;
  without.params.tracer_a = 0.0;

  const PeakFit f1 = magnetization_spectrum(with, scenario_trajectory(with)).fit;
  const PeakFit f0 = magnetization_spectrum(without, scenario_trajectory(without)).fit;
  const ModelParams& p = cfg.params;
  const double shift = p.omega * std::cos(p.theta);
  const double width = coherence_rate(Channel::Thermal, p);

  r.add(abs_row("berry_shift", f0.center - f1.center, shift, 1e-4 * scale));
  r.add(abs_row("resonance_center_a1", f1.center, 2.0 * p.muB - shift, 5e-5 * scale));
  r.add(abs_row("resonance_center_a0", f0.center, 2.0 * p.muB, 5e-5 * scale));
  r.add(rel_row("linewidth_a1", f1.hwhm, width, 0.05 * scale));
  r.add(rel_row("linewidth_a0", f0.hwhm, width, 0.05 * scale));
}

void check_population_constant(const ScenarioConfig& cfg, double scale, ValidationReport& r) {
  const ModelParams& p = cfg.params;
  const double period = drive_period(p);
  const std::vector<double> grid = uniform_grid(period, 2001);

  r.add(max_row("population_constant_closed_form",
                population_drift(adiabatic(cfg, grid), Frame::Instantaneous, p), 1e-8 * scale));
  r.add(max_row("population_constant_diagonal",
                population_drift(numerical(cfg, Frame::Diagonal, grid, tight_rk45()),
                                 Frame::Diagonal, p),
                1e-8 * scale));
  r.add(max_row("population_drift_instantaneous",
                population_drift(numerical(cfg, Frame::Instantaneous, grid, tight_rk45()),
                                 Frame::Instantaneous, p),
                std::abs(p.omega) / p.muB * scale));
}

void check_decay_rate(const ScenarioConfig& cfg, const Trajectory& traj, double scale,
                      ValidationReport& r) {
  const ModelParams& p = cfg.params;
  const double g = 2.0 * p.nbar + 1.0;
  const double floor_value = p.nbar / g;
  const double y0 = in_frame(traj.samples.front(), traj.frame, Frame::Instantaneous, p)(0, 0)
                        .real() - floor_value;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const Sample& s : traj.samples) {
    const double y =
        in_frame(s, traj.frame, Frame::Instantaneous, p)(0, 0).real() - floor_value;
    if (!(y > 0.05 * y0)) break;
    const double ly = std::log(y);
    sx += s.t;
    sy += ly;
    sxx += s.t * s.t;
    sxy += s.t * ly;
    ++n;
  }
  double rate = 0.0;
  if (n >= 3) {
    const double dn = static_cast<double>(n);
    rate = -(dn * sxy - sx * sy) / (dn * sxx - sx * sx);
  }
  r.add(rel_row("population_decay_rate", rate, 2.0 * p.k * g, 0.01 * scale));
}

void check_adiabatic_deviation(const ScenarioConfig& cfg, double scale, ValidationReport& r) {
  const ModelParams& p = cfg.params;
  const double span = std::min(cfg.duration, drive_period(p));
  const std::vector<double> grid = uniform_grid(span, 2001);
  const Trajectory numeric = numerical(cfg, Frame::Instantaneous, grid, tight_rk45());
  r.add(max_row("adiabatic_deviation",
                max_deviation(adiabatic(cfg, grid), numeric, Frame::Instantaneous, p, span),
                1e-2 * scale));
}

// ---------------------------------------------------------------- emission

void write_trajectory(const std::filesystem::path& path, const Trajectory& traj) {
  CsvWriter w(path, {"t", "rho11_re", "rho11_im", "rho12_re", "rho12_im", "rho21_re",
                     "rho21_im", "rho22_re", "rho22_im"});
  for (const Sample& s : traj.samples) {
    const ComplexMatrix2& m = s.rho.matrix();
    w.row({s.t, m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag(),
           m(1, 0).real(), m(1, 0).imag(), m(1, 1).real(), m(1, 1).imag()});
  }
}

void write_bloch(const std::filesystem::path& dir, const Trajectory& traj,
                 std::vector<std::filesystem::path>& files) {
  CsvWriter xyz(dir / "bloch_xyz.csv", {"t", "Sx", "Sy", "Sz", "norm", "linear_entropy"});
  CsvWriter xy(dir / "bloch_xy.csv", {"t", "Sx", "Sy", "radius"});
  for (const Sample& s : traj.samples) {
    const BlochVector b = bloch_from_density(s.rho);
    xyz.row({s.t, b.x, b.y, b.z, b.norm(), linear_entropy(s.rho)});
    xy.row({s.t, b.x, b.y, std::hypot(b.x, b.y)});
  }
  files.push_back(dir / "bloch_xyz.csv");
  files.push_back(dir / "bloch_xy.csv");
}

void write_spectrum(const std::filesystem::path& path, const Spectrum& s) {
  CsvWriter w(path, {"omega_prime", "re", "im", "abs2"});
  for (std::size_t j = 0; j < s.amplitudes.size(); ++j) {
    const Complex a = s.amplitudes[j];
    w.row({s.frequency(j), a.real(), a.imag(), std::norm(a)});
  }
}

void write_phases(const std::filesystem::path& path, const ScenarioConfig& cfg,
                  const Trajectory& traj) {
  const ModelParams& p = cfg.params;
  const PhaseReport rates = phase_report(cfg.channel, p);
  CsvWriter w(path, {"t", "geometric", "dynamic", "chi", "abs_rho12", "arg_rho12"});
  for (const Sample& s : traj.samples) {
    const Complex c = in_frame(s, traj.frame, Frame::Instantaneous, p)(0, 1);
    w.row({s.t, rates.geometric_rate * s.t, rates.dynamic_rate * s.t,
           rates.imaginary_chi_rate * s.t, std::abs(c), std::arg(c)});
  }
}

std::string status_word(const CheckResult& r) { return r.pass ? "pass" : "FAIL"; }

}  // namespace

// ---------------------------------------------------------------- public API

std::string_view to_string(Source source) {
  switch (source) {
    case Source::Numerical: return "numerical";
    case Source::Exact: return "exact";
    case Source::Adiabatic: return "adiabatic";
  }
  return "?";
}

std::string_view to_string(Output output) {
  switch (output) {
    case Output::Trajectory: return "trajectory";
    case Output::Bloch: return "bloch";
    case Output::Magnetization: return "magnetization";
    case Output::Spectrum: return "spectrum";
    case Output::Compare: return "compare";
    case Output::Phases: return "phases";
  }
  return "?";
}

bool ScenarioConfig::emits(Output o) const {
  return std::find(outputs.begin(), outputs.end(), o) != outputs.end();
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "invariants",        "radius_monotone",   "final_sz_negative",  "berry_shift",
      "population_constant", "decay_rate",      "adiabatic_deviation"};
  return names;
}

ScenarioConfig parse_config(std::string_view text) {
  const Table t(text);
  ScenarioConfig cfg;

  // [model]
  ModelParams& p = cfg.params;
  p.muB = t.number_or("model", "muB", 1.0);
  require(p.muB > 0.0, t, "model", "muB", "muB must be > 0, got " + fmt(p.muB));
  const double omega_ratio = t.number_or("model", "omega", 1e-3);
  const double k_ratio = t.number_or("model", "k", 1e-3);
  p.omega = omega_ratio * p.muB;
  p.k = k_ratio * p.muB;
  p.theta = t.number_or("model", "theta", kPi / 4.0);
  p.nbar = t.number_or("model", "nbar", 0.0);
  p.alpha = t.number_or("model", "alpha", 0.0);
  p.tracer_a = t.number_or("model", "tracer_a", 1.0);
  p.adiabatic_threshold = t.number_or("model", "adiabatic_threshold", p.adiabatic_threshold);
  p.weak_threshold = t.number_or("model", "weak_threshold", p.weak_threshold);
  require(k_ratio >= 0.0, t, "model", "k", "k must be >= 0, got " + fmt(k_ratio));
  require(p.nbar >= 0.0, t, "model", "nbar", "nbar must be >= 0, got " + fmt(p.nbar));
  require(p.theta >= 0.0 && p.theta <= kPi, t, "model", "theta",
          "theta = " + fmt(p.theta) + " is outside [0, pi]");
  require(p.adiabatic_threshold > 0.0, t, "model", "adiabatic_threshold",
          "adiabatic_threshold must be > 0");
  require(p.weak_threshold > 0.0, t, "model", "weak_threshold", "weak_threshold must be > 0");
  try {
    p.validate();
    derived(p);
  } catch (const Error& e) {
    throw ConfigError(0, "model", e.what());
  }

  // [run]
  cfg.name = t.text("run", "name").value_or("scenario");
  cfg.channel = pick(t, "run", "channel", Channel::Thermal,
                     {{"thermal", Channel::Thermal}, {"dephasing", Channel::Dephasing}});
  cfg.source = pick(t, "run", "source", Source::Numerical,
                    {{"numerical", Source::Numerical},
                     {"exact", Source::Exact},
                     {"adiabatic", Source::Adiabatic}});
  const Frame natural =
      cfg.source == Source::Adiabatic ? Frame::Instantaneous : Frame::Diagonal;
  cfg.frame = pick(t, "run", "frame", natural,
                   {{"lab", Frame::Lab},
                    {"rotating", Frame::Rotating},
                    {"diagonal", Frame::Diagonal},
                    {"instantaneous", Frame::Instantaneous}});
  if (cfg.source == Source::Numerical) {
    require(cfg.frame == Frame::Diagonal || cfg.frame == Frame::Instantaneous, t, "run",
            "frame", "numerical runs integrate in the diagonal or instantaneous frame");
  } else {
    require(cfg.frame == natural, t, "run", "frame",
            std::string(to_string(cfg.source)) + " runs are expressed in the " +
                std::string(to_string(natural)) + " frame");
  }

  const auto d_abs = t.number("run", "duration");
  const auto d_periods = t.number("run", "duration_periods");
  const auto d_decays = t.number("run", "duration_decays");
  const int given = int(d_abs.has_value()) + int(d_periods.has_value()) + int(d_decays.has_value());
  if (given == 0) {
    throw ConfigError(0, "duration",
                      "missing required key: one of duration, duration_periods, duration_decays");
  }
  if (given > 1) {
    throw ConfigError(t.line("run", d_abs ? "duration" : "duration_periods"), "duration",
                      "give only one of duration, duration_periods, duration_decays");
  }
  if (d_abs) {
    require(*d_abs > 0.0, t, "run", "duration", "duration must be > 0");
    cfg.duration = *d_abs / p.muB;
  } else if (d_periods) {
    require(*d_periods > 0.0, t, "run", "duration_periods", "duration_periods must be > 0");
    require(p.omega != 0.0, t, "run", "duration_periods", "drive period undefined for omega = 0");
    cfg.duration = *d_periods * drive_period(p);
  } else {
    require(*d_decays > 0.0, t, "run", "duration_decays", "duration_decays must be > 0");
    require(p.k > 0.0, t, "run", "duration_decays", "decay time undefined for k = 0");
    cfg.duration = *d_decays / coherence_rate(cfg.channel, p);
  }
  if (const auto n = t.number("run", "sample_count")) {
    require(*n >= 2.0 && *n == std::floor(*n) && *n < 1e9, t, "run", "sample_count",
            "sample_count must be an integer >= 2");
    cfg.sample_count = static_cast<std::size_t>(*n);
  }

  // [integrator]
  IntegratorOptions& o = cfg.integrator;
  o.method = pick(t, "integrator", "method", Method::RK4Fixed,
                  {{"rk4", Method::RK4Fixed}, {"rk45", Method::RK45Adaptive}});
  o.step = t.number_or("integrator", "step", 0.0) / p.muB;
  o.rtol = t.number_or("integrator", "rtol", o.rtol);
  o.atol = t.number_or("integrator", "atol", o.atol);
  if (const auto m = t.number("integrator", "max_step")) o.max_step = *m / p.muB;
  require(o.step >= 0.0, t, "integrator", "step", "step must be > 0");
  require(o.rtol > 0.0, t, "integrator", "rtol", "rtol must be > 0");
  require(o.atol > 0.0, t, "integrator", "atol", "atol must be > 0");
  require(o.max_step > 0.0, t, "integrator", "max_step", "max_step must be > 0");

  // [outputs]
  if (const auto emit = t.text("outputs", "emit")) {
    for (const std::string& name : split_list(*emit)) {
      bool found = false;
      for (Output out : {Output::Trajectory, Output::Bloch, Output::Magnetization,
                         Output::Spectrum, Output::Compare, Output::Phases}) {
        if (name == to_string(out)) {
          cfg.outputs.push_back(out);
          found = true;
        }
      }
      require(found, t, "outputs", "emit", "unknown output '" + name + "'");
    }
  }
  if (const auto checks = t.text("outputs", "checks")) {
    for (const std::string& name : split_list(*checks)) {
      const auto& known = known_checks();
      require(std::find(known.begin(), known.end(), name) != known.end(), t, "outputs",
              "checks", "unknown check '" + name + "'");
      cfg.checks.push_back(name);
    }
  }
  SpectrumOptions& s = cfg.spectrum;
  s.lo = t.number_or("outputs", "spectrum_lo", 0.0) * p.muB;
  s.hi = t.number_or("outputs", "spectrum_hi", 0.0) * p.muB;
  require((s.lo == 0.0 && s.hi == 0.0) || s.hi > s.lo, t, "outputs", "spectrum_hi",
          "spectrum_hi must exceed spectrum_lo");
  if (const auto n = t.number("outputs", "spectrum_points")) {
    require(*n >= 2.0 && *n == std::floor(*n) && *n < 1e8, t, "outputs", "spectrum_points",
            "spectrum_points must be an integer >= 2");
    s.points = static_cast<std::size_t>(*n);
  }
  s.window = pick(t, "outputs", "spectrum_window", Window::None,
                  {{"none", Window::None}, {"hann", Window::Hann}});

  // Cross-field preconditions.
  const auto has_check = [&](const char* c) {
    return std::find(cfg.checks.begin(), cfg.checks.end(), c) != cfg.checks.end();
  };
  const bool analytic = cfg.source == Source::Adiabatic || cfg.emits(Output::Phases) ||
                        has_check("berry_shift") || has_check("adiabatic_deviation") ||
                        has_check("population_constant");
  if (analytic) {
    try {
      p.require_analytic_regime();
    } catch (const RegimeError& e) {
      const std::string key = cfg.source == Source::Adiabatic ? "source" : "checks";
      throw ConfigError(t.line(key == "source" ? "run" : "outputs", key), key, e.what());
    }
    require(p.omega > 0.0, t, "model", "omega", "analytic outputs need omega > 0");
  }
  if (cfg.emits(Output::Spectrum) || has_check("berry_shift")) {
    const double dt = cfg.duration / static_cast<double>(cfg.sample_count - 1);
    require(dt <= kPi / (4.0 * p.muB), t, "run", "sample_count",
            "sampling too coarse to resolve the 2 muB line: dt = " + fmt(dt) +
                " exceeds pi/(4 muB)");
  }
  if (has_check("decay_rate")) {
    require(cfg.channel == Channel::Thermal && p.k > 0.0, t, "outputs", "checks",
            "decay_rate needs the thermal channel with k > 0");
  }
  if (has_check("population_constant")) {
    require(cfg.channel == Channel::Dephasing, t, "outputs", "checks",
            "population_constant applies to the dephasing channel");
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, path.string(), "cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

bool ValidationReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckResult& r) { return r.pass; });
}

void ValidationReport::merge(const ValidationReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::string ValidationReport::text() const {
  std::size_t width = 5;
  for (const CheckResult& r : rows) width = std::max(width, r.name.size());
  std::ostringstream os;
  os << "scenario: " << scenario << '\n';
  os << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::setw(6)
     << "status" << std::right << std::setw(16) << "measured" << std::setw(16) << "expected"
     << std::setw(12) << "tolerance" << "  rule\n";
  for (const CheckResult& r : rows) {
    os << std::left << std::setw(static_cast<int>(width)) << r.name << "  " << std::setw(6)
       << status_word(r) << std::right << std::setprecision(8) << std::setw(16) << r.measured
       << std::setw(16) << r.expected << std::setprecision(3) << std::setw(12) << r.tolerance
       << "  " << r.rule << '\n';
  }
  for (const std::string& n : notes) os << "note: " << n << '\n';
  os << "result: " << (all_pass() ? "pass" : "FAIL") << '\n';
  return os.str();
}

std::string ValidationReport::json() const {
  nlohmann::json j;
  j["scenario"] = scenario;
  j["pass"] = all_pass();
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& r : rows) {
    j["checks"].push_back({{"name", r.name},
                           {"status", r.pass ? "pass" : "fail"},
                           {"measured", r.measured},
                           {"expected", r.expected},
                           {"tolerance", r.tolerance},
                           {"rule", r.rule}});
  }
  j["notes"] = notes;
  return j.dump(2) + "\n";
}

Trajectory scenario_trajectory(const ScenarioConfig& cfg) {
  const std::vector<double> grid = uniform_grid(cfg.duration, cfg.sample_count);
  switch (cfg.source) {
    case Source::Exact: return exact_diagonal(cfg, grid);
    case Source::Adiabatic: return adiabatic(cfg, grid);
    case Source::Numerical: break;
  }
  return numerical(cfg, cfg.frame, grid, cfg.integrator);
}

SpectrumResult magnetization_spectrum(const ScenarioConfig& cfg, const Trajectory& traj) {
  const ModelParams& p = cfg.params;
  const TimeSeries mz = magnetization(traj, p).z;
  const double resolution = 2.0 * kPi / cfg.duration;
  const double width = std::max(coherence_rate(cfg.channel, p), resolution);
  double lo = cfg.spectrum.lo, hi = cfg.spectrum.hi;
  if (lo == 0.0 && hi == 0.0) {
    const double centre = 2.0 * derived(p).lambda1;
    const double half = std::max(20.0 * width, 4.0 * std::abs(p.omega));
    lo = centre - half;
    hi = centre + half;
  }
  SpectrumResult out{dft_band(mz, lo, hi, cfg.spectrum.points, cfg.spectrum.window), {}};

  std::size_t peak = 0;
  for (std::size_t j = 0; j < out.band.amplitudes.size(); ++j) {
    if (std::norm(out.band.amplitudes[j]) > std::norm(out.band.amplitudes[peak])) peak = j;
  }
  out.fit = fit_lorentzian(out.band, out.band.frequency(peak), width);
  return out;
}

ValidationReport run_checks(const ScenarioConfig& cfg, const Trajectory& traj, double scale) {
  ValidationReport report;
  report.scenario = cfg.name;
  for (const std::string& c : cfg.checks) {
    if (c == "invariants") check_invariants(traj, scale, report);
    else if (c == "radius_monotone") check_radius_monotone(traj, report);
    else if (c == "final_sz_negative") check_final_sz(traj, report);
    else if (c == "berry_shift") check_berry_shift(cfg, scale, report);
    else if (c == "population_constant") check_population_constant(cfg, scale, report);
    else if (c == "decay_rate") check_decay_rate(cfg, traj, scale, report);
    else if (c == "adiabatic_deviation") check_adiabatic_deviation(cfg, scale, report);
  }
  return report;
}

ValidationReport compare_modes(const ScenarioConfig& cfg, double scale) {
  const ModelParams& p = cfg.params;
  ValidationReport r;
  r.scenario = cfg.name;
  const std::vector<double> grid = uniform_grid(cfg.duration, std::min<std::size_t>(
                                                                  cfg.sample_count, 4001));
  const double all = std::numeric_limits<double>::infinity();

  const Trajectory exact = exact_diagonal(cfg, grid);
  const Trajectory diag = numerical(cfg, Frame::Diagonal, grid, tight_rk45());
  const Trajectory inst = numerical(cfg, Frame::Instantaneous, grid, tight_rk45());

  r.add(max_row("exact_vs_diagonal", max_deviation(exact, diag, Frame::Diagonal, p, all),
                1e-8 * scale));
  r.add(max_row("exact_vs_instantaneous", max_deviation(exact, inst, Frame::Diagonal, p, all),
                1e-8 * scale));
  r.add(max_row("diagonal_vs_instantaneous",
                max_deviation(diag, inst, Frame::Diagonal, p, all), 1e-8 * scale));
  if (cfg.channel == Channel::Dephasing) {
    const double drift = std::max({population_drift(exact, Frame::Diagonal, p),
                                   population_drift(diag, Frame::Diagonal, p),
                                   population_drift(inst, Frame::Diagonal, p)});
    r.add(max_row("population_drift_modes", drift, 1e-8 * scale));
  }

  try {
    p.require_analytic_regime();
    if (!(p.omega > 0.0)) throw RegimeError("adiabatic closed form needs omega > 0");
    // Bound: the probe's deviation one step coarser in omega (k/omega fixed).
    const double omega2[] = {2.0 * p.omega};
    ModelParams probe_base = p;
    ProbeOptions probe;
    probe.parallel = false;
    const double bound =
        adiabatic_convergence_probe(cfg.channel, probe_base, omega2, probe).front().deviation;
    const double span = std::min(cfg.duration, drive_period(p));
    r.add(max_row("adiabatic_vs_instantaneous",
                  max_deviation(adiabatic(cfg, grid), inst, Frame::Instantaneous, p, span),
                  bound * scale));
  } catch (const RegimeError& e) {
    r.notes.push_back(std::string("adiabatic comparison refused: ") + e.what());
  }
  return r;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
  namespace fs = std::filesystem;
  fs::create_directories(opts.out_dir);
  const double scale = opts.tolerance_scale;
  ScenarioResult result;
  ValidationReport& report = result.report;
  report.scenario = cfg.name;
  const fs::path& dir = opts.out_dir;

  const Trajectory traj = scenario_trajectory(cfg);

  if (cfg.emits(Output::Trajectory)) {
    write_trajectory(dir / "trajectory.csv", traj);
    result.files.push_back(dir / "trajectory.csv");
  }
  if (cfg.emits(Output::Bloch)) write_bloch(dir, traj, result.files);
  if (cfg.emits(Output::Magnetization)) {
    const Magnetization m = magnetization(traj, cfg.params);
    CsvWriter w(dir / "magnetization.csv", {"t", "mx", "my", "mz"});
    for (std::size_t i = 0; i < m.z.values.size(); ++i) {
      w.row({m.z.time(i), m.x.values[i].real(), m.y.values[i].real(), m.z.values[i].real()});
    }
    result.files.push_back(dir / "magnetization.csv");
  }
  if (cfg.emits(Output::Spectrum)) {
    const SpectrumResult s = magnetization_spectrum(cfg, traj);
    write_spectrum(dir / "spectrum.csv", s.band);
    write_spectrum(dir / "spectrum_transverse.csv",
                   dft(transverse(magnetization(traj, cfg.params)), cfg.spectrum.window, 4));
    result.files.push_back(dir / "spectrum.csv");
    result.files.push_back(dir / "spectrum_transverse.csv");
    std::ostringstream os;
    os << std::setprecision(10) << "m_z line fit: center " << s.fit.center << ", hwhm "
       << s.fit.hwhm << ", residual " << s.fit.residual;
    report.notes.push_back(os.str());
  }
  if (cfg.emits(Output::Phases)) {
    write_phases(dir / "phases.csv", cfg, traj);
    result.files.push_back(dir / "phases.csv");
  }

  report.merge(run_checks(cfg, traj, scale));
  if (cfg.emits(Output::Compare)) report.merge(compare_modes(cfg, scale));

  {
    std::ofstream(dir / "report.txt") << report.text();
    std::ofstream(dir / "report.json") << report.json();
  }
  result.files.push_back(dir / "report.txt");
  result.files.push_back(dir / "report.json");
  return result;
}

std::string_view preset_text(std::string_view name) {
  for (std::size_t i = 0; i < detail::kPresetCount; ++i) {
    if (detail::kPresets[i].first == name) return detail::kPresets[i].second;
  }
  throw ConfigError(0, std::string(name), "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < detail::kPresetCount; ++i) {
    names.emplace_back(detail::kPresets[i].first);
  }
  return names;
}

}  // namespace lindberry
