// Copyright 2026 The Tripod Authors
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

#include "tripodsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tripodsim {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

// Typed access to one JSON object; remembers which keys were consumed so the
// rest can be reported as unknown.
class Section {
 public:
  Section(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_.empty() ? "config" : path_, "expected an object");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  const Json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key) {
    const Json& v = raw(key);
    if (!v.is_number()) fail(field(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(field(key), "must be finite");
    return x;
  }

  void number(const std::string& key, double& out) {
    if (has(key)) out = number(key);
  }

  void number(const std::string& key, std::optional<double>& out) {
    if (has(key)) out = number(key);
  }

  std::uint64_t count(const std::string& key) {
    const Json& v = raw(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      fail(field(key), "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::string text(const std::string& key) {
    const Json& v = raw(key);
    if (!v.is_string()) fail(field(key), "expected a string");
    return v.get<std::string>();
  }

  void text(const std::string& key, std::string& out) {
    if (has(key)) out = text(key);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail(field(it.key()), "unknown key");
    }
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

SystemKind parse_system_kind(const std::string& s, const std::string& field) {
  if (s == "lambda") return SystemKind::lambda;
  if (s == "tripod") return SystemKind::tripod;
  if (s == "two_atom") return SystemKind::two_atom;
  fail(field, "unknown system kind '" + s + "' (expected lambda, tripod or two_atom)");
}

std::vector<std::string> drive_labels(SystemKind kind) {
  if (kind == SystemKind::lambda) return {"j", "2"};
  return {"0", "1", "2"};
}

tripod::BasisPtr basis_for(SystemKind kind) {
  switch (kind) {
    case SystemKind::lambda: return tripod::lambda_basis();
    case SystemKind::tripod: return tripod::tripod_basis();
    case SystemKind::two_atom: return tripod::two_atom_basis();
  }
  return tripod::lambda_basis();
}

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

}  // namespace

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::lambda: return "lambda";
    case SystemKind::tripod: return "tripod";
    case SystemKind::two_atom: return "two_atom";
  }
  return "unknown";
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> v(points);
  if (points == 1) {
    v[0] = min;
    return v;
  }
  for (std::size_t i = 0; i < points; ++i) {
    v[i] = i + 1 == points
               ? max
               : min + (max - min) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return v;
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names = {
      "tau",      "delta_t",  "delta_T",      "t_start", "omega_max", "omega_max_scale",
      "coupling", "detuning", "target_phase", "slope"};
  return names;
}

ExperimentConfig parse_config(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: not valid JSON: ") + e.what());
  }

  ExperimentConfig c;
  Section top(root, "");

  if (top.has("system")) {
    Section s(top.raw("system"), "system");
    if (s.has("kind")) c.system.kind = parse_system_kind(s.text("kind"), s.field("kind"));
    c.system.initial_state = c.system.kind == SystemKind::two_atom ? "11"
                             : c.system.kind == SystemKind::tripod ? "1"
                                                                   : "j";
    s.text("initial_state", c.system.initial_state);
    s.number("detuning", c.system.detuning);
    s.number("coupling", c.system.coupling);
    s.finish();
  }

  if (top.has("schedule")) {
    Section s(top.raw("schedule"), "schedule");
    s.number("tau", c.schedule.tau);
    s.number("delta_t", c.schedule.delta_t);
    s.number("delta_T", c.schedule.delta_T);
    s.number("t_start", c.schedule.t_start);
    s.finish();
  }

  if (top.has("drives")) {
    const Json& d = top.raw("drives");
    if (!d.is_object()) fail("drives", "expected an object keyed by level label");
    for (auto it = d.begin(); it != d.end(); ++it) {
      Section s(it.value(), "drives." + it.key());
      DriveConfig dc;
      s.number("omega_max", dc.omega_max);
      s.number("phase0", dc.phase0);
      s.number("slope", dc.slope);
      s.finish();
      c.drives[it.key()] = dc;
    }
  }

  if (top.has("grid")) {
    Section s(top.raw("grid"), "grid");
    s.number("t_start", c.grid.t_start);
    s.number("t_end", c.grid.t_end);
    s.number("base_step", c.grid.base_step);
    if (s.has("sample_stride")) c.grid.sample_stride = s.count("sample_stride");
    s.number("convergence_tol", c.grid.convergence_tol);
    if (s.has("max_halvings")) c.grid.max_halvings = static_cast<int>(std::min<std::uint64_t>(s.count("max_halvings"), 1000));
    s.finish();
  }

  if (top.has("gate")) {
    Section s(top.raw("gate"), "gate");
    GateConfig g;
    if (!s.has("kind")) fail("gate.kind", "required");
    try {
      g.kind = tripod::parse_gate_kind(s.text("kind"));
    } catch (const std::invalid_argument& e) {
      fail("gate.kind", e.what());
    }
    s.number("omega_max", g.omega_max);
    s.number("omega_max_2", g.omega_max_2);
    s.number("target_phase", g.target_phase);
    s.number("slope", g.slope);
    s.number("coupling", g.coupling);
    s.number("detuning", g.detuning);
    s.number("convergence_tol", g.convergence_tol);
    s.number("base_step", g.base_step);
    s.finish();
    c.gate = g;
  }

  if (top.has("sweep")) {
    Section s(top.raw("sweep"), "sweep");
    SweepConfig sc;
    if (!s.has("axes")) fail("sweep.axes", "required");
    const Json& axes = s.raw("axes");
    if (!axes.is_array()) fail("sweep.axes", "expected an array");
    for (std::size_t i = 0; i < axes.size(); ++i) {
      Section a(axes[i], "sweep.axes[" + std::to_string(i) + "]");
      SweepAxis ax;
      if (!a.has("parameter")) fail(a.field("parameter"), "required");
      ax.parameter = a.text("parameter");
      if (!a.has("min")) fail(a.field("min"), "required");
      ax.min = a.number("min");
      ax.max = ax.min;
      a.number("max", ax.max);
      if (a.has("points")) ax.points = a.count("points");
      a.finish();
      sc.axes.push_back(ax);
    }
    s.finish();
    c.sweep = sc;
  }

  if (top.has("output")) {
    Section s(top.raw("output"), "output");
    s.text("trajectory", c.output.trajectory);
    s.text("gate_report", c.output.gate_report);
    s.text("sweep", c.output.sweep);
    s.text("phase", c.output.phase);
    s.text("manifest", c.output.manifest);
    s.finish();
  }

  if (top.has("seed")) c.seed = top.count("seed");
  top.finish();

  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  Json root;
  root["system"] = {{"kind", to_string(c.system.kind)},
                    {"initial_state", c.system.initial_state},
                    {"detuning", c.system.detuning},
                    {"coupling", c.system.coupling}};
  root["schedule"] = {{"tau", c.schedule.tau},
                      {"delta_t", c.schedule.delta_t},
                      {"delta_T", c.schedule.delta_T},
                      {"t_start", c.schedule.t_start}};
  Json drives = Json::object();
  for (const auto& [label, d] : c.drives) {
    drives[label] = {{"omega_max", d.omega_max}, {"phase0", d.phase0}, {"slope", d.slope}};
  }
  root["drives"] = drives;
  root["grid"] = {{"t_start", optional_number(c.grid.t_start)},
                  {"t_end", optional_number(c.grid.t_end)},
                  {"base_step", optional_number(c.grid.base_step)},
                  {"sample_stride", c.grid.sample_stride},
                  {"convergence_tol", c.grid.convergence_tol},
                  {"max_halvings", c.grid.max_halvings}};
  if (c.gate) {
    const GateConfig& g = *c.gate;
    root["gate"] = {{"kind", tripod::to_string(g.kind)},
                    {"omega_max", g.omega_max},
                    {"omega_max_2", optional_number(g.omega_max_2)},
                    {"target_phase", optional_number(g.target_phase)},
                    {"slope", optional_number(g.slope)},
                    {"coupling", g.coupling},
                    {"detuning", g.detuning},
                    {"convergence_tol", g.convergence_tol},
                    {"base_step", optional_number(g.base_step)}};
  }
  if (c.sweep) {
    Json axes = Json::array();
    for (const auto& a : c.sweep->axes) {
      axes.push_back(
          {{"parameter", a.parameter}, {"min", a.min}, {"max", a.max}, {"points", a.points}});
    }
    root["sweep"] = {{"axes", axes}};
  }
  root["output"] = {{"trajectory", c.output.trajectory},
                    {"gate_report", c.output.gate_report},
                    {"sweep", c.output.sweep},
                    {"phase", c.output.phase},
                    {"manifest", c.output.manifest}};
  root["seed"] = c.seed;
  return root.dump(2) + "\n";
}

void validate_config(const ExperimentConfig& c) {
  try {
    c.schedule.validate();
  } catch (const std::invalid_argument& e) {
    fail("schedule", e.what());
  }

  const tripod::BasisPtr basis = basis_for(c.system.kind);
  if (!basis->contains(c.system.initial_state)) {
    fail("system.initial_state", "'" + c.system.initial_state + "' is not a level of a " +
                                     to_string(c.system.kind) + " system");
  }
  if (c.system.kind != SystemKind::two_atom && c.system.coupling != 0.0) {
    fail("system.coupling", "only a two_atom system has a coupling");
  }

  const auto labels = drive_labels(c.system.kind);
  for (const auto& [label, d] : c.drives) {
    if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
      std::string allowed;
      for (const auto& l : labels) allowed += (allowed.empty() ? "" : ", ") + l;
      fail("drives." + label, "no such field for a " + to_string(c.system.kind) +
                                  " system (expected one of " + allowed + ")");
    }
    if (d.omega_max < 0.0) fail("drives." + label + ".omega_max", "must be >= 0");
  }

  const GridConfig& g = c.grid;
  if (g.base_step && !(*g.base_step > 0.0)) fail("grid.base_step", "must be > 0");
  if (g.sample_stride < 1) fail("grid.sample_stride", "must be >= 1");
  if (!(g.convergence_tol > 0.0)) fail("grid.convergence_tol", "must be > 0");
  if (g.max_halvings < 1 || g.max_halvings > 30) fail("grid.max_halvings", "must be in [1, 30]");
  if (g.t_start && g.t_end && !(*g.t_end > *g.t_start)) fail("grid.t_end", "must be > grid.t_start");

  if (c.gate) {
    const GateConfig& q = *c.gate;
    if (!(q.omega_max > 0.0)) fail("gate.omega_max", "must be > 0");
    if (q.omega_max_2 && !(*q.omega_max_2 > 0.0)) fail("gate.omega_max_2", "must be > 0");
    if (!(q.convergence_tol > 0.0)) fail("gate.convergence_tol", "must be > 0");
    if (q.base_step && !(*q.base_step > 0.0)) fail("gate.base_step", "must be > 0");
    if (q.kind == tripod::GateKind::phase && !q.target_phase && !q.slope) {
      fail("gate", "a phase gate needs target_phase or slope");
    }
    if (q.kind != tripod::GateKind::controlled_phase && q.coupling != 0.0) {
      fail("gate.coupling", "only a controlled_phase gate has a coupling");
    }
    if (q.kind == tripod::GateKind::controlled_phase) {
      if (q.detuning != 0.0) fail("gate.detuning", "controlled_phase requires zero detuning");
      if (q.slope && *q.slope != 0.0) fail("gate.slope", "controlled_phase keeps the laser phases fixed");
      if (q.coupling == 0.0 && q.target_phase && std::abs(tripod::wrap_phase(*q.target_phase)) > 1e-12) {
        fail("gate.target_phase", "zero coupling gives no two-qubit phase");
      }
    }
    if (q.kind == tripod::GateKind::hadamard && q.omega_max_2 &&
        std::abs(*q.omega_max_2 - q.omega_max) > 1e-12 * q.omega_max) {
      fail("gate.omega_max_2", "hadamard needs omega_max_2 equal to omega_max");
    }
  }

  if (c.sweep) {
    if (!c.gate) fail("sweep", "a sweep runs a gate; add a gate section");
    const auto& axes = c.sweep->axes;
    if (axes.empty() || axes.size() > 2) fail("sweep.axes", "need one or two axes");
    const auto& names = sweep_parameters();
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const std::string f = "sweep.axes[" + std::to_string(i) + "]";
      if (std::find(names.begin(), names.end(), axes[i].parameter) == names.end()) {
        fail(f + ".parameter", "unknown sweep parameter '" + axes[i].parameter + "'");
      }
      if (axes[i].points < 1) fail(f + ".points", "must be >= 1");
      if (axes[i].points > 100000) fail(f + ".points", "must be <= 100000");
    }
    if (axes.size() == 2 && axes[0].parameter == axes[1].parameter) {
      fail("sweep.axes[1].parameter", "repeats axis 0");
    }
  }

  for (const auto* name : {&c.output.trajectory, &c.output.gate_report, &c.output.sweep,
                           &c.output.phase, &c.output.manifest}) {
    if (name->empty()) fail("output", "file names must be non-empty");
  }
}

}  // namespace tripodsim
