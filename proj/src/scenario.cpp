// Copyright 2026 The quadref Authors
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


#include "quadref/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "quadref/error.hpp"

namespace quadref::scenario {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& where, const std::string& msg) {
  throw Error(ErrorKind::kConfig, "scenario: " + where + ": " + msg);
}

const json& Section(const json& doc, const char* name, const std::string& where) {
  static const json kEmpty = json::object();
  if (!doc.contains(name)) return kEmpty;
  const json& s = doc.at(name);
  if (!s.is_object()) Fail(where + "." + name, "expected an object");
  return s;
}

void CheckKeys(const json& obj, const std::string& where,
               std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) Fail(where, "unknown key '" + key + "'");
  }
}

double Number(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) Fail(where + "." + key, "expected a number");
  return v.get<double>();
}

int Integer(const json& obj, const char* key, int fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) Fail(where + "." + key, "expected an integer");
  return v.get<int>();
}

bool Flag(const json& obj, const char* key, bool fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) Fail(where + "." + key, "expected true or false");
  return v.get<bool>();
}

std::string Text(const json& obj, const char* key, const std::string& fallback,
                 const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) Fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

VectorXd Vec(const json& v, int n, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != n) {
    Fail(where, "expected an array of " + std::to_string(n) + " numbers");
  }
  VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    if (!v[i].is_number()) Fail(where, "expected numbers");
    out(i) = v[i].get<double>();
  }
  return out;
}

Vector2d Vec2(const json& obj, const char* key, const Vector2d& fallback,
              const std::string& where) {
  if (!obj.contains(key)) return fallback;
  return Vec(obj.at(key), 2, where + "." + key);
}

// Square weight: either the full n x n matrix or its diagonal.
MatrixXd Weight(const json& obj, const char* key, const MatrixXd& fallback,
                const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  const std::string at = where + "." + key;
  const int n = static_cast<int>(fallback.rows());
  if (v.is_array() && !v.empty() && v[0].is_array()) {
    if (static_cast<int>(v.size()) != n) Fail(at, "expected " + std::to_string(n) + " rows");
    MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) m.row(i) = Vec(v[i], n, at).transpose();
    return m;
  }
  return Vec(v, n, at).asDiagonal();
}

void ParseGait(const json& s, sim::Scenario* sc) {
  const std::string w = "gait";
  CheckKeys(s, w, {"kind", "cycle_time", "duty_factor"});
  const std::string kind = Text(s, "kind", "trot", w);
  const double cycle = Number(s, "cycle_time", sc->gait.cycle_time, w);
  const double duty = Number(s, "duty_factor", sc->gait.duty_factor, w);
  if (kind == "trot") {
    sc->gait = gait::GaitSpec::Trot(cycle, duty);
  } else if (kind == "pace") {
    sc->gait = gait::GaitSpec::Pace(cycle, duty);
  } else if (kind == "stand") {
    sc->gait = gait::GaitSpec::Stand();
  } else {
    Fail(w + ".kind", "expected trot, pace or stand");
  }
}

void ParseHorizon(const json& s, sim::Scenario* sc) {
  const std::string w = "horizon";
  CheckKeys(s, w, {"sample_time", "n_nodes_ref", "n_nodes_nmpc"});
  sc->lip.sample_time = Number(s, "sample_time", sc->lip.sample_time, w);
  sc->lip.n_nodes = Integer(s, "n_nodes_ref", sc->lip.n_nodes, w);
  sc->governor.n_nmpc = Integer(s, "n_nodes_nmpc", sc->lip.n_nodes, w);
}

void ParseRobot(const json& s, sim::Scenario* sc) {
  const std::string w = "robot";
  CheckKeys(s, w, {"mass", "com_height", "hip_offsets", "reach_radius"});
  const double mass = Number(s, "mass", sc->sim.mass, w);
  const double z = Number(s, "com_height", sc->sim.com_height, w);
  sc->sim.mass = mass;
  sc->governor.mass = mass;
  sc->sim.com_height = z;
  sc->lip.com_height = z;
  sc->layout.stance_height = z;
  sc->layout.reach_radius = Number(s, "reach_radius", sc->layout.reach_radius, w);
  if (s.contains("hip_offsets")) {
    const json& h = s.at("hip_offsets");
    if (!h.is_array() || h.size() != kNumLegs) Fail(w + ".hip_offsets", "expected 4 rows");
    for (int leg = 0; leg < kNumLegs; ++leg) {
      sc->layout.hip_offsets.row(leg) = Vec(h[leg], 2, w + ".hip_offsets").transpose();
    }
  }
}

void ParseWeights(const json& s, sim::Scenario* sc) {
  const std::string w = "weights";
  CheckKeys(s, w, {"Qp", "Qv", "Qw", "Qs_quad", "Qs_lin", "Qu", "Qk"});
  auto& l = sc->lip;
  l.q_pos = Weight(s, "Qp", l.q_pos, w);
  l.q_vel = Weight(s, "Qv", l.q_vel, w);
  l.q_zmp = Weight(s, "Qw", l.q_zmp, w);
  l.q_slack_quad = Weight(s, "Qs_quad", l.q_slack_quad, w);
  l.q_slack_lin = Vec2(s, "Qs_lin", l.q_slack_lin, w);
  sc->governor.q_u = Weight(s, "Qu", sc->governor.q_u, w);
  sc->governor.q_k = Weight(s, "Qk", sc->governor.q_k, w);
}

void ParseGovernor(const json& s, sim::Scenario* sc) {
  const std::string w = "governor";
  CheckKeys(s, w,
            {"tol", "response_time", "v_usr", "goal_mode", "fixed_goal", "max_refine_iters",
             "refine_tol", "use_timed_formulation", "force_optimize", "force_heuristic",
             "slack_axes"});
  auto& g = sc->governor;
  g.tol = Number(s, "tol", g.tol, w);
  g.response_time = Number(s, "response_time", g.response_time, w);
  g.v_usr = Vec2(s, "v_usr", g.v_usr, w);
  const std::string mode = Text(s, "goal_mode", "velocity_integrated", w);
  if (mode == "velocity_integrated") {
    g.goal_mode = governor::GoalMode::kVelocityIntegrated;
  } else if (mode == "fixed_y") {
    g.goal_mode = governor::GoalMode::kFixedY;
  } else if (mode == "fixed_xy") {
    g.goal_mode = governor::GoalMode::kFixedXY;
  } else {
    Fail(w + ".goal_mode", "expected velocity_integrated, fixed_y or fixed_xy");
  }
  g.fixed_goal = Vec2(s, "fixed_goal", g.fixed_goal, w);
  g.max_refine_iters = Integer(s, "max_refine_iters", g.max_refine_iters, w);
  g.refine_tol = Number(s, "refine_tol", g.refine_tol, w);
  g.use_timed_formulation = Flag(s, "use_timed_formulation", g.use_timed_formulation, w);
  g.force_optimize = Flag(s, "force_optimize", g.force_optimize, w);
  g.force_heuristic = Flag(s, "force_heuristic", g.force_heuristic, w);
  if (s.contains("slack_axes")) {
    const json& a = s.at("slack_axes");
    if (!a.is_array()) Fail(w + ".slack_axes", "expected a list of \"x\" / \"y\"");
    g.slack_axes = {false, false};
    for (const auto& axis : a) {
      if (axis == "x") {
        g.slack_axes.x = true;
      } else if (axis == "y") {
        g.slack_axes.y = true;
      } else {
        Fail(w + ".slack_axes", "expected a list of \"x\" / \"y\"");
      }
    }
  }
}

void ParseController(const json& s, sim::Scenario* sc) {
  const std::string w = "controller";
  CheckKeys(s, w, {"kind", "pd_gains"});
  const std::string kind = Text(s, "kind", "governor", w);
  if (kind == "governor") {
    sc->controller = sim::ControllerKind::kGovernor;
    if (s.contains("pd_gains")) Fail(w + ".pd_gains", "only valid with kind pd_baseline");
  } else if (kind == "pd_baseline") {
    sc->controller = sim::ControllerKind::kPdBaseline;
    const json& g = Section(s, "pd_gains", w);
    CheckKeys(g, w + ".pd_gains", {"kp", "kd", "settling_time"});
    if (g.contains("settling_time")) {
      if (g.contains("kp") || g.contains("kd")) {
        Fail(w + ".pd_gains", "give either settling_time or kp/kd");
      }
      sc->pd_gains = baseline::GainsFromSettling(
          sc->sim.mass, Number(g, "settling_time", 0.0, w + ".pd_gains"));
    } else {
      if (!g.contains("kp") || !g.contains("kd")) {
        Fail(w + ".pd_gains", "kp and kd are required");
      }
      sc->pd_gains.kp = Number(g, "kp", 0.0, w + ".pd_gains");
      sc->pd_gains.kd = Number(g, "kd", 0.0, w + ".pd_gains");
    }
  } else {
    Fail(w + ".kind", "expected governor or pd_baseline");
  }
}

void ParseSim(const json& s, sim::Scenario* sc) {
  const std::string w = "sim";
  CheckKeys(s, w,
            {"duration", "substeps", "pushes", "lateral_drift_force", "initial_position",
             "initial_velocity"});
  auto& c = sc->sim;
  c.duration = Number(s, "duration", c.duration, w);
  c.substeps = Integer(s, "substeps", c.substeps, w);
  c.lateral_drift_force = Vec2(s, "lateral_drift_force", c.lateral_drift_force, w);
  c.initial_position = Vec2(s, "initial_position", c.initial_position, w);
  c.initial_velocity = Vec2(s, "initial_velocity", c.initial_velocity, w);
  if (s.contains("pushes")) {
    const json& list = s.at("pushes");
    if (!list.is_array()) Fail(w + ".pushes", "expected a list");
    for (const auto& p : list) {
      const std::string at = w + ".pushes[]";
      if (!p.is_object()) Fail(at, "expected an object");
      CheckKeys(p, at, {"start", "duration", "force"});
      if (!p.contains("start") || !p.contains("duration") || !p.contains("force")) {
        Fail(at, "start, duration and force are required");
      }
      c.pushes.push_back({Number(p, "start", 0.0, at), Number(p, "duration", 0.0, at),
                          Vec2(p, "force", Vector2d::Zero(), at)});
    }
  }
}

}  // namespace

sim::Scenario Parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kConfig, std::string("scenario: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) Fail("document", "expected an object");
  CheckKeys(doc, "document",
            {"name", "description", "gait", "horizon", "robot", "weights", "governor",
             "controller", "sim"});

  sim::Scenario sc;
  // Robot first: the PD gains may be derived from the mass.
  ParseRobot(Section(doc, "robot", ""), &sc);
  ParseGait(Section(doc, "gait", ""), &sc);
  ParseHorizon(Section(doc, "horizon", ""), &sc);
  ParseWeights(Section(doc, "weights", ""), &sc);
  ParseGovernor(Section(doc, "governor", ""), &sc);
  ParseController(Section(doc, "controller", ""), &sc);
  ParseSim(Section(doc, "sim", ""), &sc);
  sim::Validate(sc);
  return sc;
}

sim::Scenario Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kConfig, "scenario: cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return Parse(text.str());
}

}  // namespace quadref::scenario
