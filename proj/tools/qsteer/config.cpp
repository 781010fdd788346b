// Copyright 2026 The qsteer Authors
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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qsteer::cli {

namespace {

using nlohmann::json;

struct Parser {
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& message) {
    errors.push_back(path + ": " + message);
  }

  void check_known_keys(const json& j, const std::string& path,
                        const std::set<std::string>& known) {
    for (const auto& [key, _] : j.items()) {
      if (!known.count(key)) {
        fail(path.empty() ? key : path + "." + key, "unknown field");
      }
    }
  }

  double get_number(const json& parent, const std::string& key,
                    const std::string& path, double fallback,
                    bool required) {
    if (!parent.contains(key)) {
      if (required) fail(path, "required number is missing");
      return fallback;
    }
    const json& v = parent.at(key);
    if (!v.is_number()) {
      fail(path, "expected a number");
      return fallback;
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      fail(path, "must be finite");
      return fallback;
    }
    return d;
  }

  int get_int(const json& parent, const std::string& key,
              const std::string& path, int fallback, bool required) {
    if (!parent.contains(key)) {
      if (required) fail(path, "required integer is missing");
      return fallback;
    }
    const json& v = parent.at(key);
    if (!v.is_number_integer()) {
      fail(path, "expected an integer");
      return fallback;
    }
    return v.get<int>();
  }

  std::string get_string(const json& parent, const std::string& key,
                         const std::string& path, std::string fallback,
                         bool required) {
    if (!parent.contains(key)) {
      if (required) fail(path, "required string is missing");
      return fallback;
    }
    const json& v = parent.at(key);
    if (!v.is_string()) {
      fail(path, "expected a string");
      return fallback;
    }
    return v.get<std::string>();
  }
};

StrategyKind parse_kind(Parser& p, const std::string& name) {
  if (name == "resonance") return StrategyKind::resonance;
  if (name == "landau-zener") return StrategyKind::landau_zener;
  if (name == "allen-eberly") return StrategyKind::allen_eberly;
  if (name == "custom") return StrategyKind::custom;
  p.fail("strategy.kind",
         "expected one of resonance, landau-zener, allen-eberly, custom");
  return StrategyKind::resonance;
}

void parse_envelope_name(Parser& p, const std::string& path,
                         const std::string& name) {
  try {
    envelope_by_name(name);
  } catch (const InvalidInputError& e) {
    p.fail(path, e.what());
  }
}

StateConfig parse_state(Parser& p, const json& v, const std::string& path) {
  StateConfig state;
  if (v.is_number_integer()) {
    state.is_index = true;
    state.index = v.get<int>();
    if (state.index < 0 || state.index > 1) {
      p.fail(path, "basis index must be 0 or 1 for the two-level plants");
    }
    return state;
  }
  if (v.is_array()) {
    state.is_index = false;
    state.amplitudes.resize(static_cast<Eigen::Index>(v.size()));
    if (v.size() != 2) {
      p.fail(path, "amplitude list must have 2 entries ([re, im] pairs)");
      return state;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      const json& c = v[i];
      if (!c.is_array() || c.size() != 2 || !c[0].is_number() ||
          !c[1].is_number()) {
        p.fail(path + "[" + std::to_string(i) + "]",
               "expected a [re, im] pair");
        return state;
      }
      state.amplitudes(static_cast<Eigen::Index>(i)) = {c[0].get<double>(),
                                                        c[1].get<double>()};
    }
    if (state.amplitudes.norm() == 0.0 || !state.amplitudes.allFinite()) {
      p.fail(path, "amplitudes must be finite and not all zero");
    }
    return state;
  }
  p.fail(path, "expected a basis index or an amplitude list");
  return state;
}

}  // namespace

QuantumState StateConfig::realize(Eigen::Index dim) const {
  if (is_index) return QuantumState::basis(dim, index);
  return QuantumState::normalized(amplitudes);
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config: ") + e.what()});
  }
  if (!root.is_object()) {
    throw ConfigError({"config: top level must be an object"});
  }

  Parser p;
  RunConfig config;

  p.check_known_keys(root, "",
                     {"strategy", "grid", "box", "resolution", "epsilon",
                      "initial", "target", "output", "compare"});

  if (!root.contains("strategy") || !root.at("strategy").is_object()) {
    p.fail("strategy", "required object is missing");
  } else {
    const json& s = root.at("strategy");
    p.check_known_keys(s, "strategy",
                       {"kind", "delta0", "omega0", "T", "envelope",
                        "delta_envelope"});
    config.kind =
        parse_kind(p, p.get_string(s, "kind", "strategy.kind", "", true));
    config.delta0 = p.get_number(s, "delta0", "strategy.delta0", 0.0, false);
    config.omega0 = p.get_number(s, "omega0", "strategy.omega0", 0.0, false);
    if (config.delta0 < 0.0) p.fail("strategy.delta0", "must be >= 0");
    if (config.omega0 < 0.0) p.fail("strategy.omega0", "must be >= 0");
    config.horizon = p.get_number(s, "T", "strategy.T", 1.0, true);
    if (!(config.horizon > 0.0)) p.fail("strategy.T", "must be > 0");
    config.envelope =
        p.get_string(s, "envelope", "strategy.envelope", "const", false);
    parse_envelope_name(p, "strategy.envelope", config.envelope);
    config.delta_envelope = p.get_string(s, "delta_envelope",
                                         "strategy.delta_envelope", "const",
                                         false);
    parse_envelope_name(p, "strategy.delta_envelope", config.delta_envelope);
  }

  if (root.contains("grid")) {
    const json& g = root.at("grid");
    if (!g.is_object()) {
      p.fail("grid", "expected an object");
    } else {
      p.check_known_keys(g, "grid", {"s_start", "s_end", "steps"});
      GridConfig grid;
      grid.s_start = p.get_number(g, "s_start", "grid.s_start", 0.0, true);
      grid.s_end = p.get_number(g, "s_end", "grid.s_end", 1.0, true);
      grid.steps = p.get_int(g, "steps", "grid.steps", 4000, true);
      if (!(grid.s_start < grid.s_end)) {
        p.fail("grid", "needs s_start < s_end");
      }
      if (grid.steps < 1 || grid.steps > 50'000'000) {
        p.fail("grid.steps", "must be in [1, 5e7]");
      }
      config.grid = grid;
    }
  }

  if (root.contains("box")) {
    const json& b = root.at("box");
    if (!b.is_object() || !b.contains("lower") || !b.contains("upper") ||
        !b.at("lower").is_array() || !b.at("upper").is_array() ||
        b.at("lower").size() != 2 || b.at("upper").size() != 2) {
      p.fail("box", "expected {lower: [a, b], upper: [c, d]}");
    } else {
      p.check_known_keys(b, "box", {"lower", "upper"});
      Eigen::VectorXd lo(2), hi(2);
      bool ok = true;
      for (int k = 0; k < 2; ++k) {
        const json& l = b.at("lower")[k];
        const json& u = b.at("upper")[k];
        if (!l.is_number() || !u.is_number()) {
          p.fail("box", "bounds must be numbers");
          ok = false;
          break;
        }
        lo(k) = l.get<double>();
        hi(k) = u.get<double>();
        if (!std::isfinite(lo(k)) || !std::isfinite(hi(k)) ||
            !(lo(k) < hi(k))) {
          p.fail("box", "axis " + std::to_string(k) +
                            " needs finite lower < upper");
          ok = false;
        }
      }
      if (ok) config.box.emplace(lo, hi);
    }
  }

  if (root.contains("resolution")) {
    const json& r = root.at("resolution");
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() ||
        !r[1].is_number_integer()) {
      p.fail("resolution", "expected [n1, n2] integers");
    } else {
      std::array<int, 2> res{r[0].get<int>(), r[1].get<int>()};
      if (res[0] < 1 || res[1] < 1 || res[0] > 4096 || res[1] > 4096) {
        p.fail("resolution", "per-axis resolution must be in [1, 4096]");
      } else {
        config.resolution = res;
      }
    }
  }

  if (root.contains("epsilon")) {
    const double eps =
        p.get_number(root, "epsilon", "epsilon", 0.0, false);
    if (!(eps >= 0.0) || !(eps < 1.0)) {
      p.fail("epsilon", "must lie in [0, 1)");
    } else {
      config.epsilon = eps;
    }
  }

  if (root.contains("initial")) {
    config.initial = parse_state(p, root.at("initial"), "initial");
  }
  if (root.contains("target")) {
    config.target = parse_state(p, root.at("target"), "target");
  } else {
    config.target.index = 1;
  }

  if (root.contains("output")) {
    const std::string out =
        p.get_string(root, "output", "output", "", false);
    if (out.empty()) {
      p.fail("output", "must be a non-empty path");
    } else {
      config.output = out;
    }
  }

  if (root.contains("compare")) {
    const json& c = root.at("compare");
    if (!c.is_object()) {
      p.fail("compare", "expected an object");
    } else {
      p.check_known_keys(c, "compare", {"t_min", "t_max", "t_points"});
      config.compare.t_min =
          p.get_number(c, "t_min", "compare.t_min", 1.0, false);
      config.compare.t_max =
          p.get_number(c, "t_max", "compare.t_max", 10.0, false);
      config.compare.t_points =
          p.get_int(c, "t_points", "compare.t_points", 12, false);
      if (!(config.compare.t_min > 0.0) ||
          !(config.compare.t_max > config.compare.t_min)) {
        p.fail("compare", "needs 0 < t_min < t_max");
      }
      if (config.compare.t_points < 8) {
        p.fail("compare.t_points", "the log-linear fit needs >= 8 points");
      }
    }
  }

  if (!p.errors.empty()) {
    throw ConfigError(std::move(p.errors));
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError({"config: cannot open '" + path + "'"});
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

StrategySpec build_spec(const RunConfig& config,
                        const CliOverrides& overrides) {
  StrategySpec spec;
  spec.kind = config.kind;
  spec.delta0 = config.delta0;
  spec.omega0 = config.omega0;
  spec.horizon = config.horizon;
  spec.envelope = envelope_by_name(config.envelope);
  spec.delta_envelope = envelope_by_name(config.delta_envelope);

  spec.grid = default_grid(config.kind);
  if (config.grid) {
    spec.grid =
        TimeGrid(config.grid->s_start, config.grid->s_end, config.grid->steps);
  }

  if (overrides.smax) {
    const double smax = *overrides.smax;
    if (config.kind != StrategyKind::landau_zener &&
        config.kind != StrategyKind::allen_eberly) {
      throw ConfigError(
          {"--smax: applies to the landau-zener/allen-eberly window only"});
    }
    if (smax == 0.0) {
      if (config.kind != StrategyKind::landau_zener) {
        throw ConfigError({"--smax 0: the auto window is Landau-Zener only"});
      }
      spec.grid = lz_auto_grid(config.delta0, config.omega0, config.horizon);
    } else if (smax > 0.0) {
      spec.grid = TimeGrid(-smax, smax, spec.grid.steps);
    } else {
      throw ConfigError({"--smax: must be >= 0"});
    }
  }

  if (overrides.steps) {
    if (*overrides.steps < 1) {
      throw ConfigError({"--steps: must be >= 1"});
    }
    spec.grid = TimeGrid(spec.grid.s_start, spec.grid.s_end, *overrides.steps);
  }

  spec.validate();
  return spec;
}

}  // namespace qsteer::cli
