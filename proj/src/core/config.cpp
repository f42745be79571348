#include "core/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pentapath {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

// Built-in initial curve: the orientation follows a linear blend of two
// spherical angle pairs, the position a polynomial arc. Stays on the
// orientation cylinder by construction.
Pose spherical_blend_cubic(double x) {
  const double wa = (5.0 - x) / 3.0;
  const double wb = (x - 2.0) / 3.0;
  const double theta = wa * 0.4 * M_PI + wb * 0.25 * M_PI;
  const double phi = wa * 2.8 + wb * 2.0;
  return Pose(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
              std::cos(theta), (x + 10.0) / 3.0, (x * x + 10.0) / 3.0,
              x * x * x / 30.0 + 5.333);
}

class Validator {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& msg) { errors.push_back(msg); }

  void check_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
      fail(where + ": expected an object");
      return;
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool known = false;
      for (const char* k : allowed)
        if (it.key() == k) known = true;
      if (!known) fail(where + ": unknown key '" + it.key() + "'");
    }
  }

  bool has(const json& obj, const std::string& where, const char* key,
           bool required = true) {
    if (obj.is_object() && obj.contains(key)) return true;
    if (required) fail(where + ": missing required key '" + std::string(key) + "'");
    return false;
  }

  double number(const json& obj, const std::string& where, const char* key,
                double fallback = 0.0, bool required = true) {
    if (!has(obj, where, key, required)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) {
      fail(where + "." + key + ": expected a number");
      return fallback;
    }
    return v.get<double>();
  }

  int integer(const json& obj, const std::string& where, const char* key,
              int fallback = 0, bool required = true) {
    if (!has(obj, where, key, required)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
      fail(where + "." + key + ": expected an integer");
      return fallback;
    }
    return v.get<int>();
  }

  bool boolean(const json& obj, const std::string& where, const char* key,
               bool fallback = false, bool required = true) {
    if (!has(obj, where, key, required)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
      fail(where + "." + key + ": expected a boolean");
      return fallback;
    }
    return v.get<bool>();
  }
};

void parse_design(Validator& v, const json& j, DesignParams& out) {
  v.check_keys(j, "design", {"case", "alpha", "beta", "r", "base"});
  if (v.has(j, "design", "case")) {
    const json& c = j.at("case");
    if (c.is_string() && c.get<std::string>() == "LO")
      out.kind = PentapodCase::kLO;
    else if (c.is_string() && c.get<std::string>() == "LP")
      out.kind = PentapodCase::kLP;
    else
      v.fail("design.case: must be \"LO\" or \"LP\"");
  }
  out.alpha = v.number(j, "design", "alpha");
  out.beta = v.number(j, "design", "beta");
  if (v.has(j, "design", "r")) {
    const json& r = j.at("r");
    if (!r.is_array() || r.size() != 5) {
      v.fail("design.r: expected an array of 5 numbers");
    } else {
      for (int i = 0; i < 5; ++i) {
        if (!r[static_cast<size_t>(i)].is_number())
          v.fail("design.r[" + std::to_string(i) + "]: expected a number");
        else
          out.r[static_cast<size_t>(i)] = r[static_cast<size_t>(i)].get<double>();
      }
    }
  }
  if (v.has(j, "design", "base")) {
    const json& b = j.at("base");
    if (!b.is_array() || b.size() != 5) {
      v.fail("design.base: expected an array of 5 anchor points");
    } else {
      for (int i = 0; i < 5; ++i) {
        const json& a = b[static_cast<size_t>(i)];
        const std::string where = "design.base[" + std::to_string(i) + "]";
        if (!a.is_array() || (a.size() != 2 && a.size() != 3)) {
          v.fail(where + ": expected [x, y] or [x, y, 0]");
          continue;
        }
        Vec3 pt = Vec3::Zero();
        for (size_t k = 0; k < a.size(); ++k) {
          if (!a[k].is_number()) {
            v.fail(where + ": expected numbers");
            break;
          }
          pt[static_cast<int>(k)] = a[k].get<double>();
        }
        out.base[static_cast<size_t>(i)] = pt;
      }
    }
  }
}

void parse_limits(Validator& v, const json& j, JointLimits& out) {
  v.check_keys(j, "limits", {"epsilon", "legs"});
  out.epsilon_safe = v.number(j, "limits", "epsilon", 0.0, false);
  if (!j.contains("legs")) return;
  const json& legs = j.at("legs");
  if (!legs.is_array() || legs.size() != 5) {
    v.fail("limits.legs: expected an array of 5 leg entries");
    return;
  }
  for (int i = 0; i < 5; ++i) {
    const json& l = legs[static_cast<size_t>(i)];
    const std::string where = "limits.legs[" + std::to_string(i) + "]";
    v.check_keys(l, where,
                 {"prismatic", "rho_min", "rho_max", "cone", "cone_angle_deg"});
    LegLimit& out_leg = out.leg[static_cast<size_t>(i)];
    out_leg.prismatic_enabled = v.boolean(l, where, "prismatic", false, false);
    out_leg.rho_min = v.number(l, where, "rho_min", 0.0, out_leg.prismatic_enabled);
    out_leg.rho_max = v.number(l, where, "rho_max", 0.0, out_leg.prismatic_enabled);
    out_leg.cone_enabled = v.boolean(l, where, "cone", false, false);
    const double deg = v.number(l, where, "cone_angle_deg", 0.0, out_leg.cone_enabled);
    out_leg.cone_angle = deg * M_PI / 180.0;
  }
}

void parse_optimizer(Validator& v, const json& j, RunConfig& out) {
  v.check_keys(j, "optimizer",
               {"lambda", "eta", "growth", "n", "max_iterations",
                "cover_enabled", "joints_enabled", "min_step", "log_every"});
  out.optimizer.lambda_w = v.number(j, "optimizer", "lambda");
  out.optimizer.eta_w = v.number(j, "optimizer", "eta");
  out.optimizer.growth = v.number(j, "optimizer", "growth", 5.0, false);
  out.optimizer.n_init = v.integer(j, "optimizer", "n", 0, false);
  out.optimizer.max_iterations = v.integer(j, "optimizer", "max_iterations");
  out.cover_enabled = v.boolean(j, "optimizer", "cover_enabled");
  out.joints_enabled = v.boolean(j, "optimizer", "joints_enabled");
  out.optimizer.min_step = v.number(j, "optimizer", "min_step", 0.0, false);
  out.log_every = v.integer(j, "optimizer", "log_every", 1, false);
}

void parse_path(Validator& v, const json& j, PathSpec& out) {
  v.check_keys(j, "path", {"breakpoints", "formula", "range", "count"});
  const bool has_inline = j.is_object() && j.contains("breakpoints");
  const bool has_formula = j.is_object() && j.contains("formula");
  if (has_inline && has_formula) {
    v.fail("path: give either an inline breakpoint list or a formula, not both");
    return;
  }
  if (!has_inline && !has_formula) {
    v.fail("path: needs 'breakpoints' or a 'formula' sampler");
    return;
  }
  if (has_inline) {
    out.is_inline = true;
    const json& b = j.at("breakpoints");
    if (!b.is_array() || b.size() < 3) {
      v.fail("path.breakpoints: expected an array of at least 3 poses");
      return;
    }
    for (size_t i = 0; i < b.size(); ++i) {
      const json& row = b[i];
      if (!row.is_array() || row.size() != 6) {
        v.fail("path.breakpoints[" + std::to_string(i) +
               "]: expected 6 pose coordinates");
        return;
      }
      Pose p;
      for (int k = 0; k < 6; ++k) {
        if (!row[static_cast<size_t>(k)].is_number()) {
          v.fail("path.breakpoints[" + std::to_string(i) + "]: expected numbers");
          return;
        }
        p.u[k] = row[static_cast<size_t>(k)].get<double>();
      }
      out.breakpoints.push_back(p);
    }
  } else {
    out.is_inline = false;
    const json& f = j.at("formula");
    if (!f.is_string()) {
      v.fail("path.formula: expected a string");
    } else {
      out.formula = f.get<std::string>();
      bool known = false;
      for (const auto& name : known_formulas())
        if (name == out.formula) known = true;
      if (!known) {
        std::string names;
        for (const auto& name : known_formulas()) names += " '" + name + "'";
        v.fail("path.formula: unknown formula '" + out.formula +
               "'; available:" + names);
      }
    }
    if (v.has(j, "path", "range")) {
      const json& r = j.at("range");
      if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
        v.fail("path.range: expected [begin, end]");
      else {
        out.range_begin = r[0].get<double>();
        out.range_end = r[1].get<double>();
        if (!(out.range_begin < out.range_end))
          v.fail("path.range: begin must be smaller than end");
      }
    }
    out.count = v.integer(j, "path", "count");
    if (j.contains("count") && out.count < 3)
      v.fail("path.count: need at least 3 samples");
  }
}

}  // namespace

std::vector<std::string> known_formulas() { return {"spherical_blend_cubic"}; }

EngineOptions RunConfig::engine_options() const {
  EngineOptions opts;
  opts.cover_enabled = cover_enabled;
  opts.joints_enabled = joints_enabled;
  opts.log_every = log_every;
  return opts;
}

RunConfig load_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string("config parse error: ") + e.what());
  }

  Validator v;
  RunConfig cfg;
  v.check_keys(j, "config", {"version", "design", "limits", "optimizer", "path"});
  if (v.has(j, "config", "version")) {
    if (!j.at("version").is_number_integer() ||
        j.at("version").get<int>() != kSchemaVersion)
      v.fail("version: this build reads schema version " +
             std::to_string(kSchemaVersion));
  }
  if (v.has(j, "config", "design")) parse_design(v, j.at("design"), cfg.design);
  if (j.contains("limits")) parse_limits(v, j.at("limits"), cfg.limits);
  if (v.has(j, "config", "optimizer")) parse_optimizer(v, j.at("optimizer"), cfg);
  if (v.has(j, "config", "path")) parse_path(v, j.at("path"), cfg.path);

  // Semantic checks only make sense on a structurally sound document.
  if (v.errors.empty()) {
    for (const auto& e : cfg.design.violations()) v.fail("design: " + e);
    for (const auto& e : cfg.limits.violations()) v.fail("limits: " + e);
    if (!(cfg.optimizer.growth > 0.0)) v.fail("optimizer.growth: must be positive");
    if (cfg.optimizer.lambda_w < 0.0) v.fail("optimizer.lambda: must be nonnegative");
    if (cfg.optimizer.eta_w < 0.0) v.fail("optimizer.eta: must be nonnegative");
    if (cfg.optimizer.max_iterations < 0)
      v.fail("optimizer.max_iterations: must be nonnegative");
    if (cfg.optimizer.min_step < 0.0) v.fail("optimizer.min_step: must be nonnegative");
    if (cfg.log_every < 0) v.fail("optimizer.log_every: must be nonnegative");
    if (cfg.path.is_inline) {
      if (cfg.optimizer.n_init != 0 &&
          cfg.optimizer.n_init != static_cast<int>(cfg.path.breakpoints.size()))
        v.fail("optimizer.n: does not match the inline breakpoint count");
      cfg.optimizer.n_init = static_cast<int>(cfg.path.breakpoints.size());
    } else {
      if (cfg.path.count == 0) cfg.path.count = cfg.optimizer.n_init;
      if (cfg.path.count < 3)
        v.fail("path.count: sampler needs at least 3 breakpoints (set path.count "
               "or optimizer.n)");
      if (cfg.optimizer.n_init != 0 && cfg.optimizer.n_init != cfg.path.count)
        v.fail("optimizer.n: does not match path.count");
      cfg.optimizer.n_init = cfg.path.count;
    }
    if (cfg.joints_enabled && !cfg.limits.any_enabled())
      v.fail("optimizer.joints_enabled: no leg limit is enabled in 'limits'");
  }
  cfg.optimizer.epsilon_safe = cfg.limits.epsilon_safe;

  if (!v.errors.empty()) {
    std::ostringstream oss;
    oss << "configuration rejected:";
    for (const auto& e : v.errors) oss << "\n  - " << e;
    throw Error(ErrorCode::kSchema, oss.str());
  }
  return cfg;
}

RunConfig load_config_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in)
    throw Error(ErrorCode::kIo, "cannot open config file: " + filename);
  std::ostringstream oss;
  oss << in.rdbuf();
  return load_config_text(oss.str());
}

nlohmann::json config_to_json(const RunConfig& cfg) {
  json j;
  j["version"] = cfg.version;
  json d;
  d["case"] = cfg.design.kind == PentapodCase::kLO ? "LO" : "LP";
  d["alpha"] = cfg.design.alpha;
  d["beta"] = cfg.design.beta;
  d["r"] = cfg.design.r;
  json base = json::array();
  for (const auto& b : cfg.design.base)
    base.push_back({b.x(), b.y(), b.z()});
  d["base"] = base;
  j["design"] = d;

  json lim;
  lim["epsilon"] = cfg.limits.epsilon_safe;
  json legs = json::array();
  for (const auto& l : cfg.limits.leg) {
    json e;
    e["prismatic"] = l.prismatic_enabled;
    if (l.prismatic_enabled) {
      e["rho_min"] = l.rho_min;
      e["rho_max"] = l.rho_max;
    }
    e["cone"] = l.cone_enabled;
    if (l.cone_enabled) e["cone_angle_deg"] = l.cone_angle * 180.0 / M_PI;
    legs.push_back(e);
  }
  lim["legs"] = legs;
  j["limits"] = lim;

  json opt;
  opt["lambda"] = cfg.optimizer.lambda_w;
  opt["eta"] = cfg.optimizer.eta_w;
  opt["growth"] = cfg.optimizer.growth;
  opt["n"] = cfg.optimizer.n_init;
  opt["max_iterations"] = cfg.optimizer.max_iterations;
  opt["cover_enabled"] = cfg.cover_enabled;
  opt["joints_enabled"] = cfg.joints_enabled;
  opt["min_step"] = cfg.optimizer.min_step;
  opt["log_every"] = cfg.log_every;
  j["optimizer"] = opt;

  json p;
  if (cfg.path.is_inline) {
    json rows = json::array();
    for (const auto& pt : cfg.path.breakpoints) {
      json row = json::array();
      for (int k = 0; k < 6; ++k) row.push_back(pt.u[k]);
      rows.push_back(row);
    }
    p["breakpoints"] = rows;
  } else {
    p["formula"] = cfg.path.formula;
    p["range"] = {cfg.path.range_begin, cfg.path.range_end};
    p["count"] = cfg.path.count;
  }
  j["path"] = p;
  return j;
}

DiscretePath build_initial_path(const RunConfig& cfg) {
  if (cfg.path.is_inline) return DiscretePath(cfg.path.breakpoints);
  if (cfg.path.formula != "spherical_blend_cubic")
    throw Error(ErrorCode::kInternal, "unknown formula: " + cfg.path.formula);
  DiscretePath path;
  const int n = cfg.path.count;
  path.pts.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = cfg.path.range_begin +
                     (cfg.path.range_end - cfg.path.range_begin) * i / (n - 1);
    path.pts.push_back(spherical_blend_cubic(t));
  }
  return path;
}

}  // namespace pentapath
