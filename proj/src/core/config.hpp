#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "core/engine.hpp"

namespace pentapath {

// Initial path specification: either an explicit breakpoint list or a named
// built-in curve sampled uniformly over a parameter range.
struct PathSpec {
  bool is_inline = false;
  std::vector<Pose> breakpoints;  // inline form
  std::string formula;            // parametric form
  double range_begin = 0.0;
  double range_end = 0.0;
  int count = 0;
};

struct RunConfig {
  int version = 1;
  DesignParams design;
  JointLimits limits;
  OptimizerConfig optimizer;
  bool cover_enabled = false;
  bool joints_enabled = false;
  int log_every = 1;
  PathSpec path;

  EngineOptions engine_options() const;
};

// Parses and validates a configuration document. Every schema violation is
// collected; any violation raises Error(kSchema) listing all of them.
// Unknown keys are rejected.
RunConfig load_config_text(const std::string& json_text);
RunConfig load_config_file(const std::string& filename);

// Serialization inverse of load_config_text (round-trips to an equal config).
nlohmann::json config_to_json(const RunConfig& cfg);

// Names of the built-in parametric initial curves.
std::vector<std::string> known_formulas();

// Samples the configured initial path (inline points are passed through).
DiscretePath build_initial_path(const RunConfig& cfg);

}  // namespace pentapath
