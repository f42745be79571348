#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/cover.hpp"
#include "core/joints.hpp"
#include "core/optimizer.hpp"

namespace pentapath {

struct EngineOptions {
  bool cover_enabled = false;
  bool joints_enabled = false;
  int log_every = 1;  // snapshot stride for exported breakpoints; 0 disables
  CoverOptions cover;
};

// One joint redirection applied during an iteration: the breach normals that
// were active at a breakpoint and the update direction actually used.
struct RedirectionRecord {
  int breakpoint = 0;
  std::vector<Vec6> normals;
  Vec6 direction = Vec6::Zero();
};

struct IterationRecord {
  int iteration = 0;
  double objective = 0.0;
  double step = 0.0;
  int breakpoints = 0;
  // Smallest singularity-free ball radius over the interior breakpoints (the
  // endpoints are fixed inputs, so their clearance never changes).
  double min_clearance = 0.0;
  double elapsed_seconds = 0.0;
  bool cover_changed = false;
  std::vector<RedirectionRecord> redirections;
};

struct RunResult {
  DiscretePath path;
  PathStats summary;
  std::vector<IterationRecord> records;                 // record 0 is the input
  std::vector<std::pair<int, DiscretePath>> snapshots;  // (iteration, path)
  double elapsed_seconds = 0.0;
  int accepted_iterations = 0;
  bool converged = false;
  std::string stop_reason;
  std::vector<std::string> warnings;
};

// Runs the variational optimization: repeatedly minimize the quadratic cost
// of the frozen pedal data, redirect updates that would breach joint limits,
// cap the step by the energy growth band, project back onto the orientation
// cylinder, maintain the singularity-free cover, and accept the step only if
// the monitoring objective does not increase (halving otherwise).
class Engine {
 public:
  Engine(const DesignParams& design, const JointLimits& limits,
         const OptimizerConfig& cfg, const EngineOptions& options);

  struct State {
    DiscretePath path;
    std::vector<PedalSet> pedals;  // one per breakpoint
    std::vector<double> radius;    // closest pedal distance per breakpoint
    PathStats stats;
    double objective = 0.0;
    int iteration = 0;
    bool converged = false;
    int plateau = 0;
    std::vector<std::string> warnings;

    // Minimum clearance over interior breakpoints.
    double min_clearance() const;
  };

  // Validates the initial path (on the cylinder, singularity-free, within
  // enabled joint limits), collects pedal data, runs the initial cover pass,
  // and evaluates the starting objective. Throws Error(kInfeasiblePath)
  // naming the first offending breakpoint.
  State process_one(const DiscretePath& initial) const;

  // Record 0 describing a freshly initialized state.
  IterationRecord initial_record(const State& s) const;

  // One accepted iteration, or nullopt when the step halving collapsed
  // without descent (state marked converged, path unchanged).
  std::optional<IterationRecord> iterate(State& s) const;

  RunResult run(const DiscretePath& initial) const;

  const MetricTensor& metric() const { return metric_; }
  const SigmaVariety& sigma() const { return sigma_; }
  const DesignParams& design() const { return design_; }
  const JointLimits& limits() const { return limits_; }
  const OptimizerConfig& config() const { return cfg_; }
  const EngineOptions& options() const { return options_; }

 private:
  PedalSet pedals_at(const Pose& p, std::vector<std::string>* warnings) const;

  DesignParams design_;
  JointLimits limits_;
  OptimizerConfig cfg_;
  EngineOptions options_;
  MetricTensor metric_;
  SigmaVariety sigma_;
};

}  // namespace pentapath
