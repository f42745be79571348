#include "pentapath.h"

#include <cstring>
#include <string>

#include "core/config.hpp"
#include "core/export.hpp"

using namespace pentapath;

struct pp_config {
  RunConfig cfg;
};

struct pp_result {
  RunResult result;
  RunConfig cfg;  // retained for export and pedal queries
};

namespace {

thread_local std::string g_last_error = "no error";

pp_status set_error(const Error& e) {
  g_last_error = e.what();
  switch (e.code()) {
    case ErrorCode::kInvalidArgument: return PP_ERROR_INVALID_ARGUMENT;
    case ErrorCode::kSchema: return PP_ERROR_SCHEMA;
    case ErrorCode::kInfeasiblePath: return PP_ERROR_INFEASIBLE_PATH;
    case ErrorCode::kDegenerate: return PP_ERROR_DEGENERATE;
    case ErrorCode::kIo: return PP_ERROR_IO;
    case ErrorCode::kInternal: return PP_ERROR_INTERNAL;
  }
  return PP_ERROR_INTERNAL;
}

pp_status set_error(const char* msg) {
  g_last_error = msg;
  return PP_ERROR_INVALID_ARGUMENT;
}

template <typename Fn>
pp_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return set_error(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PP_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PP_ERROR_INTERNAL;
  }
}

}  // namespace

extern "C" {

unsigned pp_abi_version(void) { return 1; }

const char* pp_last_error(void) { return g_last_error.c_str(); }

pp_status pp_config_load(const char* filename, pp_config** out) {
  if (!filename || !out) return set_error("pp_config_load: null argument");
  return guarded([&] {
    auto* cfg = new pp_config{load_config_file(filename)};
    *out = cfg;
    return PP_OK;
  });
}

pp_status pp_config_parse(const char* json_text, pp_config** out) {
  if (!json_text || !out) return set_error("pp_config_parse: null argument");
  return guarded([&] {
    auto* cfg = new pp_config{load_config_text(json_text)};
    *out = cfg;
    return PP_OK;
  });
}

void pp_config_free(pp_config* cfg) { delete cfg; }

pp_status pp_config_set_max_iterations(pp_config* cfg, int max_iterations) {
  if (!cfg) return set_error("null config");
  if (max_iterations < 0) return set_error("max_iterations must be nonnegative");
  cfg->cfg.optimizer.max_iterations = max_iterations;
  return PP_OK;
}

pp_status pp_config_set_cover_enabled(pp_config* cfg, int enabled) {
  if (!cfg) return set_error("null config");
  cfg->cfg.cover_enabled = enabled != 0;
  return PP_OK;
}

pp_status pp_config_set_joints_enabled(pp_config* cfg, int enabled) {
  if (!cfg) return set_error("null config");
  if (enabled && !cfg->cfg.limits.any_enabled())
    return set_error("cannot enable joints: no leg limit configured");
  cfg->cfg.joints_enabled = enabled != 0;
  return PP_OK;
}

pp_status pp_config_set_log_every(pp_config* cfg, int log_every) {
  if (!cfg) return set_error("null config");
  if (log_every < 0) return set_error("log_every must be nonnegative");
  cfg->cfg.log_every = log_every;
  return PP_OK;
}

pp_status pp_validate(const pp_config* cfg) {
  if (!cfg) return set_error("null config");
  return guarded([&] {
    const Engine engine(cfg->cfg.design, cfg->cfg.limits, cfg->cfg.optimizer,
                        cfg->cfg.engine_options());
    engine.process_one(build_initial_path(cfg->cfg));
    return PP_OK;
  });
}

pp_status pp_run(const pp_config* cfg, pp_result** out) {
  if (!cfg || !out) return set_error("pp_run: null argument");
  return guarded([&] {
    const Engine engine(cfg->cfg.design, cfg->cfg.limits, cfg->cfg.optimizer,
                        cfg->cfg.engine_options());
    auto* res = new pp_result{engine.run(build_initial_path(cfg->cfg)), cfg->cfg};
    *out = res;
    return PP_OK;
  });
}

void pp_result_free(pp_result* result) { delete result; }

int pp_result_iteration_count(const pp_result* result) {
  return result ? result->result.accepted_iterations : 0;
}

int pp_result_breakpoint_count(const pp_result* result) {
  return result ? result->result.path.size() : 0;
}

pp_status pp_result_breakpoint(const pp_result* result, int index,
                               double out_pose[6]) {
  if (!result || !out_pose) return set_error("null argument");
  if (index < 0 || index >= result->result.path.size())
    return set_error("breakpoint index out of range");
  for (int k = 0; k < 6; ++k)
    out_pose[k] = result->result.path.pts[static_cast<size_t>(index)].u[k];
  return PP_OK;
}

pp_status pp_result_summary(const pp_result* result, double* length,
                            double* total_curvature, double* elapsed_seconds,
                            int* final_breakpoints) {
  if (!result) return set_error("null result");
  if (length) *length = result->result.summary.length;
  if (total_curvature) *total_curvature = result->result.summary.total_curvature;
  if (elapsed_seconds) *elapsed_seconds = result->result.elapsed_seconds;
  if (final_breakpoints) *final_breakpoints = result->result.path.size();
  return PP_OK;
}

int pp_result_record_count(const pp_result* result) {
  return result ? static_cast<int>(result->result.records.size()) : 0;
}

pp_status pp_result_record(const pp_result* result, int i, int* iteration,
                           double* objective, double* step, int* breakpoints,
                           double* min_clearance) {
  if (!result) return set_error("null result");
  if (i < 0 || i >= static_cast<int>(result->result.records.size()))
    return set_error("record index out of range");
  const IterationRecord& rec = result->result.records[static_cast<size_t>(i)];
  if (iteration) *iteration = rec.iteration;
  if (objective) *objective = rec.objective;
  if (step) *step = rec.step;
  if (breakpoints) *breakpoints = rec.breakpoints;
  if (min_clearance) *min_clearance = rec.min_clearance;
  return PP_OK;
}

int pp_result_converged(const pp_result* result) {
  return result && result->result.converged ? 1 : 0;
}

const char* pp_result_stop_reason(const pp_result* result) {
  return result ? result->result.stop_reason.c_str() : "";
}

pp_status pp_result_export(const pp_result* result, const char* out_dir) {
  if (!result || !out_dir) return set_error("null argument");
  return guarded([&] {
    export_results(result->result, result->cfg, out_dir);
    return PP_OK;
  });
}

pp_status pp_pedals(const pp_config* cfg, const double pose[6], pp_pedal* out,
                    int capacity, int* count) {
  if (!cfg || !pose || !count || (capacity > 0 && !out))
    return set_error("pp_pedals: null argument");
  return guarded([&] {
    const MetricTensor g = metric_tensor(cfg->cfg.design);
    const SigmaVariety sigma = build_sigma(cfg->cfg.design);
    Pose p;
    for (int k = 0; k < 6; ++k) p.u[k] = pose[k];
    const PedalSet set = orthogonal_projection(p, sigma, g);
    *count = static_cast<int>(set.size());
    const int n = std::min(capacity, *count);
    for (int i = 0; i < n; ++i) {
      const Pedal& ped = set.pedals[static_cast<size_t>(i)];
      for (int k = 0; k < 6; ++k) out[i].point[k] = ped.point[k];
      out[i].component = static_cast<int>(ped.component);
      out[i].distance = ped.distance;
    }
    return PP_OK;
  });
}

pp_status pp_sigma_values(const pp_config* cfg, const double pose[6],
                          double* f1, double* f2) {
  if (!cfg || !pose) return set_error("pp_sigma_values: null argument");
  return guarded([&] {
    const SigmaVariety sigma = build_sigma(cfg->cfg.design);
    Pose p;
    for (int k = 0; k < 6; ++k) p.u[k] = pose[k];
    const auto [v1, v2] = evaluate_sigma(sigma, p);
    if (f1) *f1 = v1;
    if (f2) *f2 = v2;
    return PP_OK;
  });
}

}  // extern "C"
