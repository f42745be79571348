// Command-line front end for the pentapath shared library. Talks to the core
// exclusively through the C API.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pentapath.h"

namespace {

int exit_code(pp_status st) {
  switch (st) {
    case PP_OK: return 0;
    case PP_ERROR_SCHEMA: return 2;
    case PP_ERROR_INFEASIBLE_PATH: return 3;
    default: return 1;
  }
}

int fail(pp_status st) {
  std::fprintf(stderr, "error: %s\n", pp_last_error());
  return exit_code(st);
}

struct ConfigHandle {
  pp_config* cfg = nullptr;
  ~ConfigHandle() { pp_config_free(cfg); }
};

struct ResultHandle {
  pp_result* res = nullptr;
  ~ResultHandle() { pp_result_free(res); }
};

bool parse_pose(const std::string& text, double pose[6]) {
  std::vector<double> vals;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = text.find(',', start);
    const std::string tok =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      size_t used = 0;
      vals.push_back(std::stod(tok, &used));
      if (used != tok.size()) return false;
    } catch (...) {
      return false;
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (vals.size() != 6) return false;
  for (int k = 0; k < 6; ++k) pose[k] = vals[static_cast<size_t>(k)];
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variational singularity-avoiding path optimizer for linear pentapods"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string pose_text;
  int log_every = -1;
  int max_iter = -1;
  bool no_cover = false;
  bool no_joints = false;

  auto* optimize = app.add_subcommand("optimize", "run the path optimization");
  optimize->add_option("config", config_path, "configuration file")->required();
  optimize->add_option("--out", out_dir, "output directory")->required();
  optimize->add_option("--log-every", log_every, "snapshot stride for breakpoints.csv");
  optimize->add_option("--max-iter", max_iter, "override the iteration limit");
  optimize->add_flag("--no-cover", no_cover, "disable cover maintenance");
  optimize->add_flag("--no-joints", no_joints, "disable joint limit handling");

  auto* pedals = app.add_subcommand("pedals", "print the pedal points of a pose");
  pedals->add_option("config", config_path, "configuration file")->required();
  pedals->add_option("--pose", pose_text, "pose as u1,u2,u3,u4,u5,u6")->required();

  auto* validate = app.add_subcommand("validate", "check a configuration and its initial path");
  validate->add_option("config", config_path, "configuration file")->required();

  CLI11_PARSE(app, argc, argv);

  ConfigHandle cfg;
  if (pp_status st = pp_config_load(config_path.c_str(), &cfg.cfg); st != PP_OK)
    return fail(st);

  if (validate->parsed()) {
    if (pp_status st = pp_validate(cfg.cfg); st != PP_OK) return fail(st);
    std::printf("ok: configuration valid, initial path feasible\n");
    return 0;
  }

  if (pedals->parsed()) {
    double pose[6];
    if (!parse_pose(pose_text, pose)) {
      std::fprintf(stderr, "error: --pose expects 6 comma-separated numbers\n");
      return 1;
    }
    double f1 = 0.0, f2 = 0.0;
    if (pp_status st = pp_sigma_values(cfg.cfg, pose, &f1, &f2); st != PP_OK)
      return fail(st);
    pp_pedal buf[8];
    int count = 0;
    if (pp_status st = pp_pedals(cfg.cfg, pose, buf, 8, &count); st != PP_OK)
      return fail(st);
    std::printf("component values: f1 = %.17g, f2 = %.17g\n", f1, f2);
    std::printf("%-8s %-22s %s\n", "rank", "distance", "pedal point");
    for (int i = 0; i < count && i < 8; ++i) {
      const char* comp = buf[i].component == 1   ? "Sigma1"
                         : buf[i].component == 2 ? "Sigma2"
                                                 : "Sigma3";
      std::printf("%d %-6s %-22.17g (", i, comp, buf[i].distance);
      for (int k = 0; k < 6; ++k)
        std::printf("%s%.17g", k ? ", " : "", buf[i].point[k]);
      std::printf(")\n");
    }
    return 0;
  }

  // optimize
  if (log_every >= 0) pp_config_set_log_every(cfg.cfg, log_every);
  if (max_iter >= 0) pp_config_set_max_iterations(cfg.cfg, max_iter);
  if (no_cover) pp_config_set_cover_enabled(cfg.cfg, 0);
  if (no_joints) pp_config_set_joints_enabled(cfg.cfg, 0);

  ResultHandle res;
  if (pp_status st = pp_run(cfg.cfg, &res.res); st != PP_OK) return fail(st);

  double length = 0.0, curvature = 0.0, elapsed = 0.0;
  int final_n = 0;
  pp_result_summary(res.res, &length, &curvature, &elapsed, &final_n);
  std::printf("iterations accepted: %d%s\n", pp_result_iteration_count(res.res),
              pp_result_converged(res.res) ? " (converged)" : "");
  std::printf("stop reason:         %s\n", pp_result_stop_reason(res.res));
  std::printf("final breakpoints:   %d\n", final_n);
  std::printf("length:              %.6f\n", length);
  std::printf("total curvature:     %.6f\n", curvature);
  std::printf("elapsed:             %.4f s\n", elapsed);

  const int records = pp_result_record_count(res.res);
  if (records > 0) {
    double obj0 = 0.0, obj1 = 0.0, clr0 = 0.0, clr1 = 0.0;
    pp_result_record(res.res, 0, nullptr, &obj0, nullptr, nullptr, &clr0);
    pp_result_record(res.res, records - 1, nullptr, &obj1, nullptr, nullptr, &clr1);
    std::printf("objective:           %.8f -> %.8f\n", obj0, obj1);
    std::printf("min clearance:       %.6f -> %.6f\n", clr0, clr1);
  }

  if (pp_status st = pp_result_export(res.res, out_dir.c_str()); st != PP_OK)
    return fail(st);
  std::printf("results written to %s\n", out_dir.c_str());
  return 0;
}
