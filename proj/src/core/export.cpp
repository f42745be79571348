#include "core/export.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

namespace pentapath {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out)
    throw Error(ErrorCode::kIo, "cannot write " + p.string());
  return out;
}

}  // namespace

void export_results(const RunResult& result, const RunConfig& cfg,
                    const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::is_directory(out_dir))
    throw Error(ErrorCode::kIo, "cannot create output directory " + out_dir);

  {
    auto out = open_out(fs::path(out_dir) / "breakpoints.csv");
    out << "iteration,index,u1,u2,u3,u4,u5,u6\n";
    for (const auto& [iter, path] : result.snapshots) {
      for (int i = 0; i < path.size(); ++i) {
        out << iter << ',' << i;
        for (int k = 0; k < 6; ++k)
          out << ',' << format_double(path.pts[static_cast<size_t>(i)].u[k]);
        out << '\n';
      }
    }
  }

  {
    auto out = open_out(fs::path(out_dir) / "objective.csv");
    out << "iteration,objective,step,n,min_clearance\n";
    for (const auto& rec : result.records) {
      out << rec.iteration << ',' << format_double(rec.objective) << ','
          << format_double(rec.step) << ',' << rec.breakpoints << ','
          << format_double(rec.min_clearance) << '\n';
    }
  }

  {
    const MetricTensor g = metric_tensor(cfg.design);
    const SigmaVariety sigma = build_sigma(cfg.design);
    auto out = open_out(fs::path(out_dir) / "pedals.csv");
    out << "index,rank,component,distance,p1,p2,p3,p4,p5,p6,q1,q2,q3,q4,q5,q6\n";
    for (int i = 0; i < result.path.size(); ++i) {
      const Pose& p = result.path.pts[static_cast<size_t>(i)];
      const PedalSet set = orthogonal_projection(p, sigma, g);
      int rank = 0;
      for (const auto& ped : set.pedals) {
        out << i << ',' << rank++ << ',' << to_string(ped.component) << ','
            << format_double(ped.distance);
        for (int k = 0; k < 6; ++k) out << ',' << format_double(p.u[k]);
        for (int k = 0; k < 6; ++k) out << ',' << format_double(ped.point[k]);
        out << '\n';
      }
    }
  }

  {
    nlohmann::json j;
    j["length"] = result.summary.length;
    j["total_curvature"] = result.summary.total_curvature;
    j["elapsed_seconds"] = result.elapsed_seconds;
    j["final_breakpoints"] = result.path.size();
    auto out = open_out(fs::path(out_dir) / "summary.json");
    out << j.dump(2) << '\n';
  }

  {
    auto out = open_out(fs::path(out_dir) / "config.json");
    out << config_to_json(cfg).dump(2) << '\n';
  }
}

}  // namespace pentapath
