#include "core/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace pentapath {

double Engine::State::min_clearance() const {
  double m = std::numeric_limits<double>::infinity();
  for (size_t i = 1; i + 1 < radius.size(); ++i) m = std::min(m, radius[i]);
  return m;
}

Engine::Engine(const DesignParams& design, const JointLimits& limits,
               const OptimizerConfig& cfg, const EngineOptions& options)
    : design_(design),
      limits_(limits),
      cfg_(cfg),
      options_(options),
      metric_(metric_tensor(design)),
      sigma_(build_sigma(design)) {
  limits_.validate();
  if (!(cfg_.growth > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "growth must be positive");
  if (cfg_.lambda_w < 0.0 || cfg_.eta_w < 0.0)
    throw Error(ErrorCode::kInvalidArgument, "energy weights must be nonnegative");
}

PedalSet Engine::pedals_at(const Pose& p, std::vector<std::string>* warnings) const {
  return orthogonal_projection(p, sigma_, metric_, warnings);
}

Engine::State Engine::process_one(const DiscretePath& initial) const {
  if (initial.size() < 3)
    throw Error(ErrorCode::kInfeasiblePath,
                "initial path needs at least 3 breakpoints");

  State s;
  s.path = initial;
  for (int i = 0; i < s.path.size(); ++i) {
    if (!s.path.pts[static_cast<size_t>(i)].on_cylinder())
      throw Error(ErrorCode::kInfeasiblePath,
                  "breakpoint " + std::to_string(i) +
                      " is not on the orientation cylinder");
  }

  s.pedals.reserve(static_cast<size_t>(s.path.size()));
  s.radius.reserve(static_cast<size_t>(s.path.size()));
  for (int i = 0; i < s.path.size(); ++i) {
    PedalSet set = pedals_at(s.path.pts[static_cast<size_t>(i)], &s.warnings);
    const double r = set.min_distance();
    if (!(r > tol::kMinClearance))
      throw Error(ErrorCode::kInfeasiblePath,
                  "breakpoint " + std::to_string(i) +
                      " touches the singularity variety (clearance " +
                      std::to_string(r) + ")");
    s.pedals.push_back(std::move(set));
    s.radius.push_back(r);
  }

  if (options_.joints_enabled) {
    if (auto viol = check_joint_feasible(s.path, limits_, design_)) {
      throw Error(ErrorCode::kInfeasiblePath,
                  "breakpoint " + std::to_string(viol->breakpoint) +
                      " violates the " + to_string(viol->kind) + " limit of leg " +
                      std::to_string(viol->leg + 1));
    }
  }

  if (options_.cover_enabled) {
    RadiusFn radius_fn = [this, &s](const Pose& p) {
      return pedals_at(p, &s.warnings).min_distance();
    };
    minimal_cover(s.path, s.radius, metric_, radius_fn, options_.cover);
    // Refresh pedal data for the possibly edited breakpoint list.
    s.pedals.clear();
    for (int i = 0; i < s.path.size(); ++i)
      s.pedals.push_back(pedals_at(s.path.pts[static_cast<size_t>(i)], &s.warnings));
  }

  s.stats = path_stats(s.path, metric_);
  std::vector<double> dists(s.radius.begin() + 1, s.radius.end() - 1);
  s.objective = objective_value(s.stats, s.path.size(), cfg_.lambda_w,
                                cfg_.eta_w, dists);
  return s;
}

IterationRecord Engine::initial_record(const State& s) const {
  IterationRecord rec;
  rec.iteration = 0;
  rec.objective = s.objective;
  rec.step = 0.0;
  rec.breakpoints = s.path.size();
  rec.min_clearance = s.min_clearance();
  return rec;
}

std::optional<IterationRecord> Engine::iterate(State& s) const {
  const int n = s.path.size();
  const int m = n - 2;

  CostContext ctx;
  ctx.prev = s.stats;
  ctx.pedals = &s.pedals;
  ctx.metric = &metric_;
  ctx.lambda_w = cfg_.lambda_w;
  ctx.eta_w = cfg_.eta_w;
  const QuadraticCost cost = assemble_cost(ctx, s.path);
  const std::vector<Vec6> solution = cost.solve(&s.warnings);

  std::vector<Vec6> dirs(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j)
    dirs[static_cast<size_t>(j)] = solution[static_cast<size_t>(j)] - s.path.pts[static_cast<size_t>(j + 1)].u;

  std::vector<RedirectionRecord> redirections;
  if (options_.joints_enabled) {
    const auto breaches =
        detect_breaches(s.path, dirs, limits_, design_, metric_, &s.warnings);
    for (int j = 1; j + 1 < n; ++j) {
      std::vector<QBreach> local;
      for (const auto& b : breaches)
        if (b.breakpoint == j) local.push_back(b);
      if (local.empty()) continue;
      Vec6& d = dirs[static_cast<size_t>(j - 1)];
      d = tangent_replace(d, local, metric_, &s.warnings);
      RedirectionRecord rec;
      rec.breakpoint = j;
      for (const auto& b : local) rec.normals.push_back(b.normal);
      rec.direction = d;
      redirections.push_back(std::move(rec));
    }
  }

  const StepSize s0 = step_size(s.path, dirs, s.stats, cfg_.growth, metric_);

  // Tangent projection onto the cylinder commutes with scaling, so it is
  // applied to the directions once and reused across step halvings.
  std::vector<Vec6> dirs_tan = dirs;
  for (int j = 0; j < m; ++j) {
    const Vec3 at = s.path.pts[static_cast<size_t>(j + 1)].orientation();
    dirs_tan[static_cast<size_t>(j)].head<3>() =
        sphere_tangent_project(Vec3(dirs[static_cast<size_t>(j)].head<3>()), at);
  }

  const double step_floor = std::max(cfg_.min_step, tol::kStepFloor);
  double step = s0.value;
  for (int attempt = 0; attempt < 64 && step >= step_floor; ++attempt, step *= 0.5) {
    // Candidate path from the cached pre-update breakpoints.
    DiscretePath cand = s.path;
    bool valid = true;
    for (int j = 0; j < m; ++j) {
      Pose& pt = cand.pts[static_cast<size_t>(j + 1)];
      pt.u += step * dirs_tan[static_cast<size_t>(j)];
      if (pt.orientation().norm() < 1e-9) {
        valid = false;  // update collapsed the orientation; shrink the step
        break;
      }
      pt = normalize_to_cylinder(pt);
    }
    if (!valid) continue;

    // Origin index into the pre-update path; inserted breakpoints get -1.
    std::vector<int> origin(static_cast<size_t>(cand.size()));
    for (int i = 0; i < cand.size(); ++i) origin[static_cast<size_t>(i)] = i;

    std::vector<double> radii(static_cast<size_t>(cand.size()));
    for (int i = 0; i < cand.size(); ++i)
      radii[static_cast<size_t>(i)] =
          pedals_at(cand.pts[static_cast<size_t>(i)], nullptr).min_distance();

    bool cover_changed = false;
    if (options_.cover_enabled) {
      std::vector<std::string> cover_warnings;
      RadiusFn radius_fn = [this, &cover_warnings](const Pose& p) {
        return pedals_at(p, &cover_warnings).min_distance();
      };
      const auto report = minimal_cover(cand, radii, metric_, radius_fn,
                                        options_.cover, &origin);
      cover_changed = report.changed();
      for (auto& w : cover_warnings) s.warnings.push_back(std::move(w));
    }

    const PathStats cand_stats = path_stats(cand, metric_);

    // Objective distance term: updated breakpoints against their closest
    // pre-update pedal; breakpoints the cover inserted have no pre-update
    // pedal and use their own clearance.
    std::vector<double> dists;
    dists.reserve(static_cast<size_t>(cand.size() - 2));
    bool clearance_ok = true;
    for (int j = 1; j + 1 < cand.size(); ++j) {
      const int src = origin[static_cast<size_t>(j)];
      if (src >= 0) {
        const Pedal& q = s.pedals[static_cast<size_t>(src)].closest();
        dists.push_back(metric_.norm(cand.pts[static_cast<size_t>(j)].u - q.point));
      } else {
        dists.push_back(radii[static_cast<size_t>(j)]);
      }
      if (!(radii[static_cast<size_t>(j)] > tol::kMinClearance)) clearance_ok = false;
    }
    if (!clearance_ok) continue;  // candidate stepped onto the variety

    const double cand_objective = objective_value(
        cand_stats, cand.size(), cfg_.lambda_w, cfg_.eta_w, dists);

    if (cand_objective <= s.objective) {
      s.path = std::move(cand);
      s.radius = std::move(radii);
      s.pedals.clear();
      s.pedals.reserve(static_cast<size_t>(s.path.size()));
      for (int i = 0; i < s.path.size(); ++i)
        s.pedals.push_back(pedals_at(s.path.pts[static_cast<size_t>(i)], &s.warnings));
      s.stats = cand_stats;

      const double rel_change = std::abs(cand_objective - s.objective) /
                                std::max(1.0, std::abs(s.objective));
      s.plateau = rel_change < tol::kObjectivePlateau ? s.plateau + 1 : 0;
      if (s.plateau >= 3) s.converged = true;
      s.objective = cand_objective;
      ++s.iteration;

      IterationRecord rec;
      rec.iteration = s.iteration;
      rec.objective = s.objective;
      rec.step = step;
      rec.breakpoints = s.path.size();
      rec.min_clearance = s.min_clearance();
      rec.cover_changed = cover_changed;
      rec.redirections = std::move(redirections);
      return rec;
    }
  }

  // Halving collapsed without descent: local minimum reached.
  s.converged = true;
  return std::nullopt;
}

RunResult Engine::run(const DiscretePath& initial) const {
  State s = process_one(initial);
  RunResult result;
  result.records.push_back(initial_record(s));
  result.snapshots.emplace_back(0, s.path);

  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 1; i <= cfg_.max_iterations; ++i) {
    auto rec = iterate(s);
    const auto now = std::chrono::steady_clock::now();
    if (!rec) {
      result.converged = true;
      result.stop_reason = "converged: step size collapsed without descent";
      break;
    }
    rec->elapsed_seconds = std::chrono::duration<double>(now - t0).count();
    result.records.push_back(*rec);
    if (options_.log_every > 0 && i % options_.log_every == 0)
      result.snapshots.emplace_back(i, s.path);
    if (s.converged) {
      result.converged = true;
      result.stop_reason = "converged: objective plateau";
      break;
    }
  }
  if (result.stop_reason.empty()) {
    result.stop_reason = s.iteration >= cfg_.max_iterations
                             ? "iteration limit reached"
                             : "no iterations requested";
  }
  const auto t1 = std::chrono::steady_clock::now();
  result.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
  if (result.snapshots.back().first != s.iteration)
    result.snapshots.emplace_back(s.iteration, s.path);
  result.path = s.path;
  result.summary = path_stats(s.path, metric_);
  result.accepted_iterations = s.iteration;
  result.warnings = std::move(s.warnings);
  return result;
}

}  // namespace pentapath
