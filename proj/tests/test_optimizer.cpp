#include <doctest.h>

#include "core/optimizer.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace pentapath;
using namespace pentapath::testing;

namespace {

// Synthetic pedal set at given metric distances in coordinate directions.
PedalSet synthetic_pedals(const Pose& p, const MetricTensor& g,
                          std::initializer_list<std::pair<int, double>> spec) {
  PedalSet set;
  for (auto [axis, dist] : spec) {
    Pedal ped;
    Vec6 offset = Vec6::Zero();
    offset[axis] = 1.0;
    offset *= dist / g.norm(offset);
    ped.point = p.u - offset;
    ped.distance = dist;
    ped.component = SigmaComponent::kSigma2;
    set.pedals.push_back(ped);
  }
  return set;
}

struct RandomInstance {
  DiscretePath path;
  std::vector<PedalSet> pedals;
  CostContext ctx;
  MetricTensor g{1.0, 0.0};
};

RandomInstance random_instance(Rng& rng, int n, double lambda_w, double eta_w) {
  RandomInstance inst;
  const DesignParams d = showcase_design();
  inst.g = metric_tensor(d);
  const SigmaVariety v = build_sigma(d);
  for (int i = 0; i < n; ++i) inst.path.pts.push_back(random_pose(rng));
  for (int i = 0; i < n; ++i)
    inst.pedals.push_back(orthogonal_projection(inst.path.pts[static_cast<size_t>(i)], v, inst.g));
  inst.ctx.prev = path_stats(inst.path, inst.g);
  inst.ctx.pedals = &inst.pedals;
  inst.ctx.metric = &inst.g;
  inst.ctx.lambda_w = lambda_w;
  inst.ctx.eta_w = eta_w;
  return inst;
}

}  // namespace

TEST_CASE("cost assembly") {
  const DesignParams d = showcase_design();
  const MetricTensor g = metric_tensor(d);

  SUBCASE("pure repulsion with a single interior point") {
    DiscretePath path({Pose(1, 0, 0, 0, 0, 0), Pose(1, 0, 0, 1, 0, 2),
                       Pose(1, 0, 0, 2, 0, 4)});
    std::vector<PedalSet> pedals(3);
    pedals[1] = synthetic_pedals(path.pts[1], g, {{5, 1.5}});
    CostContext ctx;
    ctx.prev = path_stats(path, g);
    ctx.pedals = &pedals;
    ctx.metric = &g;
    ctx.lambda_w = 0.0;
    ctx.eta_w = 0.0;
    const QuadraticCost cost = assemble_cost(ctx, path);

    // C(u) = -<unit direction, u - p>_g: linear with gradient -g*dir.
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
      const Vec6 u = random_pose(rng).u;
      const Vec6 dir = weighted_repulsion_direction(path.pts[1], pedals[1], g);
      const double expect = -g.inner(dir, u - path.pts[1].u);
      const double direct =
          oracles::direct_cost_value(ctx, path, {u});
      CHECK(direct == doctest::Approx(expect).epsilon(1e-12));
      const auto grad = cost.gradient({u});
      CHECK((grad[0] + g.apply(dir)).norm() < 1e-12 * (1.0 + g.apply(dir).norm()));
    }
  }

  SUBCASE("evaluating at the current path recovers the normalized energies") {
    Rng rng(8);
    const auto inst = random_instance(rng, 6, 0.7, 0.3);
    // Strip the repulsion term: its value at u = p is zero anyway.
    std::vector<Vec6> at_p;
    for (int j = 1; j + 1 < inst.path.size(); ++j)
      at_p.push_back(inst.path.pts[static_cast<size_t>(j)].u);
    const double direct = oracles::direct_cost_value(inst.ctx, inst.path, at_p);
    const int n = inst.path.size();
    const double expect =
        0.7 * (n - 1) * inst.ctx.prev.geodesic_energy / (2.0 * inst.ctx.prev.length) +
        0.3 * (n - 2) * inst.ctx.prev.bending_energy / (2.0 * inst.ctx.prev.total_curvature);
    CHECK(direct == doctest::Approx(expect).epsilon(1e-12));
  }

  SUBCASE("assembled gradient matches finite differences of the direct value") {
    Rng rng(15);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 3 + static_cast<int>(rng() % 8);
      const auto inst = random_instance(rng, n, uniform(rng, 0.0, 1.0),
                                        uniform(rng, 0.0, 1.0));
      const QuadraticCost cost = assemble_cost(inst.ctx, inst.path);
      std::vector<Vec6> u;
      for (int j = 0; j < n - 2; ++j) u.push_back(random_pose(rng).u);
      const auto grad = cost.gradient(u);
      const auto fd = oracles::fd_cost_gradient(inst.ctx, inst.path, u);
      double scale = 0.0, err = 0.0;
      for (int j = 0; j < n - 2; ++j) {
        scale += grad[static_cast<size_t>(j)].squaredNorm();
        err += (grad[static_cast<size_t>(j)] - fd[static_cast<size_t>(j)]).squaredNorm();
      }
      CHECK(std::sqrt(err) <= 1e-6 * (1.0 + std::sqrt(scale)));
    }
  }

  SUBCASE("zero previous length is rejected") {
    DiscretePath path({Pose(1, 0, 0, 0, 0, 0), Pose(1, 0, 0, 0, 0, 0),
                       Pose(1, 0, 0, 0, 0, 0)});
    std::vector<PedalSet> pedals(3);
    pedals[1] = synthetic_pedals(path.pts[1], g, {{5, 1.0}});
    CostContext ctx;
    ctx.prev = path_stats(path, g);
    ctx.pedals = &pedals;
    ctx.metric = &g;
    CHECK_THROWS_AS(assemble_cost(ctx, path), Error);
  }
}

TEST_CASE("interior update solve") {
  const DesignParams d = showcase_design();
  const MetricTensor g = metric_tensor(d);

  SUBCASE("laplace smoothing without repulsion: midpoint and thirds") {
    // A symmetric pedal pair cancels the repulsion term exactly, leaving the
    // discrete Laplace problem whose minimizer is the straight equal
    // spacing.
    DiscretePath path3({Pose(1, 0, 0, 0, 0, 0), Pose(1, 0, 0, 3, -1, 2),
                        Pose(1, 0, 0, 4, 0, 0)});
    std::vector<PedalSet> pedals(3);
    pedals[1] = synthetic_pedals(path3.pts[1], g, {{3, 1.0}});
    {
      Pedal mirror = pedals[1].pedals[0];
      mirror.point = path3.pts[1].u + (path3.pts[1].u - mirror.point);
      pedals[1].pedals.push_back(mirror);  // equal and opposite
    }
    CostContext ctx;
    ctx.prev = path_stats(path3, g);
    ctx.pedals = &pedals;
    ctx.metric = &g;
    ctx.lambda_w = 2.0;
    ctx.eta_w = 0.0;
    const auto u3 = assemble_cost(ctx, path3).solve();
    const Vec6 mid = 0.5 * (path3.front().u + path3.back().u);
    CHECK((u3[0] - mid).norm() < 1e-9);

    DiscretePath path4({Pose(1, 0, 0, 0, 0, 0), Pose(1, 0, 0, 1, 2, 0),
                        Pose(1, 0, 0, 2, -1, 1), Pose(1, 0, 0, 6, 0, 3)});
    std::vector<PedalSet> pedals4(4);
    for (int j = 1; j <= 2; ++j) {
      pedals4[static_cast<size_t>(j)] = synthetic_pedals(path4.pts[static_cast<size_t>(j)], g, {{3, 1.0}});
      Pedal mirror = pedals4[static_cast<size_t>(j)].pedals[0];
      mirror.point = path4.pts[static_cast<size_t>(j)].u +
                     (path4.pts[static_cast<size_t>(j)].u - mirror.point);
      pedals4[static_cast<size_t>(j)].pedals.push_back(mirror);
    }
    CostContext ctx4 = ctx;
    ctx4.prev = path_stats(path4, g);
    ctx4.pedals = &pedals4;
    const auto u4 = assemble_cost(ctx4, path4).solve();
    const Vec6 third = path4.front().u + (path4.back().u - path4.front().u) / 3.0;
    const Vec6 two_thirds = path4.front().u + 2.0 * (path4.back().u - path4.front().u) / 3.0;
    CHECK((u4[0] - third).norm() < 1e-9);
    CHECK((u4[1] - two_thirds).norm() < 1e-9);
  }

  SUBCASE("random instances match the dense generic solver") {
    Rng rng(99);
    for (int trial = 0; trial < 25; ++trial) {
      const int n = 3 + static_cast<int>(rng() % 10);
      const auto inst = random_instance(rng, n, uniform(rng, 0.01, 2.0),
                                        uniform(rng, 0.0, 2.0));
      const QuadraticCost cost = assemble_cost(inst.ctx, inst.path);
      const auto u = cost.solve();
      const auto dense = oracles::dense_solve(cost);
      double err = 0.0, scale = 0.0;
      for (size_t j = 0; j < u.size(); ++j) {
        err += (u[j] - dense[j]).squaredNorm();
        scale += dense[j].squaredNorm();
      }
      CHECK(std::sqrt(err) <= 1e-9 * (1.0 + std::sqrt(scale)));

      // Residual contract.
      const auto grad = cost.gradient(u);
      double gn = 0.0, rn = 0.0;
      for (const auto& v : grad) gn += v.squaredNorm();
      for (const auto& v : cost.rhs()) rn += v.squaredNorm();
      CHECK(std::sqrt(gn) <= tol::kSolveResidual * (1.0 + std::sqrt(rn)));
    }
  }

  SUBCASE("zero weights fall back to a pure repulsion step") {
    Rng rng(13);
    const auto inst = random_instance(rng, 5, 0.0, 0.0);
    const QuadraticCost cost = assemble_cost(inst.ctx, inst.path);
    std::vector<std::string> warnings;
    const auto u = cost.solve(&warnings);
    CHECK(!warnings.empty());
    for (int j = 0; j < 3; ++j) {
      const Pose& pj = inst.path.pts[static_cast<size_t>(j + 1)];
      const Vec6 expect =
          pj.u + weighted_repulsion_direction(pj, inst.pedals[static_cast<size_t>(j + 1)], inst.g);
      CHECK((u[static_cast<size_t>(j)] - expect).norm() < 1e-12);
    }
  }
}

TEST_CASE("step size") {
  const MetricTensor g(2.0, 0.0);

  SUBCASE("zero update keeps the full step") {
    DiscretePath path({Pose(1, 0, 0, 0, 0, 0), Pose(1, 0, 0, 1, 0, 0),
                       Pose(1, 0, 0, 2, 0, 0)});
    const PathStats prev = path_stats(path, g);
    const auto s = step_size(path, {Vec6::Zero()}, prev, 5.0, g);
    CHECK(s.value == 1.0);
    CHECK(!s.from_root);
  }

  SUBCASE("symmetric instance hits the growth band at sqrt(growth/100)") {
    // P(s) = E' (1 + s^2): the +5% equation gives s = sqrt(0.05).
    DiscretePath path({Pose(1, 0, 0, -1, 0, 0), Pose(1, 0, 0, 0, 0, 0),
                       Pose(1, 0, 0, 1, 0, 0)});
    const PathStats prev = path_stats(path, g);
    Vec6 dir = Vec6::Zero();
    dir[4] = 1.0;  // orthogonal to the segments, |dir|_g = |segment|_g
    const auto s = step_size(path, {dir}, prev, 5.0, g);
    CHECK(s.from_root);
    CHECK(s.value == doctest::Approx(std::sqrt(0.05)).epsilon(1e-12));
  }

  SUBCASE("binding root reproduces the banded energy") {
    Rng rng(55);
    const DesignParams d = showcase_design();
    const MetricTensor gm = metric_tensor(d);
    int binding = 0;
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 3 + static_cast<int>(rng() % 8);
      DiscretePath path;
      for (int i = 0; i < n; ++i) path.pts.push_back(random_pose(rng));
      std::vector<Vec6> dirs;
      for (int j = 0; j < n - 2; ++j) dirs.push_back(0.5 * random_pose(rng).u);
      const PathStats prev = path_stats(path, gm);
      const auto s = step_size(path, dirs, prev, 5.0, gm);
      CHECK(s.value > 0.0);
      CHECK(s.value <= 1.0);
      if (!s.from_root) continue;
      ++binding;
      const double pe = stepped_geodesic_energy(path, dirs, s.value, gm);
      const double qe = stepped_bending_energy(path, dirs, s.value, gm);
      const double perr = std::min(std::abs(pe - 1.05 * prev.geodesic_energy),
                                   std::abs(pe - 0.95 * prev.geodesic_energy));
      const double qerr = std::min(std::abs(qe - 1.05 * prev.bending_energy),
                                   std::abs(qe - 0.95 * prev.bending_energy));
      const double scale = 1.0 + prev.geodesic_energy + prev.bending_energy;
      CHECK(std::min(perr, qerr) <= 1e-9 * scale);
    }
    CHECK(binding > 10);
  }
}

TEST_CASE("objective") {
  const DesignParams d = showcase_design();
  const MetricTensor g = metric_tensor(d);
  Rng rng(66);

  SUBCASE("zero weights leave the negated mean clearance") {
    DiscretePath path;
    for (int i = 0; i < 5; ++i) path.pts.push_back(random_pose(rng));
    const PathStats st = path_stats(path, g);
    const std::vector<double> dists = {1.0, 2.0, 4.0};
    CHECK(objective_value(st, 5, 0.0, 0.0, dists) ==
          doctest::Approx(-(1.0 + 2.0 + 4.0) / 3.0).epsilon(1e-14));
  }

  SUBCASE("bit-for-bit reproducible") {
    DiscretePath path;
    for (int i = 0; i < 6; ++i) path.pts.push_back(random_pose(rng));
    const PathStats st = path_stats(path, g);
    const std::vector<double> dists = {0.5, 0.25, 0.125, 2.0};
    const double a = objective_value(st, 6, 0.001, 0.05, dists);
    const double b = objective_value(st, 6, 0.001, 0.05, dists);
    CHECK(a == b);
  }

  SUBCASE("straight path drops the bending term") {
    DiscretePath path({Pose(1, 0, 0, 0, 0, 0), Pose(1, 0, 0, 1, 0, 0),
                       Pose(1, 0, 0, 2, 0, 0)});
    const PathStats st = path_stats(path, g);
    REQUIRE(st.total_curvature == 0.0);
    const double v = objective_value(st, 3, 0.5, 0.5, {1.0});
    CHECK(v == doctest::Approx(0.5 * 2.0 * st.geodesic_energy / (2.0 * st.length) - 1.0));
  }
}
