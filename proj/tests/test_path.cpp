#include <doctest.h>

#include "core/path.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace pentapath;
using namespace pentapath::testing;

TEST_CASE("path statistics") {
  MetricTensor g(2.0, 0.0);

  SUBCASE("three collinear equally spaced points") {
    // Unit metric spacing along a position axis (position block is identity).
    DiscretePath path({Pose(1, 0, 0, 0, 0, 0), Pose(1, 0, 0, 1, 0, 0),
                       Pose(1, 0, 0, 2, 0, 0)});
    const PathStats s = path_stats(path, g);
    CHECK(s.geodesic_energy == doctest::Approx(2.0));
    CHECK(s.bending_energy == 0.0);
    CHECK(s.length == doctest::Approx(2.0));
    CHECK(s.total_curvature == 0.0);
  }

  SUBCASE("identical consecutive points give all zeros") {
    DiscretePath path({Pose(1, 0, 0, 1, 1, 1), Pose(1, 0, 0, 1, 1, 1),
                       Pose(1, 0, 0, 1, 1, 1)});
    const PathStats s = path_stats(path, g);
    CHECK(s.geodesic_energy == 0.0);
    CHECK(s.bending_energy == 0.0);
    CHECK(s.length == 0.0);
    CHECK(s.total_curvature == 0.0);
  }

  SUBCASE("uneven spacing on a straight line still bends") {
    // Second differences measure spacing irregularity, not turning angles.
    DiscretePath path({Pose(1, 0, 0, 0, 0, 0), Pose(1, 0, 0, 1, 0, 0),
                       Pose(1, 0, 0, 5, 0, 0)});
    const PathStats s = path_stats(path, g);
    CHECK(s.bending_energy > 0.0);
    CHECK(s.total_curvature > 0.0);
  }

  SUBCASE("random paths: independent recomputation and energy bound") {
    Rng rng(17);
    const DesignParams d = showcase_design();
    const MetricTensor gm = metric_tensor(d);
    for (int trial = 0; trial < 25; ++trial) {
      const int n = 3 + static_cast<int>(rng() % 8);
      DiscretePath path;
      for (int i = 0; i < n; ++i) path.pts.push_back(random_pose(rng));
      const PathStats s = path_stats(path, gm);
      const auto [bend, curv] = oracles::bending_recompute(path, gm);
      CHECK(s.bending_energy == doctest::Approx(bend).epsilon(1e-12));
      CHECK(s.total_curvature == doctest::Approx(curv).epsilon(1e-12));
      CHECK(s.geodesic_energy >= s.length * s.length / (n - 1) - 1e-12);

      // Reversal invariance.
      DiscretePath rev = path;
      std::reverse(rev.pts.begin(), rev.pts.end());
      const PathStats sr = path_stats(rev, gm);
      CHECK(sr.geodesic_energy == doctest::Approx(s.geodesic_energy).epsilon(1e-14));
      CHECK(sr.bending_energy == doctest::Approx(s.bending_energy).epsilon(1e-14));
      CHECK(sr.length == doctest::Approx(s.length).epsilon(1e-14));
      CHECK(sr.total_curvature == doctest::Approx(s.total_curvature).epsilon(1e-14));
    }
  }

  SUBCASE("too few breakpoints") {
    DiscretePath path({Pose(1, 0, 0, 0, 0, 0), Pose(1, 0, 0, 1, 0, 0)});
    CHECK_THROWS_AS(path_stats(path, g), Error);
  }
}
