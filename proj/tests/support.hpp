#pragma once

// Shared deterministic generators for the test suites.

#include <random>

#include "core/engine.hpp"

namespace pentapath::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec3 random_unit3(Rng& rng) {
  Vec3 v;
  do {
    v = Vec3(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
  } while (v.norm() < 1e-3);
  return v.normalized();
}

inline Pose random_pose(Rng& rng, bool on_cylinder = true, double pos_range = 5.0) {
  Pose p;
  if (on_cylinder) {
    p.u.head<3>() = random_unit3(rng);
  } else {
    for (int k = 0; k < 3; ++k) p.u[k] = uniform(rng, -2, 2);
  }
  for (int k = 3; k < 6; ++k) p.u[k] = uniform(rng, -pos_range, pos_range);
  return p;
}

// Random valid architecture of the requested class. LO designs have exactly
// two offset legs whose base anchors sit on the line alpha*x + beta*y = 1;
// LP designs satisfy the affine relation r = alpha*x + beta*y on every leg.
inline DesignParams random_design(Rng& rng, PentapodCase kind) {
  DesignParams d;
  d.kind = kind;
  for (;;) {
    d.alpha = uniform(rng, -2, 2);
    d.beta = uniform(rng, -2, 2);
    if (std::abs(d.alpha) > 0.2 || std::abs(d.beta) > 0.2) break;
  }
  d.r = {0, 0, 0, 0, 0};
  d.base[0] = Vec3::Zero();
  if (kind == PentapodCase::kLO) {
    std::array<int, 4> legs = {1, 2, 3, 4};
    std::shuffle(legs.begin(), legs.end(), rng);
    for (int k = 0; k < 2; ++k) {  // offset legs on the line
      const int i = legs[static_cast<size_t>(k)];
      double r = uniform(rng, 0.5, 5.0) * (uniform(rng, -1, 1) > 0 ? 1 : -1);
      d.r[static_cast<size_t>(i)] = r;
      const double t = uniform(rng, -4, 4);
      if (std::abs(d.alpha) >= std::abs(d.beta)) {
        d.base[static_cast<size_t>(i)] = Vec3((1.0 - d.beta * t) / d.alpha, t, 0.0);
      } else {
        d.base[static_cast<size_t>(i)] = Vec3(t, (1.0 - d.alpha * t) / d.beta, 0.0);
      }
    }
    for (int k = 2; k < 4; ++k) {  // zero-offset legs anywhere
      const int i = legs[static_cast<size_t>(k)];
      d.base[static_cast<size_t>(i)] = Vec3(uniform(rng, -5, 5), uniform(rng, -5, 5), 0.0);
    }
  } else {
    for (int i = 1; i < 5; ++i) {
      d.base[static_cast<size_t>(i)] = Vec3(uniform(rng, -5, 5), uniform(rng, -5, 5), 0.0);
      d.r[static_cast<size_t>(i)] =
          d.alpha * d.base[static_cast<size_t>(i)].x() + d.beta * d.base[static_cast<size_t>(i)].y();
    }
    // Resample once in a blue moon if the offsets collapsed together.
    double lo = d.r[0], hi = d.r[0];
    for (double r : d.r) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (hi - lo < 1e-3) return random_design(rng, kind);
  }
  d.validate();
  return d;
}

// The showcase third-LO architecture used by the worked scenarios: legs 4
// and 5 carry the offsets, their anchors lie on 0.15*x - (1/15)*y = 1.
inline DesignParams showcase_design() {
  DesignParams d;
  d.kind = PentapodCase::kLO;
  d.alpha = 3.0 / 20.0;
  d.beta = -1.0 / 15.0;
  d.r = {0, 0, 0, 5, 9};
  d.base[0] = Vec3(0, 0, 0);
  d.base[1] = Vec3(5, 0, 0);
  d.base[2] = Vec3(0, 5, 0);
  d.base[3] = Vec3(8, 3, 0);
  d.base[4] = Vec3(12, 12, 0);
  return d;
}

}  // namespace pentapath::testing
