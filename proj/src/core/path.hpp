#pragma once

#include <vector>

#include "core/geometry.hpp"

namespace pentapath {

// Ordered breakpoints of a discretized motion; the first and last breakpoint
// are fixed start and end poses and must never be modified by optimization.
struct DiscretePath {
  std::vector<Pose> pts;

  DiscretePath() = default;
  explicit DiscretePath(std::vector<Pose> p) : pts(std::move(p)) {}

  int size() const { return static_cast<int>(pts.size()); }
  int interior_count() const { return std::max(0, size() - 2); }
  const Pose& front() const { return pts.front(); }
  const Pose& back() const { return pts.back(); }
};

// Discrete energies and lengths of a path under the metric:
//   E   sum of squared first differences (geodesic energy)
//   B   sum of squared second differences (bending energy)
//   L   sum of first-difference norms (length)
//   tau sum of second-difference norms (total curvature)
struct PathStats {
  double geodesic_energy = 0.0;
  double bending_energy = 0.0;
  double length = 0.0;
  double total_curvature = 0.0;
};

PathStats path_stats(const DiscretePath& path, const MetricTensor& g);

}  // namespace pentapath
