#include "core/path.hpp"

namespace pentapath {

PathStats path_stats(const DiscretePath& path, const MetricTensor& g) {
  const int n = path.size();
  if (n < 3)
    throw Error(ErrorCode::kInvalidArgument,
                "path_stats requires at least 3 breakpoints, got " +
                    std::to_string(n));
  PathStats s;
  for (int i = 0; i + 1 < n; ++i) {
    const Vec6 d = path.pts[static_cast<size_t>(i + 1)].u - path.pts[static_cast<size_t>(i)].u;
    const double sq = g.squared_norm(d);
    s.geodesic_energy += sq;
    s.length += std::sqrt(std::max(0.0, sq));
  }
  for (int i = 1; i + 1 < n; ++i) {
    const Vec6 dd = path.pts[static_cast<size_t>(i + 1)].u -
                    2.0 * path.pts[static_cast<size_t>(i)].u +
                    path.pts[static_cast<size_t>(i - 1)].u;
    const double sq = g.squared_norm(dd);
    s.bending_energy += sq;
    s.total_curvature += std::sqrt(std::max(0.0, sq));
  }
  return s;
}

}  // namespace pentapath
