#include "core/cover.hpp"

#include <algorithm>
#include <cmath>

namespace pentapath {

bool segment_covered(double r_left, double r_right, double seg_len) {
  return r_left + r_right >= seg_len;
}

std::vector<bool> doubly_covered_flags(const DiscretePath& path,
                                       const std::vector<double>& radii,
                                       const MetricTensor& g) {
  const int n = path.size();
  std::vector<bool> flags(static_cast<size_t>(n), false);
  for (int i = 1; i + 1 < n; ++i) {
    const double to_prev = g.norm(path.pts[static_cast<size_t>(i)].u - path.pts[static_cast<size_t>(i - 1)].u);
    const double to_next = g.norm(path.pts[static_cast<size_t>(i)].u - path.pts[static_cast<size_t>(i + 1)].u);
    flags[static_cast<size_t>(i)] =
        to_prev < radii[static_cast<size_t>(i - 1)] && to_next < radii[static_cast<size_t>(i + 1)];
  }
  return flags;
}

int include_breakpoints(DiscretePath& path, std::vector<double>& radii,
                        const MetricTensor& g, const RadiusFn& radius_fn,
                        const CoverOptions& options, std::vector<int>* origin) {
  if (radii.size() != path.pts.size())
    throw Error(ErrorCode::kInvalidArgument, "radii size mismatch");
  int inserted = 0;
  int i = 0;
  while (i + 1 < path.size()) {
    const Vec6& a = path.pts[static_cast<size_t>(i)].u;
    const Vec6& b = path.pts[static_cast<size_t>(i + 1)].u;
    const double len = g.norm(b - a);
    const double ra = radii[static_cast<size_t>(i)];
    const double rb = radii[static_cast<size_t>(i + 1)];
    if (segment_covered(ra, rb, len)) {
      ++i;
      continue;
    }
    if (inserted >= options.max_insertions)
      throw Error(ErrorCode::kDegenerate,
                  "cover refinement did not terminate after " +
                      std::to_string(options.max_insertions) +
                      " insertions (ball radii collapse along the path)");
    // Midpoint of the uncovered parameter interval [ra/len, 1 - rb/len].
    const double t = 0.5 * (ra / len + 1.0 - rb / len);
    Pose mid(a + t * (b - a));
    mid = normalize_to_cylinder(mid);  // straight interpolation leaves the cylinder
    const double rm = radius_fn(mid);
    path.pts.insert(path.pts.begin() + i + 1, mid);
    radii.insert(radii.begin() + i + 1, rm);
    if (origin) origin->insert(origin->begin() + i + 1, -1);
    ++inserted;
    // Re-examine the left half of the split segment next.
  }
  return inserted;
}

int exclude_breakpoints(DiscretePath& path, std::vector<double>& radii,
                        const MetricTensor& g, const CoverOptions& options,
                        std::vector<int>* origin) {
  if (radii.size() != path.pts.size())
    throw Error(ErrorCode::kInvalidArgument, "radii size mismatch");
  int removed_total = 0;
  while (true) {
    const int n = path.size();
    int budget = n - options.min_keep;
    if (budget <= 0) break;
    const auto flags = doubly_covered_flags(path, radii, g);

    // Group flagged interior breakpoints into maximal consecutive packs and
    // collect the indices to delete this round.
    std::vector<int> to_delete;
    int i = 1;
    while (i + 1 < n) {
      if (!flags[static_cast<size_t>(i)]) {
        ++i;
        continue;
      }
      int j = i;
      while (j + 1 < n && flags[static_cast<size_t>(j)]) ++j;
      const int pack_size = j - i;  // pack spans [i, j)
      if (pack_size == 1) {
        to_delete.push_back(i);
      } else {
        for (int k = 0; k < pack_size; k += 2) to_delete.push_back(i + k);
      }
      i = j + 1;
    }
    if (to_delete.empty()) break;
    if (static_cast<int>(to_delete.size()) > budget)
      to_delete.resize(static_cast<size_t>(budget));
    for (auto it = to_delete.rbegin(); it != to_delete.rend(); ++it) {
      path.pts.erase(path.pts.begin() + *it);
      radii.erase(radii.begin() + *it);
      if (origin) origin->erase(origin->begin() + *it);
    }
    removed_total += static_cast<int>(to_delete.size());
  }
  return removed_total;
}

CoverReport minimal_cover(DiscretePath& path, std::vector<double>& radii,
                          const MetricTensor& g, const RadiusFn& radius_fn,
                          const CoverOptions& options, std::vector<int>* origin) {
  CoverReport report;
  report.inserted = include_breakpoints(path, radii, g, radius_fn, options, origin);
  report.removed = exclude_breakpoints(path, radii, g, options, origin);
  return report;
}

}  // namespace pentapath
