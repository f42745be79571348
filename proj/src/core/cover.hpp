#pragma once

#include <functional>
#include <string>
#include <vector>

#include "core/path.hpp"

namespace pentapath {

// Returns the singularity-free ball radius at a pose (distance to the
// closest pedal point).
using RadiusFn = std::function<double(const Pose&)>;

struct CoverOptions {
  int min_keep = 6;          // never reduce the breakpoint count below this
  int max_insertions = 4096;  // refinement abort bound
};

// Per-breakpoint cover bookkeeping for one scan.
struct CoverState {
  std::vector<double> radius;
  std::vector<bool> doubly_covered;
};

// A segment between consecutive breakpoints is covered when the two endpoint
// ball radii overlap it: r_i + r_{i+1} >= segment length.
bool segment_covered(double r_left, double r_right, double seg_len);

// Interior breakpoints lying inside both neighbouring balls.
std::vector<bool> doubly_covered_flags(const DiscretePath& path,
                                       const std::vector<double>& radii,
                                       const MetricTensor& g);

// Inserts breakpoints until every segment is covered. A new breakpoint goes
// to the midpoint of the uncovered parameter interval of its segment, is
// renormalized onto the orientation cylinder, and gets its own radius from
// `radius_fn`. `origin` (optional) is kept aligned: inserted entries get -1.
// Returns the number of insertions; aborts with a diagnostic if the
// refinement does not terminate within options.max_insertions.
int include_breakpoints(DiscretePath& path, std::vector<double>& radii,
                        const MetricTensor& g, const RadiusFn& radius_fn,
                        const CoverOptions& options = {},
                        std::vector<int>* origin = nullptr);

// Removes redundant doubly covered breakpoints: consecutive flagged
// breakpoints form packs; a pack of size one is deleted outright, larger
// packs lose their odd (1st, 3rd, ...) members, and the scan repeats until
// no pack remains or the count would drop below options.min_keep. Endpoints
// are never considered. Returns the number of removals.
int exclude_breakpoints(DiscretePath& path, std::vector<double>& radii,
                        const MetricTensor& g,
                        const CoverOptions& options = {},
                        std::vector<int>* origin = nullptr);

struct CoverReport {
  int inserted = 0;
  int removed = 0;
  bool changed() const { return inserted > 0 || removed > 0; }
};

// Inclusion followed by exclusion. Exclusion preserves coverage (each removed
// breakpoint sits inside both neighbour balls, so the merged segment is still
// covered by the triangle inequality), hence one pass reaches a fixpoint.
CoverReport minimal_cover(DiscretePath& path, std::vector<double>& radii,
                          const MetricTensor& g, const RadiusFn& radius_fn,
                          const CoverOptions& options = {},
                          std::vector<int>* origin = nullptr);

}  // namespace pentapath
