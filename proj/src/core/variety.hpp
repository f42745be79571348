#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "core/geometry.hpp"

namespace pentapath {

// Hyperplane normal . u + offset = 0.
struct Hyperplane {
  Vec6 normal = Vec6::Zero();
  double offset = 0.0;

  double eval(const Vec6& u) const { return normal.dot(u) + offset; }
};

// Quadric f(u) = 1/2 u^T A u + a^T u + c with symmetric A.
struct Quadric {
  Mat6 A = Mat6::Zero();
  Vec6 a = Vec6::Zero();
  double c = 0.0;

  double eval(const Vec6& u) const {
    return 0.5 * u.dot(A * u) + a.dot(u) + c;
  }
  Vec6 gradient(const Vec6& u) const { return A * u + a; }
};

// Affine 2-plane given by a base point and two spanning directions.
struct Plane2 {
  Vec6 base = Vec6::Zero();
  Vec6 dir1 = Vec6::Zero();
  Vec6 dir2 = Vec6::Zero();

  Vec6 point(double t1, double t2) const { return base + t1 * dir1 + t2 * dir2; }
};

// Decomposed singularity locus of a simple pentapod: the union of a
// hyperplane and a quadric, with the quadric's singular set being an affine
// 2-plane contained in their intersection.
struct SigmaVariety {
  PentapodCase kind = PentapodCase::kLO;
  double alpha = 0.0;
  double beta = 0.0;
  Hyperplane hyperplane;     // component 1
  Quadric quadric;           // component 2
  Plane2 singular_plane;     // component 3, singular set of the quadric

  double f1(const Vec6& u) const { return hyperplane.eval(u); }
  double f2(const Vec6& u) const { return quadric.eval(u); }
};

enum class SigmaComponent { kSigma1 = 1, kSigma2 = 2, kSigma3 = 3 };

const char* to_string(SigmaComponent c);

struct Pedal {
  Vec6 point = Vec6::Zero();
  SigmaComponent component = SigmaComponent::kSigma1;
  double distance = 0.0;
};

// Stationary points of the distance-to-variety function, sorted by distance
// (closest first). The closest entry's distance is a guaranteed
// singularity-free ball radius around the query pose.
struct PedalSet {
  std::vector<Pedal> pedals;

  bool empty() const { return pedals.empty(); }
  size_t size() const { return pedals.size(); }
  const Pedal& closest() const { return pedals.front(); }
  double min_distance() const { return pedals.front().distance; }
};

SigmaVariety build_sigma(const DesignParams& design);

// Determinant of the 7x7 configuration matrix whose vanishing characterizes
// singular poses. Cross-validation hook: on a valid design this equals a
// pose-independent constant times f1(u) * f2(u).
double det_S_oracle(const DesignParams& design, const Pose& pose);

// Values (f1, f2) of the two component polynomials; the pose is singular iff
// their product vanishes.
std::pair<double, double> evaluate_sigma(const SigmaVariety& v, const Pose& pose);

Pedal pedal_on_hyperplane(const Pose& p, const SigmaVariety& v,
                          const MetricTensor& g);

// All real stationary points of the metric distance from p to the quadric
// component. The constrained extremum conditions are linear in the pose for
// a fixed multiplier, and eliminating the pose leaves a quadratic in the
// multiplier, so there are at most two. A multiplier that makes the
// stationarity system singular is resolved by a least-squares solve or
// skipped as degenerate (with a warning).
std::vector<Pedal> pedals_on_quadric(const Pose& p, const SigmaVariety& v,
                                     const MetricTensor& g,
                                     std::vector<std::string>* warnings = nullptr);

// Metric-closest point on the singular 2-plane (normal equations in the
// plane's direction basis).
Pedal pedal_on_sigma3(const Pose& p, const SigmaVariety& v,
                      const MetricTensor& g);

// Union of the three pedal computations, sorted ascending by distance, with
// points closer than tol::kPedalDedupe to each other merged.
PedalSet orthogonal_projection(const Pose& p, const SigmaVariety& v,
                               const MetricTensor& g,
                               std::vector<std::string>* warnings = nullptr);

// Weighted combination of the unit vectors pointing from each pedal toward
// p. The weights are proportional to the inverse pedal distances and sum to
// one, so near pedals dominate the repulsion.
Vec6 weighted_repulsion_direction(const Pose& p, const PedalSet& pedals,
                                  const MetricTensor& g);

// D(p, dir) = -<weighted repulsion direction, dir>_g. Negative when `dir`
// moves away from the variety. Throws if any pedal distance is zero (the
// query pose is singular, which violates the optimization contract).
double repulsion_functional(const Pose& p, const Vec6& update_dir,
                            const PedalSet& pedals, const MetricTensor& g);

}  // namespace pentapath
