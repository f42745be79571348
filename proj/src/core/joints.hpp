#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/path.hpp"

namespace pentapath {

struct LegLimit {
  bool prismatic_enabled = false;
  double rho_min = 0.0;
  double rho_max = 0.0;
  bool cone_enabled = false;
  double cone_angle = 0.0;  // apex angle of the base joint cone, radians
};

struct JointLimits {
  std::array<LegLimit, 5> leg{};
  double epsilon_safe = 0.0;  // safe-zone radius around each limit quadric

  bool any_enabled() const {
    for (const auto& l : leg)
      if (l.prismatic_enabled || l.cone_enabled) return true;
    return false;
  }
  std::vector<std::string> violations() const;
  void validate() const;
};

enum class QVarietyKind { kPrismaticMin = 0, kPrismaticMax = 1, kBaseCone = 2 };

const char* to_string(QVarietyKind k);

// A breakpoint inside the safe zone of a limit quadric whose update moves
// toward it.
struct QBreach {
  int breakpoint = 0;  // index into the path
  int leg = 0;
  QVarietyKind kind = QVarietyKind::kPrismaticMin;
  Vec6 pedal = Vec6::Zero();       // metric-closest point on the quadric
  Vec6 normal = Vec6::Zero();      // (p - pedal), metric-normalized
  double distance = 0.0;           // metric distance to the quadric
};

double leg_length(const Pose& pose, const DesignParams& design, int leg);

// Sphere condition of a prismatic limit: squared anchor-to-base distance
// minus rho^2.
double prismatic_eval(const Pose& pose, const DesignParams& design, int leg,
                      double rho);

// Base-cone condition: positive strictly inside the vertical cone of apex
// angle theta at the leg's base anchor.
double base_cone_eval(const Pose& pose, const DesignParams& design, int leg,
                      double theta);

// Metric-closest points on the limit quadrics. Both quadrics depend on the
// pose only through one platform anchor, and the metric pulls back to a
// scalar multiple of the Euclidean metric on that anchor, so the pedal is a
// closest-point problem in anchor space lifted back along g^-1 B^T.
// Returns nothing when the geometry is degenerate (anchor at the base point
// or on the cone axis).
std::optional<QBreach> prismatic_pedal(const Pose& p, const DesignParams& design,
                                       int leg, double rho,
                                       const MetricTensor& g);
std::optional<QBreach> cone_pedal(const Pose& p, const DesignParams& design,
                                  int leg, double theta, const MetricTensor& g);

// Scans interior breakpoints against every enabled limit quadric. A breach is
// recorded when the metric distance is below epsilon_safe and the update
// direction has a negative component along (p - pedal).
std::vector<QBreach> detect_breaches(const DiscretePath& path,
                                     const std::vector<Vec6>& interior_dirs,
                                     const JointLimits& limits,
                                     const DesignParams& design,
                                     const MetricTensor& g,
                                     std::vector<std::string>* warnings = nullptr);

// Projects an update direction onto the intersection of the tangent spaces of
// the breached quadrics (metric-orthogonal Gram solve over the breach
// normals). Dependent normals are dropped, most recent first.
Vec6 tangent_replace(const Vec6& update_dir, const std::vector<QBreach>& breaches,
                     const MetricTensor& g,
                     std::vector<std::string>* warnings = nullptr);

struct JointViolation {
  int breakpoint = 0;
  int leg = 0;
  QVarietyKind kind = QVarietyKind::kPrismaticMin;
  double value = 0.0;
};

// First hard violation of the enabled limits along a path, if any: a leg
// length outside [rho_min, rho_max] or a platform anchor outside its base
// cone.
std::optional<JointViolation> check_joint_feasible(const DiscretePath& path,
                                                   const JointLimits& limits,
                                                   const DesignParams& design);

}  // namespace pentapath
