#include "core/joints.hpp"

#include <cmath>
#include <sstream>

namespace pentapath {

const char* to_string(QVarietyKind k) {
  switch (k) {
    case QVarietyKind::kPrismaticMin: return "prismatic_min";
    case QVarietyKind::kPrismaticMax: return "prismatic_max";
    case QVarietyKind::kBaseCone: return "base_cone";
  }
  return "?";
}

std::vector<std::string> JointLimits::violations() const {
  std::vector<std::string> out;
  if (epsilon_safe < 0.0) out.push_back("epsilon must be nonnegative");
  for (int i = 0; i < 5; ++i) {
    const LegLimit& l = leg[static_cast<size_t>(i)];
    if (l.prismatic_enabled && !(0.0 < l.rho_min && l.rho_min < l.rho_max))
      out.push_back("leg " + std::to_string(i + 1) +
                    ": prismatic limits need 0 < rho_min < rho_max");
    if (l.cone_enabled && !(0.0 < l.cone_angle && l.cone_angle < M_PI))
      out.push_back("leg " + std::to_string(i + 1) +
                    ": cone apex angle must lie strictly between 0 and pi");
  }
  return out;
}

void JointLimits::validate() const {
  const auto errs = violations();
  if (errs.empty()) return;
  std::ostringstream oss;
  oss << "invalid joint limits:";
  for (const auto& e : errs) oss << "\n  - " << e;
  throw Error(ErrorCode::kInvalidArgument, oss.str());
}

double leg_length(const Pose& pose, const DesignParams& design, int leg) {
  return (platform_anchor(pose, design, leg) - design.base[static_cast<size_t>(leg)]).norm();
}

double prismatic_eval(const Pose& pose, const DesignParams& design, int leg,
                      double rho) {
  const Vec3 w = platform_anchor(pose, design, leg) - design.base[static_cast<size_t>(leg)];
  return w.squaredNorm() - rho * rho;
}

double base_cone_eval(const Pose& pose, const DesignParams& design, int leg,
                      double theta) {
  if (!(theta > 0.0 && theta < M_PI))
    throw Error(ErrorCode::kInvalidArgument,
                "cone apex angle must lie strictly between 0 and pi");
  const Vec3 m = platform_anchor(pose, design, leg);
  const Vec3& b = design.base[static_cast<size_t>(leg)];
  const double cot = std::cos(0.5 * theta) / std::sin(0.5 * theta);
  const double dx = m.x() - b.x();
  const double dy = m.y() - b.y();
  return m.z() * m.z() - cot * cot * (dx * dx + dy * dy);
}

namespace {

// Anchor map of leg i: m = r_i * orientation + position. Pulled back through
// the metric, B g^-1 B^T = sigma * I3 with
//   sigma = (R - 2 J r_i + r_i^2) / (R - J^2),
// so metric distances to anchor-defined quadrics are Euclidean anchor-space
// distances scaled by 1/sqrt(sigma).
struct AnchorLift {
  double sigma = 0.0;
  double coeff_orientation = 0.0;  // (r - J) / ((R - J^2) * sigma)
  double coeff_position = 0.0;     // (R - J r) / ((R - J^2) * sigma)
};

AnchorLift anchor_lift(const DesignParams& design, int leg,
                       const MetricTensor& g) {
  const double r = design.r[static_cast<size_t>(leg)];
  const double det = g.block_det();
  AnchorLift lift;
  lift.sigma = (g.R() - 2.0 * g.J() * r + r * r) / det;
  lift.coeff_orientation = (r - g.J()) / (det * lift.sigma);
  lift.coeff_position = (g.R() - g.J() * r) / (det * lift.sigma);
  return lift;
}

// Lifts an anchor-space displacement to the metric-closest pose update.
Vec6 lift_displacement(const AnchorLift& lift, const Vec3& dm) {
  Vec6 du;
  du.head<3>() = lift.coeff_orientation * dm;
  du.tail<3>() = lift.coeff_position * dm;
  return du;
}

// Builds the pedal record; the caller fills in breakpoint and kind.
std::optional<QBreach> make_breach(const Pose& p, const Vec3& anchor_target,
                                   const Vec3& anchor_p, const AnchorLift& lift,
                                   const MetricTensor& g, int leg) {
  const double anchor_dist = (anchor_target - anchor_p).norm();
  const double dist = anchor_dist / std::sqrt(lift.sigma);
  if (!(dist > 1e-14)) return std::nullopt;  // on the quadric: normal undefined
  QBreach b;
  b.leg = leg;
  b.pedal = p.u + lift_displacement(lift, anchor_target - anchor_p);
  b.distance = dist;
  const Vec6 away = p.u - b.pedal;
  b.normal = away / g.norm(away);
  return b;
}

}  // namespace

std::optional<QBreach> prismatic_pedal(const Pose& p, const DesignParams& design,
                                       int leg, double rho,
                                       const MetricTensor& g) {
  const Vec3 anchor = platform_anchor(p, design, leg);
  const Vec3 w = anchor - design.base[static_cast<size_t>(leg)];
  const double len = w.norm();
  if (len < 1e-12) return std::nullopt;  // anchor collapse: every direction is radial
  const Vec3 target = design.base[static_cast<size_t>(leg)] + (rho / len) * w;
  const auto lift = anchor_lift(design, leg, g);
  return make_breach(p, target, anchor, lift, g, leg);
}

std::optional<QBreach> cone_pedal(const Pose& p, const DesignParams& design,
                                  int leg, double theta, const MetricTensor& g) {
  if (!(theta > 0.0 && theta < M_PI))
    throw Error(ErrorCode::kInvalidArgument,
                "cone apex angle must lie strictly between 0 and pi");
  const Vec3 anchor = platform_anchor(p, design, leg);
  const Vec3& apex = design.base[static_cast<size_t>(leg)];
  const double qx = anchor.x() - apex.x();
  const double qy = anchor.y() - apex.y();
  const double qz = anchor.z();  // base anchors are planar
  const double radial = std::hypot(qx, qy);
  if (radial < 1e-12) return std::nullopt;  // on the axis: projection is a circle
  const double cot = std::cos(0.5 * theta) / std::sin(0.5 * theta);

  // Meridian half-plane (radial >= 0, z): the cone is the pair of half-lines
  // z = +/- cot * radial. Project onto each, clamped at the apex.
  double best_r = 0.0, best_z = 0.0, best_d2 = -1.0;
  for (double sgn : {1.0, -1.0}) {
    const double denom = 1.0 + cot * cot;
    double t = (radial + sgn * cot * qz) / denom;
    if (t < 0.0) t = 0.0;
    const double cr = t;
    const double cz = sgn * cot * t;
    const double d2 = (radial - cr) * (radial - cr) + (qz - cz) * (qz - cz);
    if (best_d2 < 0.0 || d2 < best_d2) {
      best_d2 = d2;
      best_r = cr;
      best_z = cz;
    }
  }
  Vec3 target;
  target.x() = apex.x() + best_r * (qx / radial);
  target.y() = apex.y() + best_r * (qy / radial);
  target.z() = best_z;
  const auto lift = anchor_lift(design, leg, g);
  auto result = make_breach(p, target, anchor, lift, g, leg);
  if (result) result->kind = QVarietyKind::kBaseCone;
  return result;
}

std::vector<QBreach> detect_breaches(const DiscretePath& path,
                                     const std::vector<Vec6>& interior_dirs,
                                     const JointLimits& limits,
                                     const DesignParams& design,
                                     const MetricTensor& g,
                                     std::vector<std::string>* warnings) {
  limits.validate();
  const int n = path.size();
  if (static_cast<int>(interior_dirs.size()) != n - 2)
    throw Error(ErrorCode::kInvalidArgument,
                "breach detection needs one direction per interior breakpoint");

  std::vector<QBreach> out;
  auto consider = [&](int bp, const Vec6& dir, std::optional<QBreach> ped,
                      QVarietyKind kind, int leg) {
    if (!ped) {
      if (warnings)
        warnings->push_back("joint check: degenerate pedal for leg " +
                            std::to_string(leg + 1) + " (" + to_string(kind) +
                            ") at breakpoint " + std::to_string(bp) +
                            "; variety skipped");
      return;
    }
    ped->breakpoint = bp;
    ped->kind = kind;
    if (ped->distance < limits.epsilon_safe &&
        g.inner(dir, path.pts[static_cast<size_t>(bp)].u - ped->pedal) < 0.0)
      out.push_back(*ped);
  };

  for (int j = 1; j + 1 < n; ++j) {
    const Pose& p = path.pts[static_cast<size_t>(j)];
    const Vec6& dir = interior_dirs[static_cast<size_t>(j - 1)];
    for (int leg = 0; leg < 5; ++leg) {
      const LegLimit& l = limits.leg[static_cast<size_t>(leg)];
      if (l.prismatic_enabled) {
        consider(j, dir, prismatic_pedal(p, design, leg, l.rho_min, g),
                 QVarietyKind::kPrismaticMin, leg);
        consider(j, dir, prismatic_pedal(p, design, leg, l.rho_max, g),
                 QVarietyKind::kPrismaticMax, leg);
      }
      if (l.cone_enabled) {
        consider(j, dir, cone_pedal(p, design, leg, l.cone_angle, g),
                 QVarietyKind::kBaseCone, leg);
      }
    }
  }
  return out;
}

Vec6 tangent_replace(const Vec6& update_dir, const std::vector<QBreach>& breaches,
                     const MetricTensor& g, std::vector<std::string>* warnings) {
  // Metric Gram-Schmidt over the breach normals; dependent newcomers are
  // dropped so the projection stays well posed.
  std::vector<Vec6> basis;
  for (const auto& b : breaches) {
    Vec6 e = b.normal;
    for (const auto& q : basis) e -= g.inner(e, q) * q;
    const double nn = g.norm(e);
    if (nn < 1e-10) {
      if (warnings)
        warnings->push_back(
            "joint redirection: dependent breach normal dropped (leg " +
            std::to_string(b.leg + 1) + ", " + to_string(b.kind) + ")");
      continue;
    }
    basis.push_back(e / nn);
  }
  Vec6 out = update_dir;
  for (const auto& e : basis) out -= g.inner(out, e) * e;
  return out;
}

std::optional<JointViolation> check_joint_feasible(const DiscretePath& path,
                                                   const JointLimits& limits,
                                                   const DesignParams& design) {
  limits.validate();
  for (int i = 0; i < path.size(); ++i) {
    const Pose& p = path.pts[static_cast<size_t>(i)];
    for (int leg = 0; leg < 5; ++leg) {
      const LegLimit& l = limits.leg[static_cast<size_t>(leg)];
      if (l.prismatic_enabled) {
        const double len = leg_length(p, design, leg);
        const double slack = 1e-9 * std::max(1.0, l.rho_max);
        if (len < l.rho_min - slack || len > l.rho_max + slack)
          return JointViolation{i, leg, len < l.rho_min
                                             ? QVarietyKind::kPrismaticMin
                                             : QVarietyKind::kPrismaticMax,
                                len};
      }
      if (l.cone_enabled) {
        const double f = base_cone_eval(p, design, leg, l.cone_angle);
        const Vec3 anchor = platform_anchor(p, design, leg);
        if (f < -1e-9 || anchor.z() < -1e-9)
          return JointViolation{i, leg, QVarietyKind::kBaseCone, f};
      }
    }
  }
  return std::nullopt;
}

}  // namespace pentapath
