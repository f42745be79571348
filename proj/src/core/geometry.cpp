#include "core/geometry.hpp"

#include <cmath>
#include <sstream>

namespace pentapath {

const char* to_string(PentapodCase c) {
  return c == PentapodCase::kLO ? "LO" : "LP";
}

std::vector<std::string> DesignParams::violations() const {
  std::vector<std::string> out;
  const double ab2 = alpha * alpha + beta * beta;
  if (!(ab2 > 0.0)) out.push_back("alpha^2 + beta^2 must be nonzero");
  if (std::abs(r[0]) > tol::kZeroOffset)
    out.push_back("leg 1 platform offset must be 0 (normalized frame)");
  if (base[0].norm() > tol::kZeroOffset)
    out.push_back("leg 1 base anchor must be the origin (normalized frame)");
  for (int i = 0; i < 5; ++i) {
    if (std::abs(base[i].z()) > tol::kZeroOffset) {
      out.push_back("base anchor of leg " + std::to_string(i + 1) +
                    " must lie in the base plane (z = 0)");
    }
  }

  double mean = 0.0, mean_sq = 0.0;
  for (double ri : r) {
    mean += ri / 5.0;
    mean_sq += ri * ri / 5.0;
  }
  const double spread = mean_sq - mean * mean;  // (1/5) sum (r_i - mean)^2
  if (spread <= tol::kZeroOffset * std::max(1.0, mean_sq))
    out.push_back("all platform offsets equal: metric tensor degenerates");

  if (ab2 > 0.0) {
    if (kind == PentapodCase::kLO) {
      int nonzero = 0;
      for (int i = 0; i < 5; ++i) {
        if (std::abs(r[i]) <= tol::kZeroOffset) continue;
        ++nonzero;
        const double res = alpha * base[i].x() + beta * base[i].y() - 1.0;
        if (std::abs(res) > tol::kDesignResidual * (1.0 + std::abs(alpha * base[i].x()) +
                                                    std::abs(beta * base[i].y()))) {
          out.push_back("LO design: base anchor of offset leg " +
                        std::to_string(i + 1) +
                        " must satisfy alpha*x + beta*y = 1");
        }
      }
      if (nonzero > 2)
        out.push_back("LO design: at most two legs may carry a nonzero platform offset");
    } else {
      for (int i = 0; i < 5; ++i) {
        const double expect = alpha * base[i].x() + beta * base[i].y();
        if (std::abs(r[i] - expect) >
            tol::kDesignResidual * (1.0 + std::abs(expect))) {
          out.push_back("LP design: leg " + std::to_string(i + 1) +
                        " must satisfy r = alpha*x + beta*y");
        }
      }
    }
  }
  return out;
}

void DesignParams::validate() const {
  const auto errs = violations();
  if (errs.empty()) return;
  std::ostringstream oss;
  oss << "invalid design:";
  for (const auto& e : errs) oss << "\n  - " << e;
  throw Error(ErrorCode::kInvalidArgument, oss.str());
}

Mat6 MetricTensor::matrix() const {
  Mat6 g = Mat6::Zero();
  for (int k = 0; k < 3; ++k) {
    g(k, k) = R_;
    g(k + 3, k + 3) = 1.0;
    g(k, k + 3) = J_;
    g(k + 3, k) = J_;
  }
  return g;
}

Vec3 platform_anchor(const Pose& pose, const DesignParams& design, int leg) {
  if (leg < 0 || leg >= 5)
    throw Error(ErrorCode::kInvalidArgument,
                "leg index out of range: " + std::to_string(leg));
  return pose.position() + design.r[static_cast<size_t>(leg)] * pose.orientation();
}

MetricTensor metric_tensor(const DesignParams& design) {
  double mean = 0.0, mean_sq = 0.0;
  for (double ri : design.r) {
    mean += ri / 5.0;
    mean_sq += ri * ri / 5.0;
  }
  MetricTensor g(mean_sq, mean);
  if (!g.positive_definite())
    throw Error(ErrorCode::kDegenerate,
                "degenerate metric: platform offsets must not be all equal");
  return g;
}

double metric_distance(const Pose& a, const Pose& b, const MetricTensor& g) {
  return g.norm(b.u - a.u);
}

double inner_product(const Vec6& x, const Vec6& y, const MetricTensor& g) {
  return g.inner(x, y);
}

Pose normalize_to_cylinder(const Pose& pose) {
  const double n = pose.orientation().norm();
  if (!(n > 1e-150))
    throw Error(ErrorCode::kDegenerate,
                "cannot normalize pose with zero orientation vector");
  Pose out = pose;
  out.u.head<3>() /= n;
  return out;
}

Vec3 sphere_tangent_project(const Vec3& dir, const Vec3& at) {
  if (std::abs(at.norm() - 1.0) > tol::kUnitAnchor)
    throw Error(ErrorCode::kInvalidArgument,
                "sphere_tangent_project: anchor must be a unit vector");
  return dir - dir.dot(at) * at;
}

}  // namespace pentapath
