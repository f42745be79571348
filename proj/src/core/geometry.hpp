#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "core/constants.hpp"
#include "core/error.hpp"

namespace pentapath {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// A pose of the end-effector line: (u1,u2,u3) is the orientation vector,
// (u4,u5,u6) the position of the reference point. Performable poses have a
// unit orientation vector (they lie on the cylinder Gamma).
struct Pose {
  Vec6 u = Vec6::Zero();

  Pose() = default;
  explicit Pose(const Vec6& v) : u(v) {}
  Pose(double u1, double u2, double u3, double u4, double u5, double u6) {
    u << u1, u2, u3, u4, u5, u6;
  }

  Vec3 orientation() const { return u.head<3>(); }
  Vec3 position() const { return u.tail<3>(); }

  bool on_cylinder(double tolerance = tol::kOnGamma) const {
    return std::abs(u.head<3>().squaredNorm() - 1.0) <= tolerance;
  }
};

enum class PentapodCase { kLO, kLP };

const char* to_string(PentapodCase c);

// Architecture of a linear pentapod with five legs. Leg 0 is normalized to
// zero platform offset and base anchor at the origin; all base anchors are
// planar (z = 0).
//
// kLO requires exactly two legs with nonzero platform offset whose base
// anchors satisfy alpha*x + beta*y = 1. kLP requires r_i = alpha*x_i +
// beta*y_i for every leg. Both classes make the singularity polynomial
// factor into a hyperplane and a quadric.
struct DesignParams {
  PentapodCase kind = PentapodCase::kLO;
  double alpha = 0.0;
  double beta = 0.0;
  std::array<double, 5> r{};          // platform anchor offsets along the line
  std::array<Vec3, 5> base{};         // base anchor points, z must be 0

  // Returns a human-readable list of violated invariants (empty when valid).
  std::vector<std::string> violations() const;
  // Throws Error(kInvalidArgument) when any invariant is violated.
  void validate() const;
};

// The 6x6 metric tensor of the anchor-averaged distance, stored implicitly
// through its two generating moments. Products expand in closed form through
// the 2x2 blocks [[R, J], [J, 1]] pairing orientation component k with
// position component k+3.
class MetricTensor {
 public:
  MetricTensor(double offset_sq_mean, double offset_mean)
      : R_(offset_sq_mean), J_(offset_mean) {}

  double R() const { return R_; }
  double J() const { return J_; }
  // Determinant of the 2x2 generator block; positive iff the tensor is
  // positive definite.
  double block_det() const { return R_ - J_ * J_; }
  bool positive_definite() const { return R_ > J_ * J_ && R_ > 0.0; }

  Vec6 apply(const Vec6& x) const {
    Vec6 y;
    for (int k = 0; k < 3; ++k) {
      y[k] = R_ * x[k] + J_ * x[k + 3];
      y[k + 3] = J_ * x[k] + x[k + 3];
    }
    return y;
  }

  Vec6 apply_inverse(const Vec6& x) const {
    const double det = block_det();
    Vec6 y;
    for (int k = 0; k < 3; ++k) {
      y[k] = (x[k] - J_ * x[k + 3]) / det;
      y[k + 3] = (-J_ * x[k] + R_ * x[k + 3]) / det;
    }
    return y;
  }

  double inner(const Vec6& x, const Vec6& y) const { return x.dot(apply(y)); }

  double squared_norm(const Vec6& x) const { return inner(x, x); }

  double norm(const Vec6& x) const {
    return std::sqrt(std::max(0.0, squared_norm(x)));
  }

  Mat6 matrix() const;

 private:
  double R_;
  double J_;
};

// Coordinates of the i-th platform anchor point at a pose (0-based leg).
Vec3 platform_anchor(const Pose& pose, const DesignParams& design, int leg);

// Builds the metric tensor of a design; rejects architectures whose offsets
// are all equal (the induced metric degenerates).
MetricTensor metric_tensor(const DesignParams& design);

double metric_distance(const Pose& a, const Pose& b, const MetricTensor& g);

double inner_product(const Vec6& x, const Vec6& y, const MetricTensor& g);

// Rescales the orientation part to unit length; position is unchanged.
Pose normalize_to_cylinder(const Pose& pose);

// Euclidean projection of `dir` onto the tangent plane of the unit sphere at
// the unit vector `at`.
Vec3 sphere_tangent_project(const Vec3& dir, const Vec3& at);

}  // namespace pentapath
