#include "core/variety.hpp"

#include <algorithm>
#include <cmath>

namespace pentapath {

const char* to_string(SigmaComponent c) {
  switch (c) {
    case SigmaComponent::kSigma1: return "Sigma1";
    case SigmaComponent::kSigma2: return "Sigma2";
    case SigmaComponent::kSigma3: return "Sigma3";
  }
  return "?";
}

SigmaVariety build_sigma(const DesignParams& design) {
  design.validate();
  SigmaVariety v;
  v.kind = design.kind;
  v.alpha = design.alpha;
  v.beta = design.beta;
  const double al = design.alpha;
  const double be = design.beta;
  const double gamma2 = al * al + be * be;

  // Shared quadratic part: u6*(al*u1 + be*u2) - u3*(al*u4 + be*u5).
  v.quadric.A(0, 5) = v.quadric.A(5, 0) = al;
  v.quadric.A(1, 5) = v.quadric.A(5, 1) = be;
  v.quadric.A(2, 3) = v.quadric.A(3, 2) = -al;
  v.quadric.A(2, 4) = v.quadric.A(4, 2) = -be;

  // Direction shared by both spanning lines of the singular plane.
  const Vec3 line_dir(-be / std::sqrt(gamma2), al / std::sqrt(gamma2), 0.0);
  const Vec3 line_base(al / gamma2, be / gamma2, 0.0);

  if (design.kind == PentapodCase::kLO) {
    v.hyperplane.normal[5] = 1.0;                     // u6 = 0
    v.quadric.a[2] = 1.0;                             // ... + u3
    v.singular_plane.base.tail<3>() = line_base;      // al*u4 + be*u5 = 1
  } else {
    v.hyperplane.normal[2] = 1.0;                     // u3 = 0
    v.quadric.a[5] = -1.0;                            // ... - u6
    v.singular_plane.base.head<3>() = line_base;      // al*u1 + be*u2 = 1
  }
  v.singular_plane.dir1.head<3>() = line_dir;
  v.singular_plane.dir2.tail<3>() = line_dir;
  return v;
}

double det_S_oracle(const DesignParams& design, const Pose& pose) {
  Eigen::Matrix<double, 7, 7> S = Eigen::Matrix<double, 7, 7>::Zero();
  const Vec6& u = pose.u;
  S(0, 0) = 1.0;
  for (int k = 0; k < 6; ++k) S(0, k + 1) = u[k];
  S(1, 1) = u[3];
  S(1, 2) = u[4];
  S(1, 3) = u[5];
  S(2, 4) = u[0];
  S(2, 5) = u[1];
  S(2, 6) = u[2];
  for (int i = 1; i < 5; ++i) {
    const double ri = design.r[static_cast<size_t>(i)];
    const double xi = design.base[static_cast<size_t>(i)].x();
    const double yi = design.base[static_cast<size_t>(i)].y();
    S(2 + i, 0) = ri;
    S(2 + i, 1) = xi;
    S(2 + i, 2) = yi;
    S(2 + i, 4) = ri * xi;
    S(2 + i, 5) = ri * yi;
  }
  return S.determinant();
}

std::pair<double, double> evaluate_sigma(const SigmaVariety& v, const Pose& pose) {
  return {v.f1(pose.u), v.f2(pose.u)};
}

Pedal pedal_on_hyperplane(const Pose& p, const SigmaVariety& v,
                          const MetricTensor& g) {
  Pedal out;
  out.component = SigmaComponent::kSigma1;
  out.point = p.u;
  if (v.kind == PentapodCase::kLO) {
    // Constrained minimizer for u6 = 0; the u3 coordinate shifts by the
    // metric coupling.
    out.point[2] = p.u[2] + g.J() * p.u[5] / g.R();
    out.point[5] = 0.0;
    out.distance = std::abs(p.u[5]) * std::sqrt(1.0 - g.J() * g.J() / g.R());
  } else {
    out.point[2] = 0.0;
    out.point[5] = p.u[5] + g.J() * p.u[2];
    out.distance = std::abs(p.u[2]) * std::sqrt(g.block_det());
  }
  return out;
}

namespace {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

// In coordinates rotated so the architecture line becomes axis-aligned, the
// quadric couples the pair (v1, w1) with (u3, u6) through a 90-degree
// rotation K, and the metric acts by the same 2x2 block G on each pair. The
// multiplier elimination then closes in the identity K^T G^-1 K =
// G / det(G), which is what makes the eliminated polynomial exactly
// quadratic.
struct ReducedQuadricProblem {
  double gamma = 0.0;       // sqrt(alpha^2 + beta^2)
  double cr = 0.0, sr = 0.0;  // rotation cos/sin
  double det2 = 0.0;        // R - J^2
  double R = 0.0, J = 0.0;
  Vec2 px, py;              // rotated (v1, w1) and (u3, u6) pairs of p
  double v2 = 0.0, w2 = 0.0;  // passive rotated coordinates (unchanged)
  Vec2 ay;                  // linear term acting on the (u3, u6) pair
};

Vec2 apply_Ginv(const ReducedQuadricProblem& q, const Vec2& z) {
  return {(z.x - q.J * z.y) / q.det2, (-q.J * z.x + q.R * z.y) / q.det2};
}

double quad_G(const ReducedQuadricProblem& q, const Vec2& z) {
  return q.R * z.x * z.x + 2.0 * q.J * z.x * z.y + z.y * z.y;
}

// x^T K y with K = [[0, 1], [-1, 0]].
double skew(const Vec2& x, const Vec2& y) { return x.x * y.y - x.y * y.x; }

ReducedQuadricProblem reduce(const Pose& p, const SigmaVariety& v,
                             const MetricTensor& g) {
  ReducedQuadricProblem q;
  q.gamma = std::sqrt(v.alpha * v.alpha + v.beta * v.beta);
  q.cr = v.alpha / q.gamma;
  q.sr = v.beta / q.gamma;
  q.R = g.R();
  q.J = g.J();
  q.det2 = g.block_det();
  q.px = {q.cr * p.u[0] + q.sr * p.u[1], q.cr * p.u[3] + q.sr * p.u[4]};
  q.v2 = -q.sr * p.u[0] + q.cr * p.u[1];
  q.w2 = -q.sr * p.u[3] + q.cr * p.u[4];
  q.py = {p.u[2], p.u[5]};
  if (v.kind == PentapodCase::kLO) {
    q.ay = {1.0, 0.0};
  } else {
    q.ay = {0.0, -1.0};
  }
  return q;
}

Vec6 lift_back(const ReducedQuadricProblem& q, const Vec2& x, const Vec2& y) {
  Vec6 u;
  u[0] = q.cr * x.x - q.sr * q.v2;
  u[1] = q.sr * x.x + q.cr * q.v2;
  u[2] = y.x;
  u[3] = q.cr * x.y - q.sr * q.w2;
  u[4] = q.sr * x.y + q.cr * q.w2;
  u[5] = y.y;
  return u;
}

// Solves the full 6x6 stationarity system (2g + lambda A) u = 2 g p -
// lambda a by least squares; used when the reduced back-substitution
// denominator vanishes (coincident multiplier roots).
std::optional<Vec6> degenerate_resolve(const Pose& p, const SigmaVariety& v,
                                       const MetricTensor& g, double lambda) {
  const Mat6 M = 2.0 * g.matrix() + lambda * v.quadric.A;
  const Vec6 b = 2.0 * g.apply(p.u) - lambda * v.quadric.a;
  Eigen::CompleteOrthogonalDecomposition<Mat6> cod(M);
  const Vec6 u = cod.solve(b);
  const double residual = (M * u - b).norm();
  if (residual > 1e-7 * (1.0 + b.norm())) return std::nullopt;
  return u;
}

}  // namespace

std::vector<Pedal> pedals_on_quadric(const Pose& p, const SigmaVariety& v,
                                     const MetricTensor& g,
                                     std::vector<std::string>* warnings) {
  const ReducedQuadricProblem q = reduce(p, v, g);
  const double gamma = q.gamma;
  const double gamma2 = gamma * gamma;
  const double kappa = gamma2 / (2.0 * q.det2);

  const double fp = gamma * skew(q.px, q.py) + q.ay.x * q.py.x + q.ay.y * q.py.y;
  const Vec2 h{-gamma * q.px.y + q.ay.x, gamma * q.px.x + q.ay.y};
  const Vec2 gi_ay = apply_Ginv(q, q.ay);
  const Vec2 gi_h = apply_Ginv(q, h);

  // Coefficients of the eliminated multiplier quadratic
  //   n2 l^2 + n1 l + n0 = 0.
  const double n0 = 4.0 * fp;
  const double n2 = gamma2 * fp / q.det2;
  const double n1 = -2.0 * gamma2 * (quad_G(q, q.px) + quad_G(q, q.py)) / q.det2 -
                    4.0 * gamma * skew(q.px, gi_ay) -
                    (q.ay.x * gi_ay.x + q.ay.y * gi_ay.y) * 2.0;

  const double fscale = gamma * (std::abs(q.px.x * q.py.y) + std::abs(q.px.y * q.py.x)) +
                        std::abs(q.ay.x * q.py.x) + std::abs(q.ay.y * q.py.y) + 1e-300;

  std::vector<double> roots;
  if (std::abs(fp) <= 1e-14 * fscale) {
    // p lies on the quadric: the pedal is p itself (multiplier 0).
    roots.push_back(0.0);
  } else {
    // The discriminant is nonnegative for this quadric family (the mixed
    // term is bounded by the squares it pairs with), so both roots are real;
    // the complex branch below only absorbs rounding near double roots.
    const double disc = n1 * n1 - 4.0 * n2 * n0;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double qq = -0.5 * (n1 + (n1 >= 0.0 ? sq : -sq));
      const double r1 = qq / n2;
      const double r2 = (qq != 0.0) ? n0 / qq : -n1 / n2 - r1;
      if (std::abs(r1 - r2) <= 1e-12 * (1.0 + std::abs(r1))) {
        roots.push_back(r1);  // double root: a single pedal
      } else {
        roots.push_back(r1);
        roots.push_back(r2);
      }
    } else {
      // Complex pair; accept as a (double) real root only when the
      // imaginary part is negligible.
      const double re = -n1 / (2.0 * n2);
      const double im = std::sqrt(-disc) / (2.0 * std::abs(n2));
      if (im <= tol::kComplexRootImag * std::max(1.0, std::abs(re)))
        roots.push_back(re);
    }
  }

  std::vector<Pedal> out;
  for (double lambda : roots) {
    const double denom = 2.0 - kappa * lambda * lambda;
    Vec6 u;
    if (std::abs(denom) <= 1e-9 * (2.0 + std::abs(kappa) * lambda * lambda)) {
      const auto resolved = degenerate_resolve(p, v, g, lambda);
      if (!resolved) {
        if (warnings)
          warnings->push_back(
              "quadric pedal: stationarity system singular at a multiplier "
              "root; root skipped as degenerate");
        continue;
      }
      u = *resolved;
    } else {
      const Vec2 y{(2.0 * q.py.x - lambda * gi_h.x) / denom,
                   (2.0 * q.py.y - lambda * gi_h.y) / denom};
      const Vec2 ky{y.y, -y.x};  // K y
      const Vec2 gi_ky = apply_Ginv(q, ky);
      const Vec2 x{q.px.x - 0.5 * lambda * gamma * gi_ky.x,
                   q.px.y - 0.5 * lambda * gamma * gi_ky.y};
      u = lift_back(q, x, y);
    }
    Pedal ped;
    ped.point = u;
    ped.component = SigmaComponent::kSigma2;
    ped.distance = g.norm(u - p.u);
    out.push_back(ped);
  }
  return out;
}

Pedal pedal_on_sigma3(const Pose& p, const SigmaVariety& v,
                      const MetricTensor& g) {
  const Plane2& pl = v.singular_plane;
  // Normal equations: the Gram matrix of the two directions under the metric
  // equals the generator block [[R, J], [J, 1]] because both directions share
  // the same 3-vector in orientation and position slots.
  const Vec6 delta = p.u - pl.base;
  const double b1 = g.inner(pl.dir1, delta);
  const double b2 = g.inner(pl.dir2, delta);
  const double det = g.block_det();
  const double t1 = (b1 - g.J() * b2) / det;
  const double t2 = (-g.J() * b1 + g.R() * b2) / det;
  Pedal out;
  out.component = SigmaComponent::kSigma3;
  out.point = pl.point(t1, t2);
  out.distance = g.norm(out.point - p.u);
  return out;
}

PedalSet orthogonal_projection(const Pose& p, const SigmaVariety& v,
                               const MetricTensor& g,
                               std::vector<std::string>* warnings) {
  PedalSet set;
  set.pedals.push_back(pedal_on_hyperplane(p, v, g));
  for (auto& ped : pedals_on_quadric(p, v, g, warnings)) set.pedals.push_back(ped);
  set.pedals.push_back(pedal_on_sigma3(p, v, g));

  std::sort(set.pedals.begin(), set.pedals.end(),
            [](const Pedal& a, const Pedal& b) {
              if (a.distance != b.distance) return a.distance < b.distance;
              if (a.component != b.component) return a.component < b.component;
              return std::lexicographical_compare(
                  a.point.data(), a.point.data() + 6, b.point.data(),
                  b.point.data() + 6);
            });

  // Merge coincident points (the singular-plane pedal can coincide with a
  // quadric pedal since the plane lies on the quadric). Keep the closer one.
  std::vector<Pedal> unique;
  for (const auto& ped : set.pedals) {
    bool dup = false;
    for (const auto& kept : unique) {
      if (g.norm(ped.point - kept.point) <= tol::kPedalDedupe) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(ped);
  }
  set.pedals = std::move(unique);
  return set;
}

Vec6 weighted_repulsion_direction(const Pose& p, const PedalSet& pedals,
                                  const MetricTensor& g) {
  if (pedals.empty())
    throw Error(ErrorCode::kInvalidArgument, "empty pedal set");
  double inv_sum = 0.0;
  for (const auto& ped : pedals.pedals) {
    if (!(ped.distance > 0.0))
      throw Error(ErrorCode::kDegenerate,
                  "pedal at zero distance: pose lies on the singularity variety");
    inv_sum += 1.0 / ped.distance;
  }
  Vec6 dir = Vec6::Zero();
  for (const auto& ped : pedals.pedals) {
    const Vec6 away = p.u - ped.point;
    const double norm = g.norm(away);
    if (!(norm > 0.0))
      throw Error(ErrorCode::kDegenerate,
                  "pedal at zero distance: pose lies on the singularity variety");
    const double w = (1.0 / ped.distance) / inv_sum;
    dir += (w / norm) * away;
  }
  return dir;
}

double repulsion_functional(const Pose& p, const Vec6& update_dir,
                            const PedalSet& pedals, const MetricTensor& g) {
  const Vec6 dir = weighted_repulsion_direction(p, pedals, g);
  return -g.inner(dir, update_dir);
}

}  // namespace pentapath
