#include "core/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace pentapath {

namespace {

// Pentadiagonal symmetric positive definite LDL^T with Vec6-valued
// right-hand sides. The elimination order is fixed, so repeated runs produce
// bit-identical results.
class PentaLdl {
 public:
  PentaLdl(std::vector<double> diag, std::vector<double> sub1,
           std::vector<double> sub2)
      : d_(std::move(diag)), s1_(std::move(sub1)), s2_(std::move(sub2)) {
    const int m = static_cast<int>(d_.size());
    l1_.assign(std::max(0, m - 1), 0.0);
    l2_.assign(std::max(0, m - 2), 0.0);
    for (int i = 0; i < m; ++i) {
      double di = d_[static_cast<size_t>(i)];
      if (i >= 1) di -= l1_[static_cast<size_t>(i - 1)] * l1_[static_cast<size_t>(i - 1)] * d_[static_cast<size_t>(i - 1)];
      if (i >= 2) di -= l2_[static_cast<size_t>(i - 2)] * l2_[static_cast<size_t>(i - 2)] * d_[static_cast<size_t>(i - 2)];
      if (!(di > 0.0))
        throw Error(ErrorCode::kDegenerate,
                    "interior update system is not positive definite");
      d_[static_cast<size_t>(i)] = di;
      if (i + 1 < m) {
        double v = s1_[static_cast<size_t>(i)];
        if (i >= 1) v -= l1_[static_cast<size_t>(i - 1)] * l2_[static_cast<size_t>(i - 1)] * d_[static_cast<size_t>(i - 1)];
        l1_[static_cast<size_t>(i)] = v / di;
      }
      if (i + 2 < m) l2_[static_cast<size_t>(i)] = s2_[static_cast<size_t>(i)] / di;
    }
  }

  void solve_in_place(std::vector<Vec6>& b) const {
    const int m = static_cast<int>(d_.size());
    for (int i = 0; i < m; ++i) {
      if (i >= 1) b[static_cast<size_t>(i)] -= l1_[static_cast<size_t>(i - 1)] * b[static_cast<size_t>(i - 1)];
      if (i >= 2) b[static_cast<size_t>(i)] -= l2_[static_cast<size_t>(i - 2)] * b[static_cast<size_t>(i - 2)];
    }
    for (int i = 0; i < m; ++i) b[static_cast<size_t>(i)] /= d_[static_cast<size_t>(i)];
    for (int i = m - 1; i >= 0; --i) {
      if (i + 1 < m) b[static_cast<size_t>(i)] -= l1_[static_cast<size_t>(i)] * b[static_cast<size_t>(i + 1)];
      if (i + 2 < m) b[static_cast<size_t>(i)] -= l2_[static_cast<size_t>(i)] * b[static_cast<size_t>(i + 2)];
    }
  }

 private:
  std::vector<double> d_, s1_, s2_;
  std::vector<double> l1_, l2_;
};

// Dirichlet second-difference stencil: (T u)_i = 2 u_i - u_{i-1} - u_{i+1}
// with zero boundary blocks.
std::vector<Vec6> apply_T(const std::vector<Vec6>& u) {
  const int m = static_cast<int>(u.size());
  std::vector<Vec6> y(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    Vec6 v = 2.0 * u[static_cast<size_t>(i)];
    if (i >= 1) v -= u[static_cast<size_t>(i - 1)];
    if (i + 1 < m) v -= u[static_cast<size_t>(i + 1)];
    y[static_cast<size_t>(i)] = v;
  }
  return y;
}

void append_real_roots(double a, double b, double c, double scale,
                       std::vector<double>* out) {
  const double tiny = 1e-14 * scale;
  if (std::abs(a) <= tiny) {
    if (std::abs(b) > tiny) out->push_back(-c / b);
    return;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  out->push_back(q / a);
  if (q != 0.0)
    out->push_back(c / q);
  else
    out->push_back(-b / a - q / a);
}

}  // namespace

QuadraticCost assemble_cost(const CostContext& ctx, const DiscretePath& path) {
  const int n = path.size();
  if (n < 3)
    throw Error(ErrorCode::kInvalidArgument, "cost needs at least 3 breakpoints");
  if (!ctx.metric || !ctx.pedals || static_cast<int>(ctx.pedals->size()) != n)
    throw Error(ErrorCode::kInvalidArgument, "cost context incomplete");
  if (!(ctx.prev.length > 0.0))
    throw Error(ErrorCode::kInvalidArgument,
                "previous path length must be positive");

  QuadraticCost cost;
  const int m = n - 2;
  cost.m_ = m;
  cost.g_ = ctx.metric;
  cost.c_geod_ = ctx.lambda_w * (n - 1) / ctx.prev.length;
  // A perfectly straight previous path has zero total curvature; the bending
  // normalization is undefined there, so the term is dropped for this
  // iteration.
  cost.c_bend_ = ctx.prev.total_curvature > 0.0
                     ? ctx.eta_w * (n - 2) / ctx.prev.total_curvature
                     : 0.0;
  cost.c_rep_ = 1.0 / static_cast<double>(n - 2);

  const MetricTensor& g = *ctx.metric;
  cost.p_int_.resize(static_cast<size_t>(m));
  cost.repulsion_.resize(static_cast<size_t>(m));
  cost.rhs_.assign(static_cast<size_t>(m), Vec6::Zero());
  for (int j = 0; j < m; ++j) {
    const Pose& pj = path.pts[static_cast<size_t>(j + 1)];
    cost.p_int_[static_cast<size_t>(j)] = pj.u;
    cost.repulsion_[static_cast<size_t>(j)] =
        weighted_repulsion_direction(pj, (*ctx.pedals)[static_cast<size_t>(j + 1)], g);
    cost.rhs_[static_cast<size_t>(j)] = cost.c_rep_ * g.apply(cost.repulsion_[static_cast<size_t>(j)]);
  }

  // Endpoint contributions of the energy terms.
  const Vec6& a = path.front().u;
  const Vec6& b = path.back().u;
  cost.rhs_[0] += cost.c_geod_ * g.apply(a);
  cost.rhs_[static_cast<size_t>(m - 1)] += cost.c_geod_ * g.apply(b);
  if (cost.c_bend_ != 0.0) {
    // Second differences reference the fixed endpoints in the first and last
    // rows; their contribution lands on the first two and last two blocks.
    std::vector<Vec6> bnd(static_cast<size_t>(m), Vec6::Zero());
    bnd[0] += a;
    bnd[static_cast<size_t>(m - 1)] += b;
    const auto tb = apply_T(bnd);
    for (int j = 0; j < m; ++j)
      cost.rhs_[static_cast<size_t>(j)] += cost.c_bend_ * g.apply(tb[static_cast<size_t>(j)]);
  }
  return cost;
}

std::vector<Vec6> QuadraticCost::apply_band(const std::vector<Vec6>& u) const {
  auto t = apply_T(u);
  std::vector<Vec6> y(u.size());
  if (c_bend_ != 0.0) {
    const auto tt = apply_T(t);
    for (size_t i = 0; i < u.size(); ++i)
      y[i] = c_geod_ * t[i] + c_bend_ * tt[i];
  } else {
    for (size_t i = 0; i < u.size(); ++i) y[i] = c_geod_ * t[i];
  }
  return y;
}

std::vector<Vec6> QuadraticCost::gradient(const std::vector<Vec6>& u) const {
  if (static_cast<int>(u.size()) != m_)
    throw Error(ErrorCode::kInvalidArgument, "gradient: wrong interior size");
  auto su = apply_band(u);
  std::vector<Vec6> grad(u.size());
  for (size_t i = 0; i < u.size(); ++i)
    grad[i] = g_->apply(su[i]) - rhs_[i];
  return grad;
}

double QuadraticCost::value(const std::vector<Vec6>& u) const {
  auto su = apply_band(u);
  double v = 0.0;
  for (size_t i = 0; i < u.size(); ++i)
    v += 0.5 * u[i].dot(g_->apply(su[i])) - rhs_[i].dot(u[i]);
  return v;
}

std::vector<Vec6> QuadraticCost::solve(std::vector<std::string>* warnings) const {
  if (c_geod_ == 0.0 && c_bend_ == 0.0) {
    // Singular Hessian: take a plain repulsion step from the current points.
    if (warnings)
      warnings->push_back(
          "both energy weights are zero; using pure repulsion update");
    std::vector<Vec6> u(p_int_.size());
    for (size_t i = 0; i < u.size(); ++i) u[i] = p_int_[i] + repulsion_[i];
    return u;
  }

  const int m = m_;
  std::vector<double> diag(static_cast<size_t>(m)), sub1, sub2;
  for (int i = 0; i < m; ++i) {
    double tt_diag = 6.0;
    if (m == 1)
      tt_diag = 4.0;
    else if (i == 0 || i == m - 1)
      tt_diag = 5.0;
    diag[static_cast<size_t>(i)] = 2.0 * c_geod_ + c_bend_ * tt_diag;
  }
  if (m >= 2) sub1.assign(static_cast<size_t>(m - 1), -c_geod_ - 4.0 * c_bend_);
  if (m >= 3) sub2.assign(static_cast<size_t>(m - 2), c_bend_);

  PentaLdl ldl(diag, sub1, sub2);
  std::vector<Vec6> u(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i)
    u[static_cast<size_t>(i)] = g_->apply_inverse(rhs_[static_cast<size_t>(i)]);
  ldl.solve_in_place(u);

  double rhs_norm = 0.0;
  for (const auto& r : rhs_) rhs_norm += r.squaredNorm();
  rhs_norm = std::sqrt(rhs_norm);
  for (int refine = 0; refine < 2; ++refine) {
    auto grad = gradient(u);
    double gn = 0.0;
    for (const auto& gi : grad) gn += gi.squaredNorm();
    gn = std::sqrt(gn);
    if (gn <= tol::kSolveResidual * (1.0 + rhs_norm)) return u;
    std::vector<Vec6> corr(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
      corr[static_cast<size_t>(i)] = g_->apply_inverse(-grad[static_cast<size_t>(i)]);
    ldl.solve_in_place(corr);
    for (int i = 0; i < m; ++i) u[static_cast<size_t>(i)] += corr[static_cast<size_t>(i)];
  }
  auto grad = gradient(u);
  double gn = 0.0;
  for (const auto& gi : grad) gn += gi.squaredNorm();
  if (std::sqrt(gn) > tol::kSolveResidual * (1.0 + rhs_norm))
    throw Error(ErrorCode::kInternal, "interior update solve did not converge");
  return u;
}

namespace {

// Expands interior directions to full-path directions with pinned endpoints.
std::vector<Vec6> full_directions(const DiscretePath& path,
                                  const std::vector<Vec6>& dirs) {
  const int n = path.size();
  if (static_cast<int>(dirs.size()) != n - 2)
    throw Error(ErrorCode::kInvalidArgument,
                "directions must cover exactly the interior breakpoints");
  std::vector<Vec6> d(static_cast<size_t>(n), Vec6::Zero());
  for (int j = 0; j < n - 2; ++j) d[static_cast<size_t>(j + 1)] = dirs[static_cast<size_t>(j)];
  return d;
}

}  // namespace

double stepped_geodesic_energy(const DiscretePath& path,
                               const std::vector<Vec6>& dirs, double s,
                               const MetricTensor& g) {
  const auto d = full_directions(path, dirs);
  double e = 0.0;
  for (int i = 0; i + 1 < path.size(); ++i) {
    const Vec6 seg = (path.pts[static_cast<size_t>(i + 1)].u + s * d[static_cast<size_t>(i + 1)]) -
                     (path.pts[static_cast<size_t>(i)].u + s * d[static_cast<size_t>(i)]);
    e += g.squared_norm(seg);
  }
  return e;
}

double stepped_bending_energy(const DiscretePath& path,
                              const std::vector<Vec6>& dirs, double s,
                              const MetricTensor& g) {
  const auto d = full_directions(path, dirs);
  double b = 0.0;
  for (int i = 1; i + 1 < path.size(); ++i) {
    const Vec6 dd = (path.pts[static_cast<size_t>(i + 1)].u + s * d[static_cast<size_t>(i + 1)]) +
                    (path.pts[static_cast<size_t>(i - 1)].u + s * d[static_cast<size_t>(i - 1)]) -
                    2.0 * (path.pts[static_cast<size_t>(i)].u + s * d[static_cast<size_t>(i)]);
    b += g.squared_norm(dd);
  }
  return b;
}

StepSize step_size(const DiscretePath& path, const std::vector<Vec6>& dirs,
                   const PathStats& prev, double growth_percent,
                   const MetricTensor& g) {
  if (!(growth_percent > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "growth must be positive");
  const auto d = full_directions(path, dirs);
  const int n = path.size();

  // P(s) = ap s^2 + bp s + p0, the geodesic energy of the stepped path.
  double ap = 0.0, bp = 0.0, p0 = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const Vec6 dp = path.pts[static_cast<size_t>(i + 1)].u - path.pts[static_cast<size_t>(i)].u;
    const Vec6 dd = d[static_cast<size_t>(i + 1)] - d[static_cast<size_t>(i)];
    ap += g.squared_norm(dd);
    bp += 2.0 * g.inner(dp, dd);
    p0 += g.squared_norm(dp);
  }
  // Q(s) likewise for the bending energy.
  double aq = 0.0, bq = 0.0, q0 = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    const Vec6 dp = path.pts[static_cast<size_t>(i + 1)].u -
                    2.0 * path.pts[static_cast<size_t>(i)].u +
                    path.pts[static_cast<size_t>(i - 1)].u;
    const Vec6 dd = d[static_cast<size_t>(i + 1)] - 2.0 * d[static_cast<size_t>(i)] + d[static_cast<size_t>(i - 1)];
    aq += g.squared_norm(dd);
    bq += 2.0 * g.inner(dp, dd);
    q0 += g.squared_norm(dp);
  }

  const double band = growth_percent / 100.0;
  std::vector<double> roots;
  const double scale_p = std::max({ap, std::abs(bp), p0, 1.0});
  append_real_roots(ap, bp, p0 - (1.0 + band) * prev.geodesic_energy, scale_p, &roots);
  append_real_roots(ap, bp, p0 - (1.0 - band) * prev.geodesic_energy, scale_p, &roots);
  const double scale_q = std::max({aq, std::abs(bq), q0, 1.0});
  append_real_roots(aq, bq, q0 - (1.0 + band) * prev.bending_energy, scale_q, &roots);
  append_real_roots(aq, bq, q0 - (1.0 - band) * prev.bending_energy, scale_q, &roots);

  StepSize out;
  out.value = 1.0;
  for (double r : roots) {
    if (std::isfinite(r) && r > tol::kPositiveRoot && r < out.value) {
      out.value = r;
      out.from_root = true;
    }
  }
  return out;
}

double objective_value(const PathStats& stats, int breakpoint_count,
                       double lambda_w, double eta_w,
                       const std::vector<double>& pedal_distances) {
  const int n = breakpoint_count;
  if (n < 3 || static_cast<int>(pedal_distances.size()) != n - 2)
    throw Error(ErrorCode::kInvalidArgument, "objective: inconsistent sizes");
  if (!(stats.length > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "objective: zero-length path");
  double obj = lambda_w * (n - 1) * stats.geodesic_energy / (2.0 * stats.length);
  if (stats.total_curvature > 0.0)
    obj += eta_w * (n - 2) * stats.bending_energy / (2.0 * stats.total_curvature);
  double mean = 0.0;
  for (double dist : pedal_distances) mean += dist;
  mean /= static_cast<double>(n - 2);
  return obj - mean;
}

double objective_value(const DiscretePath& updated,
                       const std::vector<PedalSet>& pedals_prev,
                       const PathStats& stats, const OptimizerConfig& cfg,
                       const MetricTensor& g) {
  const int n = updated.size();
  if (static_cast<int>(pedals_prev.size()) != n)
    throw Error(ErrorCode::kInvalidArgument,
                "objective: pedal sets must match breakpoints");
  std::vector<double> dists;
  dists.reserve(static_cast<size_t>(n - 2));
  for (int j = 1; j + 1 < n; ++j) {
    const Pedal& q = pedals_prev[static_cast<size_t>(j)].closest();
    dists.push_back(g.norm(updated.pts[static_cast<size_t>(j)].u - q.point));
  }
  return objective_value(stats, n, cfg.lambda_w, cfg.eta_w, dists);
}

}  // namespace pentapath
