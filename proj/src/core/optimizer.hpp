#pragma once

#include <string>
#include <vector>

#include "core/path.hpp"
#include "core/variety.hpp"

namespace pentapath {

struct OptimizerConfig {
  double lambda_w = 0.0;       // geodesic weight
  double eta_w = 0.0;          // bending weight
  double growth = 5.0;         // percent cap on per-iteration energy variation
  double epsilon_safe = 0.0;   // joint safe-zone radius (metric distance)
  int n_init = 0;              // requested breakpoint count for sampled paths
  int max_iterations = 0;
  double min_step = 0.0;       // user floor for the halving rule
};

// Frozen per-iteration data the cost is assembled from: the previous
// iteration's path statistics and the pedal sets of the current breakpoints.
struct CostContext {
  PathStats prev;                               // E', B', L', tau'
  const std::vector<PedalSet>* pedals = nullptr;  // one per breakpoint (size n)
  const MetricTensor* metric = nullptr;
  double lambda_w = 0.0;
  double eta_w = 0.0;
};

// The cost restricted to the interior breakpoints is a convex quadratic:
// the energy terms contribute a block-banded positive definite Hessian of
// the form S (x) g, where S is pentadiagonal in the breakpoint index, and
// the frozen repulsion term is linear. Minimizing it is one banded solve.
class QuadraticCost {
 public:
  int interior_count() const { return m_; }
  double energy_coeff() const { return c_geod_; }
  double bending_coeff() const { return c_bend_; }
  double repulsion_coeff() const { return c_rep_; }

  // Gradient of the cost at interior positions u (size m).
  std::vector<Vec6> gradient(const std::vector<Vec6>& u) const;

  // Cost value at interior positions u, up to the constant term that does
  // not influence the minimizer.
  double value(const std::vector<Vec6>& u) const;

  // Unique minimizer (banded Cholesky; falls back to a pure repulsion step
  // when both energy weights vanish and the Hessian is singular).
  std::vector<Vec6> solve(std::vector<std::string>* warnings = nullptr) const;

  const std::vector<Vec6>& rhs() const { return rhs_; }
  const std::vector<Vec6>& interior_points() const { return p_int_; }

 private:
  friend QuadraticCost assemble_cost(const CostContext&, const DiscretePath&);

  // y = (S (x) I6) u with S = c_geod * T + c_bend * T^2 applied through the
  // second-difference stencil; metric factor applied by the caller.
  std::vector<Vec6> apply_band(const std::vector<Vec6>& u) const;

  int m_ = 0;
  double c_geod_ = 0.0;   // lambda (n-1) / L'
  double c_bend_ = 0.0;   // eta (n-2) / tau'
  double c_rep_ = 0.0;    // 1 / (n-2)
  const MetricTensor* g_ = nullptr;
  std::vector<Vec6> p_int_;      // current interior breakpoints
  std::vector<Vec6> repulsion_;  // weighted repulsion direction per interior point
  std::vector<Vec6> rhs_;        // right-hand side of grad = 0
};

// Builds the quadratic cost for one iteration. Requires L' > 0; a vanishing
// tau' (perfectly straight previous path) drops the bending term for this
// iteration.
QuadraticCost assemble_cost(const CostContext& ctx, const DiscretePath& path);

struct StepSize {
  double value = 1.0;
  bool from_root = false;  // true when a growth-band root was binding
};

// Largest admissible step along the interior update directions: the smallest
// positive root of the geodesic/bending growth-band equations, capped at 1.
// `dirs` holds one direction per interior breakpoint; endpoints do not move.
StepSize step_size(const DiscretePath& path, const std::vector<Vec6>& dirs,
                   const PathStats& prev, double growth_percent,
                   const MetricTensor& g);

// Evaluates the geodesic energy of the stepped path p + s * dir (P) and its
// bending energy (Q); exposed so the growth-band contract can be checked.
double stepped_geodesic_energy(const DiscretePath& path,
                               const std::vector<Vec6>& dirs, double s,
                               const MetricTensor& g);
double stepped_bending_energy(const DiscretePath& path,
                              const std::vector<Vec6>& dirs, double s,
                              const MetricTensor& g);

// Monitoring objective: normalized energies of the updated path minus the
// mean clearance term. `pedal_distances` holds, per interior breakpoint, the
// metric distance from the updated breakpoint to the closest pedal recorded
// before the update.
double objective_value(const PathStats& stats, int breakpoint_count,
                       double lambda_w, double eta_w,
                       const std::vector<double>& pedal_distances);

// Convenience overload matching the engine's bookkeeping: distances are
// taken from each interior breakpoint to the closest point of its previous
// pedal set.
double objective_value(const DiscretePath& updated,
                       const std::vector<PedalSet>& pedals_prev,
                       const PathStats& stats, const OptimizerConfig& cfg,
                       const MetricTensor& g);

}  // namespace pentapath
