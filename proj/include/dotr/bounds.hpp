#pragma once

#include <Eigen/Dense>

#include "dotr/discrete_dist.hpp"
#include "dotr/distortion.hpp"
#include "dotr/transport.hpp"

namespace dotr {

// Candidate dual pair: phi over the x-atoms, psi over the y-atoms, feasible
// when phi(x)+psi(y) <= c(x,y) on the whole atom grid.
struct DualPair {
  Eigen::VectorXd phi;
  Eigen::VectorXd psi;
};

// Dual objective E_h[phi(X)] + E_h[psi(Y)]. Requires convex h (weak duality
// fails otherwise) and a feasible pair.
double weak_dual_value(const DistortionFn& h, const DualPair& pair, const DiscreteDist& marg_x,
                       const DiscreteDist& marg_y, const CostSpec& cost);

struct AffineDuality {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
};

// For cost alpha + beta*x + gamma*y and convex h the duality gap closes:
// the primal is attained by the comonotone coupling when beta*gamma >= 0
// and by the counter-monotone one otherwise.
AffineDuality affine_strong_duality(const DistortionFn& h, double alpha, double beta,
                                    double gamma, const DiscreteDist& marg_x,
                                    const DiscreteDist& marg_y);

// Convex-envelope lower bound for the linear-cost problem:
// E_{h*}[X] + E_{h*}[Y] with h* the envelope on a grid of size grid_n.
double wxz_lower_bound(const DistortionFn& h, const DiscreteDist& marg_x,
                       const DiscreteDist& marg_y, int grid_n);

}  // namespace dotr
