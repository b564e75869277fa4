#include "dotr/bounds.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace dotr {

namespace {

DiscreteDist pushforward(const Eigen::VectorXd& values, const DiscreteDist& d) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(d.size());
  for (int i = 0; i < d.size(); ++i) pairs.emplace_back(values[i], d.masses()[i]);
  return DiscreteDist::from_pairs(std::move(pairs), 1e-12);
}

void require_convex(const DistortionFn& h, const char* who) {
  ShapeReport rep = classify_shape(h);
  if (rep.shape != Shape::Convex && rep.shape != Shape::Linear) {
    fail(ErrorCode::NotConvex, std::string(who) + ": distortion must be convex");
  }
}

}  // namespace

double weak_dual_value(const DistortionFn& h, const DualPair& pair, const DiscreteDist& marg_x,
                       const DiscreteDist& marg_y, const CostSpec& cost) {
  require_convex(h, "weak_dual_value");
  if (pair.phi.size() != marg_x.size() || pair.psi.size() != marg_y.size()) {
    fail(ErrorCode::Spec, "weak_dual_value: phi/psi tables must align with the marginal atoms");
  }
  Eigen::MatrixXd c = cost_matrix(cost, marg_x, marg_y);
  for (int i = 0; i < marg_x.size(); ++i) {
    for (int j = 0; j < marg_y.size(); ++j) {
      if (pair.phi[i] + pair.psi[j] > c(i, j) + 1e-12) {
        fail(ErrorCode::InfeasiblePair, "weak_dual_value: phi(x)+psi(y) exceeds the cost");
      }
    }
  }
  return distorted_expectation(h, pushforward(pair.phi, marg_x)) +
         distorted_expectation(h, pushforward(pair.psi, marg_y));
}

AffineDuality affine_strong_duality(const DistortionFn& h, double alpha, double beta,
                                    double gamma, const DiscreteDist& marg_x,
                                    const DiscreteDist& marg_y) {
  require_convex(h, "affine_strong_duality");
  Coupling coupling =
      beta * gamma >= 0.0 ? Coupling::comonotone() : Coupling::counter_monotone();
  Eigen::VectorXd f = alpha + (beta * marg_x.atoms()).array();
  Eigen::VectorXd g = (gamma * marg_y.atoms()).array();
  TransportProblem prob{marg_x, marg_y, CostSpec::separable(f, g), h};
  AffineDuality out;
  out.primal = evaluate(prob, joint_from_coupling(coupling, marg_x, marg_y));
  out.dual = distorted_expectation(h, pushforward(f, marg_x)) +
             distorted_expectation(h, pushforward(g, marg_y));
  out.gap = out.primal - out.dual;
  return out;
}

double wxz_lower_bound(const DistortionFn& h, const DiscreteDist& marg_x,
                       const DiscreteDist& marg_y, int grid_n) {
  DistortionFn envelope = convex_envelope(h, grid_n);
  return distorted_expectation(envelope, marg_x) + distorted_expectation(envelope, marg_y);
}

}  // namespace dotr
