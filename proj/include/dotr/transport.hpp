#pragma once

#include <Eigen/Dense>
#include <optional>

#include "dotr/coupling.hpp"
#include "dotr/discrete_dist.hpp"
#include "dotr/distortion.hpp"

namespace dotr {

enum class Direction { Min, Max };

class CostSpec {
 public:
  enum class Form { LinearSum, Separable, Grid, PowerDistance };

  static CostSpec linear_sum();
  static CostSpec separable(Eigen::VectorXd f, Eigen::VectorXd g);
  static CostSpec grid(Eigen::MatrixXd values);
  static CostSpec power_distance(double p);  // |x-y|^p

  Form form() const { return form_; }
  double power() const { return power_; }
  const Eigen::VectorXd& f() const { return f_; }
  const Eigen::VectorXd& g() const { return g_; }
  const Eigen::MatrixXd& grid_values() const { return grid_; }

 private:
  CostSpec() = default;
  Form form_ = Form::LinearSum;
  double power_ = 1.0;
  Eigen::VectorXd f_, g_;
  Eigen::MatrixXd grid_;
};

struct CostFlags {
  bool monotone = false;
  bool submodular = false;
  bool supermodular = false;
};

struct TransportProblem {
  DiscreteDist marg_x;
  DiscreteDist marg_y;
  CostSpec cost;
  DistortionFn h;
};

// Cost over all atom pairs of the instance.
Eigen::MatrixXd cost_matrix(const CostSpec& cost, const DiscreteDist& marg_x,
                            const DiscreteDist& marg_y);
// Declared-or-checked structure flags, verified on the instance's atom grid.
CostFlags check_cost_flags(const Eigen::MatrixXd& c);

// Law of the cost under a plan (equal cost values merged at 1e-12).
DiscreteDist cost_law(const Eigen::MatrixXd& c, const Eigen::MatrixXd& plan);

// Distorted expectation of the transported cost.
double evaluate(const TransportProblem& prob, const JointDiscrete& joint);

enum class OptimalityRule {
  Thm1ConvexSubmodular,
  Thm1ConcaveSupermodular,
  Thm4Iss,
  Thm5Ss,
  Prop3WithinCp,
  None,
};

struct OptimalityCertificate {
  std::optional<Coupling> coupling;
  OptimalityRule rule = OptimalityRule::None;
  bool unique = false;
  Direction direction = Direction::Min;
};

// Theorem-mandated universally optimal coupling, when one exists for the
// given shape/cost/direction; rule None otherwise.
OptimalityCertificate select_universal(const TransportProblem& prob, Direction direction);

// Within-class optimality for an inverse-S distortion with inflection p:
// the ordinal-sum coupling at p, restricted to couplings fixing (1-p,1-p).
OptimalityCertificate select_within_class(const TransportProblem& prob, Direction direction);

struct OracleResult {
  double value = 0.0;
  JointDiscrete plan;
  double slack = 0.0;
};

// Exhaustive certification oracle for desk-scale instances: lattice search
// over the free cells of the transport polytope plus every vertex
// (north-west-corner fills under all row/column orders). class_p restricts
// to plans with zero mass in the off-diagonal blocks cut at level 1-p.
OracleResult oracle(const TransportProblem& prob, Direction direction, int resolution,
                    std::optional<double> class_p = std::nullopt);

struct BernoulliArgmin {
  double t_star = 0.0;
  double value = 0.0;
};

// Extremizes the two-point-marginal objective h(1-t)+h(1-u-v+t) over the
// Frechet interval on a uniform grid; ties resolve to the smallest t.
BernoulliArgmin bernoulli_argmin(const DistortionFn& h, double u, double v, int grid_n,
                                 Direction direction);

const char* rule_name(OptimalityRule r);

}  // namespace dotr
