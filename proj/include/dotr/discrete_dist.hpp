#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "dotr/distortion.hpp"
#include "dotr/errors.hpp"

namespace dotr {

// Finitely supported distribution on the real line: strictly increasing
// atoms with positive masses summing to one.
class DiscreteDist {
 public:
  DiscreteDist(Eigen::VectorXd atoms, Eigen::VectorXd masses);

  static DiscreteDist from_samples(const std::vector<double>& values);
  // Sorts, merges values closer than merge_tol (to the group's first value),
  // drops non-positive masses, and renormalizes away accumulation residue.
  static DiscreteDist from_pairs(std::vector<std::pair<double, double>> pairs,
                                 double merge_tol = 0.0);

  int size() const { return static_cast<int>(atoms_.size()); }
  const Eigen::VectorXd& atoms() const { return atoms_; }
  const Eigen::VectorXd& masses() const { return masses_; }
  double mean() const { return atoms_.dot(masses_); }

 private:
  Eigen::VectorXd atoms_;
  Eigen::VectorXd masses_;
};

enum class TailSide { Upper, Lower };

struct RiskSpec {
  enum class Kind { Var, Es, Rvar };
  Kind kind = Kind::Es;
  double p = 0.0;
  double q = 0.0;  // Rvar only

  static RiskSpec var(double p) { return {Kind::Var, p, 0.0}; }
  static RiskSpec es(double p) { return {Kind::Es, p, 0.0}; }
  static RiskSpec rvar(double p, double q) { return {Kind::Rvar, p, q}; }
};

// Left-quantile F^{-1}(p) = inf{x : F(x) >= p}; Right uses strict inequality.
double quantile(const DiscreteDist& d, double p, Side side);

// Exact Choquet integral of d under h. Computed by the layer-cake sum
// z_1 + sum (z_{k+1}-z_k) h(P(Z > z_k)), which shifts negative support
// implicitly through the translation property.
double distorted_expectation(const DistortionFn& h, const DiscreteDist& d);

double risk_measure(const DiscreteDist& d, const RiskSpec& spec);

// Law of the conditional quantile restriction: Upper keeps the top p of
// mass (atom straddling the threshold is split), Lower the bottom 1-p.
DiscreteDist tail(const DiscreteDist& d, double p, TailSide side);

class ContinuousMarginal {
 public:
  ContinuousMarginal(std::function<double(double)> quantile, std::string label);
  static ContinuousMarginal uniform(double lo, double hi);

  double quantile(double t) const { return quantile_(t); }
  const std::string& label() const { return label_; }

 private:
  std::function<double(double)> quantile_;
  std::string label_;
};

// Midpoint-grid discretization: atoms at quantile((k-0.5)/n), mass 1/n each.
DiscreteDist discretize(const ContinuousMarginal& m, int n);

// Law of -X; pairs with the dual distortion in sign-change identities.
DiscreteDist reflect(const DiscreteDist& d);

}  // namespace dotr
