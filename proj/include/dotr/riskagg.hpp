#pragma once

#include <string>

#include "dotr/coupling.hpp"
#include "dotr/discrete_dist.hpp"
#include "dotr/distortion.hpp"

namespace dotr {

enum class AggDirection { Worst, Best };

struct MeasureSpec {
  enum class Kind { Var, Es, Rvar, Generic };
  Kind kind = Kind::Es;
  double p = 0.0;
  double q = 0.0;
  DistortionFn h = DistortionFn::identity();  // Generic only

  static MeasureSpec var(double q) { return {Kind::Var, q, 0.0, DistortionFn::identity()}; }
  static MeasureSpec es(double p) { return {Kind::Es, p, 0.0, DistortionFn::identity()}; }
  static MeasureSpec rvar(double p, double q) {
    return {Kind::Rvar, p, q, DistortionFn::identity()};
  }
  static MeasureSpec generic(DistortionFn h) {
    return {Kind::Generic, 0.0, 0.0, std::move(h)};
  }
};

struct AggregationResult {
  double value = 0.0;
  Coupling coupling = Coupling::comonotone();
  std::string rule;
  AggDirection direction = AggDirection::Worst;
};

// Robust two-risk aggregation of X+Y: the designated extremal coupling is
// materialized on the given marginals and priced through the exact
// distorted-expectation evaluator.
AggregationResult aggregate(const MeasureSpec& measure, const DiscreteDist& marg_x,
                            const DiscreteDist& marg_y, AggDirection direction);

}  // namespace dotr
