#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dotr/errors.hpp"

namespace dotr {

enum class Side { Left, Right };

enum class Shape { Convex, Concave, Iss, Ss, Linear, Other };

// One quadratic patch: h(t) = c0 + c1*(t-lo) + c2*(t-lo)^2 on [lo, hi].
struct QuadSegment {
  double lo = 0.0;
  double hi = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

struct Knot {
  double t = 0.0;
  double v = 0.0;
};

// A probability distortion: increasing h:[0,1]->[0,1] with h(0)=0, h(1)=1.
// Immutable value type; cheap to copy.
class DistortionFn {
 public:
  enum class Family {
    Identity,
    Power,
    TverskyKahneman,
    Es,
    Var,
    Rvar,
    PiecewiseQuadratic,
    PiecewiseLinear,
    Custom,
    Dual,
  };

  static DistortionFn identity();
  static DistortionFn power(double gamma);            // t^gamma
  static DistortionFn tversky_kahneman(double gamma);
  static DistortionFn es(double p);                   // min(t/(1-p), 1)
  static DistortionFn var(double p);                  // 1{t >= 1-p}
  static DistortionFn rvar(double p, double q);       // ((t ^ (1-p)) - (1-q))_+ / (q-p)
  static DistortionFn piecewise_quadratic(std::vector<QuadSegment> segments);
  static DistortionFn piecewise_linear(std::vector<Knot> knots);
  static DistortionFn custom(std::function<double(double)> fn, bool continuous = true,
                             std::string label = "custom");

  double operator()(double t) const;  // domain error if t outside [0,1]
  double derivative(double t, Side side) const;

  Family family() const { return family_; }
  bool continuous() const { return continuous_; }
  double param_a() const { return a_; }
  double param_b() const { return b_; }
  const std::vector<QuadSegment>& segments() const { return segments_; }
  const std::vector<Knot>& knots() const { return knots_; }
  const DistortionFn& dual_base() const;
  const std::string& label() const { return label_; }

  // Interior abscissae where the formula switches pieces (kinks, jumps).
  std::vector<double> breakpoints() const;

 private:
  DistortionFn() = default;

  double eval_raw(double t) const;

  Family family_ = Family::Identity;
  double a_ = 0.0;  // gamma for power/tk, p for es/var/rvar
  double b_ = 0.0;  // q for rvar
  std::vector<QuadSegment> segments_;
  std::vector<Knot> knots_;
  std::function<double(double)> fn_;
  std::shared_ptr<const DistortionFn> base_;  // dual wrapper
  bool continuous_ = true;
  std::string label_;

  friend DistortionFn dual(const DistortionFn&);
};

struct ShapeReport {
  Shape shape = Shape::Other;
  bool strict = false;
  // Leftmost admissible inflection point; for non-strict shapes the
  // admissible set is an interval and inflection_p_right is its other end.
  std::optional<double> inflection_p;
  std::optional<double> inflection_p_right;
  // One-sided derivative summary used by the optimality rules.
  double d_right_0 = 0.0;
  double d_left_1 = 0.0;
  double d_right_p = 0.0;  // at inflection_p, when set
  double d_left_p = 0.0;
  double d_right_p_right = 0.0;  // at inflection_p_right, when set
  double d_left_p_right = 0.0;
  // Set when the inflection point is not unique (the leftmost is reported).
  bool leftmost_inflection = false;
};

// Split of the distorted expectation for a kinked inverse-S distortion:
//   E_h[Z] = theta*E[Z] - theta1*E_{h1}[upper tail] + theta2*E_{h2}[lower tail]
struct Decomposition {
  double theta = 0.0;
  double theta1 = 0.0;
  DistortionFn h1 = DistortionFn::identity();
  double theta2 = 0.0;
  DistortionFn h2 = DistortionFn::identity();
  double p = 0.0;
};

constexpr double kDerivativeCap = 1e9;

double eval_h(const DistortionFn& h, double t);
DistortionFn dual(const DistortionFn& h);
double one_sided_derivative(const DistortionFn& h, double t, Side side);
ShapeReport classify_shape(const DistortionFn& h, double tol = 1e-9);
DistortionFn convex_envelope(const DistortionFn& h, int grid_n);
double k_curve(const DistortionFn& h, double u, double v, double t);
Decomposition decompose_iss(const DistortionFn& h, const ShapeReport& report,
                            std::optional<double> theta = std::nullopt);

const char* shape_name(Shape s);

}  // namespace dotr
