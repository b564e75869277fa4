#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "dotr/discrete_dist.hpp"
#include "dotr/errors.hpp"

namespace dotr {

enum class Orientation { Co, Counter };

// One affine monotone transport piece: maps the u-interval onto the
// v-interval, increasing (Co) or decreasing (Counter), carrying `weight`
// of the total mass uniformly.
struct SegmentPiece {
  double u_lo = 0.0;
  double u_hi = 0.0;
  double v_lo = 0.0;
  double v_hi = 0.0;
  Orientation orient = Orientation::Co;
  double weight = 0.0;
};

// A transport plan between two discrete marginals as an explicit mass matrix.
class JointDiscrete {
 public:
  JointDiscrete(DiscreteDist row_marginal, DiscreteDist col_marginal, Eigen::MatrixXd mass);

  const DiscreteDist& row_marginal() const { return row_; }
  const DiscreteDist& col_marginal() const { return col_; }
  const Eigen::MatrixXd& mass() const { return mass_; }

 private:
  DiscreteDist row_;
  DiscreteDist col_;
  Eigen::MatrixXd mass_;
};

class Coupling {
 public:
  enum class Kind { Comonotone, CounterMonotone, PlusMinus, MinusPlus, Segments, Matrix };

  static Coupling comonotone();
  static Coupling counter_monotone();
  static Coupling plus_minus(double p);   // comonotone below level 1-p, counter above
  static Coupling minus_plus(double p);   // counter below level 1-p, comonotone above
  static Coupling segments(std::vector<SegmentPiece> pieces);
  static Coupling matrix(JointDiscrete joint);

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  const std::vector<SegmentPiece>& pieces() const { return pieces_; }
  const JointDiscrete& joint() const;

 private:
  Coupling() = default;
  Kind kind_ = Kind::Comonotone;
  double p_ = 0.0;
  std::vector<SegmentPiece> pieces_;
  std::shared_ptr<const JointDiscrete> joint_;
};

double copula_cdf(const Coupling& c, double u, double v);
double rectangle_volume(const Coupling& c, double u1, double u2, double v1, double v2);
bool in_ordinal_class(const Coupling& c, double p);

// Deterministic map of the stochastic representation V = f(U).
double v_of_u(Coupling::Kind kind, double p, double u);

// Sklar cell masses: joint mass of atom cell (i,j) is the copula volume of
// the cdf rectangle spanned by the two atoms.
JointDiscrete joint_from_coupling(const Coupling& c, const DiscreteDist& marg_x,
                                  const DiscreteDist& marg_y);

// The five-piece segment coupling that beats the ordinal-sum construction
// for the symmetric concave/convex quadratic distortion.
Coupling example1_cstar();

}  // namespace dotr
