#include "dotr/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace dotr {

namespace {

void check_unit(double x, const char* who) {
  if (!(x >= 0.0 && x <= 1.0)) {
    fail(ErrorCode::Domain, std::string(who) + ": argument outside [0,1]");
  }
}

// Mass a segment piece puts on the rectangle (u1,u2] x (v1,v2].
double piece_rect_mass(const SegmentPiece& s, double u1, double u2, double v1, double v2) {
  double lo = std::max(u1, s.u_lo);
  double hi = std::min(u2, s.u_hi);
  if (hi <= lo) return 0.0;
  double len = s.u_hi - s.u_lo;
  // preimage of [v1, v2] under the affine map
  double a, b;
  if (s.orient == Orientation::Co) {
    a = s.u_lo + (v1 - s.v_lo) / (s.v_hi - s.v_lo) * len;
    b = s.u_lo + (v2 - s.v_lo) / (s.v_hi - s.v_lo) * len;
  } else {
    a = s.u_lo + (s.v_hi - v2) / (s.v_hi - s.v_lo) * len;
    b = s.u_lo + (s.v_hi - v1) / (s.v_hi - s.v_lo) * len;
  }
  lo = std::max(lo, a);
  hi = std::min(hi, b);
  if (hi <= lo) return 0.0;
  return s.weight * (hi - lo) / len;
}

double segments_rect_mass(const std::vector<SegmentPiece>& pieces, double u1, double u2,
                          double v1, double v2) {
  double m = 0.0;
  for (const auto& s : pieces) m += piece_rect_mass(s, u1, u2, v1, v2);
  return m;
}

}  // namespace

JointDiscrete::JointDiscrete(DiscreteDist row_marginal, DiscreteDist col_marginal,
                             Eigen::MatrixXd mass)
    : row_(std::move(row_marginal)), col_(std::move(col_marginal)), mass_(std::move(mass)) {
  if (mass_.rows() != row_.size() || mass_.cols() != col_.size()) {
    fail(ErrorCode::Spec, "joint: mass matrix shape must match the marginals");
  }
  for (int i = 0; i < mass_.rows(); ++i) {
    for (int j = 0; j < mass_.cols(); ++j) {
      if (mass_(i, j) < -1e-12) fail(ErrorCode::Spec, "joint: negative mass entry");
      if (mass_(i, j) < 0.0) mass_(i, j) = 0.0;
    }
  }
  Eigen::VectorXd rs = mass_.rowwise().sum();
  Eigen::VectorXd cs = mass_.colwise().sum();
  if ((rs - row_.masses()).cwiseAbs().maxCoeff() > 1e-10 ||
      (cs - col_.masses()).cwiseAbs().maxCoeff() > 1e-10) {
    fail(ErrorCode::MarginalMismatch, "joint: mass matrix does not reproduce the marginals");
  }
}

Coupling Coupling::comonotone() {
  Coupling c;
  c.kind_ = Kind::Comonotone;
  return c;
}

Coupling Coupling::counter_monotone() {
  Coupling c;
  c.kind_ = Kind::CounterMonotone;
  return c;
}

Coupling Coupling::plus_minus(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::Spec, "plus_minus: p must be in (0,1)");
  Coupling c;
  c.kind_ = Kind::PlusMinus;
  c.p_ = p;
  return c;
}

Coupling Coupling::minus_plus(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::Spec, "minus_plus: p must be in (0,1)");
  Coupling c;
  c.kind_ = Kind::MinusPlus;
  c.p_ = p;
  return c;
}

Coupling Coupling::segments(std::vector<SegmentPiece> pieces) {
  if (pieces.empty()) fail(ErrorCode::Spec, "segments: piece list is empty");
  double wsum = 0.0;
  std::set<double> cuts_u{0.0, 1.0}, cuts_v{0.0, 1.0};
  for (const auto& s : pieces) {
    if (!(s.u_lo >= 0.0 && s.u_lo < s.u_hi && s.u_hi <= 1.0) ||
        !(s.v_lo >= 0.0 && s.v_lo < s.v_hi && s.v_hi <= 1.0)) {
      fail(ErrorCode::Spec, "segments: piece intervals must be non-degenerate within [0,1]");
    }
    if (!(s.weight > 0.0 && s.weight <= 1.0)) {
      fail(ErrorCode::Spec, "segments: piece weight must be in (0,1]");
    }
    wsum += s.weight;
    cuts_u.insert(s.u_lo);
    cuts_u.insert(s.u_hi);
    cuts_v.insert(s.v_lo);
    cuts_v.insert(s.v_hi);
  }
  if (std::abs(wsum - 1.0) > 1e-9) fail(ErrorCode::Spec, "segments: weights must sum to 1");
  // both induced marginal densities must be uniform; check every elementary
  // interval of the piece-boundary partition
  auto check_uniform = [&pieces](const std::set<double>& cuts, bool u_axis) {
    double prev = -1.0;
    for (double c : cuts) {
      if (prev >= 0.0 && c > prev + 1e-15) {
        double mid = 0.5 * (prev + c);
        double dens = 0.0;
        for (const auto& s : pieces) {
          double lo = u_axis ? s.u_lo : s.v_lo;
          double hi = u_axis ? s.u_hi : s.v_hi;
          if (mid > lo && mid < hi) dens += s.weight / (hi - lo);
        }
        if (std::abs(dens - 1.0) > 1e-9) {
          fail(ErrorCode::Spec, u_axis ? "segments: u-marginal is not uniform"
                                       : "segments: v-marginal is not uniform");
        }
      }
      prev = c;
    }
  };
  check_uniform(cuts_u, true);
  check_uniform(cuts_v, false);
  Coupling c;
  c.kind_ = Kind::Segments;
  c.pieces_ = std::move(pieces);
  return c;
}

Coupling Coupling::matrix(JointDiscrete joint) {
  Coupling c;
  c.kind_ = Kind::Matrix;
  c.joint_ = std::make_shared<JointDiscrete>(std::move(joint));
  return c;
}

const JointDiscrete& Coupling::joint() const {
  if (kind_ != Kind::Matrix || !joint_) {
    fail(ErrorCode::UnsupportedKind, "coupling: not a matrix coupling");
  }
  return *joint_;
}

double copula_cdf(const Coupling& c, double u, double v) {
  check_unit(u, "copula_cdf");
  check_unit(v, "copula_cdf");
  switch (c.kind()) {
    case Coupling::Kind::Comonotone:
      return std::min(u, v);
    case Coupling::Kind::CounterMonotone:
      return std::max(u + v - 1.0, 0.0);
    case Coupling::Kind::PlusMinus: {
      double m = std::min(u, v);
      if (m <= 1.0 - c.p()) return m;
      return std::max(u + v - 1.0, 1.0 - c.p());
    }
    case Coupling::Kind::MinusPlus: {
      if (std::max(u, v) <= 1.0 - c.p()) return std::max(u + v - 1.0 + c.p(), 0.0);
      return std::min(u, v);
    }
    case Coupling::Kind::Segments:
      return segments_rect_mass(c.pieces(), 0.0, u, 0.0, v);
    case Coupling::Kind::Matrix:
      fail(ErrorCode::UnsupportedKind,
           "copula_cdf: a discrete joint does not determine a unique copula");
  }
  return 0.0;
}

double rectangle_volume(const Coupling& c, double u1, double u2, double v1, double v2) {
  check_unit(u1, "rectangle_volume");
  check_unit(u2, "rectangle_volume");
  check_unit(v1, "rectangle_volume");
  check_unit(v2, "rectangle_volume");
  if (u1 > u2 || v1 > v2) fail(ErrorCode::Domain, "rectangle_volume: reversed bounds");
  if (c.kind() == Coupling::Kind::Segments) {
    return segments_rect_mass(c.pieces(), u1, u2, v1, v2);
  }
  return copula_cdf(c, u2, v2) - copula_cdf(c, u2, v1) - copula_cdf(c, u1, v2) +
         copula_cdf(c, u1, v1);
}

bool in_ordinal_class(const Coupling& c, double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::Domain, "in_ordinal_class: p must be in (0,1)");
  return std::abs(copula_cdf(c, 1.0 - p, 1.0 - p) - (1.0 - p)) <= 1e-12;
}

double v_of_u(Coupling::Kind kind, double p, double u) {
  check_unit(u, "v_of_u");
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::Domain, "v_of_u: p must be in (0,1)");
  switch (kind) {
    case Coupling::Kind::PlusMinus:
      return u <= 1.0 - p ? u : 2.0 - p - u;
    case Coupling::Kind::MinusPlus:
      return u <= 1.0 - p ? 1.0 - p - u : u;
    default:
      fail(ErrorCode::UnsupportedKind, "v_of_u: only the ordinal-sum kinds have this map");
  }
}

JointDiscrete joint_from_coupling(const Coupling& c, const DiscreteDist& marg_x,
                                  const DiscreteDist& marg_y) {
  if (c.kind() == Coupling::Kind::Matrix) {
    const JointDiscrete& j = c.joint();
    if (j.row_marginal().size() != marg_x.size() || j.col_marginal().size() != marg_y.size() ||
        (j.row_marginal().atoms() - marg_x.atoms()).cwiseAbs().maxCoeff() > 1e-12 ||
        (j.col_marginal().atoms() - marg_y.atoms()).cwiseAbs().maxCoeff() > 1e-12 ||
        (j.row_marginal().masses() - marg_x.masses()).cwiseAbs().maxCoeff() > 1e-10 ||
        (j.col_marginal().masses() - marg_y.masses()).cwiseAbs().maxCoeff() > 1e-10) {
      fail(ErrorCode::MarginalMismatch, "joint_from_coupling: matrix marginals do not match");
    }
    return j;
  }
  const int m = marg_x.size();
  const int n = marg_y.size();
  Eigen::VectorXd cum_x(m + 1), cum_y(n + 1);
  cum_x[0] = 0.0;
  for (int i = 0; i < m; ++i) cum_x[i + 1] = cum_x[i] + marg_x.masses()[i];
  cum_x[m] = 1.0;
  cum_y[0] = 0.0;
  for (int j = 0; j < n; ++j) cum_y[j + 1] = cum_y[j] + marg_y.masses()[j];
  cum_y[n] = 1.0;

  Eigen::MatrixXd mass(m, n);
  if (c.kind() == Coupling::Kind::Segments) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        mass(i, j) = segments_rect_mass(c.pieces(), cum_x[i], cum_x[i + 1], cum_y[j], cum_y[j + 1]);
      }
    }
  } else {
    // one row of cdf values per row boundary, reused across cells
    Eigen::MatrixXd cdf(m + 1, n + 1);
    for (int i = 0; i <= m; ++i) {
      for (int j = 0; j <= n; ++j) cdf(i, j) = copula_cdf(c, cum_x[i], cum_y[j]);
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        mass(i, j) = cdf(i + 1, j + 1) - cdf(i + 1, j) - cdf(i, j + 1) + cdf(i, j);
      }
    }
  }
  return JointDiscrete(marg_x, marg_y, std::move(mass));
}

Coupling example1_cstar() {
  std::vector<SegmentPiece> pieces{
      {0.0, 0.4, 0.0, 0.4, Orientation::Co, 0.4},
      {0.4, 0.7, 0.4, 0.7, Orientation::Co, 0.1},
      {0.4, 0.7, 0.8, 1.0, Orientation::Counter, 0.2},
      {0.7, 0.8, 0.7, 0.8, Orientation::Counter, 0.1},
      {0.8, 1.0, 0.4, 0.7, Orientation::Counter, 0.2},
  };
  return Coupling::segments(std::move(pieces));
}

}  // namespace dotr
