#include "dotr/transport.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

namespace dotr {

CostSpec CostSpec::linear_sum() {
  CostSpec c;
  c.form_ = Form::LinearSum;
  return c;
}

CostSpec CostSpec::separable(Eigen::VectorXd f, Eigen::VectorXd g) {
  if (f.size() == 0 || g.size() == 0) fail(ErrorCode::Spec, "cost: empty separable table");
  CostSpec c;
  c.form_ = Form::Separable;
  c.f_ = std::move(f);
  c.g_ = std::move(g);
  return c;
}

CostSpec CostSpec::grid(Eigen::MatrixXd values) {
  if (values.size() == 0) fail(ErrorCode::Spec, "cost: empty grid");
  CostSpec c;
  c.form_ = Form::Grid;
  c.grid_ = std::move(values);
  return c;
}

CostSpec CostSpec::power_distance(double p) {
  if (!(p >= 1.0)) fail(ErrorCode::Spec, "cost: power distance needs p >= 1");
  CostSpec c;
  c.form_ = Form::PowerDistance;
  c.power_ = p;
  return c;
}

Eigen::MatrixXd cost_matrix(const CostSpec& cost, const DiscreteDist& marg_x,
                            const DiscreteDist& marg_y) {
  const int m = marg_x.size();
  const int n = marg_y.size();
  Eigen::MatrixXd c(m, n);
  switch (cost.form()) {
    case CostSpec::Form::LinearSum:
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = marg_x.atoms()[i] + marg_y.atoms()[j];
      break;
    case CostSpec::Form::Separable:
      if (cost.f().size() != m || cost.g().size() != n) {
        fail(ErrorCode::Spec, "cost: separable tables must align with the marginal atoms");
      }
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = cost.f()[i] + cost.g()[j];
      break;
    case CostSpec::Form::Grid:
      if (cost.grid_values().rows() != m || cost.grid_values().cols() != n) {
        fail(ErrorCode::Spec, "cost: grid must align with the marginal atoms");
      }
      c = cost.grid_values();
      break;
    case CostSpec::Form::PowerDistance:
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
          c(i, j) = std::pow(std::abs(marg_x.atoms()[i] - marg_y.atoms()[j]), cost.power());
      break;
  }
  return c;
}

CostFlags check_cost_flags(const Eigen::MatrixXd& c) {
  const double tol = 1e-12;
  CostFlags flags;
  bool inc = true, dec = true;
  for (int i = 0; i < c.rows(); ++i) {
    for (int j = 0; j + 1 < c.cols(); ++j) {
      if (c(i, j + 1) < c(i, j) - tol) inc = false;
      if (c(i, j + 1) > c(i, j) + tol) dec = false;
    }
  }
  for (int j = 0; j < c.cols(); ++j) {
    for (int i = 0; i + 1 < c.rows(); ++i) {
      if (c(i + 1, j) < c(i, j) - tol) inc = false;
      if (c(i + 1, j) > c(i, j) + tol) dec = false;
    }
  }
  flags.monotone = inc || dec;
  flags.submodular = true;
  flags.supermodular = true;
  for (int i = 0; i + 1 < c.rows(); ++i) {
    for (int j = 0; j + 1 < c.cols(); ++j) {
      double cross = c(i, j) + c(i + 1, j + 1) - c(i, j + 1) - c(i + 1, j);
      if (cross > tol) flags.submodular = false;
      if (cross < -tol) flags.supermodular = false;
    }
  }
  return flags;
}

DiscreteDist cost_law(const Eigen::MatrixXd& c, const Eigen::MatrixXd& plan) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(c.size());
  for (int i = 0; i < c.rows(); ++i) {
    for (int j = 0; j < c.cols(); ++j) {
      if (plan(i, j) > 0.0) pairs.emplace_back(c(i, j), plan(i, j));
    }
  }
  return DiscreteDist::from_pairs(std::move(pairs), 1e-12);
}

double evaluate(const TransportProblem& prob, const JointDiscrete& joint) {
  if (joint.row_marginal().size() != prob.marg_x.size() ||
      joint.col_marginal().size() != prob.marg_y.size() ||
      (joint.row_marginal().atoms() - prob.marg_x.atoms()).cwiseAbs().maxCoeff() > 1e-12 ||
      (joint.col_marginal().atoms() - prob.marg_y.atoms()).cwiseAbs().maxCoeff() > 1e-12 ||
      (joint.row_marginal().masses() - prob.marg_x.masses()).cwiseAbs().maxCoeff() > 1e-10 ||
      (joint.col_marginal().masses() - prob.marg_y.masses()).cwiseAbs().maxCoeff() > 1e-10) {
    fail(ErrorCode::MarginalMismatch, "evaluate: joint marginals do not match the problem");
  }
  Eigen::MatrixXd c = cost_matrix(prob.cost, prob.marg_x, prob.marg_y);
  return distorted_expectation(prob.h, cost_law(c, joint.mass()));
}

namespace {

bool strictly_increasing(const Eigen::VectorXd& v) {
  for (int i = 0; i + 1 < v.size(); ++i) {
    if (!(v[i + 1] - v[i] > 1e-12)) return false;
  }
  return true;
}

// ge/le with a tolerance that stays sane when one side is infinite
bool ge_tol(double a, double b) { return std::isinf(b) ? (std::isinf(a) || b < 0) : a >= b - 1e-12; }
bool le_tol(double a, double b) { return std::isinf(b) ? (b > 0 || std::isinf(a)) : a <= b + 1e-12; }

}  // namespace

OptimalityCertificate select_universal(const TransportProblem& prob, Direction direction) {
  OptimalityCertificate cert;
  cert.direction = direction;

  Eigen::MatrixXd cmat = cost_matrix(prob.cost, prob.marg_x, prob.marg_y);
  CostFlags flags = check_cost_flags(cmat);
  bool linear_like = prob.cost.form() == CostSpec::Form::LinearSum ||
                     (prob.cost.form() == CostSpec::Form::Separable &&
                      strictly_increasing(prob.cost.f()) && strictly_increasing(prob.cost.g()));

  ShapeReport rep = classify_shape(prob.h);
  Shape sh = rep.shape;
  bool convexish = sh == Shape::Convex || sh == Shape::Linear;
  bool concaveish = sh == Shape::Concave || sh == Shape::Linear;

  if (direction == Direction::Min) {
    if (convexish && flags.monotone && flags.submodular) {
      cert.coupling = Coupling::comonotone();
      cert.rule = OptimalityRule::Thm1ConvexSubmodular;
      cert.unique = sh == Shape::Convex && rep.strict && linear_like;
      return cert;
    }
    if (concaveish && flags.monotone && flags.supermodular) {
      cert.coupling = Coupling::counter_monotone();
      cert.rule = OptimalityRule::Thm1ConcaveSupermodular;
      cert.unique = sh == Shape::Concave && rep.strict && linear_like;
      return cert;
    }
    // non-strict shapes admit an interval of inflection points; the kink
    // conditions are widest at one end, so test there
    if (sh == Shape::Iss && linear_like && ge_tol(rep.d_right_p_right, rep.d_right_0)) {
      cert.coupling = Coupling::plus_minus(*rep.inflection_p_right);
      cert.rule = OptimalityRule::Thm4Iss;
      cert.unique = rep.strict;
      return cert;
    }
    if (sh == Shape::Ss && linear_like && le_tol(rep.d_left_p, rep.d_left_1)) {
      cert.coupling = Coupling::minus_plus(*rep.inflection_p);
      cert.rule = OptimalityRule::Thm5Ss;
      cert.unique = rep.strict;
      return cert;
    }
  } else {
    if (concaveish && flags.monotone && flags.supermodular) {
      cert.coupling = Coupling::comonotone();
      cert.rule = OptimalityRule::Thm1ConcaveSupermodular;
      cert.unique = sh == Shape::Concave && rep.strict && linear_like;
      return cert;
    }
    if (convexish && flags.monotone && flags.submodular) {
      cert.coupling = Coupling::counter_monotone();
      cert.rule = OptimalityRule::Thm1ConvexSubmodular;
      cert.unique = sh == Shape::Convex && rep.strict && linear_like;
      return cert;
    }
    if (sh == Shape::Iss && linear_like && ge_tol(rep.d_left_p, rep.d_left_1)) {
      cert.coupling = Coupling::minus_plus(*rep.inflection_p);
      cert.rule = OptimalityRule::Thm4Iss;
      cert.unique = rep.strict;
      return cert;
    }
    if (sh == Shape::Ss && linear_like && le_tol(rep.d_right_p_right, rep.d_right_0)) {
      cert.coupling = Coupling::plus_minus(*rep.inflection_p_right);
      cert.rule = OptimalityRule::Thm5Ss;
      cert.unique = rep.strict;
      return cert;
    }
  }
  cert.rule = OptimalityRule::None;
  return cert;
}

OptimalityCertificate select_within_class(const TransportProblem& prob, Direction direction) {
  OptimalityCertificate cert;
  cert.direction = direction;
  bool linear_like = prob.cost.form() == CostSpec::Form::LinearSum ||
                     (prob.cost.form() == CostSpec::Form::Separable &&
                      strictly_increasing(prob.cost.f()) && strictly_increasing(prob.cost.g()));
  ShapeReport rep = classify_shape(prob.h);
  if (rep.shape != Shape::Iss || !linear_like) {
    cert.rule = OptimalityRule::None;
    return cert;
  }
  double p = *rep.inflection_p;
  cert.coupling =
      direction == Direction::Min ? Coupling::plus_minus(p) : Coupling::minus_plus(p);
  cert.rule = OptimalityRule::Prop3WithinCp;
  cert.unique = rep.strict;
  return cert;
}

namespace {

// Sorted tie-groups of the cost cells; evaluation never re-sorts per plan.
struct LawMachine {
  std::vector<double> values;            // ascending group representatives
  std::vector<std::vector<int>> groups;  // flat cell indices per group

  void build(const Eigen::MatrixXd& c) {
    const int m = static_cast<int>(c.rows()), n = static_cast<int>(c.cols());
    std::vector<int> order(m * n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double va = c(a / n, a % n), vb = c(b / n, b % n);
      return va < vb || (va == vb && a < b);
    });
    for (int idx : order) {
      double v = c(idx / n, idx % n);
      if (!values.empty() && v - values.back() <= 1e-12) {
        groups.back().push_back(idx);
      } else {
        values.push_back(v);
        groups.push_back({idx});
      }
    }
  }

  double eval(const double* plan, const DistortionFn& h) const {
    double surv = 1.0;
    double total = values[0];
    for (size_t k = 0; k + 1 < values.size(); ++k) {
      double w = 0.0;
      for (int cidx : groups[k]) w += plan[cidx];
      surv -= w;
      total += (values[k + 1] - values[k]) * h(std::clamp(surv, 0.0, 1.0));
    }
    return total;
  }
};

struct OracleSearch {
  // Hard cap on visited lattice plans; a 4x4 instance at a high resolution
  // has nine free dimensions and would otherwise run for hours.
  static constexpr long long kNodeBudget = 200'000'000;

  int m = 0, n = 0;
  Eigen::VectorXd r, c;
  const DistortionFn* h = nullptr;
  LawMachine law;
  Direction dir = Direction::Min;
  double step = 0.0;
  std::array<bool, 16> forbidden{};
  bool restricted = false;
  long long nodes = 0;

  bool have_best = false;
  double best_value = 0.0;
  std::array<double, 16> best_plan{};
  std::vector<double> best_free;

  int nfree() const { return (m - 1) * (n - 1); }

  void extract_free(const std::array<double, 16>& plan, std::vector<double>& out) const {
    out.clear();
    for (int i = 0; i + 1 < m; ++i)
      for (int j = 0; j + 1 < n; ++j) out.push_back(plan[i * n + j]);
  }

  void consider(const std::array<double, 16>& plan) {
    if (restricted) {
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
          if (forbidden[i * n + j] && plan[i * n + j] > 1e-9) return;
    }
    double value = law.eval(plan.data(), *h);
    bool better;
    if (!have_best) {
      better = true;
    } else if (value == best_value) {
      std::vector<double> fv;
      extract_free(plan, fv);
      better = fv < best_free;
    } else {
      better = dir == Direction::Min ? value < best_value : value > best_value;
    }
    if (better) {
      have_best = true;
      best_value = value;
      best_plan = plan;
      extract_free(plan, best_free);
    }
  }

  // Lattice enumeration of the free block in row-major order. Row and column
  // capacities bound each loop, so partial states stay feasible.
  void recurse(int cell, std::array<double, 16>& plan, std::array<double, 16>& row_used,
               std::array<double, 16>& col_used) {
    if (cell == nfree()) {
      if (++nodes > kNodeBudget) {
        fail(ErrorCode::InstanceTooLarge,
             "oracle: lattice search exceeds the node budget; lower the resolution");
      }
      // complete the last column, last row, and the corner
      for (int i = 0; i + 1 < m; ++i) plan[i * n + (n - 1)] = std::max(r[i] - row_used[i], 0.0);
      double corner = r[m - 1];
      for (int j = 0; j + 1 < n; ++j) {
        double v = std::max(c[j] - col_used[j], 0.0);
        plan[(m - 1) * n + j] = v;
        corner -= v;
      }
      if (corner < -1e-12) return;
      plan[(m - 1) * n + (n - 1)] = std::max(corner, 0.0);
      consider(plan);
      return;
    }
    int i = cell / (n - 1), j = cell % (n - 1);
    double cap = std::min(r[i] - row_used[i], c[j] - col_used[j]);
    int kmax = forbidden[i * n + j] && restricted
                   ? 0
                   : static_cast<int>(std::floor(cap / step + 1e-9));
    for (int k = 0; k <= kmax; ++k) {
      double v = k * step;
      plan[i * n + j] = v;
      row_used[i] += v;
      col_used[j] += v;
      recurse(cell + 1, plan, row_used, col_used);
      row_used[i] -= v;
      col_used[j] -= v;
    }
    plan[i * n + j] = 0.0;
  }

  // North-west-corner fill under the given row/column orders; every vertex
  // of the transport polytope arises this way for some pair of orders.
  void nwc(const std::vector<int>& rho, const std::vector<int>& sig) {
    std::array<double, 16> plan{};
    int i = 0, j = 0;
    double ra = r[rho[0]], cb = c[sig[0]];
    while (true) {
      double t = std::min(ra, cb);
      plan[rho[i] * n + sig[j]] += t;
      ra -= t;
      cb -= t;
      if (ra <= 1e-14 && i + 1 < m) {
        ++i;
        ra = r[rho[i]];
      } else if (cb <= 1e-14 && j + 1 < n) {
        ++j;
        cb = c[sig[j]];
      } else {
        break;
      }
    }
    consider(plan);
  }
};

double capped_lipschitz(const DistortionFn& h) {
  double L = 0.0;
  const int n = 1024;
  for (int k = 0; k < n; ++k) {
    double d = h.derivative(static_cast<double>(k) / n, Side::Right);
    if (std::isinf(d)) return kDerivativeCap;
    L = std::max(L, std::abs(d));
  }
  return std::min(L, kDerivativeCap);
}

int split_index(const Eigen::VectorXd& masses, double level, const char* axis) {
  double cum = 0.0;
  for (int k = 0; k + 1 < masses.size(); ++k) {
    cum += masses[k];
    if (std::abs(cum - level) <= 1e-9) return k + 1;
    if (cum > level) break;
  }
  fail(ErrorCode::Domain, std::string("oracle: class_p level does not align with the ") + axis +
                              " marginal's cumulative masses");
}

}  // namespace

OracleResult oracle(const TransportProblem& prob, Direction direction, int resolution,
                    std::optional<double> class_p) {
  const int m = prob.marg_x.size();
  const int n = prob.marg_y.size();
  if (m > 4 || n > 4) {
    fail(ErrorCode::InstanceTooLarge, "oracle: marginals must have at most 4 atoms each");
  }
  if (resolution < 10) fail(ErrorCode::Domain, "oracle: resolution must be >= 10");

  Eigen::MatrixXd cmat = cost_matrix(prob.cost, prob.marg_x, prob.marg_y);

  OracleSearch search;
  search.m = m;
  search.n = n;
  search.r = prob.marg_x.masses();
  search.c = prob.marg_y.masses();
  search.h = &prob.h;
  search.dir = direction;
  search.step = 1.0 / resolution;
  search.law.build(cmat);
  if (class_p) {
    if (!(*class_p > 0.0 && *class_p < 1.0)) {
      fail(ErrorCode::Domain, "oracle: class_p must be in (0,1)");
    }
    double level = 1.0 - *class_p;
    int kx = split_index(prob.marg_x.masses(), level, "row");
    int ky = split_index(prob.marg_y.masses(), level, "column");
    search.restricted = true;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        search.forbidden[i * n + j] = (i < kx && j >= ky) || (i >= kx && j < ky);
  }

  std::array<double, 16> plan{}, row_used{}, col_used{};
  search.recurse(0, plan, row_used, col_used);

  std::vector<int> rho(m), sig(n);
  std::iota(rho.begin(), rho.end(), 0);
  do {
    std::iota(sig.begin(), sig.end(), 0);
    do {
      search.nwc(rho, sig);
    } while (std::next_permutation(sig.begin(), sig.end()));
  } while (std::next_permutation(rho.begin(), rho.end()));

  if (!search.have_best) fail(ErrorCode::Domain, "oracle: no feasible plan in the search set");

  Eigen::MatrixXd best(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) best(i, j) = search.best_plan[i * n + j];
  // the completed cells can carry tiny negative residue; the joint clamps it
  double crange = cmat.maxCoeff() - cmat.minCoeff();
  double slack = search.nfree() * crange * capped_lipschitz(prob.h) / resolution;
  return OracleResult{search.best_value,
                      JointDiscrete(prob.marg_x, prob.marg_y, std::move(best)), slack};
}

BernoulliArgmin bernoulli_argmin(const DistortionFn& h, double u, double v, int grid_n,
                                 Direction direction) {
  if (grid_n < 100) fail(ErrorCode::Domain, "bernoulli_argmin: grid_n must be >= 100");
  double lo = std::max(u + v - 1.0, 0.0);
  double hi = std::min(u, v);
  BernoulliArgmin best{lo, k_curve(h, u, v, lo)};
  for (int k = 1; k <= grid_n; ++k) {
    double t = lo + (hi - lo) * k / grid_n;
    double val = k_curve(h, u, v, t);
    bool better = direction == Direction::Min ? val < best.value : val > best.value;
    if (better) best = {t, val};
  }
  return best;
}

const char* rule_name(OptimalityRule r) {
  switch (r) {
    case OptimalityRule::Thm1ConvexSubmodular: return "thm1-convex-submodular";
    case OptimalityRule::Thm1ConcaveSupermodular: return "thm1-concave-supermodular";
    case OptimalityRule::Thm4Iss: return "thm4-iss";
    case OptimalityRule::Thm5Ss: return "thm5-ss";
    case OptimalityRule::Prop3WithinCp: return "prop3-within-cp";
    case OptimalityRule::None: return "none";
  }
  return "none";
}

}  // namespace dotr
