#include "dotr/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dotr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kClassifyCells = 4096;  // 4097 grid points

double capped(double v) { return std::abs(v) > kDerivativeCap ? kInf : v; }

void check_unit(double t, const char* who) {
  if (!(t >= 0.0 && t <= 1.0)) {
    fail(ErrorCode::Domain, std::string(who) + ": argument " + std::to_string(t) +
                                " outside [0,1]");
  }
}

}  // namespace

DistortionFn DistortionFn::identity() {
  DistortionFn h;
  h.family_ = Family::Identity;
  h.label_ = "identity";
  return h;
}

DistortionFn DistortionFn::power(double gamma) {
  if (!(gamma > 0.0)) fail(ErrorCode::Spec, "power: gamma must be positive");
  DistortionFn h;
  h.family_ = Family::Power;
  h.a_ = gamma;
  h.label_ = "power";
  return h;
}

DistortionFn DistortionFn::tversky_kahneman(double gamma) {
  if (!(gamma > 0.0)) fail(ErrorCode::Spec, "tk: gamma must be positive");
  DistortionFn h;
  h.family_ = Family::TverskyKahneman;
  h.a_ = gamma;
  h.label_ = "tk";
  return h;
}

DistortionFn DistortionFn::es(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::Spec, "es: level p must be in (0,1)");
  DistortionFn h;
  h.family_ = Family::Es;
  h.a_ = p;
  h.label_ = "es";
  return h;
}

DistortionFn DistortionFn::var(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::Spec, "var: level p must be in (0,1)");
  DistortionFn h;
  h.family_ = Family::Var;
  h.a_ = p;
  h.continuous_ = false;
  h.label_ = "var";
  return h;
}

DistortionFn DistortionFn::rvar(double p, double q) {
  if (!(p > 0.0 && p < q && q < 1.0)) {
    fail(ErrorCode::Spec, "rvar: levels must satisfy 0 < p < q < 1");
  }
  DistortionFn h;
  h.family_ = Family::Rvar;
  h.a_ = p;
  h.b_ = q;
  h.label_ = "rvar";
  return h;
}

DistortionFn DistortionFn::piecewise_quadratic(std::vector<QuadSegment> segments) {
  if (segments.empty()) fail(ErrorCode::Spec, "pwquad: segments must be non-empty");
  if (std::abs(segments.front().lo) > 1e-12 || std::abs(segments.back().hi - 1.0) > 1e-12) {
    fail(ErrorCode::Spec, "pwquad: segments must cover [0,1]");
  }
  for (size_t k = 0; k < segments.size(); ++k) {
    const auto& s = segments[k];
    if (!(s.lo < s.hi)) fail(ErrorCode::Spec, "pwquad: segment interval degenerate");
    if (k > 0 && std::abs(s.lo - segments[k - 1].hi) > 1e-12) {
      fail(ErrorCode::Spec, "pwquad: segments must be contiguous");
    }
    // monotone on the segment: derivative c1 + 2 c2 (t-lo) at both ends
    double dl = s.c1;
    double dr = s.c1 + 2.0 * s.c2 * (s.hi - s.lo);
    if (dl < -1e-12 || dr < -1e-12) fail(ErrorCode::Spec, "pwquad: not non-decreasing");
    double end = s.c0 + s.c1 * (s.hi - s.lo) + s.c2 * (s.hi - s.lo) * (s.hi - s.lo);
    if (k + 1 < segments.size() && std::abs(end - segments[k + 1].c0) > 1e-12) {
      fail(ErrorCode::Spec, "pwquad: discontinuity at segment boundary");
    }
    if (k + 1 == segments.size() && std::abs(end - 1.0) > 1e-12) {
      fail(ErrorCode::Spec, "pwquad: h(1) must equal 1");
    }
  }
  if (std::abs(segments.front().c0) > 1e-12) fail(ErrorCode::Spec, "pwquad: h(0) must equal 0");
  DistortionFn h;
  h.family_ = Family::PiecewiseQuadratic;
  h.segments_ = std::move(segments);
  h.label_ = "pwquad";
  return h;
}

DistortionFn DistortionFn::piecewise_linear(std::vector<Knot> knots) {
  if (knots.size() < 2) fail(ErrorCode::Spec, "pwlin: need at least two knots");
  for (size_t k = 0; k < knots.size(); ++k) {
    if (k > 0 && !(knots[k].t > knots[k - 1].t)) {
      fail(ErrorCode::Spec, "pwlin: knot abscissae must be strictly increasing");
    }
    if (knots[k].v < -1e-12 || knots[k].v > 1.0 + 1e-12) {
      fail(ErrorCode::Spec, "pwlin: knot values must lie in [0,1]");
    }
    if (k > 0 && knots[k].v < knots[k - 1].v - 1e-12) {
      fail(ErrorCode::Spec, "pwlin: not non-decreasing");
    }
  }
  if (std::abs(knots.front().t) > 1e-12 || std::abs(knots.back().t - 1.0) > 1e-12 ||
      std::abs(knots.front().v) > 1e-12 || std::abs(knots.back().v - 1.0) > 1e-12) {
    fail(ErrorCode::Spec, "pwlin: knots must run from (0,0) to (1,1)");
  }
  DistortionFn h;
  h.family_ = Family::PiecewiseLinear;
  h.knots_ = std::move(knots);
  h.label_ = "pwlin";
  return h;
}

DistortionFn DistortionFn::custom(std::function<double(double)> fn, bool continuous,
                                  std::string label) {
  if (!fn) fail(ErrorCode::Spec, "custom: callable is empty");
  if (std::abs(fn(0.0)) > 1e-9 || std::abs(fn(1.0) - 1.0) > 1e-9) {
    fail(ErrorCode::Spec, "custom: endpoints must satisfy h(0)=0, h(1)=1");
  }
  // monotonicity on a verification grid
  const int n = 256;
  double prev = 0.0;
  for (int k = 1; k <= n; ++k) {
    double cur = fn(static_cast<double>(k) / n);
    if (cur < prev - 1e-10) fail(ErrorCode::Spec, "custom: not non-decreasing on grid");
    prev = cur;
  }
  DistortionFn h;
  h.family_ = Family::Custom;
  h.fn_ = std::move(fn);
  h.continuous_ = continuous;
  h.label_ = std::move(label);
  return h;
}

const DistortionFn& DistortionFn::dual_base() const {
  if (family_ != Family::Dual || !base_) fail(ErrorCode::UnsupportedKind, "not a dual wrapper");
  return *base_;
}

double DistortionFn::eval_raw(double t) const {
  switch (family_) {
    case Family::Identity:
      return t;
    case Family::Power:
      return std::pow(t, a_);
    case Family::TverskyKahneman: {
      if (t <= 0.0) return 0.0;
      if (t >= 1.0) return 1.0;
      double num = std::pow(t, a_);
      double den = num + std::pow(1.0 - t, a_);
      return num / std::pow(den, 1.0 / a_);
    }
    case Family::Es:
      return std::min(t / (1.0 - a_), 1.0);
    case Family::Var:
      return t >= 1.0 - a_ ? 1.0 : 0.0;
    case Family::Rvar: {
      double v = (std::min(t, 1.0 - a_) - (1.0 - b_)) / (b_ - a_);
      return std::clamp(v, 0.0, 1.0);
    }
    case Family::PiecewiseQuadratic: {
      auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                                 [](double x, const QuadSegment& s) { return x < s.hi; });
      const QuadSegment& s = it == segments_.end() ? segments_.back() : *it;
      double x = t - s.lo;
      return s.c0 + (s.c1 + s.c2 * x) * x;
    }
    case Family::PiecewiseLinear: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                 [](double x, const Knot& k) { return x < k.t; });
      if (it == knots_.begin()) return knots_.front().v;
      if (it == knots_.end()) return knots_.back().v;
      const Knot& b = *it;
      const Knot& a = *(it - 1);
      double w = (t - a.t) / (b.t - a.t);
      return a.v + w * (b.v - a.v);
    }
    case Family::Custom:
      return fn_(t);
    case Family::Dual:
      return 1.0 - base_->eval_raw(1.0 - t);
  }
  return t;
}

double DistortionFn::operator()(double t) const {
  check_unit(t, "eval_h");
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;
  return eval_raw(t);
}

double DistortionFn::derivative(double t, Side side) const {
  if (side == Side::Right) {
    if (!(t >= 0.0 && t < 1.0)) fail(ErrorCode::Domain, "derivative: right side needs t in [0,1)");
  } else {
    if (!(t > 0.0 && t <= 1.0)) fail(ErrorCode::Domain, "derivative: left side needs t in (0,1]");
  }
  switch (family_) {
    case Family::Identity:
      return 1.0;
    case Family::Power: {
      if (t == 0.0) return a_ < 1.0 ? kInf : (a_ == 1.0 ? 1.0 : 0.0);
      return capped(a_ * std::pow(t, a_ - 1.0));
    }
    case Family::TverskyKahneman: {
      double g = a_;
      if (t == 0.0) return g < 1.0 ? kInf : (g == 1.0 ? 1.0 : 0.0);
      if (t == 1.0) return g < 1.0 ? kInf : (g == 1.0 ? 1.0 : g - 1.0);
      double pa = std::pow(t, g);
      double pb = std::pow(1.0 - t, g);
      double den = pa + pb;
      double bracket = g * den - pa + t * pb / (1.0 - t);
      return capped((pa / t) * std::pow(den, -1.0 / g - 1.0) * bracket);
    }
    case Family::Es: {
      double kink = 1.0 - a_;
      if (t < kink || (t == kink && side == Side::Left)) return 1.0 / (1.0 - a_);
      return 0.0;
    }
    case Family::Var: {
      double jump = 1.0 - a_;
      if (t == jump && side == Side::Left) return kInf;
      return 0.0;
    }
    case Family::Rvar: {
      double lo = 1.0 - b_, hi = 1.0 - a_;
      bool inside;
      if (side == Side::Right) {
        inside = t >= lo && t < hi;
      } else {
        inside = t > lo && t <= hi;
      }
      return inside ? 1.0 / (b_ - a_) : 0.0;
    }
    case Family::PiecewiseQuadratic: {
      // at a boundary the side picks the segment
      const QuadSegment* seg = nullptr;
      for (const auto& s : segments_) {
        if (side == Side::Right ? (t >= s.lo && t < s.hi) : (t > s.lo && t <= s.hi)) {
          seg = &s;
          break;
        }
      }
      if (!seg) seg = side == Side::Right ? &segments_.back() : &segments_.front();
      return seg->c1 + 2.0 * seg->c2 * (t - seg->lo);
    }
    case Family::PiecewiseLinear: {
      for (size_t k = 0; k + 1 < knots_.size(); ++k) {
        bool in = side == Side::Right ? (t >= knots_[k].t && t < knots_[k + 1].t)
                                      : (t > knots_[k].t && t <= knots_[k + 1].t);
        if (in) return (knots_[k + 1].v - knots_[k].v) / (knots_[k + 1].t - knots_[k].t);
      }
      const auto& a = knots_[knots_.size() - 2];
      const auto& b = knots_.back();
      return (b.v - a.v) / (b.t - a.t);
    }
    case Family::Custom: {
      // one-sided quotient with a single Richardson refinement
      double sgn = side == Side::Right ? 1.0 : -1.0;
      double step = 1e-6;
      double room = side == Side::Right ? 1.0 - t : t;
      step = std::min(step, room / 2.0);
      if (step <= 0.0) return 0.0;
      double f0 = (*this)(t);
      double d1 = sgn * ((*this)(t + sgn * step) - f0) / step;
      double d2 = sgn * ((*this)(t + sgn * step / 2.0) - f0) / (step / 2.0);
      return capped(2.0 * d2 - d1);
    }
    case Family::Dual: {
      return base_->derivative(1.0 - t, side == Side::Right ? Side::Left : Side::Right);
    }
  }
  return 0.0;
}

std::vector<double> DistortionFn::breakpoints() const {
  std::vector<double> out;
  switch (family_) {
    case Family::Es:
    case Family::Var:
      out.push_back(1.0 - a_);
      break;
    case Family::Rvar:
      out.push_back(1.0 - b_);
      out.push_back(1.0 - a_);
      break;
    case Family::PiecewiseQuadratic:
      for (size_t k = 1; k < segments_.size(); ++k) out.push_back(segments_[k].lo);
      break;
    case Family::PiecewiseLinear:
      for (size_t k = 1; k + 1 < knots_.size(); ++k) out.push_back(knots_[k].t);
      break;
    case Family::Dual: {
      for (double b : base_->breakpoints()) out.push_back(1.0 - b);
      std::sort(out.begin(), out.end());
      break;
    }
    default:
      break;
  }
  return out;
}

double eval_h(const DistortionFn& h, double t) { return h(t); }

DistortionFn dual(const DistortionFn& h) {
  if (h.family_ == DistortionFn::Family::Identity) return h;
  if (h.family_ == DistortionFn::Family::Dual) return *h.base_;
  DistortionFn d;
  d.family_ = DistortionFn::Family::Dual;
  d.base_ = std::make_shared<DistortionFn>(h);
  d.continuous_ = h.continuous_;
  d.label_ = "dual(" + h.label_ + ")";
  return d;
}

double one_sided_derivative(const DistortionFn& h, double t, Side side) {
  return h.derivative(t, side);
}

namespace {

// Curvature estimate at an interior point: symmetric difference of the
// right derivative over a step of eta.
double curvature_raw(const DistortionFn& h, double t, double eta) {
  double lo = std::max(t - eta, 0.0);
  double hi = std::min(t + eta, 1.0 - 1e-12);
  if (hi <= lo) return 0.0;
  return h.derivative(hi, Side::Right) - h.derivative(lo, Side::Right);
}

int curvature_sign(const DistortionFn& h, double t, double eta, double zero_tol) {
  double g = curvature_raw(h, t, eta);
  if (std::isinf(g)) return g > 0 ? 1 : -1;
  if (std::abs(g) <= zero_tol) return 0;
  return g > 0 ? 1 : -1;
}

// When the curvature changes sign strictly (no plateau), a raw-sign
// bisection with a small step sharpens the transition point well past the
// zero-band resolution of the first pass.
double polish_strict_crossing(const DistortionFn& h, double x, double a, double b, int s1) {
  const double eta = 1e-8, pad = 8e-6, noise = 3e-15;
  double lo = std::max(a, x - pad), hi = std::min(b, x + pad);
  double gl = curvature_raw(h, lo, eta), gr = curvature_raw(h, hi, eta);
  bool strict = (s1 > 0 ? gl > noise : gl < -noise) && (s1 > 0 ? gr < -noise : gr > noise);
  if (!strict) return x;
  for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
    double mid = 0.5 * (lo + hi);
    double g = curvature_raw(h, mid, eta);
    if (s1 > 0 ? g > 0.0 : g < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Right edge of the first-branch curvature region inside the transition
// window. Structural breakpoints win (a kink can stall the bisection one
// derivative-step short); otherwise bisection on curvature sign.
double refine_left_edge(const DistortionFn& h, double a, double b, int s1) {
  std::optional<double> cand;
  for (double bp : h.breakpoints()) {
    if (bp > a - 1e-9 && bp < b + 1e-9 && (!cand || bp < *cand)) cand = bp;
  }
  if (cand) return *cand;
  double eta = 1e-6;
  double zero_tol = 1e-11;
  if (curvature_sign(h, std::max(a, eta), eta, zero_tol) != s1) return a;
  double lo = std::max(a, eta), hi = std::min(b, 1.0 - eta);
  for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
    double mid = 0.5 * (lo + hi);
    if (curvature_sign(h, mid, eta, zero_tol) == s1) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return polish_strict_crossing(h, 0.5 * (lo + hi), a, b, s1);
}

// Left edge of the second-branch curvature region: the rightmost admissible
// inflection point.
double refine_right_edge(const DistortionFn& h, double a, double b, int s2) {
  std::optional<double> cand;
  for (double bp : h.breakpoints()) {
    if (bp > a - 1e-9 && bp < b + 1e-9 && (!cand || bp > *cand)) cand = bp;
  }
  if (cand) return *cand;
  double eta = 1e-6;
  double zero_tol = 1e-11;
  if (curvature_sign(h, std::min(b, 1.0 - eta), eta, zero_tol) != s2) return b;
  double lo = std::max(a, eta), hi = std::min(b, 1.0 - eta);
  for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
    double mid = 0.5 * (lo + hi);
    if (curvature_sign(h, mid, eta, zero_tol) == s2) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return polish_strict_crossing(h, 0.5 * (lo + hi), a, b, -s2);
}

}  // namespace

ShapeReport classify_shape(const DistortionFn& h, double tol) {
  ShapeReport rep;
  rep.d_right_0 = h.derivative(0.0, Side::Right);
  rep.d_left_1 = h.derivative(1.0, Side::Left);
  if (!h.continuous()) {
    rep.shape = Shape::Other;
    return rep;
  }

  const int n = kClassifyCells;
  std::vector<double> v(n + 1);
  for (int k = 0; k <= n; ++k) v[k] = h(static_cast<double>(k) / n);

  std::vector<double> d2(n - 1);
  double amax = 0.0;
  for (int k = 1; k < n; ++k) {
    d2[k - 1] = v[k + 1] - 2.0 * v[k] + v[k - 1];
    amax = std::max(amax, std::abs(d2[k - 1]));
  }
  // noise floor: second differences of an exactly linear h are ~1e-16
  double zero = std::max(tol * amax, 64.0 * std::numeric_limits<double>::epsilon());

  int changes = 0;
  int first_sign = 0, last_sign = 0;
  int last_s1 = -1, first_s2 = -1;
  for (int k = 0; k < n - 1; ++k) {
    int s = std::abs(d2[k]) <= zero ? 0 : (d2[k] > 0 ? 1 : -1);
    if (s == 0) continue;
    if (first_sign == 0) first_sign = s;
    if (s != last_sign && last_sign != 0) {
      ++changes;
      if (changes == 1) first_s2 = k;
    }
    if (s == first_sign && changes == 0) last_s1 = k;
    last_sign = s;
  }

  if (first_sign == 0) {
    rep.shape = Shape::Linear;
    return rep;
  }
  if (changes > 1) {
    fail(ErrorCode::ClassificationAmbiguous,
         "classify_shape: curvature changes sign more than once");
  }

  auto count_zeros = [&](int lo, int hi) {
    int c = 0;
    for (int k = lo; k <= hi; ++k) {
      if (k >= 0 && k < n - 1 && std::abs(d2[k]) <= zero) ++c;
    }
    return c;
  };

  if (changes == 0) {
    rep.shape = first_sign > 0 ? Shape::Convex : Shape::Concave;
    rep.strict = count_zeros(0, n - 2) == 0;
    return rep;
  }

  rep.shape = first_sign < 0 ? Shape::Iss : Shape::Ss;
  // strict: no flat curvature except possibly right at the transition
  int gap_zeros = count_zeros(last_s1 + 1, first_s2 - 1);
  int all_zeros = count_zeros(0, n - 2);
  rep.strict = (all_zeros == gap_zeros) && (first_s2 - last_s1 <= 2);

  // Transition window: d2[k] is centered at (k+1)*grid, and a kink can flip
  // the straddling second difference, so span from the last first-branch
  // index to one past the first second-branch index.
  double grid = 1.0 / n;
  double a = std::max(0.0, (last_s1 + 1) * grid - grid);
  double b = std::min(1.0, (first_s2 + 1) * grid + grid);
  double p = refine_left_edge(h, a, b, first_sign);
  double pr = rep.strict ? p : std::max(p, refine_right_edge(h, a, b, -first_sign));
  rep.inflection_p = p;
  rep.inflection_p_right = pr;
  rep.leftmost_inflection = !rep.strict;
  rep.d_right_p = h.derivative(p, Side::Right);
  rep.d_left_p = h.derivative(p, Side::Left);
  rep.d_right_p_right = h.derivative(pr, Side::Right);
  rep.d_left_p_right = h.derivative(pr, Side::Left);
  return rep;
}

DistortionFn convex_envelope(const DistortionFn& h, int grid_n) {
  if (grid_n < 16) fail(ErrorCode::Domain, "convex_envelope: grid_n must be >= 16");
  const int n = grid_n;
  // lower hull of the graph sampled on the grid (monotone chain)
  std::vector<Knot> hull;
  hull.reserve(64);
  for (int k = 0; k <= n; ++k) {
    double t = static_cast<double>(k) / n;
    double y = h(t);
    while (hull.size() >= 2) {
      const Knot& p1 = hull[hull.size() - 2];
      const Knot& p2 = hull[hull.size() - 1];
      double cross = (p2.t - p1.t) * (y - p1.v) - (t - p1.t) * (p2.v - p1.v);
      if (cross <= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back({t, y});
  }
  hull.front() = {0.0, 0.0};
  hull.back() = {1.0, 1.0};
  return DistortionFn::piecewise_linear(std::move(hull));
}

double k_curve(const DistortionFn& h, double u, double v, double t) {
  check_unit(u, "k_curve");
  check_unit(v, "k_curve");
  double lo = std::max(u + v - 1.0, 0.0);
  double hi = std::min(u, v);
  if (t < lo - 1e-12 || t > hi + 1e-12) {
    fail(ErrorCode::Domain, "k_curve: t outside the Frechet interval");
  }
  t = std::clamp(t, lo, hi);
  // group u+v so the value is exactly symmetric in (u, v)
  double s = std::clamp(1.0 - (u + v) + t, 0.0, 1.0);
  return h(1.0 - t) + h(s);
}

Decomposition decompose_iss(const DistortionFn& h, const ShapeReport& report,
                            std::optional<double> theta_opt) {
  if (report.shape != Shape::Iss || !report.inflection_p) {
    fail(ErrorCode::ConditionViolated, "decompose_iss: distortion is not inverse-S-shaped");
  }
  // the kink condition is widest at the rightmost admissible inflection
  double p = report.inflection_p_right.value_or(*report.inflection_p);
  double d0 = report.d_right_0;
  double dp = report.inflection_p_right ? report.d_right_p_right : report.d_right_p;
  if (std::isinf(d0) || dp < d0 - 1e-12) {
    fail(ErrorCode::ConditionViolated,
         "decompose_iss: requires derivative at the inflection >= derivative at 0");
  }
  double theta = theta_opt ? *theta_opt : 0.5 * (d0 + dp);
  if (theta < d0 - 1e-12 || theta > dp + 1e-12) {
    fail(ErrorCode::InvalidTheta, "decompose_iss: theta outside [h'(0+), h'(p+)]");
  }

  Decomposition dec;
  dec.theta = theta;
  dec.p = p;
  double hp = h(p);
  dec.theta1 = theta * p - hp;
  dec.theta2 = 1.0 - hp - theta * (1.0 - p);

  const double weight_floor = 1e-12;
  if (dec.theta1 > weight_floor) {
    DistortionFn base = h;
    double th = theta, pp = p, t1 = dec.theta1;
    dec.h1 = DistortionFn::custom(
        [base, th, pp, t1](double s) { return (th * pp * s - base(pp * s)) / t1; }, true,
        "iss-upper-branch");
  } else {
    dec.theta1 = 0.0;
    dec.h1 = DistortionFn::identity();
  }
  if (dec.theta2 > weight_floor) {
    DistortionFn base = h;
    double th = theta, pp = p, t2 = dec.theta2, hpv = hp;
    dec.h2 = DistortionFn::custom(
        [base, th, pp, t2, hpv](double s) {
          return (base(pp + (1.0 - pp) * s) - hpv - th * (1.0 - pp) * s) / t2;
        },
        true, "iss-lower-branch");
  } else {
    dec.theta2 = 0.0;
    dec.h2 = DistortionFn::identity();
  }
  return dec;
}

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::Convex: return "convex";
    case Shape::Concave: return "concave";
    case Shape::Iss: return "iss";
    case Shape::Ss: return "ss";
    case Shape::Linear: return "linear";
    case Shape::Other: return "other";
  }
  return "other";
}

}  // namespace dotr
