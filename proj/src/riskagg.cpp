#include "dotr/riskagg.hpp"

#include "dotr/transport.hpp"

namespace dotr {

namespace {

double price(const DistortionFn& h, const Coupling& c, const DiscreteDist& mx,
             const DiscreteDist& my) {
  TransportProblem prob{mx, my, CostSpec::linear_sum(), h};
  return evaluate(prob, joint_from_coupling(c, mx, my));
}

}  // namespace

AggregationResult aggregate(const MeasureSpec& measure, const DiscreteDist& marg_x,
                            const DiscreteDist& marg_y, AggDirection direction) {
  AggregationResult out;
  out.direction = direction;
  const bool worst = direction == AggDirection::Worst;

  switch (measure.kind) {
    case MeasureSpec::Kind::Es: {
      if (!(measure.p > 0.0 && measure.p < 1.0)) {
        fail(ErrorCode::Domain, "aggregate: es level p must be in (0,1)");
      }
      out.coupling = worst ? Coupling::comonotone() : Coupling::counter_monotone();
      out.rule = worst ? "es-worst: comonotone (additive for comonotone risks; the whole "
                         "ordinal class at 1-p attains it, not unique)"
                       : "es-best: counter-monotone hedge";
      out.value = price(DistortionFn::es(measure.p), out.coupling, marg_x, marg_y);
      return out;
    }
    case MeasureSpec::Kind::Var: {
      if (!(measure.p > 0.0 && measure.p < 1.0)) {
        fail(ErrorCode::Domain, "aggregate: var level q must be in (0,1)");
      }
      if (!worst) {
        fail(ErrorCode::NoApplicableRule,
             "aggregate: the best-case VaR construction is not provided");
      }
      out.coupling = Coupling::plus_minus(1.0 - measure.p);
      out.rule = "var-worst: comonotone-then-counter ordinal sum at 1-q (not unique)";
      out.value = price(DistortionFn::var(measure.p), out.coupling, marg_x, marg_y);
      return out;
    }
    case MeasureSpec::Kind::Rvar: {
      if (!(measure.p > 0.0 && measure.p < measure.q && measure.q < 1.0)) {
        fail(ErrorCode::Domain, "aggregate: rvar levels must satisfy 0 < p < q < 1");
      }
      // The rvar distortion is S-shaped with every inflection in [1-q, 1-p].
      // The maximal coupling is the ordinal sum at the upper edge 1-p, the
      // minimal one its mirror at the lower edge 1-q; neither is unique
      // because the distortion is flat outside (1-q, 1-p).
      out.coupling = worst ? Coupling::plus_minus(1.0 - measure.p)
                           : Coupling::minus_plus(1.0 - measure.q);
      out.rule = worst ? "rvar-worst: comonotone-then-counter ordinal sum at 1-p (not unique)"
                       : "rvar-best: counter-then-comonotone ordinal sum at 1-q (not unique)";
      out.value =
          price(DistortionFn::rvar(measure.p, measure.q), out.coupling, marg_x, marg_y);
      return out;
    }
    case MeasureSpec::Kind::Generic: {
      TransportProblem prob{marg_x, marg_y, CostSpec::linear_sum(), measure.h};
      // worst-case risk = maximal distorted expectation
      OptimalityCertificate cert =
          select_universal(prob, worst ? Direction::Max : Direction::Min);
      if (cert.rule == OptimalityRule::None || !cert.coupling) {
        fail(ErrorCode::NoApplicableRule,
             "aggregate: no universal-optimality rule covers this distortion");
      }
      out.coupling = *cert.coupling;
      out.rule = std::string("generic: ") + rule_name(cert.rule) +
                 (cert.unique ? " (unique)" : " (not unique)");
      out.value = price(measure.h, out.coupling, marg_x, marg_y);
      return out;
    }
  }
  fail(ErrorCode::Spec, "aggregate: unknown measure kind");
}

}  // namespace dotr
