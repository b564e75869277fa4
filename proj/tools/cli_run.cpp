#include "cli_run.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "dotr/bounds.hpp"
#include "dotr/coupling.hpp"
#include "dotr/discrete_dist.hpp"
#include "dotr/distortion.hpp"
#include "dotr/json_io.hpp"
#include "dotr/riskagg.hpp"
#include "dotr/transport.hpp"

namespace dotr {

namespace {

struct Options {
  std::string problem;
  std::string distortion;
  std::string marginal_x;
  std::string marginal_y;
  std::string coupling;
  std::string cost;
  std::string dual_pair;
  std::string out;
  std::string direction = "min";
  int n = 1000;
  int resolution = 100;
  int grid_n = 4096;
  int points = 201;
  long seed = 0;
  double class_p = -1.0;
  double u = -1.0;
  double v = -1.0;
};

int spec_exit(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Spec:
    case ErrorCode::EmptyInput:
    case ErrorCode::UnsupportedKind:
      return 1;
    default:
      return 2;
  }
}

void emit(const std::string& text, const Options& opt, std::ostream& out) {
  if (!opt.out.empty()) {
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) fail(ErrorCode::Spec, "cannot open output file '" + opt.out + "'");
    f << text;
  } else {
    out << text;
  }
}

Json shape_report_json(const ShapeReport& rep) {
  Json j;
  j["shape"] = shape_name(rep.shape);
  j["strict"] = rep.strict;
  if (rep.inflection_p) {
    j["inflection_p"] = json_number(*rep.inflection_p);
    if (!rep.strict && rep.inflection_p_right &&
        *rep.inflection_p_right - *rep.inflection_p > 1e-12) {
      j["inflection_p_right"] = json_number(*rep.inflection_p_right);
    }
    j["leftmost_inflection"] = rep.leftmost_inflection;
    j["d_right_p"] = json_number(rep.d_right_p);
    j["d_left_p"] = json_number(rep.d_left_p);
  }
  j["d_right_0"] = json_number(rep.d_right_0);
  j["d_left_1"] = json_number(rep.d_left_1);
  return j;
}

Json coupling_json_rounded(const Coupling& c) {
  // coupling parameters are part of the result surface; round like values
  Json j = coupling_to_json(c);
  if (j.contains("p")) j["p"] = json_number(j["p"].get<double>());
  return j;
}

Direction parse_direction(const std::string& s) {
  if (s == "min" || s == "best") return Direction::Min;
  if (s == "max" || s == "worst") return Direction::Max;
  fail(ErrorCode::Spec, "direction must be one of min|max|worst|best");
}

DistortionFn load_distortion(const Options& opt) {
  if (opt.distortion.empty()) fail(ErrorCode::Spec, "missing --distortion");
  return distortion_from_json(load_json_file(opt.distortion));
}

DiscreteDist load_marg(const std::string& path, const Options& opt, const char* flag) {
  if (path.empty()) fail(ErrorCode::Spec, std::string("missing --") + flag);
  return load_marginal(path, opt.n);
}

// Assembles the problem from either a bundled --problem file or the
// per-component flags.
ParsedProblem load_problem(const Options& opt) {
  if (!opt.problem.empty()) return problem_from_json(load_json_file(opt.problem), opt.n);
  auto mx = load_marg(opt.marginal_x, opt, "marginal-x");
  auto my = load_marg(opt.marginal_y, opt, "marginal-y");
  CostSpec cost = CostSpec::linear_sum();
  std::optional<std::array<double, 3>> affine{{0.0, 1.0, 1.0}};
  if (!opt.cost.empty()) {
    auto parsed = cost_from_json_extended(load_json_file(opt.cost), mx, my);
    cost = parsed.spec;
    affine = parsed.affine;
  }
  ParsedProblem out{TransportProblem{std::move(mx), std::move(my), std::move(cost),
                                     load_distortion(opt)},
                    std::nullopt, affine};
  if (!opt.coupling.empty()) out.coupling = coupling_from_json(load_json_file(opt.coupling));
  return out;
}

int run_classify(const Options& opt, std::ostream& out) {
  auto rep = classify_shape(load_distortion(opt));
  emit(shape_report_json(rep).dump() + "\n", opt, out);
  return 0;
}

int run_eval(const Options& opt, std::ostream& out) {
  auto parsed = load_problem(opt);
  if (!parsed.coupling) fail(ErrorCode::Spec, "missing --coupling");
  double value = evaluate(parsed.problem, joint_from_coupling(*parsed.coupling,
                                                             parsed.problem.marg_x,
                                                             parsed.problem.marg_y));
  Json j;
  j["value"] = json_number(value);
  emit(j.dump() + "\n", opt, out);
  return 0;
}

int run_optimal(const Options& opt, std::ostream& out) {
  auto parsed = load_problem(opt);
  const TransportProblem& prob = parsed.problem;
  const DiscreteDist& mx = prob.marg_x;
  const DiscreteDist& my = prob.marg_y;
  auto cert = select_universal(prob, parse_direction(opt.direction));
  Json j;
  j["direction"] = cert.direction == Direction::Min ? "min" : "max";
  j["rule"] = rule_name(cert.rule);
  if (cert.coupling) {
    j["unique"] = cert.unique;
    j["coupling"] = coupling_json_rounded(*cert.coupling);
    j["value"] = json_number(evaluate(prob, joint_from_coupling(*cert.coupling, mx, my)));
  }
  emit(j.dump() + "\n", opt, out);
  return 0;
}

int run_oracle(const Options& opt, std::ostream& out) {
  auto parsed = load_problem(opt);
  const TransportProblem& prob = parsed.problem;
  std::optional<double> class_p;
  if (opt.class_p >= 0.0) class_p = opt.class_p;
  auto res = oracle(prob, parse_direction(opt.direction), opt.resolution, class_p);
  Json j;
  j["value"] = json_number(res.value);
  j["slack"] = json_number(res.slack);
  Json plan = Json::array();
  for (int i = 0; i < res.plan.mass().rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < res.plan.mass().cols(); ++k) {
      row.push_back(json_number(res.plan.mass()(i, k)));
    }
    plan.push_back(row);
  }
  j["plan"] = plan;
  emit(j.dump() + "\n", opt, out);
  return 0;
}

int run_bounds(const Options& opt, std::ostream& out) {
  auto parsed = load_problem(opt);
  const DistortionFn& h = parsed.problem.h;
  const DiscreteDist& mx = parsed.problem.marg_x;
  const DiscreteDist& my = parsed.problem.marg_y;
  Json j;
  j["wxz"] = json_number(wxz_lower_bound(h, mx, my, opt.grid_n));
  auto rep = classify_shape(h);
  if (parsed.affine && (rep.shape == Shape::Convex || rep.shape == Shape::Linear)) {
    auto d = affine_strong_duality(h, (*parsed.affine)[0], (*parsed.affine)[1],
                                   (*parsed.affine)[2], mx, my);
    Json a;
    a["primal"] = json_number(d.primal);
    a["dual"] = json_number(d.dual);
    a["gap"] = json_number(d.gap);
    j["affine"] = a;
  }
  if (!opt.dual_pair.empty()) {
    auto pair = dual_pair_from_json(load_json_file(opt.dual_pair));
    j["weak_dual"] = json_number(weak_dual_value(h, pair, mx, my, parsed.problem.cost));
  }
  emit(j.dump() + "\n", opt, out);
  return 0;
}

int run_riskagg(const Options& opt, std::ostream& out) {
  auto h = load_distortion(opt);
  auto mx = load_marg(opt.marginal_x, opt, "marginal-x");
  auto my = load_marg(opt.marginal_y, opt, "marginal-y");
  AggDirection dir = parse_direction(opt.direction) == Direction::Max ? AggDirection::Worst
                                                                      : AggDirection::Best;
  MeasureSpec measure = MeasureSpec::generic(h);
  Json j;
  switch (h.family()) {
    case DistortionFn::Family::Es:
      measure = MeasureSpec::es(h.param_a());
      j["measure"] = "es";
      j["p"] = json_number(h.param_a());
      break;
    case DistortionFn::Family::Var:
      measure = MeasureSpec::var(h.param_a());
      j["measure"] = "var";
      j["p"] = json_number(h.param_a());
      break;
    case DistortionFn::Family::Rvar:
      measure = MeasureSpec::rvar(h.param_a(), h.param_b());
      j["measure"] = "rvar";
      j["p"] = json_number(h.param_a());
      j["q"] = json_number(h.param_b());
      break;
    default:
      j["measure"] = "generic";
      break;
  }
  auto res = aggregate(measure, mx, my, dir);
  j["direction"] = dir == AggDirection::Worst ? "worst" : "best";
  j["value"] = json_number(res.value);
  j["rule"] = res.rule;
  j["coupling"] = coupling_json_rounded(res.coupling);
  emit(j.dump() + "\n", opt, out);
  return 0;
}

int run_curve(const Options& opt, std::ostream& out) {
  auto h = load_distortion(opt);
  std::ostringstream csv;
  if (opt.u >= 0.0 || opt.v >= 0.0) {
    if (opt.u < 0.0 || opt.v < 0.0) fail(ErrorCode::Spec, "curve needs both --u and --v");
    double lo = std::max(opt.u + opt.v - 1.0, 0.0);
    double hi = std::min(opt.u, opt.v);
    csv << "t,k\n";
    for (int k = 0; k < opt.points; ++k) {
      double t = opt.points == 1 ? lo : lo + (hi - lo) * k / (opt.points - 1);
      csv << fmt12(t) << "," << fmt12(k_curve(h, opt.u, opt.v, t)) << "\n";
    }
  } else {
    auto envelope = convex_envelope(h, opt.grid_n);
    csv << "t,h,h_star\n";
    for (int k = 0; k < opt.points; ++k) {
      double t = opt.points == 1 ? 0.0 : static_cast<double>(k) / (opt.points - 1);
      csv << fmt12(t) << "," << fmt12(h(t)) << "," << fmt12(envelope(t)) << "\n";
    }
  }
  emit(csv.str(), opt, out);
  return 0;
}

}  // namespace

int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"distorted optimal transport on the real line"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&opt](CLI::App* cmd) {
    cmd->add_option("--problem", opt.problem, "bundled problem spec JSON file");
    cmd->add_option("--distortion", opt.distortion, "distortion spec JSON file");
    cmd->add_option("--marginal-x", opt.marginal_x, "first marginal (csv or JSON)");
    cmd->add_option("--marginal-y", opt.marginal_y, "second marginal (csv or JSON)");
    cmd->add_option("--coupling", opt.coupling, "coupling spec JSON file");
    cmd->add_option("--cost", opt.cost, "cost spec JSON file");
    cmd->add_option("--dual-pair", opt.dual_pair, "dual pair JSON file");
    cmd->add_option("--n", opt.n, "discretization size for quantile marginals");
    cmd->add_option("--resolution", opt.resolution, "oracle lattice resolution");
    cmd->add_option("--grid-n", opt.grid_n, "grid size for the convex envelope");
    cmd->add_option("--points", opt.points, "number of curve samples");
    cmd->add_option("--direction", opt.direction, "min|max (or best|worst)");
    cmd->add_option("--seed", opt.seed, "seed for randomized runs");
    cmd->add_option("--class-p", opt.class_p, "restrict the oracle to the ordinal class at p");
    cmd->add_option("--u", opt.u, "first marginal level for the k-curve");
    cmd->add_option("--v", opt.v, "second marginal level for the k-curve");
    cmd->add_option("--out", opt.out, "output path (default: stdout)");
  };

  auto* classify = app.add_subcommand("classify", "shape report for a distortion");
  auto* eval = app.add_subcommand("eval", "distorted expectation of a coupled cost");
  auto* optimal = app.add_subcommand("optimal", "theorem-selected universally optimal coupling");
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force search on a small instance");
  auto* bounds = app.add_subcommand("bounds", "duality and envelope bounds");
  auto* riskagg = app.add_subcommand("riskagg", "robust two-risk aggregation");
  auto* curve = app.add_subcommand("curve", "CSV curve data for plotting");
  for (auto* cmd : {classify, eval, optimal, oracle_cmd, bounds, riskagg, curve}) {
    add_common(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (classify->parsed()) return run_classify(opt, out);
    if (eval->parsed()) return run_eval(opt, out);
    if (optimal->parsed()) return run_optimal(opt, out);
    if (oracle_cmd->parsed()) return run_oracle(opt, out);
    if (bounds->parsed()) return run_bounds(opt, out);
    if (riskagg->parsed()) return run_riskagg(opt, out);
    if (curve->parsed()) return run_curve(opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return spec_exit(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no command given\n";
  return 1;
}

}  // namespace dotr
