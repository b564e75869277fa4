#include "dotr/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dotr {

std::string fmt12(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) fail(ErrorCode::Domain, "fmt12: value is NaN");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  std::string s = fmt12(v);
  double out = v;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

Json json_number(double v) {
  if (std::isinf(v)) return Json(v > 0 ? "inf" : "-inf");
  return Json(round12(v));
}

namespace {

double require_number(const Json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number()) {
    fail(ErrorCode::Spec, "missing or non-numeric field '" + field + "'");
  }
  return j[field].get<double>();
}

std::string require_string(const Json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_string()) {
    fail(ErrorCode::Spec, "missing or non-string field '" + field + "'");
  }
  return j[field].get<std::string>();
}

const Json& require_object(const Json& j, const std::string& field) {
  if (!j.contains(field)) fail(ErrorCode::Spec, "missing field '" + field + "'");
  return j[field];
}

Eigen::VectorXd vector_from(const Json& j, const std::string& field) {
  const Json& arr = require_object(j, field);
  if (!arr.is_array() || arr.empty()) {
    fail(ErrorCode::Spec, "field '" + field + "' must be a non-empty array");
  }
  Eigen::VectorXd v(arr.size());
  for (size_t k = 0; k < arr.size(); ++k) {
    if (!arr[k].is_number()) fail(ErrorCode::Spec, "field '" + field + "' has a non-number");
    v[k] = arr[k].get<double>();
  }
  return v;
}

Json vector_to(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

DistortionFn distortion_from_json(const Json& j) {
  std::string family = require_string(j, "family");
  Json params = j.contains("params") ? j["params"] : Json::object();
  if (family == "identity") return DistortionFn::identity();
  if (family == "power") return DistortionFn::power(require_number(params, "gamma"));
  if (family == "tk") return DistortionFn::tversky_kahneman(require_number(params, "gamma"));
  if (family == "es") return DistortionFn::es(require_number(params, "p"));
  if (family == "var") return DistortionFn::var(require_number(params, "p"));
  if (family == "rvar") {
    return DistortionFn::rvar(require_number(params, "p"), require_number(params, "q"));
  }
  if (family == "pwquad") {
    const Json& segs = require_object(params, "segments");
    if (!segs.is_array() || segs.empty()) {
      fail(ErrorCode::Spec, "pwquad 'segments' must be a non-empty array");
    }
    std::vector<QuadSegment> out;
    for (const Json& s : segs) {
      out.push_back({require_number(s, "lo"), require_number(s, "hi"), require_number(s, "c0"),
                     require_number(s, "c1"), require_number(s, "c2")});
    }
    return DistortionFn::piecewise_quadratic(std::move(out));
  }
  if (family == "pwlin") {
    const Json& knots = require_object(params, "knots");
    if (!knots.is_array() || knots.size() < 2) {
      fail(ErrorCode::Spec, "pwlin 'knots' must be an array of at least two [t,v] pairs");
    }
    std::vector<Knot> out;
    for (const Json& k : knots) {
      if (!k.is_array() || k.size() != 2) fail(ErrorCode::Spec, "pwlin knot must be [t,v]");
      out.push_back({k[0].get<double>(), k[1].get<double>()});
    }
    return DistortionFn::piecewise_linear(std::move(out));
  }
  if (family == "dual") {
    return dual(distortion_from_json(require_object(params, "base")));
  }
  fail(ErrorCode::Spec, "unknown distortion family '" + family + "'");
}

Json distortion_to_json(const DistortionFn& h) {
  Json j;
  Json params = Json::object();
  switch (h.family()) {
    case DistortionFn::Family::Identity:
      j["family"] = "identity";
      break;
    case DistortionFn::Family::Power:
      j["family"] = "power";
      params["gamma"] = h.param_a();
      break;
    case DistortionFn::Family::TverskyKahneman:
      j["family"] = "tk";
      params["gamma"] = h.param_a();
      break;
    case DistortionFn::Family::Es:
      j["family"] = "es";
      params["p"] = h.param_a();
      break;
    case DistortionFn::Family::Var:
      j["family"] = "var";
      params["p"] = h.param_a();
      break;
    case DistortionFn::Family::Rvar:
      j["family"] = "rvar";
      params["p"] = h.param_a();
      params["q"] = h.param_b();
      break;
    case DistortionFn::Family::PiecewiseQuadratic: {
      j["family"] = "pwquad";
      Json segs = Json::array();
      for (const auto& s : h.segments()) {
        Json e;
        e["lo"] = s.lo;
        e["hi"] = s.hi;
        e["c0"] = s.c0;
        e["c1"] = s.c1;
        e["c2"] = s.c2;
        segs.push_back(e);
      }
      params["segments"] = segs;
      break;
    }
    case DistortionFn::Family::PiecewiseLinear: {
      j["family"] = "pwlin";
      Json knots = Json::array();
      for (const auto& k : h.knots()) knots.push_back(Json::array({k.t, k.v}));
      params["knots"] = knots;
      break;
    }
    case DistortionFn::Family::Dual:
      j["family"] = "dual";
      params["base"] = distortion_to_json(h.dual_base());
      break;
    case DistortionFn::Family::Custom:
      fail(ErrorCode::UnsupportedKind, "cannot serialize a custom distortion");
  }
  j["params"] = params;
  return j;
}

Coupling coupling_from_json(const Json& j) {
  std::string kind = require_string(j, "kind");
  if (kind == "comonotone") return Coupling::comonotone();
  if (kind == "counter") return Coupling::counter_monotone();
  if (kind == "pm") return Coupling::plus_minus(require_number(j, "p"));
  if (kind == "mp") return Coupling::minus_plus(require_number(j, "p"));
  if (kind == "segments") {
    const Json& segs = require_object(j, "segments");
    if (!segs.is_array() || segs.empty()) {
      fail(ErrorCode::Spec, "coupling 'segments' must be a non-empty array");
    }
    std::vector<SegmentPiece> pieces;
    for (const Json& s : segs) {
      const Json& u = require_object(s, "u");
      const Json& v = require_object(s, "v");
      if (!u.is_array() || u.size() != 2 || !v.is_array() || v.size() != 2) {
        fail(ErrorCode::Spec, "segment 'u'/'v' must be [lo,hi] pairs");
      }
      std::string orient = require_string(s, "orient");
      if (orient != "co" && orient != "counter") {
        fail(ErrorCode::Spec, "segment 'orient' must be 'co' or 'counter'");
      }
      pieces.push_back({u[0].get<double>(), u[1].get<double>(), v[0].get<double>(),
                        v[1].get<double>(),
                        orient == "co" ? Orientation::Co : Orientation::Counter,
                        require_number(s, "w")});
    }
    return Coupling::segments(std::move(pieces));
  }
  if (kind == "matrix") {
    const Json& m = require_object(j, "matrix");
    DiscreteDist row = dist_from_json(require_object(m, "row"));
    DiscreteDist col = dist_from_json(require_object(m, "col"));
    const Json& mass = require_object(m, "mass");
    if (!mass.is_array() || mass.size() != static_cast<size_t>(row.size())) {
      fail(ErrorCode::Spec, "matrix 'mass' must have one row per row-marginal atom");
    }
    Eigen::MatrixXd mat(row.size(), col.size());
    for (int i = 0; i < row.size(); ++i) {
      const Json& r = mass[i];
      if (!r.is_array() || r.size() != static_cast<size_t>(col.size())) {
        fail(ErrorCode::Spec, "matrix 'mass' row has the wrong length");
      }
      for (int jj = 0; jj < col.size(); ++jj) mat(i, jj) = r[jj].get<double>();
    }
    return Coupling::matrix(JointDiscrete(std::move(row), std::move(col), std::move(mat)));
  }
  fail(ErrorCode::Spec, "unknown coupling kind '" + kind + "'");
}

Json coupling_to_json(const Coupling& c) {
  Json j;
  switch (c.kind()) {
    case Coupling::Kind::Comonotone:
      j["kind"] = "comonotone";
      break;
    case Coupling::Kind::CounterMonotone:
      j["kind"] = "counter";
      break;
    case Coupling::Kind::PlusMinus:
      j["kind"] = "pm";
      j["p"] = c.p();
      break;
    case Coupling::Kind::MinusPlus:
      j["kind"] = "mp";
      j["p"] = c.p();
      break;
    case Coupling::Kind::Segments: {
      j["kind"] = "segments";
      Json segs = Json::array();
      for (const auto& s : c.pieces()) {
        Json e;
        e["u"] = Json::array({s.u_lo, s.u_hi});
        e["v"] = Json::array({s.v_lo, s.v_hi});
        e["orient"] = s.orient == Orientation::Co ? "co" : "counter";
        e["w"] = s.weight;
        segs.push_back(e);
      }
      j["segments"] = segs;
      break;
    }
    case Coupling::Kind::Matrix: {
      j["kind"] = "matrix";
      Json m;
      m["row"] = dist_to_json(c.joint().row_marginal());
      m["col"] = dist_to_json(c.joint().col_marginal());
      Json mass = Json::array();
      for (int i = 0; i < c.joint().mass().rows(); ++i) {
        Json r = Json::array();
        for (int jj = 0; jj < c.joint().mass().cols(); ++jj) {
          r.push_back(c.joint().mass()(i, jj));
        }
        mass.push_back(r);
      }
      m["mass"] = mass;
      j["matrix"] = m;
      break;
    }
  }
  return j;
}

DiscreteDist dist_from_json(const Json& j) {
  return DiscreteDist(vector_from(j, "atoms"), vector_from(j, "masses"));
}

Json dist_to_json(const DiscreteDist& d) {
  Json j;
  j["atoms"] = vector_to(d.atoms());
  j["masses"] = vector_to(d.masses());
  return j;
}

CostSpec cost_from_json(const Json& j) {
  std::string form = require_string(j, "form");
  if (form == "linear_sum") return CostSpec::linear_sum();
  if (form == "separable") return CostSpec::separable(vector_from(j, "f"), vector_from(j, "g"));
  if (form == "power") return CostSpec::power_distance(require_number(j, "p"));
  if (form == "grid") {
    const Json& values = require_object(j, "values");
    if (!values.is_array() || values.empty() || !values[0].is_array()) {
      fail(ErrorCode::Spec, "grid cost 'values' must be a matrix");
    }
    Eigen::MatrixXd m(values.size(), values[0].size());
    for (size_t i = 0; i < values.size(); ++i) {
      if (values[i].size() != values[0].size()) {
        fail(ErrorCode::Spec, "grid cost 'values' rows differ in length");
      }
      for (size_t k = 0; k < values[i].size(); ++k) m(i, k) = values[i][k].get<double>();
    }
    return CostSpec::grid(std::move(m));
  }
  fail(ErrorCode::Spec, "unknown cost form '" + form + "'");
}

ParsedCost cost_from_json_extended(const Json& j, const DiscreteDist& marg_x,
                                   const DiscreteDist& marg_y) {
  ParsedCost out;
  std::string form = require_string(j, "form");
  if (form == "affine") {
    double alpha = require_number(j, "alpha");
    double beta = require_number(j, "beta");
    double gamma = require_number(j, "gamma");
    out.affine = {alpha, beta, gamma};
    Eigen::VectorXd f = alpha + (beta * marg_x.atoms()).array();
    Eigen::VectorXd g = (gamma * marg_y.atoms()).array();
    out.spec = CostSpec::separable(std::move(f), std::move(g));
    return out;
  }
  out.spec = cost_from_json(j);
  if (form == "linear_sum") out.affine = {{0.0, 1.0, 1.0}};
  return out;
}

DualPair dual_pair_from_json(const Json& j) {
  return DualPair{vector_from(j, "phi"), vector_from(j, "psi")};
}

namespace {

DiscreteDist marginal_from_json(const Json& j, int n) {
  if (j.contains("quantile")) {
    std::string kind = require_string(j, "quantile");
    if (kind == "uniform") {
      double lo = j.contains("lo") ? require_number(j, "lo") : 0.0;
      double hi = j.contains("hi") ? require_number(j, "hi") : 1.0;
      return discretize(ContinuousMarginal::uniform(lo, hi), n);
    }
    fail(ErrorCode::Spec, "unknown quantile family '" + kind + "'");
  }
  return dist_from_json(j);
}

}  // namespace

ParsedProblem problem_from_json(const Json& j, int n) {
  DistortionFn h = distortion_from_json(require_object(j, "distortion"));
  DiscreteDist mx = marginal_from_json(require_object(j, "marginal_x"), n);
  DiscreteDist my = marginal_from_json(require_object(j, "marginal_y"), n);
  CostSpec cost = CostSpec::linear_sum();
  std::optional<std::array<double, 3>> affine{{0.0, 1.0, 1.0}};
  if (j.contains("cost")) {
    auto parsed = cost_from_json_extended(j["cost"], mx, my);
    cost = parsed.spec;
    affine = parsed.affine;
  }
  ParsedProblem out{TransportProblem{std::move(mx), std::move(my), std::move(cost), std::move(h)},
                    std::nullopt, affine};
  if (j.contains("coupling")) out.coupling = coupling_from_json(j["coupling"]);
  return out;
}

std::vector<double> read_csv_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Spec, "cannot open file '" + path + "'");
  std::vector<double> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    size_t start = line.find_first_not_of(' ');
    if (start == std::string::npos) continue;
    std::string tok = line.substr(start);
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      if (lineno == 1) continue;  // header row
      fail(ErrorCode::Spec,
           "file '" + path + "' line " + std::to_string(lineno) + ": not a number");
    }
    out.push_back(v);
  }
  if (out.empty()) fail(ErrorCode::EmptyInput, "file '" + path + "' holds no numeric values");
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Spec, "cannot open file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorCode::Spec, "file '" + path + "': " + e.what());
  }
  return j;
}

DiscreteDist load_marginal(const std::string& path, int n) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    return DiscreteDist::from_samples(read_csv_values(path));
  }
  return marginal_from_json(load_json_file(path), n);
}

}  // namespace dotr
