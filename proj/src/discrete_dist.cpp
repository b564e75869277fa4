#include "dotr/discrete_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace dotr {

DiscreteDist::DiscreteDist(Eigen::VectorXd atoms, Eigen::VectorXd masses)
    : atoms_(std::move(atoms)), masses_(std::move(masses)) {
  if (atoms_.size() == 0) fail(ErrorCode::EmptyInput, "distribution: no atoms");
  if (atoms_.size() != masses_.size()) {
    fail(ErrorCode::Spec, "distribution: atoms and masses differ in length");
  }
  for (int i = 0; i < atoms_.size(); ++i) {
    if (!std::isfinite(atoms_[i])) fail(ErrorCode::Domain, "distribution: non-finite atom");
    if (i > 0 && !(atoms_[i] > atoms_[i - 1])) {
      fail(ErrorCode::Spec, "distribution: atoms must be strictly increasing");
    }
    if (!(masses_[i] > 0.0)) fail(ErrorCode::Spec, "distribution: masses must be positive");
  }
  if (std::abs(masses_.sum() - 1.0) > 1e-12) {
    fail(ErrorCode::Spec, "distribution: masses must sum to 1");
  }
}

DiscreteDist DiscreteDist::from_samples(const std::vector<double>& values) {
  if (values.empty()) fail(ErrorCode::EmptyInput, "from_samples: empty value list");
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> atoms;
  std::vector<double> counts;
  for (double v : sorted) {
    if (!atoms.empty() && v == atoms.back()) {
      counts.back() += 1.0;
    } else {
      atoms.push_back(v);
      counts.push_back(1.0);
    }
  }
  Eigen::VectorXd a = Eigen::Map<Eigen::VectorXd>(atoms.data(), atoms.size());
  Eigen::VectorXd m = Eigen::Map<Eigen::VectorXd>(counts.data(), counts.size());
  m /= static_cast<double>(values.size());
  return DiscreteDist(std::move(a), std::move(m));
}

DiscreteDist DiscreteDist::from_pairs(std::vector<std::pair<double, double>> pairs,
                                      double merge_tol) {
  if (pairs.empty()) fail(ErrorCode::EmptyInput, "from_pairs: empty support");
  std::sort(pairs.begin(), pairs.end());
  std::vector<double> atoms;
  std::vector<double> masses;
  for (const auto& [v, w] : pairs) {
    if (w <= 0.0) continue;
    if (!atoms.empty() && v - atoms.back() <= merge_tol) {
      masses.back() += w;
    } else {
      atoms.push_back(v);
      masses.push_back(w);
    }
  }
  if (atoms.empty()) fail(ErrorCode::EmptyInput, "from_pairs: no positive mass");
  Eigen::VectorXd a = Eigen::Map<Eigen::VectorXd>(atoms.data(), atoms.size());
  Eigen::VectorXd m = Eigen::Map<Eigen::VectorXd>(masses.data(), masses.size());
  double total = m.sum();
  if (std::abs(total - 1.0) > 1e-9) fail(ErrorCode::Spec, "from_pairs: masses do not sum to 1");
  m /= total;
  return DiscreteDist(std::move(a), std::move(m));
}

double quantile(const DiscreteDist& d, double p, Side side) {
  const double tol = 1e-12;
  if (side == Side::Left) {
    if (!(p > 0.0 && p <= 1.0)) fail(ErrorCode::Domain, "quantile: left side needs p in (0,1]");
    double cum = 0.0;
    for (int i = 0; i < d.size(); ++i) {
      cum += d.masses()[i];
      if (cum >= p - tol) return d.atoms()[i];
    }
    return d.atoms()[d.size() - 1];
  }
  if (!(p >= 0.0 && p < 1.0)) fail(ErrorCode::Domain, "quantile: right side needs p in [0,1)");
  double cum = 0.0;
  for (int i = 0; i < d.size(); ++i) {
    cum += d.masses()[i];
    if (cum > p + tol) return d.atoms()[i];
  }
  return d.atoms()[d.size() - 1];
}

double distorted_expectation(const DistortionFn& h, const DiscreteDist& d) {
  const int n = d.size();
  // survival sums accumulated from the top for accuracy in the tail
  Eigen::VectorXd surv(n);
  double s = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    surv[i] = s;  // P(Z > atom_i)
    s += d.masses()[i];
  }
  double value = d.atoms()[0];
  for (int i = 0; i + 1 < n; ++i) {
    value += (d.atoms()[i + 1] - d.atoms()[i]) * h(std::clamp(surv[i], 0.0, 1.0));
  }
  return value;
}

namespace {

// integral of the quantile function over the level interval (lo, hi]
double quantile_integral(const DiscreteDist& d, double lo, double hi) {
  double cum = 0.0;
  double total = 0.0;
  for (int i = 0; i < d.size(); ++i) {
    double f0 = cum;
    cum += d.masses()[i];
    double f1 = i + 1 == d.size() ? 1.0 : cum;
    double overlap = std::min(f1, hi) - std::max(f0, lo);
    if (overlap > 0.0) total += d.atoms()[i] * overlap;
  }
  return total;
}

}  // namespace

double risk_measure(const DiscreteDist& d, const RiskSpec& spec) {
  switch (spec.kind) {
    case RiskSpec::Kind::Var:
      if (!(spec.p > 0.0 && spec.p < 1.0)) fail(ErrorCode::Domain, "var: level p must be in (0,1)");
      return quantile(d, spec.p, Side::Right);
    case RiskSpec::Kind::Es:
      if (!(spec.p > 0.0 && spec.p < 1.0)) fail(ErrorCode::Domain, "es: level p must be in (0,1)");
      return quantile_integral(d, spec.p, 1.0) / (1.0 - spec.p);
    case RiskSpec::Kind::Rvar:
      if (!(spec.p > 0.0 && spec.p < spec.q && spec.q < 1.0)) {
        fail(ErrorCode::Domain, "rvar: levels must satisfy 0 < p < q < 1");
      }
      return quantile_integral(d, spec.p, spec.q) / (spec.q - spec.p);
  }
  return 0.0;
}

DiscreteDist tail(const DiscreteDist& d, double p, TailSide side) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::Domain, "tail: p must be in (0,1)");
  double lo = side == TailSide::Upper ? 1.0 - p : 0.0;
  double hi = side == TailSide::Upper ? 1.0 : 1.0 - p;
  double norm = hi - lo;
  std::vector<std::pair<double, double>> out;
  double cum = 0.0;
  for (int i = 0; i < d.size(); ++i) {
    double f0 = cum;
    cum += d.masses()[i];
    double f1 = i + 1 == d.size() ? 1.0 : cum;
    double overlap = std::min(f1, hi) - std::max(f0, lo);
    if (overlap > 1e-15) out.emplace_back(d.atoms()[i], overlap / norm);
  }
  return DiscreteDist::from_pairs(std::move(out));
}

ContinuousMarginal::ContinuousMarginal(std::function<double(double)> quantile, std::string label)
    : quantile_(std::move(quantile)), label_(std::move(label)) {
  if (!quantile_) fail(ErrorCode::Spec, "marginal: quantile callable is empty");
}

ContinuousMarginal ContinuousMarginal::uniform(double lo, double hi) {
  if (!(hi > lo)) fail(ErrorCode::Spec, "uniform: hi must exceed lo");
  return ContinuousMarginal([lo, hi](double t) { return lo + (hi - lo) * t; }, "uniform");
}

DiscreteDist discretize(const ContinuousMarginal& m, int n) {
  if (n < 1) fail(ErrorCode::Domain, "discretize: n must be >= 1");
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(n);
  double prev = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= n; ++k) {
    double q = m.quantile((k - 0.5) / n);
    if (!std::isfinite(q)) fail(ErrorCode::Domain, "discretize: non-finite quantile value");
    if (q < prev - 1e-12) fail(ErrorCode::Domain, "discretize: quantile not non-decreasing");
    prev = std::max(prev, q);
    pairs.emplace_back(q, 1.0 / n);
  }
  return DiscreteDist::from_pairs(std::move(pairs));
}

DiscreteDist reflect(const DiscreteDist& d) {
  const int n = d.size();
  Eigen::VectorXd a(n), m(n);
  for (int i = 0; i < n; ++i) {
    a[i] = -d.atoms()[n - 1 - i];
    m[i] = d.masses()[n - 1 - i];
  }
  return DiscreteDist(std::move(a), std::move(m));
}

}  // namespace dotr
