#pragma once

#include <array>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "dotr/bounds.hpp"
#include "dotr/coupling.hpp"
#include "dotr/discrete_dist.hpp"
#include "dotr/distortion.hpp"
#include "dotr/transport.hpp"

namespace dotr {

using Json = nlohmann::ordered_json;

// Deterministic 12-significant-digit rendering: value is rounded through its
// shortest text form, so identical inputs serialize byte-identically.
std::string fmt12(double v);
double round12(double v);
Json json_number(double v);  // rounded; infinities become the string "inf"

DistortionFn distortion_from_json(const Json& j);
Json distortion_to_json(const DistortionFn& h);

Coupling coupling_from_json(const Json& j);
Json coupling_to_json(const Coupling& c);

DiscreteDist dist_from_json(const Json& j);
Json dist_to_json(const DiscreteDist& d);

CostSpec cost_from_json(const Json& j);
// affine costs carry coefficients usable by the duality module
struct ParsedCost {
  CostSpec spec = CostSpec::linear_sum();
  std::optional<std::array<double, 3>> affine;  // alpha, beta, gamma
};
ParsedCost cost_from_json_extended(const Json& j, const DiscreteDist& marg_x,
                                   const DiscreteDist& marg_y);

DualPair dual_pair_from_json(const Json& j);

// Bundled problem spec: {"distortion":..., "marginal_x":..., "marginal_y":...,
// "cost":..., "coupling":...}; cost defaults to the linear sum, coupling is
// optional. Quantile marginals are discretized at n points.
struct ParsedProblem {
  TransportProblem problem;
  std::optional<Coupling> coupling;
  std::optional<std::array<double, 3>> affine;
};
ParsedProblem problem_from_json(const Json& j, int n);

std::vector<double> read_csv_values(const std::string& path);

// Marginal loader: .csv of samples, a distribution JSON, or a quantile JSON
// ({"quantile":"uniform","lo":..,"hi":..}) discretized at n points.
DiscreteDist load_marginal(const std::string& path, int n);

Json load_json_file(const std::string& path);

}  // namespace dotr
