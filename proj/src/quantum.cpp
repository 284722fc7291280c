// Copyright 2026 The nlbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nlbox/quantum.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "nlbox/errors.hpp"

namespace nlbox {
namespace {

using std::numbers::pi;

int sign_of(int bit) { return bit ? -1 : 1; }

const MeasurementDirection& dir_a(const QuantumScenario& s, int x) { return s.alice.at(x); }
const MeasurementDirection& dir_b(const QuantumScenario& s, int y) { return s.bob.at(y); }

void check_theta(double theta, const char* name) {
  if (!(theta > 0.0 && theta < pi))
    throw DegenerateConstraintError(fmt::format("{} = {} must lie strictly inside (0, pi)", name, theta));
}

// Scenario from the search vector (beta, theta_x0, theta_y0[, phi_x0, phi_y0, gamma]).
QuantumScenario scenario_from(std::span<const double> v) {
  if (v.size() == 3) return cabello_scenario({v[0], 0.0}, v[1], v[2]);
  const PureState state{v[0], v[5]};
  QuantumScenario s;
  s.state = state;
  const auto second = solve_cabello_constraints(state, v[1], v[2]);
  s.alice = {MeasurementDirection{v[1], v[3]}, MeasurementDirection{second[0], pi + state.gamma - v[4]}};
  s.bob = {MeasurementDirection{v[2], v[4]}, MeasurementDirection{second[1], pi + state.gamma - v[3]}};
  return s;
}

double hardy_theta_y0(double beta, double theta_x0) {
  return 2.0 * std::atan(1.0 / (std::tan(beta) * std::tan(theta_x0 / 2.0)));
}

// Local randomness of one input as an equality in (beta, theta_x0, theta_y0).
// The second angles are marginally random exactly when the completion gives
// pi/2, i.e. when the opposite first angle equals 2 beta.
AffineEquality lr_equality(LRInput input, std::size_t dim) {
  AffineEquality eq{std::vector<double>(dim, 0.0), 0.0};
  switch (input) {
    case LRInput::A0:
      eq.coeffs[1] = 1.0;
      eq.rhs = pi / 2;
      break;
    case LRInput::B0:
      eq.coeffs[2] = 1.0;
      eq.rhs = pi / 2;
      break;
    case LRInput::A1:
      eq.coeffs[2] = 1.0;
      eq.coeffs[0] = -2.0;
      break;
    case LRInput::B1:
      eq.coeffs[1] = 1.0;
      eq.coeffs[0] = -2.0;
      break;
  }
  return eq;
}

void fill_q(QmMaxResult& r) {
  const JointDistribution box = quantum_box(r.witness);
  r.q1 = box(0, 0, 0, 0);
  r.q2 = box(1, 1, 0, 1);
  r.q3 = box(1, 1, 1, 0);
  r.q4 = box(1, 1, 1, 1);
}

}  // namespace

void check_scenario(const QuantumScenario& s) {
  if (!(s.state.beta > 0.0 && s.state.beta < pi / 2))
    throw DomainError(fmt::format("beta = {} must lie strictly inside (0, pi/2)", s.state.beta));
  auto finite = [](const MeasurementDirection& d) { return std::isfinite(d.theta) && std::isfinite(d.phi); };
  if (!std::isfinite(s.state.gamma) || !finite(s.alice[0]) || !finite(s.alice[1]) || !finite(s.bob[0]) ||
      !finite(s.bob[1]))
    throw DomainError("scenario angles must be finite");
}

double joint_probability(const QuantumScenario& s, int a, int b, int x, int y) {
  const auto& nx = dir_a(s, x);
  const auto& ny = dir_b(s, y);
  const double sa = sign_of(a), sb = sign_of(b);
  const double c2b = std::cos(2 * s.state.beta), s2b = std::sin(2 * s.state.beta);
  const double cx = std::cos(nx.theta), cy = std::cos(ny.theta);
  const double sx = std::sin(nx.theta), sy = std::sin(ny.theta);
  const double phase = std::cos(nx.phi + ny.phi - s.state.gamma);
  return 0.25 * (1 + c2b * (sa * cx + sb * cy) + sa * sb * (cx * cy + s2b * sx * sy * phase));
}

JointDistribution quantum_box(const QuantumScenario& s) {
  check_scenario(s);
  JointDistribution::Table t{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) t[JointDistribution::row(x, y)][JointDistribution::col(a, b)] = joint_probability(s, a, b, x, y);
  return JointDistribution(t);
}

double marginal_bias(const PureState& state, const MeasurementDirection& dir) {
  return 0.5 * (1 + std::cos(2 * state.beta) * std::cos(dir.theta));
}

std::array<double, 2> solve_cabello_constraints(const PureState& state, double theta_x0, double theta_y0) {
  if (!(state.beta > 0.0 && state.beta < pi / 2))
    throw DegenerateConstraintError(fmt::format("beta = {} must lie strictly inside (0, pi/2)", state.beta));
  check_theta(theta_x0, "theta_x0");
  check_theta(theta_y0, "theta_y0");
  const double tb = std::tan(state.beta);
  return {2.0 * std::atan(tb / std::tan(theta_y0 / 2.0)), 2.0 * std::atan(tb / std::tan(theta_x0 / 2.0))};
}

QuantumScenario cabello_scenario(const PureState& state, double theta_x0, double theta_y0) {
  const auto second = solve_cabello_constraints(state, theta_x0, theta_y0);
  const double phi_x = pi + state.gamma;
  QuantumScenario s;
  s.state = state;
  s.alice = {MeasurementDirection{theta_x0, phi_x}, MeasurementDirection{second[0], phi_x}};
  s.bob = {MeasurementDirection{theta_y0, 0.0}, MeasurementDirection{second[1], 0.0}};
  return s;
}

double q4_minus_q1_closed_form(const PureState& state, double theta_x0, double theta_y0) {
  solve_cabello_constraints(state, theta_x0, theta_y0);
  const double b = state.beta, tb = std::tan(b);
  const double hx = theta_x0 / 2, hy = theta_y0 / 2;
  const double tx = std::tan(hx), ty = std::tan(hy);
  const double num = std::pow(std::sin(b), 2) * std::pow(tb - tx * ty, 2);
  const double den = (tx * tx + tb * tb) * (ty * ty + tb * tb);
  const double q1_root = std::cos(b) * std::cos(hx) * std::cos(hy) - std::sin(b) * std::sin(hx) * std::sin(hy);
  return num / den - q1_root * q1_root;
}

QuantumScenario tsirelson_scenario() {
  QuantumScenario s;
  s.state = {pi / 4, 0.0};
  s.alice = {MeasurementDirection{pi / 2, 0.0}, MeasurementDirection{pi / 2, pi / 2}};
  s.bob = {MeasurementDirection{pi / 2, 7 * pi / 4}, MeasurementDirection{pi / 2, pi / 4}};
  return s;
}

QmMaxResult max_cabello_qm(std::optional<int> case_id, const SearchConfig& config, PhaseMode mode) {
  std::vector<Interval> bounds = {{kBetaMargin, pi / 2 - kBetaMargin},
                                  {kThetaMargin, pi - kThetaMargin},
                                  {kThetaMargin, pi - kThetaMargin}};
  if (mode == PhaseMode::Free) bounds.insert(bounds.end(), 3, Interval{0.0, 2 * pi});
  SearchDomain domain = SearchDomain::angles(bounds);

  std::vector<LRInput> inputs;
  if (case_id) inputs = lr_case(*case_id).inputs;
  for (LRInput in : inputs) domain.add_equality(lr_equality(in, domain.dimension()));

  QmMaxResult result;
  const AffineParameterization param(domain.all_equalities(), domain.dimension());
  if (param.is_determined(0)) {
    result.beta_forced = true;
    result.forced_beta = param.determined_value(0);
  }

  auto objective = [](std::span<const double> v) {
    const QuantumScenario s = scenario_from(v);
    return joint_probability(s, 1, 1, 1, 1) - joint_probability(s, 0, 0, 0, 0);
  };
  result.search = maximize(objective, domain, config);
  result.value = result.search.value;
  result.witness = scenario_from(result.search.point);
  fill_q(result);
  const JointDistribution box = quantum_box(result.witness);
  for (LRInput in : inputs) result.lr_verified = result.lr_verified && is_locally_random(box, in, kDefaultTol);
  return result;
}

QmMaxResult max_hardy_qm(const SearchConfig& config, std::optional<double> fixed_beta) {
  Interval beta{kBetaMargin, pi / 2 - kBetaMargin};
  if (fixed_beta) {
    if (!(*fixed_beta > 0.0 && *fixed_beta < pi / 2))
      throw DomainError(fmt::format("beta = {} must lie strictly inside (0, pi/2)", *fixed_beta));
    beta = {*fixed_beta, *fixed_beta};
  }
  const SearchDomain domain = SearchDomain::angles({beta, {kThetaMargin, pi - kThetaMargin}});

  // q1 = 0 fixes theta_y0 through tan(b) tan(tx/2) tan(ty/2) = 1.
  auto scenario = [](std::span<const double> v) {
    return cabello_scenario({v[0], 0.0}, v[1], hardy_theta_y0(v[0], v[1]));
  };
  auto objective = [scenario](std::span<const double> v) { return joint_probability(scenario(v), 1, 1, 1, 1); };

  QmMaxResult result;
  result.beta_forced = fixed_beta.has_value();
  result.forced_beta = fixed_beta.value_or(0.0);
  result.search = maximize(objective, domain, config);
  result.value = result.search.value;
  result.witness = scenario(result.search.point);
  fill_q(result);
  return result;
}

}  // namespace nlbox
