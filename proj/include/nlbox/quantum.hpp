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

#pragma once

// Two-qubit pure states cos(b)|00> + e^{ig} sin(b)|11> measured along Bloch
// directions, with the Cabello completion of the second measurement angles
// and the resulting success probability.

#include <array>
#include <optional>

#include "nlbox/box.hpp"
#include "nlbox/local_randomness.hpp"
#include "nlbox/search.hpp"

namespace nlbox {

struct PureState {
  double beta = 0.0;   // in (0, pi/2)
  double gamma = 0.0;  // relative phase
};

/// n = (sin t cos p, sin t sin p, cos t); outcome 0 is the +1 eigenvector.
struct MeasurementDirection {
  double theta = 0.0;
  double phi = 0.0;
};

struct QuantumScenario {
  PureState state;
  std::array<MeasurementDirection, 2> alice;  // X = 0, 1
  std::array<MeasurementDirection, 2> bob;    // Y = 0, 1
};

/// Throws DomainError unless 0 < beta < pi/2 and every angle is finite.
void check_scenario(const QuantumScenario& s);

double joint_probability(const QuantumScenario& s, int a, int b, int x, int y);
JointDistribution quantum_box(const QuantumScenario& s);

/// (1 + cos 2b cos t) / 2.
double marginal_bias(const PureState& state, const MeasurementDirection& dir);

/// Second angles (theta_x1, theta_y1) that make P(11|01) = P(11|10) = 0.
/// Throws DegenerateConstraintError unless both angles lie in (0, pi) and
/// beta in (0, pi/2).
std::array<double, 2> solve_cabello_constraints(const PureState& state, double theta_x0, double theta_y0);

/// Completed scenario with the phase choice gamma = state.gamma,
/// phi_X0 = phi_X1 = pi + gamma, phi_Y0 = phi_Y1 = 0.
QuantumScenario cabello_scenario(const PureState& state, double theta_x0, double theta_y0);

/// q4 - q1 of cabello_scenario(...) in closed form.
double q4_minus_q1_closed_form(const PureState& state, double theta_x0, double theta_y0);

/// Maximally entangled state and the standard angles reaching 2 sqrt 2.
QuantumScenario tsirelson_scenario();

enum class PhaseMode { Canonical, Free };

inline constexpr double kBetaMargin = 0.01;
inline constexpr double kThetaMargin = 1e-6;

struct QmMaxResult {
  double value = 0.0;
  QuantumScenario witness;
  /// True when the case's local-randomness equalities pin beta.
  bool beta_forced = false;
  double forced_beta = 0.0;
  /// q1..q3 at the witness, recomputed from the box.
  double q1 = 0.0, q2 = 0.0, q3 = 0.0, q4 = 0.0;
  /// Every input of the case is locally random for the witness box.
  bool lr_verified = true;
  SearchResult search;
};

/// Maximum of q4 - q1 over (beta, theta_x0, theta_y0) with Cabello
/// completions.  A case adds its local-randomness conditions as equalities
/// in those variables.  PhaseMode::Free additionally searches over
/// phi_X0, phi_Y0 and gamma, keeping the completed phases that zero q2, q3.
QmMaxResult max_cabello_qm(std::optional<int> case_id = std::nullopt, const SearchConfig& config = {},
                           PhaseMode mode = PhaseMode::Canonical);

/// Maximum of q4 with q1 = q2 = q3 = 0, optionally at a fixed beta.
QmMaxResult max_hardy_qm(const SearchConfig& config = {}, std::optional<double> fixed_beta = std::nullopt);

}  // namespace nlbox
