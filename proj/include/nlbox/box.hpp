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

// Bipartite binary no-signaling boxes: the 4x4 table P(ab|XY), its correlator
// form, the 24 vertices of the no-signaling polytope and CHSH evaluation.
//
// Index convention used everywhere (including serialization):
//   row    = 2*X + Y  -> XY in {00, 01, 10, 11}
//   column = 2*a + b  -> ab in {00, 01, 10, 11}

#include <array>
#include <span>
#include <string>
#include <vector>

namespace nlbox {

inline constexpr double kDefaultTol = 1e-9;

enum class Party { A, B };

std::string to_string(Party party);

class JointDistribution {
 public:
  using Table = std::array<std::array<double, 4>, 4>;

  /// All-zero table (not a valid box).
  JointDistribution() = default;
  explicit JointDistribution(const Table& p) : p_(p) {}

  static constexpr int row(int x, int y) { return 2 * x + y; }
  static constexpr int col(int a, int b) { return 2 * a + b; }

  /// P(ab|xy).
  double operator()(int a, int b, int x, int y) const {
    return p_[row(x, y)][col(a, b)];
  }
  double entry(int r, int c) const { return p_[r][c]; }
  const Table& table() const { return p_; }

  /// Copy with one cell replaced; used to build deliberately broken boxes.
  JointDistribution with_entry(int r, int c, double value) const;

  static JointDistribution uniform();

  friend bool operator==(const JointDistribution&, const JointDistribution&) = default;

 private:
  Table p_{};
};

/// Largest absolute entrywise difference.
double max_abs_diff(const JointDistribution& lhs, const JointDistribution& rhs);

enum class ConstraintKind { Positivity, Normalization, NoSignaling };

std::string to_string(ConstraintKind kind);

struct Violation {
  ConstraintKind kind;
  /// Human readable location, e.g. "P(01|10)", "row XY=00", "A input 0".
  std::string location;
  /// Size of the violation (how far outside the allowed set).
  double magnitude;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ConstraintKind kind, const std::string& location) const;
};

/// Checks positivity, row normalization and both parties' no-signaling
/// conditions.  Throws MalformedInputError on a non-finite entry.
ValidationReport validate_box(const JointDistribution& box, double tol = kDefaultTol);

/// Throws ValidationError listing the first violation if the box is invalid.
void require_valid(const JointDistribution& box, double tol = kDefaultTol);

struct CorrelatorForm {
  std::array<double, 2> c_x{};                  // C_{X=0}, C_{X=1}
  std::array<double, 2> c_y{};                  // C_{Y=0}, C_{Y=1}
  std::array<std::array<double, 2>, 2> c_xy{};  // C_{XY}

  friend bool operator==(const CorrelatorForm&, const CorrelatorForm&) = default;
};

CorrelatorForm to_correlators(const JointDistribution& box, double tol = kDefaultTol);

/// P(ab|XY) = [1 + (-1)^a C_X + (-1)^b C_Y + (-1)^(a^b) C_XY] / 4.
/// Throws InfeasibleCorrelatorError if a correlator leaves [-1, 1] or a
/// reconstructed entry is below -tol.
JointDistribution from_correlators(const CorrelatorForm& corr, double tol = kDefaultTol);

struct LocalVertexLabel {
  bool alpha = false;
  bool beta = false;
  bool gamma = false;
  bool delta = false;
};

struct NonlocalVertexLabel {
  bool alpha = false;
  bool beta = false;
  bool gamma = false;
};

/// Deterministic box a = alpha*X ^ beta, b = gamma*Y ^ delta.
JointDistribution local_vertex(const LocalVertexLabel& label);

/// P(ab|XY) = 1/2 when a^b = XY ^ alpha*X ^ beta*Y ^ gamma, else 0.
JointDistribution nonlocal_vertex(const NonlocalVertexLabel& label);

/// Canonical PR box, nonlocal_vertex({0,0,0}).
JointDistribution pr_box();

std::array<LocalVertexLabel, 16> all_local_labels();
std::array<NonlocalVertexLabel, 8> all_nonlocal_labels();

/// Entrywise convex combination.  Throws NormalizationError if the weights
/// are negative, do not sum to one within tol, or the lengths differ.
JointDistribution mix(std::span<const JointDistribution> boxes, std::span<const double> weights,
                      double tol = kDefaultTol);

/// B_xy = |sum_{x'y'} C_{x'y'} - 2 C_{xy}|.
double chsh_value(const JointDistribution& box, int x, int y);

/// Largest of the four CHSH expressions.
double max_chsh(const JointDistribution& box);

/// Probability that `party` outputs 0 on `input`.  Throws SignalingError if
/// the value depends on the other party's input by more than tol.
double marginal(const JointDistribution& box, Party party, int input, double tol = kDefaultTol);

}  // namespace nlbox
