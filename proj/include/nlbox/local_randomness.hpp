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

// Local randomness of box inputs and the affine coefficient systems that
// characterize it inside the Cabello family.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlbox/box.hpp"
#include "nlbox/cabello.hpp"
#include "nlbox/search.hpp"

namespace nlbox {

/// 0_A, 1_A: Alice's inputs X = 0, 1.  0_B, 1_B: Bob's inputs Y = 0, 1.
enum class LRInput { A0, A1, B0, B1 };

std::string to_string(LRInput input);
Party party_of(LRInput input);
int input_bit(LRInput input);

struct LRCase {
  int id = 0;
  std::vector<LRInput> inputs;
};

inline constexpr int kNumLRCases = 15;

/// Case 1 is all four inputs, 2-5 the triples, 6-11 the pairs, 12-15 the
/// single inputs.  Throws MalformedInputError outside 1..15.
LRCase lr_case(int id);
std::vector<LRCase> all_lr_cases();

/// Marginal of the given input is 1/2 within tol.  Throws SignalingError
/// when the marginal depends on the other party's input.
bool is_locally_random(const JointDistribution& box, LRInput input, double tol = kDefaultTol);

/// Linear form over (c1..c11, eta); terms[11] is the eta coefficient.
struct LinearExpr {
  std::array<double, 12> terms{};
  double constant = 0.0;

  double evaluate(const CabelloCoefficients& c) const;
  std::string render() const;
};

/// A chain e0 = e1 = ... of linear forms.
using Relation = std::vector<LinearExpr>;

/// eta is always (1 - c6 - c11) / 2.
double eta(const CabelloCoefficients& c);

struct ConstraintSystem {
  int case_id = 0;
  std::vector<Relation> relations;
  /// Coefficients forced to zero on every solution.
  std::vector<int> implied_zeros;

  /// e.g. "c1+c2 = c3+c4 = η−c5; c5 = c7+c8+c9+c10".
  std::string render() const;
  /// Equalities over c1..c11 with eta substituted.
  std::vector<AffineEquality> to_equalities() const;
  bool satisfies(const CabelloCoefficients& c, double tol = kDefaultTol) const;
};

ConstraintSystem lr_constraints(const LRCase& lr_case);

struct WitnessResult {
  std::optional<CabelloCoefficients> witness;
  std::pair<double, double> lhs{0.0, 0.0};
  std::size_t draws = 0;
  /// Smallest max(lhs1, lhs2) seen, reported when the search fails.
  double best_max_lhs = 0.0;
};

inline constexpr std::size_t kWitnessBudget = 100000;

/// Samples the case's solution set (stream seed + case id) until both IC
/// conditions hold.
WitnessResult feasibility_witness(const LRCase& lr_case, std::uint64_t seed = 0, std::size_t budget = kWitnessBudget);

struct Table2Row {
  int case_id = 0;
  std::array<double, 11> c{};
  double lhs1 = 0.0;
  double lhs2 = 0.0;
};

/// CSV with header case,c1..c11,lhs1,lhs2.
std::vector<Table2Row> load_table2(const std::string& path);

struct Table2Check {
  Table2Row row;
  double lhs1 = 0.0;
  double lhs2 = 0.0;
  bool on_simplex = false;
  bool in_case = false;
  bool matches = false;
  bool ic_ok = false;

  bool ok() const { return on_simplex && in_case && matches && ic_ok; }
};

inline constexpr double kTable2Tol = 5e-5;

std::vector<Table2Check> verify_table2(const std::vector<Table2Row>& rows, double tol = kTable2Tol);

}  // namespace nlbox
