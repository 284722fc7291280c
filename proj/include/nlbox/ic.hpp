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

// Information Causality tests for binary boxes: the squared-bias conditions
// in both signaling directions, their coefficient-level form for Cabello
// boxes, and an exact simulation of the 2 -> 1 random access code.

#include <span>
#include <utility>

#include "nlbox/box.hpp"
#include "nlbox/cabello.hpp"
#include "nlbox/search.hpp"

namespace nlbox {

struct ICQuantities {
  // Alice -> Bob direction.
  double p_i_a = 0.0;   // [P(a^b=0|00) + P(a^b=0|10)] / 2
  double p_ii_a = 0.0;  // [P(a^b=0|01) + P(a^b=1|11)] / 2
  // Bob -> Alice direction.
  double p_i_b = 0.0;   // [P(a^b=0|00) + P(a^b=0|01)] / 2
  double p_ii_b = 0.0;  // [P(a^b=0|10) + P(a^b=1|11)] / 2
  double e_i = 0.0, e_ii = 0.0, f_i = 0.0, f_ii = 0.0;
};

ICQuantities ic_quantities(const JointDistribution& box, double tol = kDefaultTol);

/// Outcome of one necessary condition lhs <= 1.
struct ICCheck {
  double lhs = 0.0;
  bool satisfied = false;
  /// 1 - lhs; negative when violated.
  double margin = 0.0;
};

/// E_I^2 + E_II^2 <= 1.
ICCheck ic_ab_satisfied(const JointDistribution& box, double tol = kDefaultTol);
/// F_I^2 + F_II^2 <= 1.
ICCheck ic_ba_satisfied(const JointDistribution& box, double tol = kDefaultTol);

struct RSUV {
  double r = 0.0;  // c8 - c2
  double s = 0.0;  // c1 + c3 + c6 - c7
  double u = 0.0;  // c9 - c4
  double v = 0.0;  // c5 + c6 + c10
};

RSUV rsuv(const CabelloCoefficients& c, double tol = kDefaultTol);

/// {(r-s)^2 + (u-v)^2, (u-s)^2 + (r-v)^2}, equal to the two squared-bias
/// sums of cabello_box(c).
std::pair<double, double> ic_cabello_lhs(const CabelloCoefficients& c, double tol = kDefaultTol);

struct ICMaxResult {
  double value = 0.0;
  CabelloCoefficients witness;
  /// lhs1 and lhs2 at the witness.
  std::pair<double, double> lhs;
  SearchResult search;
};

/// Maximizes q4 - q1 over the Cabello simplex.  With enforce_ic both
/// quadratic conditions are imposed; `extra` adds affine equalities over
/// (c1..c11).
ICMaxResult max_success_under_ic(const SearchConfig& config = {}, bool enforce_ic = true,
                                 std::span<const AffineEquality> extra = {});

struct RACOutcome {
  double p_bit0 = 0.0;
  double p_bit1 = 0.0;
  double mi_bit0 = 0.0;
  double mi_bit1 = 0.0;
  double total = 0.0;
};

/// Two uniform bits X0, X1 on Alice's side, one bit of communication.
/// Alice inputs X0^X1 and sends m = a^X0; Bob inputs i and guesses m^b.
/// Probabilities and mutual informations are exact.
RACOutcome rac_simulate(const JointDistribution& box, double tol = kDefaultTol);

}  // namespace nlbox
