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

// Hardy and Cabello boxes as convex combinations of no-signaling vertices,
// in the canonical form with P(11|01) = P(11|10) = 0.

#include <array>
#include <span>
#include <vector>

#include "nlbox/box.hpp"
#include "nlbox/search.hpp"

namespace nlbox {

/// Weights c1..c6 of the Hardy decomposition.
struct HardyCoefficients {
  std::array<double, 6> w{};

  /// 1-based access, c(1) .. c(6).
  double c(int k) const { return w.at(k - 1); }
  double& c(int k) { return w.at(k - 1); }
};

/// Weights c1..c11 of the Cabello decomposition; c1..c6 are the Hardy ones.
struct CabelloCoefficients {
  std::array<double, 11> w{};

  double c(int k) const { return w.at(k - 1); }
  double& c(int k) { return w.at(k - 1); }

  static CabelloCoefficients from_hardy(const HardyCoefficients& h);
  /// Throws CoefficientError unless `values` has 11 entries.
  static CabelloCoefficients from_span(std::span<const double> values);

  /// c with unit weight on one index, everything else zero.
  static CabelloCoefficients corner(int k);
};

/// Throws CoefficientError if a weight is negative or non-finite, or the sum
/// differs from one by more than tol.
void check_coefficients(std::span<const double> w, double tol = kDefaultTol);

/// Vertices in coefficient order: Hardy uses the first six.
const std::array<JointDistribution, 11>& cabello_vertices();

JointDistribution hardy_box(const HardyCoefficients& c, double tol = kDefaultTol);
JointDistribution cabello_box(const CabelloCoefficients& c, double tol = kDefaultTol);

/// The same box written directly as a table of coefficient sums.
JointDistribution cabello_matrix_closed_form(const CabelloCoefficients& c, double tol = kDefaultTol);

struct SuccessMetrics {
  double q1 = 0.0;  // P(00|00)
  double q2 = 0.0;  // P(11|01)
  double q3 = 0.0;  // P(11|10)
  double q4 = 0.0;  // P(11|11)

  double success() const { return q4 - q1; }
};

SuccessMetrics extract_q(const JointDistribution& box);

/// q4 - q1 of cabello_box(c) as a linear form in the coefficients.
double cabello_success(const CabelloCoefficients& c);

struct CabelloCheck {
  bool holds = false;
  SuccessMetrics q;
};

/// q2 <= tol, q3 <= tol and q4 - q1 > tol.
CabelloCheck check_cabello_conditions(const JointDistribution& box, double tol = kDefaultTol);

enum class Argument { Hardy, Cabello };

struct NsMaxResult {
  double value = 0.0;
  CabelloCoefficients witness;
  SearchResult search;
};

/// Largest success over the coefficient simplex of the chosen argument
/// (q4 for Hardy, q4 - q1 for Cabello).  With local_only the nonlocal
/// weights c6 and c11 are pinned to zero.
NsMaxResult ns_max_success(Argument argument, const SearchConfig& config = {}, bool local_only = false);

}  // namespace nlbox
