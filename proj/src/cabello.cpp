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

#include "nlbox/cabello.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "nlbox/errors.hpp"

namespace nlbox {

CabelloCoefficients CabelloCoefficients::from_hardy(const HardyCoefficients& h) {
  CabelloCoefficients c;
  std::copy(h.w.begin(), h.w.end(), c.w.begin());
  return c;
}

CabelloCoefficients CabelloCoefficients::from_span(std::span<const double> values) {
  if (values.size() != 11) throw CoefficientError(fmt::format("expected 11 coefficients, got {}", values.size()));
  CabelloCoefficients c;
  std::copy(values.begin(), values.end(), c.w.begin());
  return c;
}

CabelloCoefficients CabelloCoefficients::corner(int k) {
  CabelloCoefficients c;
  c.c(k) = 1.0;
  return c;
}

void check_coefficients(std::span<const double> w, double tol) {
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i])) throw CoefficientError(fmt::format("c{} is not finite", i + 1));
    if (w[i] < -tol) throw CoefficientError(fmt::format("c{} = {} is negative", i + 1, w[i]));
    sum += w[i];
  }
  if (std::abs(sum - 1.0) > tol) throw CoefficientError(fmt::format("coefficients sum to {}, not 1", sum));
}

const std::array<JointDistribution, 11>& cabello_vertices() {
  static const std::array<JointDistribution, 11> vertices = {
      local_vertex({false, false, false, true}),  // c1  a=0,   b=1
      local_vertex({false, false, true, true}),   // c2  a=0,   b=Y^1
      local_vertex({false, true, false, false}),  // c3  a=1,   b=0
      local_vertex({true, true, false, false}),   // c4  a=X^1, b=0
      local_vertex({true, true, true, true}),     // c5  a=X^1, b=Y^1
      nonlocal_vertex({false, false, true}),      // c6
      local_vertex({false, false, false, false}), // c7  a=0,   b=0
      local_vertex({false, false, true, false}),  // c8  a=0,   b=Y
      local_vertex({true, false, false, false}),  // c9  a=X,   b=0
      local_vertex({true, false, true, false}),   // c10 a=X,   b=Y
      nonlocal_vertex({true, true, false}),       // c11
  };
  return vertices;
}

JointDistribution hardy_box(const HardyCoefficients& c, double tol) {
  check_coefficients(c.w, tol);
  return mix(std::span(cabello_vertices()).first(6), c.w, tol);
}

JointDistribution cabello_box(const CabelloCoefficients& c, double tol) {
  check_coefficients(c.w, tol);
  return mix(cabello_vertices(), c.w, tol);
}

JointDistribution cabello_matrix_closed_form(const CabelloCoefficients& cc, double tol) {
  check_coefficients(cc.w, tol);
  auto c = [&](int k) { return cc.c(k); };
  const double h6 = c(6) / 2, h11 = c(11) / 2, h = h6 + h11;
  return JointDistribution(JointDistribution::Table{{
      {c(7) + c(8) + c(9) + c(10) + h11, c(1) + c(2) + h6, c(3) + c(4) + h6, c(5) + h11},
      {c(2) + c(7) + c(9), c(1) + c(8) + c(10) + h, c(3) + c(4) + c(5) + h, 0.0},
      {c(4) + c(7) + c(8), c(1) + c(2) + c(5) + h, c(3) + c(9) + c(10) + h, 0.0},
      {c(2) + c(4) + c(5) + c(7) + h6, c(1) + c(8) + h11, c(3) + c(9) + h11, c(10) + h6},
  }});
}

SuccessMetrics extract_q(const JointDistribution& box) {
  return {box(0, 0, 0, 0), box(1, 1, 0, 1), box(1, 1, 1, 0), box(1, 1, 1, 1)};
}

double cabello_success(const CabelloCoefficients& cc) {
  auto c = [&](int k) { return cc.c(k); };
  return (c(6) / 2 + c(10)) - (c(7) + c(8) + c(9) + c(10) + c(11) / 2);
}

CabelloCheck check_cabello_conditions(const JointDistribution& box, double tol) {
  CabelloCheck check;
  check.q = extract_q(box);
  check.holds = check.q.q2 <= tol && check.q.q3 <= tol && check.q.success() > tol;
  return check;
}

NsMaxResult ns_max_success(Argument argument, const SearchConfig& config, bool local_only) {
  const std::size_t dim = argument == Argument::Hardy ? 6 : 11;
  SearchDomain domain = SearchDomain::simplex(dim);
  if (local_only) {
    std::vector<int> pinned = {6};
    if (dim == 11) pinned.push_back(11);
    for (int k : pinned) {
      AffineEquality eq{std::vector<double>(dim, 0.0), 0.0};
      eq.coeffs[k - 1] = 1.0;
      domain.add_equality(eq);
    }
  }

  // Evaluated on the box itself rather than the linear shortcut.
  auto objective = [argument](std::span<const double> x) {
    const SuccessMetrics q = extract_q(mix(std::span(cabello_vertices()).first(x.size()), x, 1e-6));
    return argument == Argument::Hardy ? q.q4 : q.success();
  };

  NsMaxResult result;
  result.search = maximize(objective, domain, config);
  result.value = result.search.value;
  std::copy(result.search.point.begin(), result.search.point.end(), result.witness.w.begin());
  return result;
}

}  // namespace nlbox
