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

#include "nlbox/ic.hpp"

#include <array>
#include <cmath>

#include "nlbox/errors.hpp"

namespace nlbox {
namespace {

double p_parity(const JointDistribution& box, int parity, int x, int y) {
  return parity == 0 ? box(0, 0, x, y) + box(1, 1, x, y) : box(0, 1, x, y) + box(1, 0, x, y);
}

ICCheck make_check(double lhs, double tol) { return {lhs, lhs <= 1.0 + tol, 1.0 - lhs}; }

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// I(X:G) from a 2x2 joint table.
double mutual_information(const std::array<std::array<double, 2>, 2>& joint) {
  double hx = 0.0, hg = 0.0, hxg = 0.0;
  for (int x = 0; x < 2; ++x) hx -= plogp(joint[x][0] + joint[x][1]);
  for (int g = 0; g < 2; ++g) hg -= plogp(joint[0][g] + joint[1][g]);
  for (int x = 0; x < 2; ++x)
    for (int g = 0; g < 2; ++g) hxg -= plogp(joint[x][g]);
  return std::max(0.0, hx + hg - hxg);
}

}  // namespace

ICQuantities ic_quantities(const JointDistribution& box, double tol) {
  require_valid(box, tol);
  ICQuantities q;
  q.p_i_a = 0.5 * (p_parity(box, 0, 0, 0) + p_parity(box, 0, 1, 0));
  q.p_ii_a = 0.5 * (p_parity(box, 0, 0, 1) + p_parity(box, 1, 1, 1));
  q.p_i_b = 0.5 * (p_parity(box, 0, 0, 0) + p_parity(box, 0, 0, 1));
  q.p_ii_b = 0.5 * (p_parity(box, 0, 1, 0) + p_parity(box, 1, 1, 1));
  q.e_i = 2 * q.p_i_a - 1;
  q.e_ii = 2 * q.p_ii_a - 1;
  q.f_i = 2 * q.p_i_b - 1;
  q.f_ii = 2 * q.p_ii_b - 1;
  return q;
}

ICCheck ic_ab_satisfied(const JointDistribution& box, double tol) {
  const ICQuantities q = ic_quantities(box, tol);
  return make_check(q.e_i * q.e_i + q.e_ii * q.e_ii, tol);
}

ICCheck ic_ba_satisfied(const JointDistribution& box, double tol) {
  const ICQuantities q = ic_quantities(box, tol);
  return make_check(q.f_i * q.f_i + q.f_ii * q.f_ii, tol);
}

RSUV rsuv(const CabelloCoefficients& cc, double tol) {
  check_coefficients(cc.w, tol);
  auto c = [&](int k) { return cc.c(k); };
  return {c(8) - c(2), c(1) + c(3) + c(6) - c(7), c(9) - c(4), c(5) + c(6) + c(10)};
}

std::pair<double, double> ic_cabello_lhs(const CabelloCoefficients& c, double tol) {
  const RSUV t = rsuv(c, tol);
  auto sq = [](double v) { return v * v; };
  return {sq(t.r - t.s) + sq(t.u - t.v), sq(t.u - t.s) + sq(t.r - t.v)};
}

ICMaxResult max_success_under_ic(const SearchConfig& config, bool enforce_ic, std::span<const AffineEquality> extra) {
  SearchDomain domain = SearchDomain::simplex(11);
  for (const auto& eq : extra) domain.add_equality(eq);

  // Search points can sit a rounding error off the simplex, hence the
  // looser coefficient check inside the loop.
  auto as_coeffs = [](std::span<const double> x) { return CabelloCoefficients::from_span(x); };
  if (enforce_ic) {
    domain.add_inequality({"lhs1", [as_coeffs](std::span<const double> x) {
                             return ic_cabello_lhs(as_coeffs(x), 1e-6).first;
                           }});
    domain.add_inequality({"lhs2", [as_coeffs](std::span<const double> x) {
                             return ic_cabello_lhs(as_coeffs(x), 1e-6).second;
                           }});
  }
  auto objective = [as_coeffs](std::span<const double> x) { return cabello_success(as_coeffs(x)); };

  ICMaxResult result;
  result.search = maximize(objective, domain, config);
  result.value = result.search.value;
  result.witness = as_coeffs(result.search.point);
  result.lhs = ic_cabello_lhs(result.witness, 1e-6);
  return result;
}

RACOutcome rac_simulate(const JointDistribution& box, double tol) {
  require_valid(box, tol);
  // joint[i][x][g] = P(X_i = x, guess_i = g).
  std::array<std::array<std::array<double, 2>, 2>, 2> joint{};
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1)
      for (int i = 0; i < 2; ++i)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            const int m = a ^ x0;
            const int guess = m ^ b;
            const int target = i == 0 ? x0 : x1;
            joint[i][target][guess] += 0.25 * box(a, b, x0 ^ x1, i);
          }
  RACOutcome out;
  out.p_bit0 = joint[0][0][0] + joint[0][1][1];
  out.p_bit1 = joint[1][0][0] + joint[1][1][1];
  out.mi_bit0 = mutual_information(joint[0]);
  out.mi_bit1 = mutual_information(joint[1]);
  out.total = out.mi_bit0 + out.mi_bit1;
  return out;
}

}  // namespace nlbox
