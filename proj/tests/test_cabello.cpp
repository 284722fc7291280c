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

#include <gtest/gtest.h>

#include <random>

#include "nlbox/cabello.hpp"
#include "nlbox/errors.hpp"
#include "oracles.hpp"

using namespace nlbox;

namespace {

CabelloCoefficients random_coeffs(std::mt19937_64& gen) {
  return CabelloCoefficients::from_span(oracle::simplex_point(gen, 11));
}

CabelloCoefficients coeffs(std::initializer_list<std::pair<int, double>> entries) {
  CabelloCoefficients c;
  for (auto [k, v] : entries) c.c(k) = v;
  return c;
}

}  // namespace

TEST(Hardy, NonlocalCorner) {
  HardyCoefficients h;
  h.c(6) = 1.0;
  const auto box = hardy_box(h);
  EXPECT_EQ(box, nonlocal_vertex({false, false, true}));
  EXPECT_EQ(extract_q(box).q4, 0.5);
}

TEST(Hardy, LocalCorner) {
  HardyCoefficients h;
  h.c(1) = 1.0;
  const auto box = hardy_box(h);
  EXPECT_EQ(box, local_vertex({false, false, false, true}));
  EXPECT_EQ(box(1, 1, 1, 1), 0.0);
}

TEST(Hardy, MixedPoint) {
  const HardyCoefficients h{{0.1, 0.1, 0.1, 0.1, 0.1, 0.5}};
  const auto box = hardy_box(h);
  EXPECT_NEAR(box(1, 1, 1, 1), 0.25, 1e-15);
  std::array<double, 11> c{};
  std::copy(h.w.begin(), h.w.end(), c.begin());
  EXPECT_LE(max_abs_diff(box, JointDistribution(oracle::cabello(c))), 1e-15);
  const auto q = extract_q(box);
  EXPECT_EQ(q.q1, 0.0);
  EXPECT_EQ(q.q2, 0.0);
  EXPECT_EQ(q.q3, 0.0);
}

TEST(Hardy, RejectsBadCoefficients) {
  EXPECT_THROW(hardy_box(HardyCoefficients{{0.5, 0.5, 0.5, 0, 0, 0}}), CoefficientError);
  EXPECT_THROW(hardy_box(HardyCoefficients{{-0.1, 0.6, 0.5, 0, 0, 0}}), CoefficientError);
}

TEST(Cabello, Corners) {
  const auto c11 = cabello_box(CabelloCoefficients::corner(11));
  EXPECT_EQ(c11, nonlocal_vertex({true, true, false}));
  EXPECT_EQ(extract_q(c11).success(), -0.5);

  HardyCoefficients h;
  h.c(6) = 1.0;
  EXPECT_EQ(cabello_box(CabelloCoefficients::corner(6)), hardy_box(h));
  EXPECT_EQ(extract_q(cabello_box(CabelloCoefficients::corner(6))).success(), 0.5);
}

TEST(Cabello, MixedPoint) {
  const auto box = cabello_box(coeffs({{5, 0.4}, {6, 0.1}, {10, 0.4}, {11, 0.1}}));
  EXPECT_NEAR(box(1, 1, 1, 1), 0.45, 1e-15);
  EXPECT_NEAR(box(0, 0, 0, 0), 0.45, 1e-15);
}

TEST(Cabello, RejectsBadCoefficients) {
  CabelloCoefficients c = CabelloCoefficients::corner(1);
  c.c(2) = 0.1;
  EXPECT_THROW(cabello_box(c), CoefficientError);
  EXPECT_THROW(cabello_matrix_closed_form(c), CoefficientError);
  EXPECT_THROW(CabelloCoefficients::from_span(std::vector<double>(6, 1.0 / 6)), CoefficientError);
}

TEST(ClosedForm, Corners) {
  const auto c7 = cabello_matrix_closed_form(CabelloCoefficients::corner(7));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) EXPECT_EQ(c7(0, 0, x, y), 1.0);
  EXPECT_EQ(cabello_matrix_closed_form(CabelloCoefficients::corner(6)), nonlocal_vertex({false, false, true}));
  for (int k = 1; k <= 11; ++k) {
    const auto c = CabelloCoefficients::corner(k);
    EXPECT_EQ(cabello_matrix_closed_form(c), cabello_box(c)) << "corner " << k;
  }
}

TEST(ClosedForm, MatchesVertexMixture) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = random_coeffs(gen);
    const auto mixed = cabello_box(c);
    EXPECT_LE(max_abs_diff(cabello_matrix_closed_form(c), mixed), 1e-12);
    EXPECT_LE(max_abs_diff(mixed, JointDistribution(oracle::cabello(c.w))), 1e-12);
    EXPECT_EQ(mixed(1, 1, 0, 1), 0.0);
    EXPECT_EQ(mixed(1, 1, 1, 0), 0.0);
    EXPECT_NEAR(extract_q(mixed).success(), cabello_success(c), 1e-12);
  }
}

TEST(ClosedForm, HardyIsCabelloRestriction) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = oracle::simplex_point(gen, 6);
    HardyCoefficients h;
    std::copy(w.begin(), w.end(), h.w.begin());
    EXPECT_EQ(hardy_box(h), cabello_box(CabelloCoefficients::from_hardy(h)));
  }
}

TEST(ExtractQ, Examples) {
  const auto pr = extract_q(pr_box());
  EXPECT_EQ(pr.q1, 0.5);
  EXPECT_EQ(pr.q2, 0.5);
  EXPECT_EQ(pr.q3, 0.5);
  EXPECT_EQ(pr.q4, 0.0);
  const auto u = extract_q(JointDistribution::uniform());
  EXPECT_EQ(u.q1, 0.25);
  EXPECT_EQ(u.q4, 0.25);
}

TEST(CabelloConditions, Examples) {
  const auto v = check_cabello_conditions(nonlocal_vertex({false, false, true}));
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.q.success(), 0.5);
  EXPECT_FALSE(check_cabello_conditions(pr_box()).holds);
  EXPECT_FALSE(check_cabello_conditions(JointDistribution::uniform()).holds);
}

TEST(NsMax, BothArguments) {
  for (Argument arg : {Argument::Hardy, Argument::Cabello}) {
    const auto r = ns_max_success(arg);
    EXPECT_NEAR(r.value, 0.5, 1e-9);
    EXPECT_NEAR(r.witness.c(6), 1.0, 1e-6);
  }
}

TEST(NsMax, LocalMixturesOnlyReachZero) {
  const auto r = ns_max_success(Argument::Cabello, {}, true);
  EXPECT_NEAR(r.value, 0.0, 1e-9);
  EXPECT_EQ(r.witness.c(6), 0.0);
  EXPECT_EQ(r.witness.c(11), 0.0);
  // Exhaustive corner check over the nine local vertices.
  for (int k : {1, 2, 3, 4, 5, 7, 8, 9, 10}) EXPECT_LE(cabello_success(CabelloCoefficients::corner(k)), 0.0);
}
