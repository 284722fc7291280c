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

#include <cmath>
#include <numbers>
#include <random>

#include "nlbox/errors.hpp"
#include "nlbox/ic.hpp"
#include "nlbox/quantum.hpp"
#include "oracles.hpp"

using namespace nlbox;
using std::numbers::pi;

namespace {

QuantumScenario random_scenario(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> beta(0.001, pi / 2 - 0.001), theta(0, pi), phi(0, 2 * pi);
  QuantumScenario s;
  s.state = {beta(gen), phi(gen)};
  for (auto& d : s.alice) d = {theta(gen), phi(gen)};
  for (auto& d : s.bob) d = {theta(gen), phi(gen)};
  return s;
}

QuantumScenario uniform_scenario(double beta, double theta, double phi) {
  QuantumScenario s;
  s.state = {beta, 0.0};
  s.alice = {MeasurementDirection{theta, phi}, MeasurementDirection{theta, phi}};
  s.bob = s.alice;
  return s;
}

double direct_q4_minus_q1(double beta, double tx, double ty) {
  const auto s = cabello_scenario({beta, 0.0}, tx, ty);
  const auto d = [](const MeasurementDirection& m) { return oracle::Dir{m.theta, m.phi}; };
  return oracle::quantum_p(beta, 0.0, d(s.alice[1]), d(s.bob[1]), 1, 1) -
         oracle::quantum_p(beta, 0.0, d(s.alice[0]), d(s.bob[0]), 0, 0);
}

}  // namespace

TEST(JointProbability, Examples) {
  const auto s = uniform_scenario(pi / 4, pi / 2, 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      EXPECT_NEAR(joint_probability(s, 0, 0, x, y), 0.5, 1e-15);
      EXPECT_NEAR(joint_probability(s, 1, 1, x, y), 0.5, 1e-15);
      EXPECT_NEAR(joint_probability(s, 0, 1, x, y), 0.0, 1e-15);
    }
  for (double beta : {0.1, 0.5, 1.2}) {
    const auto z = uniform_scenario(beta, 0.0, 0.3);
    EXPECT_NEAR(joint_probability(z, 0, 0, 1, 0), std::pow(std::cos(beta), 2), 1e-15);
  }
}

TEST(JointProbability, MatchesStateVector) {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = random_scenario(gen);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        double total = 0.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            const double p = joint_probability(s, a, b, x, y);
            const double ref = oracle::quantum_p(s.state.beta, s.state.gamma, {s.alice[x].theta, s.alice[x].phi},
                                                 {s.bob[y].theta, s.bob[y].phi}, a, b);
            EXPECT_NEAR(p, ref, 1e-12);
            total += p;
          }
        EXPECT_NEAR(total, 1.0, 1e-14);
      }
  }
}

TEST(QuantumBox, ValidMarginalsAndIc) {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = random_scenario(gen);
    const auto box = quantum_box(s);
    EXPECT_TRUE(validate_box(box).ok());
    for (int i = 0; i < 2; ++i) {
      EXPECT_NEAR(marginal(box, Party::A, i), marginal_bias(s.state, s.alice[i]), 1e-12);
      EXPECT_NEAR(marginal(box, Party::B, i), marginal_bias(s.state, s.bob[i]), 1e-12);
    }
    EXPECT_LE(ic_ab_satisfied(box).lhs, 1.0 + 1e-9);
    EXPECT_LE(ic_ba_satisfied(box).lhs, 1.0 + 1e-9);
    EXPECT_LE(max_chsh(box), 2 * std::sqrt(2.0) + 1e-9);
  }
}

TEST(QuantumBox, Tsirelson) {
  const auto box = quantum_box(tsirelson_scenario());
  EXPECT_NEAR(max_chsh(box), 2 * std::sqrt(2.0), 1e-9);
  for (LRInput in : {LRInput::A0, LRInput::A1, LRInput::B0, LRInput::B1}) EXPECT_TRUE(is_locally_random(box, in));
}

TEST(QuantumBox, NearProductStateIsClassical) {
  std::mt19937_64 gen(43);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_scenario(gen);
    s.state.beta = 1e-6;
    EXPECT_LE(max_chsh(quantum_box(s)), 2.0 + 1e-9);
  }
}

TEST(QuantumBox, RejectsBadState) {
  EXPECT_THROW(quantum_box(uniform_scenario(0.0, 1.0, 0.0)), DomainError);
  EXPECT_THROW(quantum_box(uniform_scenario(pi / 2, 1.0, 0.0)), DomainError);
}

TEST(MarginalBias, Examples) {
  EXPECT_NEAR(marginal_bias({0.3, 0.0}, {pi / 2, 1.0}), 0.5, 1e-15);
  EXPECT_NEAR(marginal_bias({pi / 4, 0.0}, {0.7, 1.0}), 0.5, 1e-15);
  EXPECT_NEAR(marginal_bias({pi / 6, 0.0}, {0.0, 0.0}), 0.75, 1e-15);
}

TEST(CabelloConstraints, Examples) {
  auto t = solve_cabello_constraints({pi / 4, 0.0}, 1.0, pi / 2);
  EXPECT_NEAR(t[0], pi / 2, 1e-15);
  t = solve_cabello_constraints({pi / 6, 0.0}, 1.0, pi / 2);
  EXPECT_NEAR(t[0], pi / 3, 1e-14);
  EXPECT_NEAR(std::pow(std::cos(t[0] / 2), 2), 0.75, 1e-14);
  t = solve_cabello_constraints({0.4, 0.0}, 1.1, 1.1);
  EXPECT_EQ(t[0], t[1]);
}

TEST(CabelloConstraints, ZeroHardyCells) {
  std::mt19937_64 gen(44);
  std::uniform_real_distribution<double> beta(0.01, pi / 2 - 0.01), theta(0.01, pi - 0.01), phase(0, 2 * pi);
  for (int trial = 0; trial < 500; ++trial) {
    const PureState st{beta(gen), phase(gen)};
    const auto s = cabello_scenario(st, theta(gen), theta(gen));
    for (double th : {s.alice[1].theta, s.bob[1].theta}) {
      EXPECT_GT(th, 0.0);
      EXPECT_LT(th, pi);
    }
    EXPECT_NEAR(joint_probability(s, 1, 1, 0, 1), 0.0, 1e-10);
    EXPECT_NEAR(joint_probability(s, 1, 1, 1, 0), 0.0, 1e-10);
  }
}

TEST(CabelloConstraints, Degenerate) {
  EXPECT_THROW(solve_cabello_constraints({0.3, 0.0}, 0.0, 1.0), DegenerateConstraintError);
  EXPECT_THROW(solve_cabello_constraints({0.3, 0.0}, 1.0, pi), DegenerateConstraintError);
  EXPECT_THROW(solve_cabello_constraints({0.0, 0.0}, 1.0, 1.0), DegenerateConstraintError);
  EXPECT_THROW(q4_minus_q1_closed_form({0.3, 0.0}, 0.0, 1.0), DegenerateConstraintError);
}

TEST(ClosedForm, SymmetricMaximallyEntangled) {
  EXPECT_NEAR(q4_minus_q1_closed_form({pi / 4, 0.0}, pi / 2, pi / 2), 0.0, 1e-15);
}

TEST(ClosedForm, MatchesDirect) {
  std::mt19937_64 gen(2025);
  std::uniform_real_distribution<double> beta(0.01, pi / 2 - 0.01), theta(0.01, pi - 0.01);
  for (int trial = 0; trial < 500; ++trial) {
    const double b = beta(gen), tx = theta(gen), ty = theta(gen);
    EXPECT_NEAR(q4_minus_q1_closed_form({b, 0.0}, tx, ty), direct_q4_minus_q1(b, tx, ty), 1e-10);
  }
}

TEST(MaxQm, Global) {
  const auto r = max_cabello_qm();
  EXPECT_NEAR(r.value, 0.1078, 1e-3);
  EXPECT_NEAR(q4_minus_q1_closed_form(r.witness.state, r.witness.alice[0].theta, r.witness.bob[0].theta), r.value,
              1e-10);
  EXPECT_NEAR(r.q2, 0.0, 1e-10);
  EXPECT_NEAR(r.q3, 0.0, 1e-10);
  EXPECT_FALSE(r.beta_forced);
}

TEST(MaxQm, FreePhasesAgree) {
  const auto canonical = max_cabello_qm();
  const auto free = max_cabello_qm(std::nullopt, {}, PhaseMode::Free);
  EXPECT_NEAR(free.value, canonical.value, 1e-8);
  EXPECT_NEAR(free.q2, 0.0, 1e-10);
  EXPECT_NEAR(free.q3, 0.0, 1e-10);
}

TEST(MaxQm, SingleInputCases) {
  const auto c12 = max_cabello_qm(12), c13 = max_cabello_qm(13);
  const auto c14 = max_cabello_qm(14), c15 = max_cabello_qm(15);
  EXPECT_NEAR(c12.value, 0.0990, 1e-3);
  EXPECT_NEAR(c14.value, 0.0990, 1e-3);
  EXPECT_NEAR(c13.value, 0.0714, 1e-3);
  EXPECT_NEAR(c15.value, 0.0714, 1e-3);
  EXPECT_NEAR(c12.value, c14.value, 1e-6);
  EXPECT_NEAR(c13.value, c15.value, 1e-6);
  for (const auto* r : {&c12, &c13, &c14, &c15}) {
    EXPECT_TRUE(r->lr_verified);
    EXPECT_FALSE(r->beta_forced);
  }
}

TEST(MaxQm, MultiInputCasesVanish) {
  for (int id = 1; id <= 11; ++id) {
    const auto r = max_cabello_qm(id);
    EXPECT_LE(r.value, 1e-8) << "case " << id;
    EXPECT_TRUE(r.lr_verified) << "case " << id;
    const bool pinned = id <= 5 || id == 10 || id == 11;
    EXPECT_EQ(r.beta_forced, pinned) << "case " << id;
    if (r.beta_forced) {
      EXPECT_NEAR(r.forced_beta, pi / 4, 1e-15);
    }
  }
}

TEST(MaxHardy, Global) {
  const auto r = max_hardy_qm();
  EXPECT_NEAR(r.value, (5 * std::sqrt(5.0) - 11) / 2, 1e-8);
  EXPECT_NEAR(r.value, 0.0902, 1e-3);
  EXPECT_NEAR(r.q1, 0.0, 1e-10);
  EXPECT_NEAR(r.q2, 0.0, 1e-10);
  EXPECT_NEAR(r.q3, 0.0, 1e-10);
}

TEST(MaxHardy, Slices) {
  EXPECT_NEAR(max_hardy_qm({}, pi / 4).value, 0.0, 1e-12);
  EXPECT_LE(max_hardy_qm({}, 1e-4).value, 1e-6);
  EXPECT_THROW(max_hardy_qm({}, 0.0), DomainError);
}
