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

// Acceptance checks.  Prints one PASS/FAIL line per criterion; with
// arguments only the listed criteria run.  Exit status is 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "nlbox/cabello.hpp"
#include "nlbox/cli.hpp"
#include "nlbox/ic.hpp"
#include "nlbox/io.hpp"
#include "nlbox/local_randomness.hpp"
#include "nlbox/quantum.hpp"
#include "oracles.hpp"

using namespace nlbox;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct CliRun {
  int code;
  Json json;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (!err.str().empty()) std::cerr << err.str();
  return {code, out.str().empty() ? Json() : Json::parse(out.str())};
}

bool c6_corner(const Json& witness, double tol) {
  const auto c = coeffs_from_json(witness);
  for (int k = 1; k <= 11; ++k)
    if (std::abs(c.c(k) - (k == 6 ? 1.0 : 0.0)) > tol) return false;
  return true;
}

Outcome ns_bound() {
  const auto r = cli({"max", "--model", "ns"});
  const double h = r.json["hardy"]["value"], c = r.json["cabello"]["value"];
  const bool pass = r.code == 0 && std::abs(h - 0.5) <= 1e-9 && std::abs(c - 0.5) <= 1e-9 &&
                    c6_corner(r.json["hardy"]["witness"], 1e-9) && c6_corner(r.json["cabello"]["witness"], 1e-9);
  return {pass, fmt::format("hardy={:.12f} cabello={:.12f}, witness c6=1", h, c)};
}

Outcome ic_bound() {
  const auto r = cli({"max", "--model", "ic", "--restarts", "64"});
  const double v = r.json["value"], s1 = r.json["slack1"], s2 = r.json["slack2"];
  const bool pass = r.code == 0 && std::abs(v - 0.20717) <= 1e-3 && s1 >= 0 && s1 <= 1e-6 && s2 >= 0 && s2 <= 1e-6;
  return {pass, fmt::format("value={:.7f} (target 0.20717 +- 1e-3), slacks={:.2e},{:.2e}", v, s1, s2)};
}

Outcome qm_bound() {
  const auto r = cli({"max", "--model", "qm"});
  const double v = r.json["value"];
  return {r.code == 0 && std::abs(v - 0.1078) <= 1e-3, fmt::format("value={:.7f} (target 0.1078 +- 1e-3)", v)};
}

Outcome qm_hardy_bound() {
  const auto r = cli({"max", "--model", "qm-hardy"});
  const double v = r.json["value"];
  return {r.code == 0 && std::abs(v - 0.0902) <= 1e-3, fmt::format("value={:.7f} (target 0.0902 +- 1e-3)", v)};
}

Outcome table2_reproduction() {
  const auto checks = verify_table2(load_table2(std::string(NLBOX_DATA_DIR) + "/table2.csv"));
  std::vector<std::string> bad;
  std::map<int, int> row_no;
  std::map<std::pair<int, int>, std::pair<double, double>> got;
  for (const auto& c : checks) {
    const int n = ++row_no[c.row.case_id];
    got[{c.row.case_id, n}] = {c.lhs1, c.lhs2};
    if (std::abs(c.lhs1 - c.row.lhs1) > kTable2Tol || std::abs(c.lhs2 - c.row.lhs2) > kTable2Tol)
      bad.push_back(fmt::format("case {} row {}: printed ({:.4f}, {:.4f}) recomputed ({:.4f}, {:.4f})", c.row.case_id, n,
                                c.row.lhs1, c.row.lhs2, c.lhs1, c.lhs2));
  }
  auto at4 = [](double v) { return fmt::format("{:.4f}", v); };
  bool spots = true;
  for (auto [key, want] : std::vector<std::pair<std::pair<int, int>, std::pair<const char*, const char*>>>{
           {{1, 2}, {"0.0400", "0.0400"}}, {{2, 2}, {"0.0800", "0.4000"}}, {{5, 3}, {"0.9000", "0.9000"}}}) {
    const auto v = got.at(key);
    spots = spots && at4(v.first) == want.first && at4(v.second) == want.second;
  }
  std::string detail = fmt::format("{}/{} rows within 5e-5, spot rows {}", checks.size() - bad.size(), checks.size(),
                                   spots ? "exact" : "MISMATCH");
  for (const auto& b : bad) detail += "\n        " + b;
  return {checks.size() == 45 && bad.empty() && spots, detail};
}

Outcome table3_reproduction() {
  const auto r = cli({"table3", "--restarts", "64"});
  std::map<int, double> v;
  for (const auto& row : r.json["rows"]) v[row["case"]] = row["raw_max"];
  bool pass = v.size() == 15;
  double worst_zero = 0.0;
  for (int id = 1; id <= 11; ++id) {
    worst_zero = std::max(worst_zero, v[id]);
    pass = pass && v[id] <= 1e-8;
  }
  for (int id : {12, 14}) pass = pass && std::abs(v[id] - 0.0990) <= 1e-3;
  for (int id : {13, 15}) pass = pass && std::abs(v[id] - 0.0714) <= 1e-3;
  return {pass, fmt::format("12={:.4f} 14={:.4f} 13={:.4f} 15={:.4f}, max over 1-11 = {:.1e}", v[12], v[14], v[13],
                            v[15], worst_zero)};
}

Outcome algebra_cross_check() {
  std::mt19937_64 gen(7);
  double worst_lhs = 0.0, worst_matrix = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto c = CabelloCoefficients::from_span(oracle::simplex_point(gen, 11));
    const auto lhs = ic_cabello_lhs(c);
    const auto ref = oracle::ic_sums(oracle::cabello(c.w));
    const auto box = cabello_box(c);
    worst_lhs = std::max({worst_lhs, std::abs(lhs.first - ic_ab_satisfied(box).lhs),
                          std::abs(lhs.second - ic_ba_satisfied(box).lhs), std::abs(lhs.first - ref[0]),
                          std::abs(lhs.second - ref[1])});
    worst_matrix = std::max({worst_matrix, max_abs_diff(cabello_matrix_closed_form(c), box),
                             max_abs_diff(box, JointDistribution(oracle::cabello(c.w)))});
  }
  return {worst_lhs <= 1e-12 && worst_matrix <= 1e-12,
          fmt::format("1000 points: max lhs diff {:.1e}, max matrix diff {:.1e}", worst_lhs, worst_matrix)};
}

Outcome lr_equivalence() {
  int failures = 0;
  for (const auto& c : all_lr_cases()) {
    const auto sys = lr_constraints(c);
    const auto eqs = sys.to_equalities();
    for (int k = 0; k < 200; ++k) {
      const auto cc = CabelloCoefficients::from_span(sample_affine_simplex(eqs, 11, 5000 * c.id + k));
      const auto box = cabello_box(cc);
      for (LRInput in : c.inputs) failures += !is_locally_random(box, in, 1e-9);
    }
    std::mt19937_64 gen(c.id);
    for (int k = 0; k < 200;) {
      const auto cc = CabelloCoefficients::from_span(oracle::simplex_point(gen, 11));
      if (sys.satisfies(cc, 1e-9)) continue;
      ++k;
      const auto box = cabello_box(cc);
      bool all_random = true;
      for (LRInput in : c.inputs) all_random = all_random && is_locally_random(box, in, 1e-9);
      failures += all_random;
    }
  }
  return {failures == 0, fmt::format("15 cases x 2 x 200 points, {} disagreements", failures)};
}

Outcome ic_sanity() {
  bool pass = true;
  const auto pr = pr_box();
  const double pr_ab = ic_ab_satisfied(pr).lhs, pr_ba = ic_ba_satisfied(pr).lhs, pr_rac = rac_simulate(pr).total;
  pass = pass && pr_ab == 2.0 && pr_ba == 2.0 && pr_rac == 2.0;
  double worst_local = 0.0, worst_rac = 0.0, worst_quantum = 0.0;
  for (const auto& l : all_local_labels()) {
    const auto v = local_vertex(l);
    worst_local = std::max({worst_local, ic_ab_satisfied(v).lhs, ic_ba_satisfied(v).lhs});
    worst_rac = std::max(worst_rac, rac_simulate(v).total);
  }
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> beta(0.001, pi / 2 - 0.001), theta(0, pi), phi(0, 2 * pi);
  std::vector<QuantumScenario> scenarios = {tsirelson_scenario()};
  for (int i = 0; i < 500; ++i) {
    QuantumScenario s;
    s.state = {beta(gen), phi(gen)};
    for (auto& d : s.alice) d = {theta(gen), phi(gen)};
    for (auto& d : s.bob) d = {theta(gen), phi(gen)};
    scenarios.push_back(s);
  }
  for (const auto& s : scenarios) {
    const auto box = quantum_box(s);
    worst_quantum = std::max({worst_quantum, ic_ab_satisfied(box).lhs, ic_ba_satisfied(box).lhs});
  }
  pass = pass && worst_local <= 1 + 1e-9 && worst_quantum <= 1 + 1e-9 && worst_rac <= 1.0;
  return {pass, fmt::format("PR lhs=({}, {}) RAC={} bits; max lhs local={:.3f} quantum={:.12f}; max local RAC={}", pr_ab,
                            pr_ba, pr_rac, worst_local, worst_quantum, worst_rac)};
}

Outcome closed_form_check() {
  std::mt19937_64 gen(10);
  std::uniform_real_distribution<double> beta(0.01, pi / 2 - 0.01), theta(0.01, pi - 0.01);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const PureState st{beta(gen), 0.0};
    const double tx = theta(gen), ty = theta(gen);
    const auto s = cabello_scenario(st, tx, ty);
    const double direct = joint_probability(s, 1, 1, 1, 1) - joint_probability(s, 0, 0, 0, 0);
    auto d = [](const MeasurementDirection& m) { return oracle::Dir{m.theta, m.phi}; };
    const double sv = oracle::quantum_p(st.beta, 0, d(s.alice[1]), d(s.bob[1]), 1, 1) -
                      oracle::quantum_p(st.beta, 0, d(s.alice[0]), d(s.bob[0]), 0, 0);
    const double closed = q4_minus_q1_closed_form(st, tx, ty);
    worst = std::max({worst, std::abs(closed - direct), std::abs(closed - sv)});
  }
  return {worst <= 1e-10, fmt::format("500 triples, max diff {:.1e}", worst)};
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 = none
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "NS bound", 1.0, ns_bound},
      {2, "IC bound", 30.0, ic_bound},
      {3, "QM Cabello bound", 60.0, qm_bound},
      {4, "QM Hardy bound", 60.0, qm_hardy_bound},
      {5, "table2 reproduction", 0.0, table2_reproduction},
      {6, "table3 reproduction", 300.0, table3_reproduction},
      {7, "Algebra cross-check", 0.0, algebra_cross_check},
      {8, "Local-randomness equivalence", 0.0, lr_equivalence},
      {9, "IC sanity", 0.0, ic_sanity},
      {10, "Closed-form check", 0.0, closed_form_check},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  bool all = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = fmt::format("{:.2f} s", secs);
    if (c.time_limit > 0) {
      timing += fmt::format(" / limit {:.0f} s", c.time_limit);
      if (secs >= c.time_limit) {
        o.pass = false;
        timing += " EXCEEDED";
      }
    }
    all = all && o.pass;
    std::cout << fmt::format("{} [{:2}] {}: {} ({})\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail, timing);
  }
  return all ? 0 : 1;
}
