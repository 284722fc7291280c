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

#include "nlbox/local_randomness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "nlbox/errors.hpp"
#include "nlbox/ic.hpp"

namespace nlbox {
namespace {

constexpr int kEta = 11;

using enum LRInput;

const std::array<std::vector<LRInput>, kNumLRCases>& case_inputs() {
  static const std::array<std::vector<LRInput>, kNumLRCases> inputs = {{
      {A0, A1, B0, B1},
      {A0, A1, B0},
      {A0, A1, B1},
      {A0, B0, B1},
      {A1, B0, B1},
      {A0, A1},
      {B0, B1},
      {A1, B1},
      {A0, B0},
      {A0, B1},
      {A1, B0},
      {A0},
      {A1},
      {B0},
      {B1},
  }};
  return inputs;
}

// One row per case; relations separated by ';', chains by '='.
const std::array<const char*, kNumLRCases> kRelations = {
    "c2=c4=c7=c8=c9=0; c1=c3=eta-c5; c5=c10",
    "c4=c7=c8=0; c3+c5=eta; c1+c2=c3; c9+c10=c5",
    "c2=c7=c9=0; c3+c10=eta; c1+c8=c3; c4+c5=c10",
    "c2=c7=c9=0; c1+c5=eta; c3+c4=c1; c8+c10=c5",
    "c4=c7=c8=0; c1+c10=eta; c3+c9=c1; c2+c5=c10",
    "c3+c4+c5=eta; c3=c1+c2+c7+c8; c4+c5=c9+c10",
    "c1+c2+c5=eta; c1=c3+c4+c7+c9; c2+c5=c8+c10",
    "c1+c8=c3+c9=eta-c10; c10=c2+c4+c5+c7",
    "c1+c2=c3+c4=eta-c5; c5=c7+c8+c9+c10",
    "c2=c7=c9=0; c3+c4+c5=c1+c8+c10=eta",
    "c4=c7=c8=0; c1+c2+c5=c3+c9+c10=eta",
    "c1+c2+c7+c8+c9+c10=c3+c4+c5=eta",
    "c1+c2+c4+c5+c7+c8=c3+c9+c10=eta",
    "c3+c4+c7+c8+c9+c10=c1+c2+c5=eta",
    "c2+c3+c4+c5+c7+c9=c1+c8+c10=eta",
};

std::string trim(std::string s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

LinearExpr parse_expr(const std::string& text) {
  LinearExpr e;
  std::size_t pos = 0;
  double sign = 1.0;
  while (pos < text.size()) {
    const char ch = text[pos];
    if (ch == '+' || ch == '-') {
      sign = ch == '-' ? -1.0 : 1.0;
      ++pos;
    } else if (text.compare(pos, 3, "eta") == 0) {
      e.terms[kEta] += sign;
      pos += 3;
    } else if (ch == 'c') {
      std::size_t end = pos + 1;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      e.terms.at(std::stoi(text.substr(pos + 1, end - pos - 1)) - 1) += sign;
      pos = end;
    } else if (ch == '0') {
      ++pos;
    } else {
      throw MalformedInputError(fmt::format("bad relation term in '{}'", text));
    }
  }
  return e;
}

std::string format_number(double v) {
  return v == std::round(v) ? fmt::format("{}", static_cast<long long>(v)) : fmt::format("{}", v);
}

}  // namespace

std::string to_string(LRInput input) {
  switch (input) {
    case A0: return "0_A";
    case A1: return "1_A";
    case B0: return "0_B";
    case B1: return "1_B";
  }
  return "?";
}

Party party_of(LRInput input) { return input == A0 || input == A1 ? Party::A : Party::B; }

int input_bit(LRInput input) { return input == A1 || input == B1 ? 1 : 0; }

LRCase lr_case(int id) {
  if (id < 1 || id > kNumLRCases) throw MalformedInputError(fmt::format("case id {} is outside 1..15", id));
  return {id, case_inputs()[id - 1]};
}

std::vector<LRCase> all_lr_cases() {
  std::vector<LRCase> cases;
  for (int id = 1; id <= kNumLRCases; ++id) cases.push_back(lr_case(id));
  return cases;
}

bool is_locally_random(const JointDistribution& box, LRInput input, double tol) {
  return std::abs(marginal(box, party_of(input), input_bit(input), tol) - 0.5) <= tol;
}

double eta(const CabelloCoefficients& c) { return (1.0 - c.c(6) - c.c(11)) / 2.0; }

double LinearExpr::evaluate(const CabelloCoefficients& c) const {
  double v = constant + terms[kEta] * eta(c);
  for (int k = 0; k < 11; ++k) v += terms[k] * c.w[k];
  return v;
}

std::string LinearExpr::render() const {
  std::string out;
  auto append = [&out](double coeff, const std::string& name) {
    if (coeff == 0.0) return;
    const bool neg = coeff < 0;
    if (neg) out += "−";
    else if (!out.empty()) out += "+";
    if (std::abs(coeff) != 1.0) out += format_number(std::abs(coeff));
    out += name;
  };
  append(terms[kEta], "η");
  for (int k = 0; k < 11; ++k) append(terms[k], fmt::format("c{}", k + 1));
  if (constant != 0.0 || out.empty()) {
    if (!out.empty() && constant > 0) out += "+";
    out += constant < 0 ? "−" + format_number(-constant) : format_number(constant);
  }
  return out;
}

std::string ConstraintSystem::render() const {
  std::vector<std::string> parts;
  for (const auto& rel : relations) {
    std::vector<std::string> sides;
    for (const auto& e : rel) sides.push_back(e.render());
    parts.push_back(fmt::format("{}", fmt::join(sides, " = ")));
  }
  return fmt::format("{}", fmt::join(parts, "; "));
}

std::vector<AffineEquality> ConstraintSystem::to_equalities() const {
  // Each link e_j = e_{j+1} becomes (e_j - e_{j+1}) . c = const, with
  // eta = 1/2 - c6/2 - c11/2 substituted.
  std::vector<AffineEquality> eqs;
  for (const auto& rel : relations)
    for (std::size_t j = 0; j + 1 < rel.size(); ++j) {
      AffineEquality eq{std::vector<double>(11, 0.0), 0.0};
      double constant = rel[j].constant - rel[j + 1].constant;
      for (int k = 0; k < 11; ++k) eq.coeffs[k] = rel[j].terms[k] - rel[j + 1].terms[k];
      const double e = rel[j].terms[kEta] - rel[j + 1].terms[kEta];
      eq.coeffs[5] -= e / 2;
      eq.coeffs[10] -= e / 2;
      constant += e / 2;
      eq.rhs = 0.0 - constant;
      eqs.push_back(std::move(eq));
    }
  return eqs;
}

bool ConstraintSystem::satisfies(const CabelloCoefficients& c, double tol) const {
  for (const auto& rel : relations) {
    const double first = rel.front().evaluate(c);
    for (const auto& e : rel)
      if (std::abs(e.evaluate(c) - first) > tol) return false;
  }
  return true;
}

ConstraintSystem lr_constraints(const LRCase& lr_case) {
  if (lr_case.id < 1 || lr_case.id > kNumLRCases)
    throw MalformedInputError(fmt::format("case id {} is outside 1..15", lr_case.id));
  ConstraintSystem sys;
  sys.case_id = lr_case.id;
  for (const auto& rel_text : split(kRelations[lr_case.id - 1], ';')) {
    Relation rel;
    for (const auto& side : split(rel_text, '=')) rel.push_back(parse_expr(side));
    sys.relations.push_back(std::move(rel));
  }
  const SearchDomain domain = [&] {
    SearchDomain d = SearchDomain::simplex(11);
    for (const auto& eq : sys.to_equalities()) d.add_equality(eq);
    return d;
  }();
  const AffineParameterization param(domain.all_equalities(), 11);
  for (int k = 0; k < 11; ++k)
    if (param.is_determined(k) && std::abs(param.determined_value(k)) < 1e-12) sys.implied_zeros.push_back(k + 1);
  return sys;
}

WitnessResult feasibility_witness(const LRCase& lr_case, std::uint64_t seed, std::size_t budget) {
  const ConstraintSystem sys = lr_constraints(lr_case);
  const std::vector<AffineEquality> eqs = sys.to_equalities();
  const AffineSimplexSampler sampler(eqs, 11);
  Rng rng(seed + static_cast<std::uint64_t>(lr_case.id));

  WitnessResult result;
  result.best_max_lhs = std::numeric_limits<double>::infinity();
  while (result.draws < budget) {
    std::size_t used = 0;
    const auto x = sampler.draw(rng, budget - result.draws, &used);
    result.draws += used;
    if (!x) break;
    CabelloCoefficients c = CabelloCoefficients::from_span(*x);
    for (double& v : c.w) v = std::max(v, 0.0);
    const auto lhs = ic_cabello_lhs(c);
    const double worst = std::max(lhs.first, lhs.second);
    result.best_max_lhs = std::min(result.best_max_lhs, worst);
    if (worst <= 1.0) {
      result.witness = c;
      result.lhs = lhs;
      break;
    }
  }
  return result;
}

std::vector<Table2Row> load_table2(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInputError(fmt::format("cannot open fixture '{}'", path));
  std::string line;
  std::getline(in, line);
  if (trim(line) != "case,c1,c2,c3,c4,c5,c6,c7,c8,c9,c10,c11,lhs1,lhs2")
    throw MalformedInputError(fmt::format("unexpected fixture header in '{}'", path));
  std::vector<Table2Row> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 14) throw MalformedInputError(fmt::format("{}:{}: expected 14 fields", path, line_no));
    try {
      Table2Row row;
      row.case_id = std::stoi(fields[0]);
      for (int k = 0; k < 11; ++k) row.c[k] = std::stod(fields[k + 1]);
      row.lhs1 = std::stod(fields[12]);
      row.lhs2 = std::stod(fields[13]);
      rows.push_back(row);
    } catch (const std::logic_error&) {
      throw MalformedInputError(fmt::format("{}:{}: bad number", path, line_no));
    }
  }
  return rows;
}

std::vector<Table2Check> verify_table2(const std::vector<Table2Row>& rows, double tol) {
  std::vector<Table2Check> out;
  for (const auto& row : rows) {
    Table2Check chk;
    chk.row = row;
    const CabelloCoefficients c = CabelloCoefficients::from_span(row.c);
    try {
      check_coefficients(c.w);
      chk.on_simplex = true;
    } catch (const CoefficientError&) {
      chk.on_simplex = false;
    }
    // Recompute even for rows off the simplex so the diff can be shown.
    const auto lhs = ic_cabello_lhs(c, std::numeric_limits<double>::infinity());
    chk.lhs1 = lhs.first;
    chk.lhs2 = lhs.second;
    chk.in_case = lr_constraints(lr_case(row.case_id)).satisfies(c);
    chk.matches = std::abs(chk.lhs1 - row.lhs1) <= tol && std::abs(chk.lhs2 - row.lhs2) <= tol;
    chk.ic_ok = chk.lhs1 <= 1.0 + kDefaultTol && chk.lhs2 <= 1.0 + kDefaultTol;
    out.push_back(chk);
  }
  return out;
}

}  // namespace nlbox
