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

#include "nlbox/box.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "nlbox/errors.hpp"

namespace nlbox {
namespace {

std::string cell_name(int r, int c) {
  return fmt::format("P({}{}|{}{})", c >> 1, c & 1, r >> 1, r & 1);
}

double row_sum(const JointDistribution& box, int r) {
  double s = 0.0;
  for (int c = 0; c < 4; ++c) s += box.entry(r, c);
  return s;
}

// P(outcome 0 | input) for `party`, computed with the other party's input
// fixed to `other`.
double marginal_at(const JointDistribution& box, Party party, int input, int other) {
  if (party == Party::A) return box(0, 0, input, other) + box(0, 1, input, other);
  return box(0, 0, other, input) + box(1, 0, other, input);
}

double correlator(const JointDistribution& box, int x, int y) {
  return box(0, 0, x, y) + box(1, 1, x, y) - box(0, 1, x, y) - box(1, 0, x, y);
}

void check_bit(int v, const char* what) {
  if (v != 0 && v != 1) throw MalformedInputError(fmt::format("{} must be 0 or 1, got {}", what, v));
}

}  // namespace

std::string to_string(Party party) { return party == Party::A ? "A" : "B"; }

std::string to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::Positivity:
      return "positivity";
    case ConstraintKind::Normalization:
      return "normalization";
    case ConstraintKind::NoSignaling:
      return "no-signaling";
  }
  return "unknown";
}

JointDistribution JointDistribution::with_entry(int r, int c, double value) const {
  Table p = p_;
  p.at(r).at(c) = value;
  return JointDistribution(p);
}

JointDistribution JointDistribution::uniform() {
  Table p;
  for (auto& row : p) row.fill(0.25);
  return JointDistribution(p);
}

double max_abs_diff(const JointDistribution& lhs, const JointDistribution& rhs) {
  double m = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m = std::max(m, std::abs(lhs.entry(r, c) - rhs.entry(r, c)));
  return m;
}

bool ValidationReport::has(ConstraintKind kind, const std::string& location) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) {
    return v.kind == kind && v.location == location;
  });
}

ValidationReport validate_box(const JointDistribution& box, double tol) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (!std::isfinite(box.entry(r, c)))
        throw MalformedInputError(fmt::format("non-finite entry {}", cell_name(r, c)));

  ValidationReport report;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (box.entry(r, c) < -tol)
        report.violations.push_back({ConstraintKind::Positivity, cell_name(r, c), -box.entry(r, c)});

  for (int r = 0; r < 4; ++r) {
    const double dev = std::abs(row_sum(box, r) - 1.0);
    if (dev > tol)
      report.violations.push_back(
          {ConstraintKind::Normalization, fmt::format("row XY={}{}", r >> 1, r & 1), dev});
  }

  for (Party party : {Party::A, Party::B}) {
    for (int input = 0; input < 2; ++input) {
      const double dev = std::abs(marginal_at(box, party, input, 0) - marginal_at(box, party, input, 1));
      if (dev > tol)
        report.violations.push_back(
            {ConstraintKind::NoSignaling, fmt::format("{} input {}", to_string(party), input), dev});
    }
  }
  return report;
}

void require_valid(const JointDistribution& box, double tol) {
  const ValidationReport report = validate_box(box, tol);
  if (!report.ok()) {
    const Violation& v = report.violations.front();
    throw ValidationError(fmt::format("invalid box: {} violated at {} (magnitude {:.3g})", to_string(v.kind),
                                      v.location, v.magnitude));
  }
}

CorrelatorForm to_correlators(const JointDistribution& box, double tol) {
  require_valid(box, tol);
  CorrelatorForm corr;
  for (int i = 0; i < 2; ++i) {
    corr.c_x[i] = 2.0 * marginal_at(box, Party::A, i, 0) - 1.0;
    corr.c_y[i] = 2.0 * marginal_at(box, Party::B, i, 0) - 1.0;
  }
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) corr.c_xy[x][y] = correlator(box, x, y);
  return corr;
}

JointDistribution from_correlators(const CorrelatorForm& corr, double tol) {
  auto in_range = [tol](double v) { return std::isfinite(v) && std::abs(v) <= 1.0 + tol; };
  for (int i = 0; i < 2; ++i) {
    if (!in_range(corr.c_x[i]) || !in_range(corr.c_y[i]))
      throw InfeasibleCorrelatorError(fmt::format("marginal correlator for input {} outside [-1,1]", i));
    for (int j = 0; j < 2; ++j)
      if (!in_range(corr.c_xy[i][j]))
        throw InfeasibleCorrelatorError(fmt::format("correlator C_{}{} = {} outside [-1,1]", i, j, corr.c_xy[i][j]));
  }

  JointDistribution::Table p{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double sa = a ? -1.0 : 1.0;
          const double sb = b ? -1.0 : 1.0;
          const double v = 0.25 * (1.0 + sa * corr.c_x[x] + sb * corr.c_y[y] + sa * sb * corr.c_xy[x][y]);
          if (v < -tol)
            throw InfeasibleCorrelatorError(
                fmt::format("reconstructed {} = {} is negative", cell_name(JointDistribution::row(x, y),
                                                                          JointDistribution::col(a, b)), v));
          p[JointDistribution::row(x, y)][JointDistribution::col(a, b)] = v;
        }
  return JointDistribution(p);
}

JointDistribution local_vertex(const LocalVertexLabel& label) {
  JointDistribution::Table p{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const int a = (label.alpha & x) ^ label.beta;
      const int b = (label.gamma & y) ^ label.delta;
      p[JointDistribution::row(x, y)][JointDistribution::col(a, b)] = 1.0;
    }
  return JointDistribution(p);
}

JointDistribution nonlocal_vertex(const NonlocalVertexLabel& label) {
  JointDistribution::Table p{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const int parity = (x & y) ^ (label.alpha & x) ^ (label.beta & y) ^ label.gamma;
      for (int a = 0; a < 2; ++a) {
        const int b = a ^ parity;
        p[JointDistribution::row(x, y)][JointDistribution::col(a, b)] = 0.5;
      }
    }
  return JointDistribution(p);
}

JointDistribution pr_box() { return nonlocal_vertex({}); }

std::array<LocalVertexLabel, 16> all_local_labels() {
  std::array<LocalVertexLabel, 16> out;
  for (int i = 0; i < 16; ++i)
    out[i] = {static_cast<bool>(i & 8), static_cast<bool>(i & 4), static_cast<bool>(i & 2), static_cast<bool>(i & 1)};
  return out;
}

std::array<NonlocalVertexLabel, 8> all_nonlocal_labels() {
  std::array<NonlocalVertexLabel, 8> out;
  for (int i = 0; i < 8; ++i)
    out[i] = {static_cast<bool>(i & 4), static_cast<bool>(i & 2), static_cast<bool>(i & 1)};
  return out;
}

JointDistribution mix(std::span<const JointDistribution> boxes, std::span<const double> weights, double tol) {
  if (boxes.size() != weights.size())
    throw NormalizationError(fmt::format("{} boxes but {} weights", boxes.size(), weights.size()));
  if (boxes.empty()) throw NormalizationError("empty mixture");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < -tol) throw NormalizationError(fmt::format("negative weight {}", w));
    total += w;
  }
  if (std::abs(total - 1.0) > tol) throw NormalizationError(fmt::format("weights sum to {}", total));

  JointDistribution::Table p{};
  for (std::size_t k = 0; k < boxes.size(); ++k)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) p[r][c] += weights[k] * boxes[k].entry(r, c);
  return JointDistribution(p);
}

double chsh_value(const JointDistribution& box, int x, int y) {
  check_bit(x, "x");
  check_bit(y, "y");
  double sum = 0.0;
  for (int xp = 0; xp < 2; ++xp)
    for (int yp = 0; yp < 2; ++yp) sum += correlator(box, xp, yp);
  return std::abs(sum - 2.0 * correlator(box, x, y));
}

double max_chsh(const JointDistribution& box) {
  double m = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) m = std::max(m, chsh_value(box, x, y));
  return m;
}

double marginal(const JointDistribution& box, Party party, int input, double tol) {
  check_bit(input, "input");
  const double first = marginal_at(box, party, input, 0);
  const double second = marginal_at(box, party, input, 1);
  if (std::abs(first - second) > tol)
    throw SignalingError(fmt::format("party {} input {} marginal depends on remote input ({} vs {})",
                                     to_string(party), input, first, second),
                         first, second);
  return first;
}

}  // namespace nlbox
