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

#include "nlbox/io.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "nlbox/errors.hpp"

namespace nlbox {
namespace {

const char* kPairs[4] = {"00", "01", "10", "11"};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInputError(fmt::format("cannot open '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedInputError(fmt::format("{}: {}", what, e.what()));
  }
}

int pair_index(const std::string& s) {
  for (int i = 0; i < 4; ++i)
    if (s == kPairs[i]) return i;
  throw MalformedInputError(fmt::format("bad bit pair '{}'", s));
}

CabelloCoefficients coeffs_from_list(const std::vector<double>& v) {
  if (v.size() != 6 && v.size() != 11)
    throw MalformedInputError(fmt::format("expected 6 or 11 coefficients, got {}", v.size()));
  CabelloCoefficients c;
  std::copy(v.begin(), v.end(), c.w.begin());
  return c;
}

}  // namespace

Json box_to_json(const JointDistribution& box) {
  Json rows = Json::array();
  for (const auto& r : box.table()) rows.push_back(Json(std::vector<double>(r.begin(), r.end())));
  return Json{{"p", rows}};
}

JointDistribution box_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("p") || !j["p"].is_array() || j["p"].size() != 4)
    throw MalformedInputError("box JSON must be {\"p\": [4 rows of 4 numbers]}");
  JointDistribution::Table t{};
  for (int r = 0; r < 4; ++r) {
    const Json& row = j["p"][r];
    if (!row.is_array() || row.size() != 4) throw MalformedInputError(fmt::format("box row {} must have 4 entries", r));
    for (int c = 0; c < 4; ++c) {
      if (!row[c].is_number()) throw MalformedInputError(fmt::format("box entry ({}, {}) is not a number", r, c));
      t[r][c] = row[c].get<double>();
    }
  }
  return JointDistribution(t);
}

std::string box_to_csv(const JointDistribution& box) {
  std::string out = "XY,ab,prob\n";
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out += fmt::format("{},{},{}\n", kPairs[r], kPairs[c], box.entry(r, c));
  return out;
}

JointDistribution box_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (line.rfind("XY,ab,prob", 0) != 0) throw MalformedInputError("box CSV must start with header XY,ab,prob");
  JointDistribution::Table t{};
  std::array<std::array<bool, 4>, 4> seen{};
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream fields(line);
    std::string xy, ab, prob;
    std::getline(fields, xy, ',');
    std::getline(fields, ab, ',');
    std::getline(fields, prob);
    const int r = pair_index(xy), c = pair_index(ab);
    try {
      t[r][c] = std::stod(prob);
    } catch (const std::logic_error&) {
      throw MalformedInputError(fmt::format("bad probability '{}'", prob));
    }
    seen[r][c] = true;
  }
  for (const auto& row : seen)
    if (!std::all_of(row.begin(), row.end(), [](bool b) { return b; }))
      throw MalformedInputError("box CSV must list all 16 cells");
  return JointDistribution(t);
}

Json coeffs_to_json(const CabelloCoefficients& c) {
  return Json{{"c", std::vector<double>(c.w.begin(), c.w.end())}};
}

CabelloCoefficients coeffs_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("c") || !j["c"].is_array())
    throw MalformedInputError("coefficient JSON must be {\"c\": [...]}");
  std::vector<double> v;
  for (const auto& e : j["c"]) {
    if (!e.is_number()) throw MalformedInputError("coefficients must be numbers");
    v.push_back(e.get<double>());
  }
  return coeffs_from_list(v);
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw MalformedInputError(fmt::format("empty entry in '{}'", text));
    const std::string tok = item.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != tok.size()) throw MalformedInputError(fmt::format("'{}' is not a number", tok));
    out.push_back(v);
  }
  return out;
}

JointDistribution load_box(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    const std::string text = read_file(arg);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return box_from_json(parse_json(text, arg));
    return box_from_csv(text);
  }
  const auto v = parse_number_list(arg);
  if (v.size() != 16) throw MalformedInputError(fmt::format("inline box needs 16 numbers, got {}", v.size()));
  JointDistribution::Table t{};
  for (int i = 0; i < 16; ++i) t[i / 4][i % 4] = v[i];
  return JointDistribution(t);
}

CabelloCoefficients load_coeffs(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return coeffs_from_json(parse_json(read_file(arg), arg));
  return coeffs_from_list(parse_number_list(arg));
}

}  // namespace nlbox
