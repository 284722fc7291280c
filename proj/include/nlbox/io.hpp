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

// JSON and CSV forms of boxes and coefficient vectors.
//
//   box:          {"p": [[p00, p01, p10, p11], ...]}  rows XY, columns ab
//   box CSV:      XY,ab,prob
//   coefficients: {"c": [c1, ..., c11]}  (six entries mean a Hardy box)

#include <string>
#include <vector>

#include <json.hpp>

#include "nlbox/box.hpp"
#include "nlbox/cabello.hpp"

namespace nlbox {

using Json = nlohmann::ordered_json;

Json box_to_json(const JointDistribution& box);
/// Throws MalformedInputError on a wrong shape or non-numeric entry.
JointDistribution box_from_json(const Json& j);

std::string box_to_csv(const JointDistribution& box);
JointDistribution box_from_csv(const std::string& text);

Json coeffs_to_json(const CabelloCoefficients& c);
/// Accepts 6 or 11 entries; a Hardy vector is padded with zeros.
CabelloCoefficients coeffs_from_json(const Json& j);

/// "0.1, 0.2,0.3" -> {0.1, 0.2, 0.3}.
std::vector<double> parse_number_list(const std::string& text);

/// Treats `arg` as a file path when such a file exists, otherwise as an
/// inline comma list (16 row-major entries for a box, 6 or 11 weights for
/// coefficients).  Files may be JSON or, for boxes, CSV.
JointDistribution load_box(const std::string& arg);
CabelloCoefficients load_coeffs(const std::string& arg);

}  // namespace nlbox
