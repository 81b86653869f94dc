// Copyright 2026-present the towerlab project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "towerlab/toweranalysis.hpp"

namespace towerlab {

/// Human-readable polynomial in descending powers: "x^6 + x + 2",
/// coefficients equal to -1 rendered as subtraction ("x^5 - x").
std::string poly_display(const Poly& f);

/// "(num)/(den)" with the denominator's scalar factored out when it is not
/// monic, e.g. "(x^8 + 2)/(5(x^7 - x))".
std::string ratmap_display(const RatMap& F);

/// The spec serialized as deterministic JSON (stable key order, canonical
/// element text), ending with a newline.
std::string tower_spec_json(const TowerSpec& spec);

/// {"checks": {...}, "all_passed": bool} for a named check report.
std::string check_report_json(const CheckReport& report);

/// CSV table: m, degree, genus, delta, n_lower, lambda_num, lambda_den,
/// lambda_decimal, target_num, target_den, weil_ok. Undefined lambda cells
/// carry "-".
std::string limit_report_csv(const LimitReport& report);

/// The limit report as JSON rows (exact rationals as strings).
std::string limit_report_json(const LimitReport& report);

/// Graphviz DOT with S/R locus attributes on nodes.
std::string graph_dot(const CorrespondenceGraph& graph);

}  // namespace towerlab
