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
#include <utility>
#include <vector>

#include "towerlab/projline.hpp"

namespace towerlab {

/// Named check outcomes; carries failures instead of throwing so callers can
/// report them one by one.
struct CheckReport {
  std::vector<std::pair<std::string, bool>> checks;

  void add(std::string name, bool ok) { checks.emplace_back(std::move(name), ok); }
  bool all_passed() const {
    for (const auto& [name, ok] : checks) {
      if (!ok) return false;
    }
    return true;
  }
  std::vector<std::string> failed() const {
    std::vector<std::string> out;
    for (const auto& [name, ok] : checks) {
      if (!ok) out.push_back(name);
    }
    return out;
  }
};

/// The degree-(q+1) cyclic cover of P^1 attached to a point Q of
/// P^1(F_{q^2}) \ P^1(F_q): the quotient of P^1 by the order-(q+1) isotropy
/// group of Q inside PGL2(F_q). Carries everything downstream construction
/// steps need: theta and its conjugate, the cover in closed form, a generator
/// of the isotropy group, and the loci R and S.
struct SingerData {
  const FieldTower* tower = nullptr;
  std::uint64_t q = 0;
  FieldElem a, b;            // trace and norm of theta, in F_q
  FieldElem theta, theta_bar;  // in F_{q^2}
  P1Point Q, Q_bar;          // (theta : 1), (theta_bar : 1)
  Mobius generator;          // order q+1, fixes Q and Q_bar, over F_q
  RatMap f;                  // (x^{q+1} - a*x + b)/(x^q - x) over F_q
  std::vector<P1Point> R;    // P^1(F_{q^2}) \ P^1(F_q), canonical order
  std::vector<P1Point> S;    // P^1(F_q), canonical order
};

/// Build the cover from an irreducible quadratic X^2 - a*X + b over the
/// tower base. theta is the deterministically first root in F_{q^2}; the
/// isotropy generator comes from the multiplication action of a generator of
/// F_{q^2}^* written in the basis {1, theta}, reduced mod scalars. The
/// verification suite runs as part of construction and a failure aborts.
/// The tower must have at least two levels and outlive the result.
SingerData build_singer(const FieldTower& tower, const FieldElem& a, const FieldElem& b);

/// The deterministically first (a, b) with X^2 - a*X + b irreducible over
/// the tower base, in lexicographic element-index order.
std::pair<FieldElem, FieldElem> canonical_quadratic(const FieldCtx& base);

/// The checks backing the cover's claimed geometry:
///   fixes_Q_Qbar_inf, totally_ramified_at_Q_Qbar, infinity_fiber_split,
///   no_other_ramification, galois_invariant, group_transitive_on_S.
CheckReport verify_cover(const SingerData& sd);

/// {f(P) : P in R}, deduplicated, canonical order.
std::vector<P1Point> image_of_R(const SingerData& sd);

/// image_of_R equals the trace fiber {(g : 1) : Tr(g) = Tr(theta)} as a set,
/// and both have exactly q elements.
bool trace_fiber_image_check(const SingerData& sd);

/// Conjugating f by mu : x -> (x - theta)/(x - theta_bar) gives exactly
/// x^{q+1}, and the norm of mu(P) is 1 for every P in S. When swapped is
/// set, mu is built with theta and theta_bar exchanged (the result is the
/// same map by symmetry).
bool mu_conjugation_check(const SingerData& sd, bool swapped = false);

/// All q+1 powers of the Singer generator, identity first.
std::vector<Mobius> singer_group(const SingerData& sd);

}  // namespace towerlab
