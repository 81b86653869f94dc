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

#include <optional>
#include <vector>

#include "towerlab/bigint.hpp"
#include "towerlab/towergen.hpp"

namespace towerlab {

/// Directed graph on P^1(F_{q^k}) with an edge x -> y exactly when
/// g(y) = f(x). Nodes are indexed by p1_id (finite points by element index,
/// infinity last); edges are stored through the two value tables.
struct CorrespondenceGraph {
  const FieldCtx* ctx = nullptr;
  std::uint32_t k = 0;
  std::vector<P1Point> nodes;        // id -> point
  std::vector<std::uint32_t> fval;   // id -> id of f(node)
  std::vector<std::uint32_t> gval;   // id -> id of g(node)
  std::vector<bool> in_S;            // rational over F_q
  std::vector<bool> in_R;            // known to lie in F_{q^2} \ F_q (set when 2 | k or k == 2)

  std::vector<std::uint32_t> out_neighbors(std::uint32_t id) const;
  std::uint64_t edge_count() const;
};

/// Requires the spec's tower to carry level k; q^k is capped by the budget.
CorrespondenceGraph build_graph(const TowerSpec& spec, std::uint32_t k);

/// Number of length-(m+1) node sequences following edges, exact.
BigUint count_chains(const CorrespondenceGraph& graph, unsigned m);
/// Same, restricted to nodes with allowed[id] set.
BigUint count_chains_masked(const CorrespondenceGraph& graph, unsigned m,
                            const std::vector<bool>& allowed);

/// (q+1)^{m+1}, cross-checked against the chain DP on the S-subgraph of the
/// level-1 graph; a mismatch aborts.
BigUint splitting_lower_bound(const TowerSpec& spec, unsigned m);

/// One tracked place profile of the genus recursion: a geometric place of
/// X_m above a chain through R, keyed by the last coordinate and the
/// ramification index of f_m at the place.
struct PlaceState {
  std::uint32_t last_id = 0;  // p1_id within F_{q^2}
  std::uint64_t e1 = 1;       // ramification index of f_m, a power of q+1
  BigUint count;              // geometric places sharing this profile
};

struct GenusLevel {
  unsigned m = 0;
  BigInt two_g_minus_2;
  BigUint delta;                  // ramification contribution at this level
  std::vector<PlaceState> states;  // sorted by (last_id, e1)
  bool anomalous = false;          // genus recursion left the valid range
};

/// The tame place-tracking recursion: seed level 0 with one place per point
/// of R carrying e1 = e_f, extend along fibers of g with the gcd splitting
/// rule, and accumulate 2g - 2 level by level. Ramification never leaves R
/// (checked; a violation aborts). In strict mode an anomalous level (odd or
/// negative 2g - 2 + 2) aborts; otherwise the ladder stops there with the
/// level marked.
std::vector<GenusLevel> genus_ladder_full(const TowerSpec& spec, unsigned m_max,
                                          bool strict = true);

/// Genus of X_1 computed independently: Riemann-Hurwitz on the first
/// projection from the root multiplicities of g(y) - f(x). Must agree with
/// the recursion, which is asserted.
BigUint level1_genus_oracle(const TowerSpec& spec);

struct LevelReport {
  unsigned m = 0;
  BigUint degree;   // (q+1)^m
  BigUint genus;
  BigUint delta;
  BigUint n_lower;  // (q+1)^{m+1}
  std::optional<Rational> lambda;  // n_lower / genus, absent while genus = 0
  bool weil_ok = true;             // Hasse-Weil sanity at k = 1 and 2
};

struct LimitReport {
  std::vector<LevelReport> rows;
  Rational target;  // 2/(q-2), also checked against 2#S/(#R-2)
};

/// Per-level table for 0 <= m <= m_max plus the limit target. The identity
/// 2#S/(#R - 2) = 2/(q - 2) is verified exactly.
LimitReport limit_report(const TowerSpec& spec, unsigned m_max);

/// N <= q^k + 1 + 2 g ceil(sqrt(q^k)), entirely in integers.
bool weil_check(std::uint64_t q, unsigned k, const BigUint& n_points, const BigUint& genus);

}  // namespace towerlab
