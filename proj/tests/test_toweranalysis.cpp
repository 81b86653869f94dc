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

#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "towerlab/reports.hpp"
#include "towerlab/toweranalysis.hpp"

using namespace towerlab;

TEST_CASE("level-1 graph on S is the complete digraph") {
  FieldTower tower = q5_tower();
  TowerSpec spec = q5_instance(tower);
  CorrespondenceGraph graph = build_graph(spec, 1);
  CHECK(graph.nodes.size() == 6);
  CHECK(graph.edge_count() == 36);
  for (std::uint32_t id = 0; id < graph.nodes.size(); ++id) {
    CHECK(graph.in_S[id]);
    CHECK(graph.out_neighbors(id).size() == 6);
  }
}

TEST_CASE("level-2 graph structure for the worked instance") {
  FieldTower tower = q5_tower();
  TowerSpec spec = q5_instance(tower);
  CorrespondenceGraph graph = build_graph(spec, 2);
  CHECK(graph.nodes.size() == 26);
  int s_nodes = 0, r_nodes = 0;
  for (std::uint32_t id = 0; id < graph.nodes.size(); ++id) {
    if (graph.in_S[id]) ++s_nodes;
    if (graph.in_R[id]) ++r_nodes;
  }
  CHECK(s_nodes == 6);
  CHECK(r_nodes == 20);
  // out-degree of Q is q+1 (distinct targets; no ramified target here)
  std::uint32_t q_id = static_cast<std::uint32_t>(p1_id(spec.Q));
  CHECK(graph.out_neighbors(q_id).size() == 6);
  // edges out of S stay in S
  for (std::uint32_t id = 0; id < graph.nodes.size(); ++id) {
    if (!graph.in_S[id]) continue;
    for (std::uint32_t y : graph.out_neighbors(id)) CHECK(graph.in_S[y]);
  }
  // size bound honored
  CHECK_THROWS_AS(build_graph(spec, 12), std::invalid_argument);  // tower too short
}

TEST_CASE("odd-level graph: nodes beyond F_{q^2} are plain geometric points") {
  FieldTower tower = q5_tower(3);
  TowerSpec spec = q5_instance(tower);
  CorrespondenceGraph graph = build_graph(spec, 3);
  CHECK(graph.nodes.size() == 126);  // 5^3 + 1
  int s_nodes = 0, r_nodes = 0;
  for (std::uint32_t id = 0; id < graph.nodes.size(); ++id) {
    if (graph.in_S[id]) ++s_nodes;
    if (graph.in_R[id]) ++r_nodes;
  }
  CHECK(s_nodes == 6);
  CHECK(r_nodes == 0);  // F_{q^2} does not embed into F_{q^3}
  CHECK(count_chains(graph, 0).to_u64() == 126);
  // S-chains are insensitive to the ambient level
  CHECK(count_chains_masked(graph, 3, graph.in_S).to_u64() == 1296);
}

TEST_CASE("chain counting by dynamic programming") {
  FieldTower tower = q5_tower();
  TowerSpec spec = q5_instance(tower);
  CorrespondenceGraph level1 = build_graph(spec, 1);

  CHECK(count_chains(level1, 0).to_u64() == 6);
  CHECK(count_chains(level1, 1).to_u64() == 36);
  CHECK(count_chains(level1, 4).to_u64() == 7776);  // 6^5

  // brute-force oracle on the level-2 graph for short chains
  CorrespondenceGraph g2 = build_graph(spec, 2);
  const std::size_t n = g2.nodes.size();
  std::uint64_t direct = 0;
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      if (g2.gval[y] != g2.fval[x]) continue;
      for (std::uint32_t z = 0; z < n; ++z) {
        if (g2.gval[z] == g2.fval[y]) ++direct;
      }
    }
  }
  CHECK(count_chains(g2, 2).to_u64() == direct);
}

TEST_CASE("chain counts are invariant under Frobenius relabeling") {
  FieldTower tower = q5_tower();
  TowerSpec spec = q5_instance(tower);
  const FieldCtx& f25 = tower.level(2);
  CorrespondenceGraph graph = build_graph(spec, 2);

  // permute node ids by x -> x^q and rebuild the value tables
  const std::size_t n = graph.nodes.size();
  std::vector<std::uint32_t> perm(n);
  for (std::uint32_t id = 0; id < n; ++id) {
    const P1Point& P = graph.nodes[id];
    perm[id] = P.inf ? id
                     : static_cast<std::uint32_t>(f25.frobenius_q(FieldElem{&f25, P.idx}).idx);
  }
  CorrespondenceGraph relabeled = graph;
  for (std::uint32_t id = 0; id < n; ++id) {
    relabeled.fval[perm[id]] = perm[graph.fval[id]];
    relabeled.gval[perm[id]] = perm[graph.gval[id]];
  }
  for (unsigned m = 0; m <= 3; ++m) {
    CHECK(count_chains(graph, m) == count_chains(relabeled, m));
  }
}

TEST_CASE("splitting lower bound equals the S-chain count") {
  FieldTower tower = q5_tower();
  TowerSpec spec = q5_instance(tower);
  CHECK(splitting_lower_bound(spec, 0).to_u64() == 6);
  CHECK(splitting_lower_bound(spec, 1).to_u64() == 36);
  CHECK(splitting_lower_bound(spec, 4).to_u64() == 7776);

  FieldTower t7 = make_field_tower(7, 1, 2);
  TowerSpec fam = standard_family(t7, t7.base().one(), t7.base().from_int(2));
  CHECK(splitting_lower_bound(fam, 2).to_u64() == 512);  // 8^3
}

TEST_CASE("genus ladder: base values and the worked instance") {
  FieldTower tower = q5_tower();
  TowerSpec spec = q5_instance(tower);
  auto ladder = genus_ladder_full(spec, 2);
  REQUIRE(ladder.size() == 3);
  CHECK(ladder[0].two_g_minus_2 == BigInt(-2));  // genus 0
  CHECK(ladder[1].delta == BigUint(60));         // 2(q+1)q ramified chains
  CHECK(ladder[1].two_g_minus_2 == BigInt(48));  // 6*(-2) + 60
  // g_1 = 25 = q^2
  CHECK(ladder[1].two_g_minus_2 + BigInt(2) == BigInt(50));
  CHECK(level1_genus_oracle(spec) == BigUint(25));

  // seed states: one per point of R, with e1 = q+1 exactly at Q, Q_bar
  std::uint64_t ramified = 0, total = 0;
  for (const auto& st : ladder[0].states) {
    total += st.count.to_u64();
    if (st.e1 == 6) ++ramified;
    else CHECK(st.e1 == 1);
  }
  CHECK(total == 20);
  CHECK(ramified == 2);
}

TEST_CASE("genus ladder against per-chain replay (independent oracle)") {
  FieldTower tower = q5_tower();
  TowerSpec spec = q5_instance(tower);
  const FieldCtx& f25 = tower.level(2);
  const FieldCtx& f5 = tower.base();

  // independent tables over P^1(F_25)
  RatMap f2 = ratmap_lift(spec.f, f25);
  RatMap g2 = ratmap_lift(spec.g, f25);
  auto points = p1_enumerate(f25);
  std::vector<std::uint64_t> fv(points.size()), gv(points.size());
  std::vector<int> ef(points.size()), eg(points.size());
  std::vector<bool> in_r(points.size());
  for (std::size_t id = 0; id < points.size(); ++id) {
    fv[id] = p1_id(ratmap_eval(f2, points[id]));
    gv[id] = p1_id(ratmap_eval(g2, points[id]));
    ef[id] = ramification_index(f2, points[id]);
    eg[id] = ramification_index(g2, points[id]);
    in_r[id] = !p1_in_subfield(points[id], f5);
  }

  // enumerate all R-chains up to length 3 and replay the place splitting
  // chain by chain; every place above one chain shares the same profile
  for (unsigned m = 1; m <= 3; ++m) {
    std::map<std::pair<std::uint32_t, std::uint64_t>, BigUint> agg;
    std::vector<std::vector<std::uint32_t>> chains;
    for (std::uint32_t id = 0; id < points.size(); ++id) {
      if (in_r[id]) chains.push_back({id});
    }
    for (unsigned step = 0; step < m; ++step) {
      std::vector<std::vector<std::uint32_t>> next;
      for (const auto& chain : chains) {
        for (std::uint32_t y = 0; y < points.size(); ++y) {
          if (in_r[y] && gv[y] == fv[chain.back()]) {
            auto ext = chain;
            ext.push_back(y);
            next.push_back(std::move(ext));
          }
        }
      }
      chains = std::move(next);
    }
    for (const auto& chain : chains) {
      std::uint64_t e1 = static_cast<std::uint64_t>(ef[chain[0]]);
      std::uint64_t count = 1;
      for (std::size_t i = 1; i < chain.size(); ++i) {
        std::uint64_t e2 = static_cast<std::uint64_t>(eg[chain[i]]);
        std::uint64_t g = std::gcd(e1, e2);
        count *= g;
        e1 = static_cast<std::uint64_t>(ef[chain[i]]) * (e1 / g);
      }
      agg[{chain.back(), e1}] += BigUint(count);
    }

    auto ladder = genus_ladder_full(spec, m);
    std::map<std::pair<std::uint32_t, std::uint64_t>, BigUint> dp;
    for (const auto& st : ladder[m].states) dp[{st.last_id, st.e1}] = st.count;
    CHECK(dp == agg);

    // degree conservation: for every w in f(R), the places above chains
    // ending in the fiber of w carry total f_m-degree (q+1)^{m+1}
    std::map<std::uint64_t, std::uint64_t> mass;
    for (const auto& [key, cnt] : dp) mass[fv[key.first]] += key.second * cnt.to_u64();
    std::uint64_t expected = 1;
    for (unsigned i = 0; i <= m; ++i) expected *= 6;
    std::set<std::uint64_t> fR;
    for (std::uint32_t id = 0; id < points.size(); ++id) {
      if (in_r[id]) fR.insert(fv[id]);
    }
    CHECK(mass.size() == fR.size());
    for (const auto& [w, total] : mass) {
      CHECK(fR.count(w) == 1);
      CHECK(total == expected);
    }
  }
}

TEST_CASE("after a totally ramified step the indices cancel (m >= 2)") {
  FieldTower tower = q5_tower();
  TowerSpec spec = q5_instance(tower);
  const FieldCtx& f25 = tower.level(2);
  RatMap g2 = ratmap_lift(spec.g, f25);

  // find a level-2-or-later state with e1 divisible by q+1 whose next fiber
  // contains a totally ramified point of g: gcd = q+1 and e_rel = 1 there
  bool cancellation_reachable = false;
  for (unsigned m = 2; m <= 4 && !cancellation_reachable; ++m) {
    auto ladder = genus_ladder_full(spec, m);
    for (const auto& st : ladder[m].states) {
      if (st.e1 % 6 != 0) continue;
      P1Point last = st.last_id == 25 ? p1_infinity(f25)
                                      : p1_finite(f25.element(st.last_id));
      P1Point w = ratmap_eval(ratmap_lift(spec.f, f25), last);
      for (const auto& [y, mult] : fiber(g2, w, f25)) {
        (void)y;
        if (mult == 6) cancellation_reachable = true;
      }
    }
  }
  CHECK(cancellation_reachable);
}

TEST_CASE("degenerate control spec drives the recursion negative") {
  FieldTower tower = q5_tower();
  SingerData sd = build_singer(tower, tower.base().from_int(4), tower.base().from_int(2));
  TowerSpec degen = degenerate_conjugate_spec(sd);
  auto ladder = genus_ladder_full(degen, 2, /*strict=*/false);
  REQUIRE(ladder.size() >= 2);
  CHECK(ladder[1].anomalous);
  // 2g - 2 = -12 at level 1, far below the 2*25 - 2 = 48 of a valid spec
  CHECK(ladder[1].two_g_minus_2 == BigInt(-12));
  CHECK_THROWS_AS(genus_ladder_full(degen, 2, /*strict=*/true), std::logic_error);
}

TEST_CASE("level-1 genus equals q^2 for valid specs at q = 5, 7, 9") {
  {
    FieldTower tower = q5_tower();
    TowerSpec spec = q5_instance(tower);
    CHECK(level1_genus_oracle(spec) == BigUint(25));
  }
  {
    FieldTower tower = make_field_tower(7, 1, 2);
    TowerSpec spec = standard_family(tower, tower.base().one(), tower.base().from_int(2));
    CHECK(level1_genus_oracle(spec) == BigUint(49));
  }
  {
    FieldTower tower = make_field_tower(3, 2, 2);
    auto params = first_family_parameters(tower);
    REQUIRE(params.has_value());
    TowerSpec spec = standard_family(tower, params->first, params->second);
    CHECK(level1_genus_oracle(spec) == BigUint(81));
  }
}

TEST_CASE("limit report: exact rationals, target, Weil column") {
  FieldTower tower = q5_tower();
  TowerSpec spec = q5_instance(tower);
  LimitReport report = limit_report(spec, 6);
  REQUIRE(report.rows.size() == 7);
  CHECK(report.target == Rational(2, 3));

  // lambda_1 = 36/25; every computed level stays at or above the target
  CHECK(report.rows[1].lambda.has_value());
  CHECK(*report.rows[1].lambda == Rational(36, 25));
  CHECK_FALSE(report.rows[0].lambda.has_value());  // genus 0
  for (const auto& row : report.rows) {
    if (row.lambda) CHECK(*row.lambda >= report.target);
    CHECK(row.weil_ok);
  }
  // degree and n_lower columns are the exact powers
  CHECK(report.rows[6].degree == BigUint::pow(BigUint(6), 6));
  CHECK(report.rows[6].n_lower == BigUint::pow(BigUint(6), 7));

  std::string csv = limit_report_csv(report);
  CHECK(csv.find("m,degree,genus,delta,n_lower,lambda_num,lambda_den,lambda_decimal,"
                 "target_num,target_den,weil_ok") == 0);
  CHECK(csv.find("1,6,25,60,36,36,25,1.440000,2,3,1") != std::string::npos);
  CHECK(csv.find("0,1,0,0,6,-,-,-,2,3,1") != std::string::npos);
}

TEST_CASE("Hasse-Weil sanity bound in exact integers") {
  // q = 5, k = 1: N = 36, g = 25: 36 <= 5 + 1 + 2*25*ceil(sqrt 5) = 6 + 150
  CHECK(weil_check(5, 1, BigUint(36), BigUint(25)));
  // genus 0: N = q + 1 exactly meets the bound
  CHECK(weil_check(5, 1, BigUint(6), BigUint(0)));
  CHECK_FALSE(weil_check(5, 1, BigUint(7), BigUint(0)));
  // a fabricated count ten times the bound fails
  BigUint bound = BigUint(5 + 1) + BigUint(2) * BigUint(25) * BigUint(3);
  CHECK_FALSE(weil_check(5, 1, bound * BigUint(10), BigUint(25)));
}

TEST_CASE("DOT export carries loci and is deterministic") {
  FieldTower tower = q5_tower();
  TowerSpec spec = q5_instance(tower);
  CorrespondenceGraph graph = build_graph(spec, 2);
  std::string dot = graph_dot(graph);
  CHECK(dot == graph_dot(graph));
  CHECK(dot.find("digraph tower_correspondence") != std::string::npos);
  CHECK(dot.find("locus=S") != std::string::npos);
  CHECK(dot.find("locus=R") != std::string::npos);
  CHECK(dot.find("label=\"inf\"") != std::string::npos);
}
