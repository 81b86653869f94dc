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

#include "towerlab/toweranalysis.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace towerlab {

std::vector<std::uint32_t> CorrespondenceGraph::out_neighbors(std::uint32_t id) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t y = 0; y < nodes.size(); ++y) {
    if (gval[y] == fval[id]) out.push_back(y);
  }
  return out;
}

std::uint64_t CorrespondenceGraph::edge_count() const {
  std::vector<std::uint64_t> g_hist(nodes.size(), 0);
  for (std::uint32_t y = 0; y < nodes.size(); ++y) ++g_hist[gval[y]];
  std::uint64_t total = 0;
  for (std::uint32_t x = 0; x < nodes.size(); ++x) total += g_hist[fval[x]];
  return total;
}

CorrespondenceGraph build_graph(const TowerSpec& spec, std::uint32_t k) {
  const FieldTower& tower = *spec.tower;
  const FieldCtx& level = tower.level(k);  // throws when the tower is too short
  if (level.order() > desk_budget())
    throw std::domain_error("q^k exceeds the desk-scale budget");
  const FieldCtx& base = tower.base();

  CorrespondenceGraph graph;
  graph.ctx = &level;
  graph.k = k;
  graph.nodes = p1_enumerate(level);
  const std::size_t n = graph.nodes.size();
  graph.fval.resize(n);
  graph.gval.resize(n);
  graph.in_S.resize(n);
  graph.in_R.resize(n, false);

  RatMap f = k == 1 ? spec.f : ratmap_lift(spec.f, level);
  RatMap g = k == 1 ? spec.g : ratmap_lift(spec.g, level);
  const bool track_r = k == 2 || (k % 2 == 0 && level.has_embedding_from(tower.level(2)));
  for (std::uint32_t id = 0; id < n; ++id) {
    const P1Point& P = graph.nodes[id];
    graph.fval[id] = static_cast<std::uint32_t>(p1_id(ratmap_eval(f, P)));
    graph.gval[id] = static_cast<std::uint32_t>(p1_id(ratmap_eval(g, P)));
    graph.in_S[id] = p1_in_subfield(P, base);
    if (track_r) graph.in_R[id] = !graph.in_S[id] && p1_in_subfield(P, tower.level(2));
  }
  return graph;
}

BigUint count_chains(const CorrespondenceGraph& graph, unsigned m) {
  std::vector<bool> all(graph.nodes.size(), true);
  return count_chains_masked(graph, m, all);
}

BigUint count_chains_masked(const CorrespondenceGraph& graph, unsigned m,
                            const std::vector<bool>& allowed) {
  const std::size_t n = graph.nodes.size();
  std::vector<BigUint> cur(n);
  for (std::size_t i = 0; i < n; ++i) cur[i] = allowed[i] ? BigUint(1) : BigUint(0);
  for (unsigned step = 0; step < m; ++step) {
    // w[v] = sum of cur over nodes x with f(x) = v, then pull through g
    std::vector<BigUint> w(n);
    for (std::size_t x = 0; x < n; ++x) {
      if (!cur[x].is_zero()) w[graph.fval[x]] += cur[x];
    }
    std::vector<BigUint> next(n);
    for (std::size_t y = 0; y < n; ++y) {
      if (allowed[y]) next[y] = w[graph.gval[y]];
    }
    cur = std::move(next);
  }
  BigUint total;
  for (const auto& v : cur) total += v;
  return total;
}

BigUint splitting_lower_bound(const TowerSpec& spec, unsigned m) {
  BigUint bound = BigUint::pow(BigUint(spec.q + 1), m + 1);
  CorrespondenceGraph level1 = build_graph(spec, 1);
  BigUint chains = count_chains_masked(level1, m, level1.in_S);
  if (!(chains == bound))
    throw std::logic_error("splitting chain count disagrees with (q+1)^{m+1}");
  return bound;
}

namespace {

struct Q2Geometry {
  std::vector<std::uint32_t> r_ids;                    // ids of R inside P^1(F_{q^2})
  std::vector<bool> in_r;                              // by id
  std::vector<std::uint32_t> fval;                     // id -> id
  std::vector<int> e_f, e_g;                           // ramification indices
  std::vector<std::vector<std::uint32_t>> g_fiber_r;   // value id -> R-preimages under g
};

Q2Geometry q2_geometry(const TowerSpec& spec) {
  const FieldTower& tower = *spec.tower;
  const FieldCtx& q2 = tower.level(2);
  const FieldCtx& base = tower.base();
  auto points = p1_enumerate(q2);
  const std::size_t n = points.size();
  Q2Geometry geo;
  geo.in_r.resize(n, false);
  geo.fval.resize(n);
  geo.e_f.resize(n);
  geo.e_g.resize(n);
  geo.g_fiber_r.assign(n, {});
  RatMap f2 = ratmap_lift(spec.f, q2);
  RatMap g2 = ratmap_lift(spec.g, q2);
  for (std::uint32_t id = 0; id < n; ++id) {
    const P1Point& P = points[id];
    geo.fval[id] = static_cast<std::uint32_t>(p1_id(ratmap_eval(f2, P)));
    geo.e_f[id] = ramification_index(f2, P);
    geo.e_g[id] = ramification_index(g2, P);
    if (!p1_in_subfield(P, base)) {
      geo.in_r[id] = true;
      geo.r_ids.push_back(id);
      geo.g_fiber_r[p1_id(ratmap_eval(g2, P))].push_back(id);
    }
  }
  return geo;
}

}  // namespace

std::vector<GenusLevel> genus_ladder_full(const TowerSpec& spec, unsigned m_max, bool strict) {
  const std::uint64_t q = spec.q;
  Q2Geometry geo = q2_geometry(spec);

  // The R-restricted fibers of g over f(R) must carry the whole degree q+1;
  // anything less means a ramification chain escaped R.
  auto check_closure = [&](std::uint32_t value_id) {
    std::uint64_t mass = 0;
    for (std::uint32_t y : geo.g_fiber_r[value_id]) mass += static_cast<std::uint64_t>(geo.e_g[y]);
    if (mass != q + 1)
      throw std::logic_error("ramification confinement violated: fiber escaped R");
  };

  std::vector<GenusLevel> out;
  std::map<std::pair<std::uint32_t, std::uint64_t>, BigUint> states;
  for (std::uint32_t id : geo.r_ids) {
    states[{id, static_cast<std::uint64_t>(geo.e_f[id])}] += BigUint(1);
  }

  BigInt E(-2);  // 2g - 2 of the projective line
  auto emit = [&](unsigned m, const BigUint& delta) {
    GenusLevel lvl;
    lvl.m = m;
    lvl.two_g_minus_2 = E;
    lvl.delta = delta;
    for (const auto& [key, cnt] : states) lvl.states.push_back({key.first, key.second, cnt});
    BigInt two_g = E + BigInt(2);
    lvl.anomalous = two_g.negative() || (two_g.magnitude() % BigUint(2)) != BigUint(0);
    out.push_back(std::move(lvl));
    if (out.back().anomalous && strict)
      throw std::logic_error("genus recursion produced a non-integer or negative genus");
    return !out.back().anomalous;
  };

  if (!emit(0, BigUint(0))) return out;

  for (unsigned m = 1; m <= m_max; ++m) {
    std::map<std::pair<std::uint32_t, std::uint64_t>, BigUint> next;
    BigUint delta;
    for (const auto& [key, cnt] : states) {
      const auto [x_id, e1] = key;
      const std::uint32_t w = geo.fval[x_id];
      check_closure(w);
      for (std::uint32_t y : geo.g_fiber_r[w]) {
        const std::uint64_t e2 = static_cast<std::uint64_t>(geo.e_g[y]);
        const std::uint64_t g_ = std::gcd(e1, e2);
        const std::uint64_t e_rel = e2 / g_;
        if (e_rel > 1) delta += cnt * BigUint(g_ * (e_rel - 1));
        const std::uint64_t e1_next = static_cast<std::uint64_t>(geo.e_f[y]) * (e1 / g_);
        if (e1_next > (1ull << 40))
          throw std::domain_error("tracked ramification index overflow");
        next[{y, e1_next}] += cnt * BigUint(g_);
      }
    }
    states = std::move(next);
    E = BigInt(q + 1) * E + BigInt(delta, false);
    if (!emit(m, delta)) return out;
  }
  return out;
}

BigUint level1_genus_oracle(const TowerSpec& spec) {
  const FieldTower& tower = *spec.tower;
  const FieldCtx& q2 = tower.level(2);
  const std::uint64_t q = spec.q;
  RatMap f2 = ratmap_lift(spec.f, q2);
  RatMap g2 = ratmap_lift(spec.g, q2);

  // Branch values of g inside P^1(F_{q^2}); ramification of g is confined
  // to R, so this is the full geometric branch locus.
  std::vector<std::uint64_t> branch_ids;
  for (const P1Point& P : p1_enumerate(q2)) {
    if (ramification_index(g2, P) > 1) branch_ids.push_back(p1_id(ratmap_eval(g2, P)));
  }
  std::sort(branch_ids.begin(), branch_ids.end());
  branch_ids.erase(std::unique(branch_ids.begin(), branch_ids.end()), branch_ids.end());

  // Riemann-Hurwitz for the first projection of the degree-(q+1) fiber
  // product model: contributions appear exactly over x with f(x) branched.
  std::int64_t ram_sum = 0;
  for (const P1Point& P : p1_enumerate(q2)) {
    std::uint64_t fx = p1_id(ratmap_eval(f2, P));
    if (!std::binary_search(branch_ids.begin(), branch_ids.end(), fx)) continue;
    for (const auto& [y, mult] : fiber(g2, ratmap_eval(f2, P), q2)) {
      (void)y;
      ram_sum += mult - 1;
    }
  }
  std::int64_t two_g = -2 * static_cast<std::int64_t>(q + 1) + ram_sum + 2;
  if (two_g < 0 || two_g % 2 != 0)
    throw std::logic_error("level-1 oracle produced an invalid genus");
  BigUint genus(static_cast<std::uint64_t>(two_g / 2));

  auto ladder = genus_ladder_full(spec, 1, true);
  BigInt expected = ladder[1].two_g_minus_2 + BigInt(2);
  if (expected.negative() || !(expected.magnitude() == BigUint(2) * genus))
    throw std::logic_error("level-1 oracle disagrees with the genus recursion");
  return genus;
}

LimitReport limit_report(const TowerSpec& spec, unsigned m_max) {
  const std::uint64_t q = spec.q;
  // #S = q+1, #R = q^2 - q; 2#S/(#R - 2) must collapse to 2/(q-2) exactly.
  if ((q - 2) * (q + 1) != q * q - q - 2)
    throw std::logic_error("limit target identity failed");
  Rational target(BigUint(2), BigUint(q - 2));
  if (!(Rational(BigUint(2 * (q + 1)), BigUint(q * q - q - 2)) == target))
    throw std::logic_error("limit target identity failed");

  LimitReport report;
  report.target = target;
  auto ladder = genus_ladder_full(spec, m_max, true);
  for (const auto& lvl : ladder) {
    LevelReport row;
    row.m = lvl.m;
    row.degree = BigUint::pow(BigUint(q + 1), lvl.m);
    row.delta = lvl.delta;
    BigInt two_g = lvl.two_g_minus_2 + BigInt(2);
    row.genus = two_g.magnitude() / BigUint(2);
    row.n_lower = splitting_lower_bound(spec, lvl.m);
    if (!row.genus.is_zero()) row.lambda = Rational(row.n_lower, row.genus);
    row.weil_ok = weil_check(q, 1, row.n_lower, row.genus) &&
                  weil_check(q, 2, row.n_lower, row.genus);
    report.rows.push_back(std::move(row));
  }
  return report;
}

bool weil_check(std::uint64_t q, unsigned k, const BigUint& n_points, const BigUint& genus) {
  BigUint qk = BigUint::pow(BigUint(q), k);
  BigUint bound = qk + BigUint(1) + BigUint(2) * genus * BigUint::isqrt_ceil(qk);
  return n_points <= bound;
}

}  // namespace towerlab
