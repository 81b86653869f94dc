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

#include <algorithm>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "towerlab/reports.hpp"
#include "towerlab/towergen.hpp"

using namespace towerlab;

namespace {

SingerData canonical_singer(const FieldTower& tower) {
  auto [a, b] = canonical_quadratic(tower.base());
  return build_singer(tower, a, b);
}

}  // namespace

TEST_CASE("phi candidates vanish exactly for q = 2 and q = 3") {
  FieldTower t2 = make_field_tower(2, 1, 2);
  CHECK(phi_candidates(canonical_singer(t2)).empty());
  FieldTower t3 = make_field_tower(3, 1, 2);
  CHECK(phi_candidates(canonical_singer(t3)).empty());
  FieldTower t4 = make_field_tower(2, 2, 2);
  CHECK(phi_candidates(canonical_singer(t4)).size() == 2);  // c = 1, d outside {0, a}
}

TEST_CASE("phi candidates for the worked q = 5 data") {
  FieldTower tower = q5_tower();
  const FieldCtx& f5 = tower.base();
  SingerData sd = build_singer(tower, f5.from_int(4), f5.from_int(2));
  auto cands = phi_candidates(sd);
  REQUIRE(cands.size() == 2);
  // first in lexicographic order is the published phi(x) = 2x + 3
  CHECK(cands[0] == PhiParams{f5.from_int(2), f5.from_int(3)});
  CHECK(cands[1] == PhiParams{f5.from_int(3), f5.from_int(1)});
}

TEST_CASE("brute-force oracle equals the closed-form criterion plus exclusions") {
  std::vector<FieldTower> towers;
  towers.push_back(make_field_tower(2, 2, 2));
  towers.push_back(q5_tower());
  towers.push_back(make_field_tower(7, 1, 2));
  towers.push_back(make_field_tower(3, 2, 2));
  towers.push_back(make_field_tower(11, 1, 2));
  towers.push_back(make_field_tower(13, 1, 2));
  for (const auto& tower : towers) {
    const FieldCtx& k = tower.base();
    SingerData sd = tower.q() == 5 ? build_singer(tower, k.from_int(4), k.from_int(2))
                                   : canonical_singer(tower);
    auto oracle = brute_force_phi_oracle(sd);
    auto cands = phi_candidates(sd);
    std::vector<PhiParams> expect = cands;
    expect.push_back({k.one(), k.zero()});
    expect.push_back({k.neg(k.one()), sd.a});
    auto key = [](const PhiParams& p) { return std::make_pair(p.c.idx, p.d.idx); };
    std::sort(expect.begin(), expect.end(),
              [&](const PhiParams& x, const PhiParams& y) { return key(x) < key(y); });
    std::sort(oracle.begin(), oracle.end(),
              [&](const PhiParams& x, const PhiParams& y) { return key(x) < key(y); });
    // the identity map trivially preserves f(R) yet never appears as a candidate
    CHECK(std::find(cands.begin(), cands.end(), PhiParams{k.one(), k.zero()}) == cands.end());
    CHECK(oracle == expect);
  }
}

TEST_CASE("psi candidates: counts, membership, and the published pair") {
  FieldTower tower = q5_tower();
  const FieldCtx& f5 = tower.base();
  const FieldCtx& f25 = tower.level(2);
  SingerData sd = build_singer(tower, f5.from_int(4), f5.from_int(2));
  PhiParams phi{f5.from_int(2), f5.from_int(3)};
  auto cands = psi_candidates(sd, phi);
  CHECK(cands.size() == 36);  // (q+1)^2

  // the pair with psi(x) = 1/x appears, with T = 1/theta = 2*theta + 2
  Mobius inv_map = mobius_make(f5.zero(), f5.one(), f5.one(), f5.zero());
  P1Point expected_T = p1_finite(f25.from_coeffs({2, 2}));
  bool found = false;
  for (const auto& cand : cands) {
    if (cand.psi == inv_map) {
      CHECK(cand.T == expected_T);
      found = true;
    }
  }
  CHECK(found);

  // T-set is f^{-1}(phi^{-1}(Q)); check it by direct evaluation
  P1Point v = mobius_apply(mobius_inverse(phi_mobius(phi)), sd.Q);
  std::set<std::uint64_t> t_ids;
  for (const auto& cand : cands) {
    t_ids.insert(p1_id(cand.T));
    CHECK(ratmap_eval(sd.f, cand.T) == v);
    CHECK(mobius_apply(cand.psi, sd.Q) == cand.T);
  }
  CHECK(t_ids.size() == 6);
}

TEST_CASE("coset structure of the psi choice") {
  FieldTower tower = q5_tower();
  const FieldCtx& f5 = tower.base();
  SingerData sd = build_singer(tower, f5.from_int(4), f5.from_int(2));
  PhiParams phi{f5.from_int(2), f5.from_int(3)};
  auto cands = psi_candidates(sd, phi);

  // every candidate gives a map fixing Q
  for (const auto& cand : cands) {
    CHECK(ratmap_eval(build_g_composed(sd, phi, cand.psi), sd.Q) == sd.Q);
  }

  // g is unchanged under sigma o psi for sigma in the isotropy group of Q,
  // since f o sigma = f; psi's sharing psi(Q) = T instead differ by a right
  // stabilizer factor and give g o sigma': q+1 distinct maps in total, each
  // hit q+1 times across the (q+1)^2 candidates, all isomorphic towers.
  Mobius psi0 = cands[0].psi;
  RatMap g0 = build_g_composed(sd, phi, psi0);
  for (const Mobius& sigma : singer_group(sd)) {
    CHECK(build_g_composed(sd, phi, mobius_compose(sigma, psi0)) == g0);
  }
  std::set<std::array<std::vector<std::uint32_t>, 2>> distinct;
  for (const auto& cand : cands) {
    RatMap g = build_g_composed(sd, phi, cand.psi);
    distinct.insert({g.num.c, g.den.c});
  }
  CHECK(distinct.size() == 6);

  // all q+1 variants above one T validate as towers
  for (std::size_t pi = 0; pi < 6; ++pi) {
    TowerSpec spec = build_generic_spec(sd, 0, 0, pi);
    CHECK(validate_spec(spec).all_passed());
  }
}

TEST_CASE("the worked q = 5 instance") {
  FieldTower tower = q5_tower();
  const FieldCtx& f5 = tower.base();
  TowerSpec spec = q5_instance(tower);

  CHECK(ratmap_display(spec.f) == "(x^6 + x + 2)/(x^5 - x)");
  CHECK(ratmap_display(spec.g) == "(x^6 + x^5 + 2x + 3)/(x^5 - x)");
  CHECK(spec.provenance == "q5-instance");
  // rho = psi^{-1}(Q) = 2*theta + 2 with minimal polynomial X^2 - 2X + 3
  CHECK(spec.rho == p1_finite(tower.level(2).from_coeffs({2, 2})));
  CHECK(spec.t == f5.from_int(2));
  CHECK(spec.n_param == f5.from_int(3));
  // nu = phi(Q) = 2*theta + 3
  CHECK(spec.nu == p1_finite(tower.level(2).from_coeffs({3, 2})));
  CHECK(validate_spec(spec).all_passed());
  // g(Q) = Q holds in F_25
  CHECK(ratmap_eval(spec.g, spec.Q) == spec.Q);
  CHECK(ramification_index(spec.g, spec.Q) == 1);
}

TEST_CASE("closed form: the minus sign is the one the instance satisfies") {
  FieldTower tower = q5_tower();
  const FieldCtx& f5 = tower.base();
  SingerData sd = build_singer(tower, f5.from_int(4), f5.from_int(2));
  FieldElem t = f5.from_int(2), n = f5.from_int(3);

  CHECK(closed_form_constant(sd, t, n, false) == f5.one());        // c = 1
  CHECK(closed_form_constant(sd, t, n, true) == f5.from_int(4));   // + t*a variant

  ClosedForm cf = build_g_closed_form(sd, t, n);
  TowerSpec spec = q5_instance(tower);
  CHECK(cf.g == spec.g);
  CHECK(cf.c_den == f5.one());
  // the plus-sign scale assembles a map that does not even fix Q
  RatMap wrong = assemble_g_from_constant(sd, t, n, f5.from_int(4));
  CHECK_FALSE(wrong == spec.g);
  CHECK_FALSE(ratmap_eval(wrong, sd.Q) == sd.Q);
}

TEST_CASE("closed form rejects degenerate parameters") {
  FieldTower tower = q5_tower();
  const FieldCtx& f5 = tower.base();
  SingerData sd = build_singer(tower, f5.from_int(4), f5.from_int(2));
  // reducible rho polynomial
  CHECK_THROWS_AS(build_g_closed_form(sd, f5.zero(), f5.from_int(4)), std::invalid_argument);
  // rho = theta
  CHECK_THROWS_AS(build_g_closed_form(sd, f5.from_int(4), f5.from_int(2)), std::invalid_argument);
  // even characteristic has no closed form
  FieldTower t4 = make_field_tower(2, 2, 2);
  SingerData sd4 = canonical_singer(t4);
  CHECK_THROWS_AS(closed_form_constant(sd4, t4.base().zero(), t4.base().one()),
                  std::domain_error);
}

TEST_CASE("closed and composed construction agree across parameter sweeps") {
  // for every q, run the first few (a, b, t, n) tuples through both routes
  for (auto [p, n_ext] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{5, 1}, {7, 1}, {3, 2}}) {
    FieldTower tower = make_field_tower(p, n_ext, 2);
    const FieldCtx& base = tower.base();
    const FieldCtx& q2 = tower.level(2);
    int done = 0;
    for (std::uint64_t ai = 0; ai < base.order() && done < 6; ++ai) {
      for (std::uint64_t bi = 0; bi < base.order() && done < 6; ++bi) {
        FieldElem a = base.element(ai), b = base.element(bi);
        if (!is_irreducible_quadratic(a, b)) continue;
        SingerData sd = build_singer(tower, a, b);
        for (std::uint64_t ti = 0; ti < base.order() && done < 6; ++ti) {
          for (std::uint64_t ni = 0; ni < base.order() && done < 6; ++ni) {
            FieldElem t = base.element(ti), nn = base.element(ni);
            ClosedForm cf;
            try {
              cf = build_g_closed_form(sd, t, nn);
            } catch (const std::invalid_argument&) {
              continue;
            }
            // composed route: psi with psi(rho) = theta, phi from nu
            Poly rho_poly = poly_from_elems(base, {nn, base.neg(t), base.one()});
            FieldElem rho = roots_with_multiplicity(rho_poly, q2)[0].first;
            auto psis = mobius_search(base, {{p1_finite(rho), sd.Q}});
            REQUIRE(!psis.empty());
            FieldElem c_q = base.div(base.sub(base.mul(cf.c_den, sd.a), t), base.from_int(2));
            FieldElem nu = q2.div(q2.add(base.embed_into(c_q, q2), rho),
                                  base.embed_into(cf.c_den, q2));
            // recover phi through the trace-zero ratio
            FieldElem a2 = base.embed_into(base.div(sd.a, base.from_int(2)), q2);
            FieldElem cphi2 = q2.div(q2.sub(nu, a2), q2.sub(sd.theta, a2));
            auto cphi = q2.project_to(cphi2, base);
            REQUIRE(cphi.has_value());
            FieldElem dphi = base.div(base.mul(base.sub(base.one(), *cphi), sd.a),
                                      base.from_int(2));
            RatMap composed = build_g_composed(sd, PhiParams{*cphi, dphi}, psis.front());
            CHECK(composed == cf.g);
            ++done;
          }
        }
      }
    }
    CHECK(done == 6);
  }
}

TEST_CASE("standard family at q = 7 reproduces the family equations") {
  FieldTower tower = make_field_tower(7, 1, 2);
  const FieldCtx& f7 = tower.base();
  TowerSpec spec = standard_family(tower, f7.one(), f7.from_int(2));
  CHECK(ratmap_display(spec.f) == "(x^8 + 1)/(x^7 - x)");
  // g = 2b(x^8 + n)/((b+n)(x^7 - x)) = (x^8 + 2)/(5(x^7 - x)) once monic
  CHECK(ratmap_display(spec.g) == "(x^8 + 2)/(5(x^7 - x))");
  CHECK(validate_spec(spec).all_passed());
  CHECK(spec.a == f7.zero());
  CHECK(spec.t == f7.zero());

  // deterministic first parameters for q = 7 are exactly (1, 2)
  auto first = first_family_parameters(tower);
  REQUIRE(first.has_value());
  CHECK(first->first == f7.one());
  CHECK(first->second == f7.from_int(2));
}

TEST_CASE("standard family preconditions, named and enforced") {
  FieldTower t5 = make_field_tower(5, 1, 2);
  CHECK_THROWS_WITH_AS(standard_family(t5, t5.base().from_int(2), t5.base().from_int(3)),
                       "q > 5 required for the family", std::invalid_argument);

  FieldTower t7 = make_field_tower(7, 1, 2);
  const FieldCtx& f7 = t7.base();
  // -b must be a nonsquare: b = 3 has -3 = 4 = 2^2
  CHECK_THROWS_AS(standard_family(t7, f7.from_int(3), f7.from_int(2)), std::invalid_argument);
  // n = b and n = -b are excluded
  CHECK_THROWS_AS(standard_family(t7, f7.one(), f7.one()), std::invalid_argument);
  CHECK_THROWS_AS(standard_family(t7, f7.one(), f7.from_int(6)), std::invalid_argument);

  FieldTower t13 = make_field_tower(13, 1, 2);
  const FieldCtx& f13 = t13.base();
  CHECK_THROWS_WITH_AS(standard_family(t13, f13.from_int(11), f13.from_int(6)),
                       "n = -3b is excluded (scale c = -1)", std::invalid_argument);
}

TEST_CASE("the n = -3b family point is excluded by fiat yet satisfies every premise") {
  // (q, b, n) = (13, 11, 6) passes the printed family conditions; the scale
  // constant is -1 and the branch value collides with the conjugate
  // ramification point, but no premise of the tower argument fails.
  FieldTower tower = make_field_tower(13, 1, 2);
  const FieldCtx& f13 = tower.base();
  FieldElem b = f13.from_int(11), n = f13.from_int(6);
  CHECK_FALSE(f13.is_square(f13.neg(b)));
  CHECK_FALSE(f13.is_square(f13.neg(n)));
  CHECK(n == f13.mul(f13.from_int(-3), b));

  TowerSpec spec = family_spec_forced(tower, b, n);
  SingerData sd = build_singer(tower, f13.zero(), b);
  CHECK(closed_form_constant(sd, f13.zero(), n) == f13.neg(f13.one()));
  CHECK(spec.nu == spec.rho_bar);  // branch value = conjugate ramification point
  CHECK(ratmap_eval(spec.g, spec.Q) == spec.Q);
  CHECK(ramification_index(spec.g, spec.Q) == 1);
  CHECK(validate_spec(spec).all_passed());
}

TEST_CASE("degenerate control: the excluded pair (-1, a) ramifies Q") {
  FieldTower tower = q5_tower();
  SingerData sd = build_singer(tower, tower.base().from_int(4), tower.base().from_int(2));
  TowerSpec spec = degenerate_conjugate_spec(sd);
  CHECK(spec.nu == spec.Q_bar);  // phi(Q) = Q_bar
  CHECK(spec.rho == spec.Q_bar);
  CheckReport rep = validate_spec(spec);
  CHECK_FALSE(rep.all_passed());
  auto failed = rep.failed();
  CHECK(std::find(failed.begin(), failed.end(), "Q_unramified_for_g") != failed.end());
  CHECK(std::find(failed.begin(), failed.end(), "phi_nondegenerate") != failed.end());
  CHECK(std::find(failed.begin(), failed.end(), "rho_not_in_QQbar") != failed.end());
}

TEST_CASE("identity phi is rejected through the degeneracy check") {
  FieldTower tower = q5_tower();
  const FieldCtx& f5 = tower.base();
  SingerData sd = build_singer(tower, f5.from_int(4), f5.from_int(2));
  // force phi = identity: T-set collapses to {Q}, psi fixes Q, g = f
  auto psis = mobius_search(f5, {{sd.Q, sd.Q}});
  TowerSpec spec;
  spec.tower = sd.tower;
  spec.p = 5;
  spec.n = 1;
  spec.q = 5;
  spec.modulus_q2 = tower.level(2).modulus();
  spec.a = sd.a;
  spec.b = sd.b;
  spec.phi = PhiParams{f5.one(), f5.zero()};
  spec.psi = psis.front();
  spec.f = sd.f;
  spec.g = build_g_composed(sd, spec.phi, spec.psi);
  spec.Q = sd.Q;
  spec.Q_bar = sd.Q_bar;
  spec.rho = mobius_apply(mobius_inverse(spec.psi), sd.Q);
  spec.rho_bar = sd.Q_bar;
  spec.nu = mobius_apply(phi_mobius(spec.phi), sd.Q);
  auto [t, nn] = tower.level(2).trace_norm(FieldElem{&tower.level(2), spec.rho.idx});
  spec.t = t;
  spec.n_param = nn;
  spec.provenance = "forced-identity";

  CheckReport rep = validate_spec(spec);
  CHECK_FALSE(rep.all_passed());
  auto failed = rep.failed();
  CHECK(std::find(failed.begin(), failed.end(), "phi_nondegenerate") != failed.end());
}

TEST_CASE("search over small fields") {
  SUBCASE("q = 2 and q = 3 admit no candidates at all") {
    for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}}) {
      FieldTower tower = make_field_tower(p, n, 2);
      SearchResult res = search_specs(canonical_singer(tower));
      CHECK(res.candidates == 0);
      CHECK(res.valid.empty());
    }
  }
  SUBCASE("q = 4 yields at least one valid spec") {
    FieldTower tower = make_field_tower(2, 2, 2);
    SearchResult res = search_specs(canonical_singer(tower));
    CHECK(res.candidates == 2 * 5);  // two phi candidates, q+1 cosets each
    CHECK(!res.valid.empty());
    for (const auto& spec : res.valid) {
      CHECK(validate_spec(spec).all_passed());
    }
  }
  SUBCASE("q = 5 finds the paper's map among the valid specs") {
    FieldTower tower = q5_tower();
    const FieldCtx& f5 = tower.base();
    SingerData sd = build_singer(tower, f5.from_int(4), f5.from_int(2));
    SearchResult res = search_specs(sd);
    CHECK(res.candidates == 12);
    REQUIRE(!res.valid.empty());
    TowerSpec q5 = q5_instance(tower);
    bool found = false;
    for (const auto& spec : res.valid) found = found || spec.g == q5.g;
    CHECK(found);
  }
}

TEST_CASE("generic-path spec via indices") {
  FieldTower tower = make_field_tower(7, 1, 2);
  SingerData sd = canonical_singer(tower);
  TowerSpec spec = build_generic_spec(sd, 0, 0, 0);
  CHECK(spec.provenance == "generic-search");
  CHECK(validate_spec(spec).all_passed());
  CHECK_THROWS_AS(build_generic_spec(sd, 999, 0, 0), std::invalid_argument);
}

TEST_CASE("tower spec JSON is deterministic and carries the display forms") {
  FieldTower tower = q5_tower();
  TowerSpec spec = q5_instance(tower);
  std::string one = tower_spec_json(spec);
  std::string two = tower_spec_json(spec);
  CHECK(one == two);
  CHECK(one.find("\"f_display\": \"(x^6 + x + 2)/(x^5 - x)\"") != std::string::npos);
  CHECK(one.find("\"g_display\": \"(x^6 + x^5 + 2x + 3)/(x^5 - x)\"") != std::string::npos);
  CHECK(one.find("\"provenance\": \"q5-instance\"") != std::string::npos);
  CHECK(one.find("\"modulus\": [") != std::string::npos);
}
