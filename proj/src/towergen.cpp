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

#include "towerlab/towergen.hpp"

#include <algorithm>
#include <stdexcept>

namespace towerlab {

namespace {

// Shared assembly once phi, psi and g are fixed.
TowerSpec make_spec(const SingerData& sd, const PhiParams& phi, const Mobius& psi,
                    const RatMap& g, const std::string& provenance) {
  const FieldTower& tower = *sd.tower;
  const FieldCtx& q2 = tower.level(2);
  TowerSpec spec;
  spec.tower = &tower;
  spec.p = tower.p();
  spec.n = tower.n();
  spec.q = tower.q();
  spec.modulus_q2 = q2.modulus();
  spec.a = sd.a;
  spec.b = sd.b;
  spec.phi = phi;
  spec.psi = psi;
  spec.f = sd.f;
  spec.g = g;
  spec.Q = sd.Q;
  spec.Q_bar = sd.Q_bar;
  spec.rho = mobius_apply(mobius_inverse(psi), sd.Q);
  if (spec.rho.inf) throw std::logic_error("psi^{-1}(Q) landed at infinity");
  FieldElem rho_elem{&q2, spec.rho.idx};
  spec.rho_bar = p1_finite(q2.frobenius_q(rho_elem));
  spec.nu = mobius_apply(phi_mobius(phi), sd.Q);
  if (spec.nu.inf) throw std::logic_error("phi(Q) landed at infinity");
  auto [t, nn] = q2.trace_norm(rho_elem);
  spec.t = t;
  spec.n_param = nn;
  spec.provenance = provenance;
  return spec;
}

FieldElem half(const FieldCtx& k, const FieldElem& x) {
  if (k.characteristic() == 2) throw std::domain_error("no division by 2 in characteristic 2");
  return k.div(x, k.from_int(2));
}

// phi with phi(Q) = nu, recovered from nu. Both nu - a/2 and theta - a/2
// have trace zero, so their ratio is forced into F_q.
PhiParams derive_phi_from_nu(const SingerData& sd, const FieldElem& nu) {
  const FieldCtx& base = sd.tower->base();
  const FieldCtx& q2 = sd.tower->level(2);
  FieldElem a2 = base.embed_into(half(base, sd.a), q2);
  FieldElem c2 = q2.div(q2.sub(nu, a2), q2.sub(sd.theta, a2));
  auto c = q2.project_to(c2, base);
  if (!c) throw std::logic_error("derived phi coefficient fell outside F_q");
  FieldElem d = half(base, base.mul(base.sub(base.one(), *c), sd.a));
  return {*c, d};
}

}  // namespace

Mobius phi_mobius(const PhiParams& phi) {
  const FieldCtx& k = *phi.c.ctx;
  return mobius_make(phi.c, phi.d, k.zero(), k.one());
}

std::vector<PhiParams> phi_candidates(const SingerData& sd) {
  const FieldCtx& k = sd.tower->base();
  std::vector<PhiParams> out;
  const FieldElem minus_one = k.neg(k.one());
  for (std::uint64_t ci = 0; ci < k.order(); ++ci) {
    FieldElem c = k.element(ci);
    if (c.idx == 0) continue;
    for (std::uint64_t di = 0; di < k.order(); ++di) {
      FieldElem d = k.element(di);
      FieldElem lhs = k.mul(k.sub(k.one(), c), sd.a);
      FieldElem rhs = k.mul(k.from_int(2), d);
      if (!(lhs == rhs)) continue;
      if (c == k.one() && d.idx == 0) continue;       // phi(Q) = Q
      if (c == minus_one && d == sd.a) continue;      // phi(Q) = Q_bar
      out.push_back({c, d});
    }
  }
  return out;
}

std::vector<PhiParams> brute_force_phi_oracle(const SingerData& sd) {
  const FieldCtx& base = sd.tower->base();
  const FieldCtx& q2 = sd.tower->level(2);
  std::vector<P1Point> fR = image_of_R(sd);
  std::vector<std::uint64_t> target;
  for (const auto& P : fR) target.push_back(p1_id(P));

  std::vector<PhiParams> out;
  for (std::uint64_t ci = 0; ci < base.order(); ++ci) {
    FieldElem c = base.element(ci);
    if (c.idx == 0) continue;
    FieldElem c2 = base.embed_into(c, q2);
    for (std::uint64_t di = 0; di < base.order(); ++di) {
      FieldElem d = base.element(di);
      FieldElem d2 = base.embed_into(d, q2);
      std::vector<std::uint64_t> image;
      image.reserve(fR.size());
      for (const auto& P : fR) {
        FieldElem g{&q2, P.idx};
        image.push_back(q2.add(q2.mul(c2, g), d2).idx);
      }
      std::sort(image.begin(), image.end());
      if (image == target) out.push_back({c, d});
    }
  }
  return out;
}

std::vector<PsiCandidate> psi_candidates(const SingerData& sd, const PhiParams& phi) {
  const FieldCtx& base = sd.tower->base();
  const FieldCtx& q2 = sd.tower->level(2);
  P1Point v = mobius_apply(mobius_inverse(phi_mobius(phi)), sd.Q);
  auto t_fiber = fiber(sd.f, v, q2);
  if (t_fiber.size() != sd.q + 1)
    throw std::logic_error("fiber over phi^{-1}(Q) is not simple");
  std::vector<PsiCandidate> out;
  for (const auto& [T, mult] : t_fiber) {
    if (mult != 1) throw std::logic_error("fiber over phi^{-1}(Q) is not simple");
    if (p1_in_subfield(T, base))
      throw std::logic_error("fiber point escaped R, contradicting the trace-fiber closure");
    auto psis = mobius_search(base, {{sd.Q, T}});
    if (psis.size() != sd.q + 1)
      throw std::logic_error("isotropy coset has unexpected size");
    for (const auto& psi : psis) out.push_back({T, psi});
  }
  return out;
}

RatMap build_g_composed(const SingerData& sd, const PhiParams& phi, const Mobius& psi) {
  return ratmap_compose_mobius(psi, sd.f, phi_mobius(phi));
}

FieldElem closed_form_constant(const SingerData& sd, const FieldElem& t,
                               const FieldElem& n_param, bool plus_variant) {
  const FieldCtx& k = sd.tower->base();
  if (k.characteristic() == 2)
    throw std::domain_error("closed form requires odd characteristic");
  FieldElem two = k.from_int(2);
  FieldElem num = k.add(k.mul(two, sd.b), k.mul(two, n_param));
  FieldElem ta = k.mul(t, sd.a);
  num = plus_variant ? k.add(num, ta) : k.sub(num, ta);
  FieldElem den = k.sub(k.mul(k.from_int(4), sd.b), k.mul(sd.a, sd.a));
  if (den.idx == 0) throw std::logic_error("4b - a^2 vanished for an irreducible quadratic");
  return k.div(num, den);
}

RatMap assemble_g_from_constant(const SingerData& sd, const FieldElem& t,
                                const FieldElem& n_param, const FieldElem& c) {
  const FieldCtx& k = sd.tower->base();
  if (c.idx == 0) throw std::domain_error("scale constant c must be nonzero");
  FieldElem c_q = half(k, k.sub(k.mul(c, sd.a), t));
  FieldElem c_1 = k.sub(k.neg(t), c_q);
  const unsigned qe = static_cast<unsigned>(sd.q);
  Poly num = poly_add(poly_monomial(k.one(), qe + 1), poly_monomial(c_q, qe));
  num = poly_add(num, poly_from_elems(k, {n_param, c_1}));
  Poly den = poly_add(poly_monomial(c, qe), poly_monomial(k.neg(c), 1));
  return ratmap_make(num, den);
}

ClosedForm build_g_closed_form(const SingerData& sd, const FieldElem& t,
                               const FieldElem& n_param) {
  const FieldCtx& k = sd.tower->base();
  const FieldCtx& q2 = sd.tower->level(2);
  if (k.characteristic() == 2)
    throw std::domain_error("closed form requires odd characteristic");
  if (!is_irreducible_quadratic(t, n_param))
    throw std::invalid_argument("X^2 - t*X + n is reducible; rho must generate F_{q^2}");
  if (t == sd.a && n_param == sd.b)
    throw std::invalid_argument("rho coincides with theta or its conjugate");
  FieldElem c = closed_form_constant(sd, t, n_param);
  if (c.idx == 0) throw std::invalid_argument("degenerate parameters: scale c = 0");

  RatMap g = assemble_g_from_constant(sd, t, n_param, c);

  // nu = (c_q + rho)/c must avoid theta and its conjugate, else phi is the
  // excluded automorphism moving Q onto {Q, Q_bar}.
  Poly rho_poly = poly_from_elems(k, {n_param, k.neg(t), k.one()});
  auto roots = roots_with_multiplicity(rho_poly, q2);
  if (roots.size() != 2) throw std::logic_error("rho polynomial must split in F_{q^2}");
  FieldElem rho = roots[0].first;
  FieldElem c_q = half(k, k.sub(k.mul(c, sd.a), t));
  FieldElem nu = q2.div(q2.add(k.embed_into(c_q, q2), rho), k.embed_into(c, q2));
  if (nu == sd.theta || nu == sd.theta_bar)
    throw std::invalid_argument("degenerate parameters: phi(Q) lies in {Q, Q_bar}");

  if (!(ratmap_eval(g, sd.Q) == sd.Q))
    throw std::logic_error("closed-form g does not fix Q");
  return {g, c};
}

namespace {

TowerSpec family_impl(const FieldTower& tower, const FieldElem& b, const FieldElem& n_param,
                      bool exclude_minus_3b) {
  const FieldCtx& base = tower.base();
  if (base.characteristic() == 2)
    throw std::invalid_argument("family requires odd characteristic");
  if (tower.q() <= 5) throw std::invalid_argument("q > 5 required for the family");
  if (b.ctx != &base || n_param.ctx != &base)
    throw std::invalid_argument("family parameters must live in the tower base");
  if (base.is_square(base.neg(b))) throw std::invalid_argument("-b must be a nonsquare");
  if (base.is_square(base.neg(n_param))) throw std::invalid_argument("-n must be a nonsquare");
  if (n_param == b) throw std::invalid_argument("n = b is excluded");
  if (n_param == base.neg(b)) throw std::invalid_argument("n = -b is excluded (scale c = 0)");
  if (exclude_minus_3b && n_param == base.mul(base.from_int(-3), b))
    throw std::invalid_argument("n = -3b is excluded (scale c = -1)");

  SingerData sd = build_singer(tower, base.zero(), b);
  ClosedForm closed = build_g_closed_form(sd, base.zero(), n_param);

  const FieldCtx& q2 = tower.level(2);
  Poly rho_poly = poly_from_elems(base, {n_param, base.zero(), base.one()});
  FieldElem rho = roots_with_multiplicity(rho_poly, q2)[0].first;
  auto psis = mobius_search(base, {{p1_finite(rho), sd.Q}});
  if (psis.empty()) throw std::logic_error("no psi with psi(rho) = theta");
  Mobius psi = psis.front();

  // nu = rho / c when a = t = 0
  FieldElem nu = q2.div(rho, base.embed_into(closed.c_den, q2));
  PhiParams phi = derive_phi_from_nu(sd, nu);

  RatMap composed = build_g_composed(sd, phi, psi);
  if (!(composed == closed.g))
    throw std::logic_error("family closed form disagrees with the composition");

  TowerSpec spec = make_spec(sd, phi, psi, closed.g, "closed-form");
  if (!(spec.t == base.zero()) || !(spec.n_param == n_param))
    throw std::logic_error("family rho data mismatch");
  return spec;
}

}  // namespace

TowerSpec standard_family(const FieldTower& tower, const FieldElem& b,
                          const FieldElem& n_param) {
  TowerSpec spec = family_impl(tower, b, n_param, true);
  CheckReport rep = validate_spec(spec);
  if (!rep.all_passed()) {
    std::string what = "family spec failed validation:";
    for (const auto& name : rep.failed()) what += " " + name;
    throw std::logic_error(what);
  }
  return spec;
}

TowerSpec family_spec_forced(const FieldTower& tower, const FieldElem& b,
                             const FieldElem& n_param) {
  return family_impl(tower, b, n_param, false);
}

FieldTower q5_tower(std::uint32_t k_max) {
  const std::vector<std::uint32_t> chi{2, 1, 1};  // X^2 + X + 2
  return make_field_tower(5, 1, k_max, &chi);
}

TowerSpec q5_instance(const FieldTower& tower) {
  if (tower.p() != 5 || tower.n() != 1 || tower.k_max() < 2 ||
      tower.level(2).modulus() != std::vector<std::uint32_t>{2, 1, 1})
    throw std::invalid_argument("q5 instance requires the X^2 + X + 2 tower over F_5");
  const FieldCtx& base = tower.base();
  // chi(X) = X^2 + X + 2 = X^2 - a*X + b with a = -1, b = 2
  SingerData sd = build_singer(tower, base.from_int(-1), base.from_int(2));
  PhiParams phi{base.from_int(2), base.from_int(3)};
  Mobius psi = mobius_make(base.zero(), base.one(), base.one(), base.zero());  // 1/x
  RatMap g = build_g_composed(sd, phi, psi);
  TowerSpec spec = make_spec(sd, phi, psi, g, "q5-instance");
  CheckReport rep = validate_spec(spec);
  if (!rep.all_passed()) throw std::logic_error("q5 instance failed validation");
  return spec;
}

TowerSpec build_generic_spec(const SingerData& sd, std::size_t phi_index,
                             std::size_t t_index, std::size_t psi_index,
                             const std::string& provenance) {
  auto phis = phi_candidates(sd);
  if (phi_index >= phis.size())
    throw std::invalid_argument("phi index out of range (no valid phi at this index)");
  const PhiParams& phi = phis[phi_index];
  auto cands = psi_candidates(sd, phi);
  const std::size_t coset = sd.q + 1;
  if (t_index >= coset || psi_index >= coset)
    throw std::invalid_argument("T or psi index out of range");
  const PsiCandidate& cand = cands[t_index * coset + psi_index];
  RatMap g = build_g_composed(sd, phi, cand.psi);
  return make_spec(sd, phi, cand.psi, g, provenance);
}

TowerSpec degenerate_conjugate_spec(const SingerData& sd) {
  const FieldCtx& base = sd.tower->base();
  PhiParams phi{base.neg(base.one()), sd.a};  // the excluded pair (-1, a)
  auto psis = mobius_search(base, {{sd.Q, sd.Q_bar}});
  if (psis.empty()) throw std::logic_error("no psi with psi(Q) = Q_bar");
  Mobius psi = psis.front();
  RatMap g = build_g_composed(sd, phi, psi);
  return make_spec(sd, phi, psi, g, "degenerate-control");
}

CheckReport validate_spec(const TowerSpec& spec) {
  const FieldTower& tower = *spec.tower;
  const FieldCtx& base = tower.base();
  const FieldCtx& q2 = tower.level(2);
  SingerData sd = build_singer(tower, spec.a, spec.b);
  CheckReport rep;

  rep.add("phi_defined_over_Fq", spec.phi.c.ctx == &base && spec.phi.d.ctx == &base &&
                                     spec.phi.c.idx != 0);
  rep.add("psi_defined_over_Fq", spec.psi.ctx == &base);
  rep.add("f_matches_cover", spec.f == sd.f);

  Mobius phiM = phi_mobius(spec.phi);
  rep.add("phi_fixes_infinity", mobius_apply(phiM, p1_infinity(base)) == p1_infinity(base));

  {
    auto oracle = brute_force_phi_oracle(sd);
    bool preserves = std::find(oracle.begin(), oracle.end(), spec.phi) != oracle.end();
    rep.add("phi_preserves_fR", preserves);
  }
  {
    FieldElem lhs = base.mul(base.sub(base.one(), spec.phi.c), sd.a);
    FieldElem rhs = base.mul(base.from_int(2), spec.phi.d);
    rep.add("phi_trace_identity", lhs == rhs);
  }
  rep.add("phi_nondegenerate", !(spec.nu == sd.Q) && !(spec.nu == sd.Q_bar));

  {
    std::vector<std::uint64_t> rids, rimg, sids, simg;
    for (const auto& P : sd.R) {
      rids.push_back(p1_id(P));
      rimg.push_back(p1_id(mobius_apply(spec.psi, P)));
    }
    for (const auto& P : sd.S) {
      sids.push_back(p1_id(P));
      simg.push_back(p1_id(mobius_apply(spec.psi, P)));
    }
    std::sort(rimg.begin(), rimg.end());
    std::sort(simg.begin(), simg.end());
    rep.add("psi_preserves_R", rimg == rids);
    rep.add("psi_preserves_S", simg == sids);
  }

  rep.add("g_is_phi_f_psi", build_g_composed(sd, spec.phi, spec.psi) == spec.g);
  rep.add("g_fixes_Q", ratmap_eval(spec.g, sd.Q) == sd.Q);
  rep.add("Q_unramified_for_g", ramification_index(spec.g, sd.Q) == 1);

  {
    bool exact = true;
    std::uint64_t rh_total = 0;
    for (const P1Point& P : p1_enumerate(q2)) {
      int e = ramification_index(spec.g, P);
      rh_total += static_cast<std::uint64_t>(e - 1);
      bool is_rho = P == spec.rho || P == spec.rho_bar;
      if (is_rho && e != static_cast<int>(spec.q + 1)) exact = false;
      if (!is_rho && e != 1) exact = false;
    }
    rep.add("ram_g_exactly_rho_rhobar", exact && rh_total == 2 * spec.q);
  }

  rep.add("rho_not_in_QQbar", !(spec.rho == sd.Q) && !(spec.rho == sd.Q_bar));

  {
    auto fib = fiber(spec.g, p1_infinity(base), base);
    bool split = fib.size() == spec.q + 1;
    for (const auto& [pt, mult] : fib) split = split && mult == 1;
    rep.add("g_infinity_fiber_split", split);
  }

  {
    bool ok = !spec.nu.inf;
    if (ok) {
      auto [tr, nm] = q2.trace_norm(FieldElem{&q2, spec.nu.idx});
      (void)nm;
      ok = tr == sd.a;
    }
    rep.add("trace_nu_equals_a", ok);
  }

  {
    bool agrees = true;
    if (base.characteristic() != 2) {
      try {
        FieldElem c = closed_form_constant(sd, spec.t, spec.n_param);
        agrees = c.idx != 0 && assemble_g_from_constant(sd, spec.t, spec.n_param, c) == spec.g;
      } catch (const std::exception&) {
        agrees = false;
      }
    }
    rep.add("closed_form_agrees", agrees);
  }
  return rep;
}

SearchResult search_specs(const SingerData& sd) {
  SearchResult result;
  for (const auto& phi : phi_candidates(sd)) {
    auto cands = psi_candidates(sd, phi);
    const std::size_t coset = sd.q + 1;
    for (std::size_t ti = 0; ti * coset < cands.size(); ++ti) {
      ++result.candidates;
      const PsiCandidate& cand = cands[ti * coset];
      RatMap g = build_g_composed(sd, phi, cand.psi);
      TowerSpec spec = make_spec(sd, phi, cand.psi, g, "generic-search");
      if (validate_spec(spec).all_passed()) result.valid.push_back(std::move(spec));
    }
  }
  return result;
}

std::optional<std::pair<FieldElem, FieldElem>> first_family_parameters(
    const FieldTower& tower) {
  const FieldCtx& base = tower.base();
  if (base.characteristic() == 2 || tower.q() <= 5) return std::nullopt;
  for (std::uint64_t bi = 0; bi < base.order(); ++bi) {
    for (std::uint64_t ni = 0; ni < base.order(); ++ni) {
      FieldElem b = base.element(bi), nn = base.element(ni);
      try {
        standard_family(tower, b, nn);
        return std::make_pair(b, nn);
      } catch (const std::invalid_argument&) {
        continue;
      } catch (const std::domain_error&) {
        continue;
      }
    }
  }
  return std::nullopt;
}

}  // namespace towerlab
