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

#include "towerlab/singer.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace towerlab {

namespace {

// Coordinates (u, v) of x in the basis {1, theta} of F_{q^2} over F_q.
std::pair<FieldElem, FieldElem> theta_coordinates(const FieldCtx& q2, const FieldCtx& base,
                                                  const FieldElem& theta, const FieldElem& x) {
  for (std::uint64_t vi = 0; vi < base.order(); ++vi) {
    FieldElem v = base.element(vi);
    FieldElem rest = q2.sub(x, q2.mul(base.embed_into(v, q2), theta));
    if (auto u = q2.project_to(rest, base)) return {*u, v};
  }
  throw std::logic_error("element has no coordinates in the theta basis");
}

}  // namespace

std::pair<FieldElem, FieldElem> canonical_quadratic(const FieldCtx& base) {
  for (std::uint64_t ai = 0; ai < base.order(); ++ai) {
    for (std::uint64_t bi = 0; bi < base.order(); ++bi) {
      FieldElem a = base.element(ai), b = base.element(bi);
      if (is_irreducible_quadratic(a, b)) return {a, b};
    }
  }
  throw std::logic_error("no irreducible quadratic over this field");
}

SingerData build_singer(const FieldTower& tower, const FieldElem& a, const FieldElem& b) {
  const FieldCtx& base = tower.base();
  const FieldCtx& q2 = tower.level(2);
  if (a.ctx != &base || b.ctx != &base)
    throw std::invalid_argument("a and b must live in the tower base");
  if (!is_irreducible_quadratic(a, b))
    throw std::invalid_argument("X^2 - a*X + b is reducible over F_q");

  SingerData sd;
  sd.tower = &tower;
  sd.q = tower.q();
  sd.a = a;
  sd.b = b;

  // chi = X^2 - a*X + b, theta its first root in F_{q^2}
  Poly chi = poly_from_elems(base, {b, base.neg(a), base.one()});
  auto roots = roots_with_multiplicity(chi, q2);
  if (roots.size() != 2) throw std::logic_error("irreducible quadratic must split in F_{q^2}");
  sd.theta = roots[0].first;
  sd.theta_bar = q2.frobenius_q(sd.theta);
  sd.Q = p1_finite(sd.theta);
  sd.Q_bar = p1_finite(sd.theta_bar);

  // f = (x^{q+1} - a*x + b)/(x^q - x)
  const unsigned qe = static_cast<unsigned>(sd.q);
  Poly num = poly_add(poly_monomial(base.one(), qe + 1),
                      poly_from_elems(base, {b, base.neg(a)}));
  Poly den = poly_add(poly_monomial(base.one(), qe),
                      poly_from_elems(base, {base.zero(), base.neg(base.one())}));
  sd.f = ratmap_make(num, den);

  // Singer generator: write a generator lambda of F_{q^2}^* as u + v*theta;
  // multiplication by lambda in the basis {1, -theta} descends to the PGL2
  // element [[u, v*b], [-v, u + v*a]], which fixes Q and Q_bar.
  FieldElem lambda = q2.multiplicative_generator();
  auto [u, v] = theta_coordinates(q2, base, sd.theta, lambda);
  if (v.idx == 0) throw std::logic_error("multiplicative generator landed in F_q");
  sd.generator = mobius_make(u, base.mul(v, b), base.neg(v), base.add(u, base.mul(v, a)));

  if (mobius_order(sd.generator) != sd.q + 1)
    throw std::logic_error("Singer generator does not have order q+1");
  if (!(mobius_apply(sd.generator, sd.Q) == sd.Q) ||
      !(mobius_apply(sd.generator, sd.Q_bar) == sd.Q_bar))
    throw std::logic_error("Singer generator does not fix Q and its conjugate");
  if (sd.q <= 13) {
    // cross-check against brute force: the isotropy group of Q is exactly
    // the cyclic group generated above
    auto iso = mobius_search(base, {{sd.Q, sd.Q}});
    auto powers = singer_group(sd);
    auto key = [](const Mobius& M) { return M.m; };
    std::vector<std::array<std::uint32_t, 4>> lhs, rhs;
    for (const auto& M : iso) lhs.push_back(key(M));
    for (const auto& M : powers) rhs.push_back(key(M));
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    if (lhs != rhs) throw std::logic_error("isotropy group mismatch against brute force");
  }

  // R and S
  for (const P1Point& P : p1_enumerate(q2)) {
    if (!p1_in_subfield(P, base)) sd.R.push_back(P);
  }
  sd.S = p1_enumerate(base);

  CheckReport rep = verify_cover(sd);
  if (!rep.all_passed()) {
    std::string what = "cover verification failed:";
    for (const auto& name : rep.failed()) what += " " + name;
    throw std::logic_error(what);
  }
  return sd;
}

std::vector<Mobius> singer_group(const SingerData& sd) {
  std::vector<Mobius> out;
  Mobius cur = mobius_identity(sd.tower->base());
  for (std::uint64_t i = 0; i <= sd.q; ++i) {
    out.push_back(cur);
    cur = mobius_compose(cur, sd.generator);
  }
  return out;
}

CheckReport verify_cover(const SingerData& sd) {
  const FieldCtx& base = sd.tower->base();
  const FieldCtx& q2 = sd.tower->level(2);
  const std::uint64_t q = sd.q;
  CheckReport rep;

  P1Point inf2 = p1_infinity(q2);
  bool fixes = ratmap_eval(sd.f, sd.Q) == sd.Q && ratmap_eval(sd.f, sd.Q_bar) == sd.Q_bar &&
               ratmap_eval(sd.f, inf2) == inf2;
  rep.add("fixes_Q_Qbar_inf", fixes);

  bool ram = ramification_index(sd.f, sd.Q) == static_cast<int>(q + 1) &&
             ramification_index(sd.f, sd.Q_bar) == static_cast<int>(q + 1);
  rep.add("totally_ramified_at_Q_Qbar", ram);

  // fiber over infinity inside P^1(F_q): all of it, simple
  auto fib = fiber(sd.f, p1_infinity(base), base);
  bool split = fib.size() == q + 1;
  for (const auto& [pt, mult] : fib) split = split && mult == 1;
  rep.add("infinity_fiber_split", split);

  // no geometric ramification besides Q, Q_bar: scan P^1(F_{q^2}) and check
  // the tame Riemann-Hurwitz budget 2(q+1) - 2 is exhausted by Q and Q_bar
  bool no_other = true;
  std::uint64_t rh_total = 0;
  for (const P1Point& P : p1_enumerate(q2)) {
    int e = ramification_index(sd.f, P);
    if (std::gcd(static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(base.characteristic())) != 1)
      throw std::logic_error("wild ramification encountered; tameness guard tripped");
    rh_total += static_cast<std::uint64_t>(e - 1);
    if (e != 1 && !(P == sd.Q) && !(P == sd.Q_bar)) no_other = false;
  }
  no_other = no_other && rh_total == 2 * q;
  rep.add("no_other_ramification", no_other);

  rep.add("galois_invariant", is_galois_invariant(sd.f, sd.generator));

  // transitivity of G on P^1(F_q): the orbit of infinity is everything
  {
    std::vector<std::uint64_t> orbit;
    for (const Mobius& sigma : singer_group(sd)) {
      orbit.push_back(p1_id(mobius_apply(sigma, p1_infinity(base))));
    }
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    rep.add("group_transitive_on_S", orbit.size() == q + 1);
  }
  return rep;
}

std::vector<P1Point> image_of_R(const SingerData& sd) {
  std::vector<P1Point> out;
  for (const P1Point& P : sd.R) out.push_back(ratmap_eval(sd.f, P));
  std::sort(out.begin(), out.end(), p1_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool trace_fiber_image_check(const SingerData& sd) {
  const FieldCtx& q2 = sd.tower->level(2);
  std::vector<P1Point> image = image_of_R(sd);

  std::vector<P1Point> trace_fiber;
  for (std::uint64_t i = 0; i < q2.order(); ++i) {
    FieldElem g = q2.element(i);
    auto [tr, nm] = q2.trace_norm(g);
    (void)nm;
    if (tr == sd.a) trace_fiber.push_back(p1_finite(g));
  }
  return image.size() == sd.q && trace_fiber.size() == sd.q && image == trace_fiber;
}

bool mu_conjugation_check(const SingerData& sd, bool swapped) {
  const FieldCtx& q2 = sd.tower->level(2);
  const FieldElem t0 = swapped ? sd.theta_bar : sd.theta;
  const FieldElem t1 = swapped ? sd.theta : sd.theta_bar;
  // mu : x -> (x - theta)/(x - theta_bar)
  Mobius mu = mobius_make(q2.one(), q2.neg(t0), q2.one(), q2.neg(t1));
  RatMap conj = ratmap_compose_mobius(mobius_inverse(mu), sd.f, mu);

  const unsigned qe = static_cast<unsigned>(sd.q);
  RatMap norm_map = ratmap_make(poly_monomial(q2.one(), qe + 1), poly_one(q2));
  if (!(conj == norm_map)) return false;

  // N(mu(P)) = 1 for every rational P
  for (const P1Point& P : sd.S) {
    P1Point image = mobius_apply(mu, p1_embed(P, q2));
    if (image.inf) return false;
    FieldElem g{&q2, image.idx};
    auto [tr, nm] = q2.trace_norm(g);
    (void)tr;
    if (!(nm == sd.tower->base().one())) return false;
  }
  return true;
}

}  // namespace towerlab
