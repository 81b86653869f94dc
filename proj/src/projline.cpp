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

#include "towerlab/projline.hpp"

#include <algorithm>
#include <stdexcept>

namespace towerlab {

P1Point p1_finite(const FieldElem& x) {
  if (x.ctx == nullptr) throw std::invalid_argument("point needs an owning context");
  return {x.ctx, false, x.idx};
}

P1Point p1_infinity(const FieldCtx& ctx) { return {&ctx, true, 0}; }

std::vector<P1Point> p1_enumerate(const FieldCtx& ctx) {
  std::vector<P1Point> out;
  out.reserve(ctx.order() + 1);
  for (std::uint64_t i = 0; i < ctx.order(); ++i) out.push_back({&ctx, false, static_cast<std::uint32_t>(i)});
  out.push_back(p1_infinity(ctx));
  return out;
}

std::uint64_t p1_id(const P1Point& P) { return P.inf ? P.ctx->order() : P.idx; }

bool p1_less(const P1Point& a, const P1Point& b) { return p1_id(a) < p1_id(b); }

P1Point p1_embed(const P1Point& P, const FieldCtx& target) {
  if (P.ctx == &target) return P;
  if (P.inf) return p1_infinity(target);
  return p1_finite(P.ctx->embed_into(FieldElem{P.ctx, P.idx}, target));
}

bool p1_in_subfield(const P1Point& P, const FieldCtx& sub) {
  if (P.inf) return true;
  if (P.ctx == &sub) return true;
  return P.ctx->in_subfield(FieldElem{P.ctx, P.idx}, sub);
}

std::string p1_to_string(const P1Point& P) {
  return P.inf ? "inf" : P.ctx->to_string(FieldElem{P.ctx, P.idx});
}

Mobius mobius_make(const FieldElem& a, const FieldElem& b, const FieldElem& c,
                   const FieldElem& d) {
  const FieldCtx* ctx = a.ctx;
  if (ctx == nullptr || b.ctx != ctx || c.ctx != ctx || d.ctx != ctx)
    throw std::invalid_argument("matrix entries must share a context");
  FieldElem det = ctx->sub(ctx->mul(a, d), ctx->mul(b, c));
  if (det.idx == 0) throw std::invalid_argument("singular matrix is not a Moebius map");
  std::array<FieldElem, 4> e{a, b, c, d};
  FieldElem scale = ctx->one();
  for (const auto& x : e) {
    if (x.idx != 0) {
      scale = ctx->inv(x);
      break;
    }
  }
  Mobius M{ctx, {}};
  for (int i = 0; i < 4; ++i) M.m[i] = ctx->mul(e[i], scale).idx;
  return M;
}

Mobius mobius_identity(const FieldCtx& ctx) {
  return mobius_make(ctx.one(), ctx.zero(), ctx.zero(), ctx.one());
}

FieldElem mobius_entry(const Mobius& M, int i) { return {M.ctx, M.m[i]}; }

Mobius mobius_compose(const Mobius& A, const Mobius& B) {
  if (A.ctx != B.ctx) throw std::invalid_argument("Moebius context mismatch");
  const FieldCtx& k = *A.ctx;
  auto e = [&](const Mobius& M, int i) { return FieldElem{M.ctx, M.m[i]}; };
  FieldElem a = k.add(k.mul(e(A, 0), e(B, 0)), k.mul(e(A, 1), e(B, 2)));
  FieldElem b = k.add(k.mul(e(A, 0), e(B, 1)), k.mul(e(A, 1), e(B, 3)));
  FieldElem c = k.add(k.mul(e(A, 2), e(B, 0)), k.mul(e(A, 3), e(B, 2)));
  FieldElem d = k.add(k.mul(e(A, 2), e(B, 1)), k.mul(e(A, 3), e(B, 3)));
  return mobius_make(a, b, c, d);
}

Mobius mobius_inverse(const Mobius& M) {
  const FieldCtx& k = *M.ctx;
  auto e = [&](int i) { return FieldElem{M.ctx, M.m[i]}; };
  return mobius_make(e(3), k.neg(e(1)), k.neg(e(2)), e(0));
}

unsigned mobius_order(const Mobius& M) {
  const Mobius id = mobius_identity(*M.ctx);
  Mobius cur = M;
  unsigned ord = 1;
  // element orders in PGL2(F_q) divide q-1, q+1 or p
  const std::uint64_t cap = M.ctx->order() + 2;
  while (!(cur == id)) {
    cur = mobius_compose(cur, M);
    if (++ord > cap) throw std::logic_error("Moebius order runaway");
  }
  return ord;
}

P1Point mobius_apply(const Mobius& M, const P1Point& P) {
  const FieldCtx& tgt = *P.ctx;
  auto entry = [&](int i) {
    FieldElem e{M.ctx, M.m[i]};
    return M.ctx == &tgt ? e : M.ctx->embed_into(e, tgt);
  };
  FieldElem a = entry(0), b = entry(1), c = entry(2), d = entry(3);
  FieldElem num = tgt.zero(), den = tgt.zero();
  if (P.inf) {
    num = a;
    den = c;
  } else {
    FieldElem x{&tgt, P.idx};
    num = tgt.add(tgt.mul(a, x), b);
    den = tgt.add(tgt.mul(c, x), d);
  }
  if (den.idx == 0) {
    if (num.idx == 0) throw std::logic_error("Moebius action hit 0/0");
    return p1_infinity(tgt);
  }
  return p1_finite(tgt.div(num, den));
}

std::vector<Mobius> pgl2_enumerate(const FieldCtx& ctx) {
  const std::uint64_t q = ctx.order();
  if (q > (1u << 20) || q * q * q - q > desk_budget())
    throw std::domain_error("PGL2 enumeration exceeds the desk budget");
  std::vector<Mobius> out;
  out.reserve(static_cast<std::size_t>(q * q * q - q));
  // Canonical representatives in lexicographic (a, b, c, d) order:
  // a == 0 forces b == 1 (first nonzero entry scaled to 1), otherwise a == 1.
  for (std::uint64_t c = 1; c < q; ++c) {  // det = -c when a == 0, b == 1
    for (std::uint64_t d = 0; d < q; ++d) {
      out.push_back(Mobius{
          &ctx, {0, 1, static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(d)}});
    }
  }
  for (std::uint64_t b = 0; b < q; ++b) {
    for (std::uint64_t c = 0; c < q; ++c) {
      const std::uint32_t bc = ctx.mul(ctx.element(b), ctx.element(c)).idx;
      for (std::uint64_t d = 0; d < q; ++d) {
        if (d == bc) continue;  // det = d - b*c
        out.push_back(Mobius{
            &ctx, {1, static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c),
                   static_cast<std::uint32_t>(d)}});
      }
    }
  }
  return out;
}

std::vector<Mobius> mobius_search(const FieldCtx& ctx,
                                  const std::vector<std::pair<P1Point, P1Point>>& constraints) {
  std::vector<Mobius> out;
  for (const Mobius& M : pgl2_enumerate(ctx)) {
    bool ok = true;
    for (const auto& [pt, img] : constraints) {
      if (!(mobius_apply(M, pt) == img)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(M);
  }
  return out;
}

RatMap ratmap_make(const Poly& num, const Poly& den) {
  if (num.ctx == nullptr || num.ctx != den.ctx)
    throw std::invalid_argument("rational map parts must share a context");
  if (poly_is_zero(den)) throw std::invalid_argument("rational map denominator is zero");
  const FieldCtx& k = *num.ctx;
  if (poly_is_zero(num)) return {poly_zero(k), poly_one(k)};
  Poly g = poly_gcd(num, den);
  Poly n = poly_divmod(num, g).first;
  Poly d = poly_divmod(den, g).first;
  FieldElem s = k.inv(poly_leading(n));
  return {poly_scale(n, s), poly_scale(d, s)};
}

RatMap ratmap_from_mobius(const Mobius& M) {
  const FieldCtx& k = *M.ctx;
  Poly num = poly_from_elems(k, {FieldElem{&k, M.m[1]}, FieldElem{&k, M.m[0]}});
  Poly den = poly_from_elems(k, {FieldElem{&k, M.m[3]}, FieldElem{&k, M.m[2]}});
  return ratmap_make(num, den);
}

RatMap ratmap_lift(const RatMap& F, const FieldCtx& target) {
  return {poly_lift(F.num, target), poly_lift(F.den, target)};
}

int ratmap_degree(const RatMap& F) {
  return std::max(poly_degree(F.num), poly_degree(F.den));
}

P1Point ratmap_eval(const RatMap& F, const P1Point& P) {
  const FieldCtx& tgt = *P.ctx;
  if (P.inf) {
    const int dn = poly_degree(F.num), dd = poly_degree(F.den);
    if (dn > dd) return p1_infinity(tgt);
    if (dn < dd) return p1_finite(tgt.zero());
    FieldElem ratio = F.num.ctx->div(poly_leading(F.num), poly_leading(F.den));
    return p1_finite(F.num.ctx == &tgt ? ratio : F.num.ctx->embed_into(ratio, tgt));
  }
  FieldElem x{&tgt, P.idx};
  FieldElem n = poly_eval(F.num, x);
  FieldElem d = poly_eval(F.den, x);
  if (d.idx != 0) return p1_finite(tgt.div(n, d));
  if (n.idx == 0) throw std::logic_error("rational map is not reduced");
  return p1_infinity(tgt);
}

namespace {

// Substitute the fractional-linear map (alpha*x + beta)/(gamma*x + delta)
// into the degree-D homogenization of f.
Poly substitute_mobius(const Poly& f, int D, const Poly& top, const Poly& bottom) {
  const FieldCtx& k = *f.ctx;
  std::vector<Poly> top_pow(D + 1, poly_one(k)), bot_pow(D + 1, poly_one(k));
  for (int i = 1; i <= D; ++i) {
    top_pow[i] = poly_mul(top_pow[i - 1], top);
    bot_pow[i] = poly_mul(bot_pow[i - 1], bottom);
  }
  Poly acc = poly_zero(k);
  for (int i = 0; i <= poly_degree(f); ++i) {
    FieldElem ci = poly_coeff(f, static_cast<unsigned>(i));
    if (ci.idx == 0) continue;
    Poly term = poly_scale(poly_mul(top_pow[i], bot_pow[D - i]), ci);
    acc = poly_add(acc, term);
  }
  return acc;
}

const FieldCtx* common_ctx(const FieldCtx* a, const FieldCtx* b) {
  if (a == b) return a;
  if (b->has_embedding_from(*a)) return b;
  if (a->has_embedding_from(*b)) return a;
  throw std::invalid_argument("contexts are not embeddable into each other");
}

}  // namespace

RatMap ratmap_compose_mobius(const std::optional<Mobius>& pre, const RatMap& F,
                             const std::optional<Mobius>& post) {
  const FieldCtx* tgt = F.num.ctx;
  if (pre) tgt = common_ctx(tgt, pre->ctx);
  if (post) tgt = common_ctx(tgt, post->ctx);
  RatMap G = F.num.ctx == tgt ? F : ratmap_lift(F, *tgt);
  const int D = ratmap_degree(G);
  Poly num = G.num, den = G.den;
  if (pre) {
    const FieldCtx& k = *tgt;
    auto entry = [&](int i) {
      FieldElem e{pre->ctx, pre->m[i]};
      return pre->ctx == tgt ? e : pre->ctx->embed_into(e, k);
    };
    Poly top = poly_from_elems(k, {entry(1), entry(0)});
    Poly bottom = poly_from_elems(k, {entry(3), entry(2)});
    Poly num2 = substitute_mobius(num, D, top, bottom);
    Poly den2 = substitute_mobius(den, D, top, bottom);
    num = std::move(num2);
    den = std::move(den2);
  }
  if (post) {
    const FieldCtx& k = *tgt;
    auto entry = [&](int i) {
      FieldElem e{post->ctx, post->m[i]};
      return post->ctx == tgt ? e : post->ctx->embed_into(e, k);
    };
    Poly num2 = poly_add(poly_scale(num, entry(0)), poly_scale(den, entry(1)));
    Poly den2 = poly_add(poly_scale(num, entry(2)), poly_scale(den, entry(3)));
    num = std::move(num2);
    den = std::move(den2);
  }
  RatMap out = ratmap_make(num, den);
  if (ratmap_degree(out) != D)
    throw std::logic_error("Moebius composition changed the degree");
  return out;
}

std::vector<std::pair<P1Point, int>> fiber(const RatMap& F, const P1Point& t,
                                           const FieldCtx& target_ctx) {
  if (target_ctx.order() > desk_budget())
    throw std::domain_error("field too large for fiber enumeration");
  const int D = ratmap_degree(F);
  RatMap G = F.num.ctx == &target_ctx ? F : ratmap_lift(F, target_ctx);
  std::vector<std::pair<P1Point, int>> out;
  auto collect_roots = [&](const Poly& h) {
    for (const auto& [root, mult] : roots_with_multiplicity(h, target_ctx)) {
      out.emplace_back(p1_finite(root), mult);
    }
  };
  if (t.inf) {
    if (poly_degree(G.den) >= 1) collect_roots(G.den);
    const int drop = poly_degree(G.num) - poly_degree(G.den);
    if (drop > 0) out.emplace_back(p1_infinity(target_ctx), drop);
    return out;
  }
  FieldElem tv{t.ctx, t.idx};
  FieldElem te = t.ctx == &target_ctx ? tv : t.ctx->embed_into(tv, target_ctx);
  Poly h = poly_sub(G.num, poly_scale(G.den, te));
  if (poly_is_zero(h)) throw std::domain_error("fiber of a constant map");
  if (poly_degree(h) >= 1) collect_roots(h);
  const int drop = D - poly_degree(h);
  if (drop > 0) {
    // the map sends infinity to t exactly when the top coefficients cancel
    out.emplace_back(p1_infinity(target_ctx), drop);
  }
  return out;
}

int ramification_index(const RatMap& F, const P1Point& P) {
  P1Point v = ratmap_eval(F, P);
  for (const auto& [pt, mult] : fiber(F, v, *P.ctx)) {
    if (pt == P) return mult;
  }
  throw std::logic_error("point missing from its own fiber");
}

bool is_galois_invariant(const RatMap& F, const Mobius& M) {
  return ratmap_compose_mobius(M, F, std::nullopt) == F;
}

}  // namespace towerlab
