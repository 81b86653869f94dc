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

#include "towerlab/unipoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace towerlab {

namespace {

void trim(Poly& f) {
  while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
}

void require_same_ctx(const Poly& f, const Poly& g) {
  if (f.ctx != g.ctx) throw std::invalid_argument("polynomial context mismatch");
}

FieldElem elem(const Poly& f, std::uint32_t idx) { return {f.ctx, idx}; }

}  // namespace

Poly poly_zero(const FieldCtx& ctx) { return {&ctx, {}}; }

Poly poly_one(const FieldCtx& ctx) { return {&ctx, {ctx.one().idx}}; }

Poly poly_x(const FieldCtx& ctx) { return {&ctx, {0, ctx.one().idx}}; }

Poly poly_monomial(const FieldElem& coeff, unsigned e) {
  if (coeff.ctx == nullptr) throw std::invalid_argument("monomial needs an owning context");
  Poly f{coeff.ctx, std::vector<std::uint32_t>(e + 1, 0)};
  f.c[e] = coeff.idx;
  trim(f);
  return f;
}

Poly poly_from_elems(const FieldCtx& ctx, const std::vector<FieldElem>& coeffs) {
  Poly f{&ctx, {}};
  f.c.reserve(coeffs.size());
  for (const auto& e : coeffs) {
    if (e.ctx != &ctx) throw std::invalid_argument("polynomial context mismatch");
    f.c.push_back(e.idx);
  }
  trim(f);
  return f;
}

int poly_degree(const Poly& f) {
  return f.c.empty() ? kZeroPolyDegree : static_cast<int>(f.c.size()) - 1;
}

bool poly_is_zero(const Poly& f) { return f.c.empty(); }

FieldElem poly_coeff(const Poly& f, unsigned i) {
  if (i < f.c.size()) return elem(f, f.c[i]);
  return f.ctx->zero();
}

FieldElem poly_leading(const Poly& f) {
  if (f.c.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
  return elem(f, f.c.back());
}

Poly poly_add(const Poly& f, const Poly& g) {
  require_same_ctx(f, g);
  Poly r{f.ctx, {}};
  r.c.resize(std::max(f.c.size(), g.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    FieldElem a = i < f.c.size() ? elem(f, f.c[i]) : f.ctx->zero();
    FieldElem b = i < g.c.size() ? elem(g, g.c[i]) : f.ctx->zero();
    r.c[i] = f.ctx->add(a, b).idx;
  }
  trim(r);
  return r;
}

Poly poly_neg(const Poly& f) {
  Poly r = f;
  for (auto& ci : r.c) ci = f.ctx->neg(elem(f, ci)).idx;
  return r;
}

Poly poly_sub(const Poly& f, const Poly& g) { return poly_add(f, poly_neg(g)); }

Poly poly_mul(const Poly& f, const Poly& g) {
  require_same_ctx(f, g);
  if (f.c.empty() || g.c.empty()) return poly_zero(*f.ctx);
  Poly r{f.ctx, std::vector<std::uint32_t>(f.c.size() + g.c.size() - 1, 0)};
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i] == 0) continue;
    for (std::size_t j = 0; j < g.c.size(); ++j) {
      FieldElem t = f.ctx->mul(elem(f, f.c[i]), elem(g, g.c[j]));
      r.c[i + j] = f.ctx->add(elem(r, r.c[i + j]), t).idx;
    }
  }
  trim(r);
  return r;
}

Poly poly_scale(const Poly& f, const FieldElem& s) {
  if (s.ctx != f.ctx) throw std::invalid_argument("polynomial context mismatch");
  Poly r = f;
  for (auto& ci : r.c) ci = f.ctx->mul(elem(f, ci), s).idx;
  trim(r);
  return r;
}

std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g) {
  require_same_ctx(f, g);
  if (g.c.empty()) throw std::domain_error("polynomial division by zero");
  Poly rem = f;
  Poly quot{f.ctx, {}};
  const int dg = poly_degree(g);
  if (poly_degree(f) >= dg) quot.c.assign(f.c.size() - g.c.size() + 1, 0);
  const FieldElem lead_inv = f.ctx->inv(poly_leading(g));
  while (poly_degree(rem) >= dg) {
    const std::size_t shift = rem.c.size() - g.c.size();
    FieldElem q = f.ctx->mul(poly_leading(rem), lead_inv);
    quot.c[shift] = q.idx;
    for (std::size_t i = 0; i < g.c.size(); ++i) {
      FieldElem t = f.ctx->mul(q, elem(g, g.c[i]));
      rem.c[shift + i] = f.ctx->sub(elem(rem, rem.c[shift + i]), t).idx;
    }
    trim(rem);
  }
  trim(quot);
  return {quot, rem};
}

Poly poly_monic(const Poly& f) {
  if (f.c.empty()) return f;
  return poly_scale(f, f.ctx->inv(poly_leading(f)));
}

Poly poly_gcd(const Poly& f, const Poly& g) {
  Poly a = f, b = g;
  while (!b.c.empty()) {
    Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

Poly poly_derivative(const Poly& f) {
  Poly r{f.ctx, {}};
  if (f.c.size() <= 1) return r;
  r.c.resize(f.c.size() - 1);
  for (std::size_t i = 1; i < f.c.size(); ++i) {
    FieldElem k = f.ctx->from_int(static_cast<std::int64_t>(i));
    r.c[i - 1] = f.ctx->mul(k, elem(f, f.c[i])).idx;
  }
  trim(r);
  return r;
}

Poly poly_lift(const Poly& f, const FieldCtx& target) {
  if (f.ctx == &target) return f;
  Poly r{&target, {}};
  r.c.reserve(f.c.size());
  for (auto ci : f.c) r.c.push_back(f.ctx->embed_into(elem(f, ci), target).idx);
  return r;
}

FieldElem poly_eval(const Poly& f, const FieldElem& x) {
  const FieldCtx& tgt = *x.ctx;
  const Poly ff = f.ctx == &tgt ? f : poly_lift(f, tgt);
  FieldElem acc = tgt.zero();
  for (std::size_t i = ff.c.size(); i-- > 0;) {
    acc = tgt.add(tgt.mul(acc, x), FieldElem{&tgt, ff.c[i]});
  }
  return acc;
}

std::vector<std::pair<FieldElem, int>> roots_with_multiplicity(const Poly& f,
                                                               const FieldCtx& target_ctx) {
  if (poly_is_zero(f)) throw std::domain_error("zero polynomial has every element as a root");
  if (target_ctx.order() > desk_budget())
    throw std::domain_error("field too large for exhaustive root scan");
  const Poly ff = poly_lift(f, target_ctx);
  std::vector<std::pair<FieldElem, int>> out;
  for (std::uint64_t i = 0; i < target_ctx.order(); ++i) {
    FieldElem cand = target_ctx.element(i);
    if (poly_eval(ff, cand).idx != 0) continue;
    // multiplicity by deflation: divide by (X - r) until it stops dividing
    Poly lin{&target_ctx, {target_ctx.neg(cand).idx, target_ctx.one().idx}};
    Poly cur = ff;
    int mult = 0;
    while (true) {
      auto [q, r] = poly_divmod(cur, lin);
      if (!poly_is_zero(r)) break;
      ++mult;
      cur = std::move(q);
      if (poly_is_zero(cur)) break;
    }
    out.emplace_back(cand, mult);
  }
  return out;
}

bool is_irreducible_quadratic(const FieldElem& a, const FieldElem& b) {
  if (a.ctx == nullptr || a.ctx != b.ctx)
    throw std::invalid_argument("coefficients must share a context");
  const FieldCtx& ctx = *a.ctx;
  // X^2 - a*X + b
  Poly chi{&ctx, {b.idx, ctx.neg(a).idx, ctx.one().idx}};
  bool has_root = false;
  for (std::uint64_t i = 0; i < ctx.order(); ++i) {
    if (poly_eval(chi, ctx.element(i)).idx == 0) {
      has_root = true;
      break;
    }
  }
  if (ctx.characteristic() != 2) {
    FieldElem disc = ctx.sub(ctx.mul(a, a),
                             ctx.mul(ctx.from_int(4), b));
    bool disc_reducible = ctx.is_square(disc);
    if (disc_reducible != has_root)
      throw std::logic_error("discriminant test disagrees with root scan");
  }
  return !has_root;
}

std::string poly_to_text(const Poly& f) {
  if (f.c.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += f.ctx->to_string(elem(f, f.c[i]));
    if (i == 1) out += "*X";
    if (i > 1) out += "*X^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace towerlab
