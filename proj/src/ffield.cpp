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

#include "towerlab/ffield.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <stdexcept>

namespace towerlab {

namespace {

constexpr std::uint64_t kDefaultBudget = 1ull << 20;
constexpr std::uint64_t kHardCap = 0x7fffffffull;  // element indices are u32

// Raw polynomial helpers over F_p, little-endian coefficient vectors with no
// trailing zeros. Only used for modulus selection, before any context exists.

void pm_trim(std::vector<std::uint32_t>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f by monic-after-scaling g; used only for divisibility tests.
bool pm_divisible(std::vector<std::uint32_t> f, const std::vector<std::uint32_t>& g,
                  std::uint64_t p) {
  pm_trim(f);
  if (f.empty()) return true;
  const std::size_t dg = g.size() - 1;
  // g is monic by construction here.
  while (f.size() >= g.size()) {
    std::uint64_t c = f.back();
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::uint64_t sub = c * g[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
    }
    pm_trim(f);
    if (f.size() <= dg) break;
  }
  pm_trim(f);
  return f.empty();
}

bool pm_is_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p) {
  const std::size_t d = f.size() - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  if (f[0] == 0) return false;  // divisible by X
  // Trial division by every monic polynomial of degree 1..d/2. Exhaustion is
  // fine at desk scale and needs no probabilistic machinery.
  for (std::size_t e = 1; 2 * e <= d; ++e) {
    std::vector<std::uint32_t> g(e + 1, 0);
    g[e] = 1;
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < e; ++i) combos *= p;
    for (std::uint64_t c = 0; c < combos; ++c) {
      std::uint64_t rest = c;
      for (std::size_t i = 0; i < e; ++i) {
        g[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      if (pm_divisible(f, g, p)) return false;
    }
  }
  return true;
}

}  // namespace

std::uint64_t desk_budget() {
  static const std::uint64_t budget = [] {
    if (const char* env = std::getenv("TOWERLAB_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v >= 2) return std::min<std::uint64_t>(v, kHardCap);
    }
    return kDefaultBudget;
  }();
  return budget;
}

bool is_prime_u64(std::uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d * d <= v; d += 2) {
    if (v % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> lex_smallest_irreducible(std::uint32_t p, std::uint32_t d) {
  if (d == 1) return {0, 1};  // X itself
  // Lexicographic order on the little-endian sequence (c0, ..., c_{d-1}):
  // c0 varies slowest. c0 = 0 is never irreducible, so start at 1.
  std::vector<std::uint32_t> f(d + 1, 0);
  f[d] = 1;
  std::vector<std::uint32_t> digits(d, 0);
  digits[0] = 1;
  while (true) {
    for (std::uint32_t i = 0; i < d; ++i) f[i] = digits[i];
    if (pm_is_irreducible(f, p)) return f;
    // advance odometer, last coordinate fastest
    std::int32_t pos = static_cast<std::int32_t>(d) - 1;
    while (pos >= 0) {
      if (++digits[pos] < p) break;
      digits[pos] = 0;
      --pos;
    }
    if (pos < 0) throw std::logic_error("no irreducible polynomial found");
  }
}

void FieldCtx::require_mine(const FieldElem& x) const {
  if (x.ctx != this) throw std::invalid_argument("field context mismatch");
}

void FieldCtx::decode(std::uint32_t idx, std::uint32_t* out) const {
  for (std::uint32_t i = 0; i < deg_; ++i) {
    out[i] = idx % p_;
    idx /= p_;
  }
}

std::uint32_t FieldCtx::encode(const std::uint32_t* digits) const {
  std::uint64_t v = 0;
  for (std::uint32_t i = deg_; i-- > 0;) v = v * p_ + digits[i];
  return static_cast<std::uint32_t>(v);
}

FieldElem FieldCtx::generator() const {
  if (deg_ == 1) return zero();  // residue of X with modulus X
  return {this, p_};
}

FieldElem FieldCtx::element(std::uint64_t index) const {
  if (index >= order_) throw std::invalid_argument("element index out of range");
  return {this, static_cast<std::uint32_t>(index)};
}

FieldElem FieldCtx::from_coeffs(const std::vector<std::uint32_t>& coeffs) const {
  if (coeffs.size() > deg_) throw std::invalid_argument("coefficient sequence too long");
  std::array<std::uint32_t, 32> d{};
  for (std::size_t i = 0; i < coeffs.size(); ++i) d[i] = coeffs[i] % p_;
  return {this, encode(d.data())};
}

FieldElem FieldCtx::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {this, static_cast<std::uint32_t>(r)};
}

std::vector<std::uint32_t> FieldCtx::coeffs(const FieldElem& x) const {
  require_mine(x);
  std::vector<std::uint32_t> out(deg_);
  std::array<std::uint32_t, 32> d{};
  decode(x.idx, d.data());
  std::copy(d.begin(), d.begin() + deg_, out.begin());
  return out;
}

FieldElem FieldCtx::add(const FieldElem& x, const FieldElem& y) const {
  require_mine(x);
  require_mine(y);
  std::array<std::uint32_t, 32> a{}, b{};
  decode(x.idx, a.data());
  decode(y.idx, b.data());
  for (std::uint32_t i = 0; i < deg_; ++i) a[i] = (a[i] + b[i]) % p_;
  return {this, encode(a.data())};
}

FieldElem FieldCtx::sub(const FieldElem& x, const FieldElem& y) const {
  require_mine(x);
  require_mine(y);
  std::array<std::uint32_t, 32> a{}, b{};
  decode(x.idx, a.data());
  decode(y.idx, b.data());
  for (std::uint32_t i = 0; i < deg_; ++i) a[i] = (a[i] + p_ - b[i]) % p_;
  return {this, encode(a.data())};
}

FieldElem FieldCtx::neg(const FieldElem& x) const {
  require_mine(x);
  std::array<std::uint32_t, 32> a{};
  decode(x.idx, a.data());
  for (std::uint32_t i = 0; i < deg_; ++i) a[i] = (p_ - a[i]) % p_;
  return {this, encode(a.data())};
}

std::uint32_t FieldCtx::mul_idx(std::uint32_t xi, std::uint32_t yi) const {
  std::array<std::uint32_t, 32> a{}, b{};
  decode(xi, a.data());
  decode(yi, b.data());
  std::array<std::uint64_t, 64> acc{};
  for (std::uint32_t i = 0; i < deg_; ++i) {
    if (a[i] == 0) continue;
    for (std::uint32_t j = 0; j < deg_; ++j) {
      acc[i + j] += static_cast<std::uint64_t>(a[i]) * b[j] % p_;
    }
  }
  for (std::uint32_t i = 0; i < 2 * deg_ - 1; ++i) acc[i] %= p_;
  for (std::uint32_t i = 2 * deg_ - 1; i-- > deg_;) {
    const std::uint64_t c = acc[i];
    if (c == 0) continue;
    acc[i] = 0;
    for (std::uint32_t k = 0; k < deg_; ++k) {
      acc[i - deg_ + k] = (acc[i - deg_ + k] + c * (p_ - modulus_[k])) % p_;
    }
  }
  std::array<std::uint32_t, 32> r{};
  for (std::uint32_t i = 0; i < deg_; ++i) r[i] = static_cast<std::uint32_t>(acc[i]);
  return encode(r.data());
}

FieldElem FieldCtx::mul(const FieldElem& x, const FieldElem& y) const {
  require_mine(x);
  require_mine(y);
  return {this, mul_idx(x.idx, y.idx)};
}

std::uint32_t FieldCtx::pow_idx(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = mul_idx(r, a);
    a = mul_idx(a, a);
    e >>= 1;
  }
  return r;
}

FieldElem FieldCtx::inv(const FieldElem& x) const {
  require_mine(x);
  if (x.idx == 0) throw std::domain_error("division by zero");
  return {this, pow_idx(x.idx, order_ - 2)};
}

FieldElem FieldCtx::div(const FieldElem& x, const FieldElem& y) const {
  return mul(x, inv(y));
}

FieldElem FieldCtx::pow(const FieldElem& x, std::int64_t e) const {
  require_mine(x);
  if (e < 0) {
    FieldElem xi = inv(x);
    return {this, pow_idx(xi.idx, static_cast<std::uint64_t>(-e))};
  }
  return {this, pow_idx(x.idx, static_cast<std::uint64_t>(e))};
}

FieldElem FieldCtx::frobenius_q(const FieldElem& x) const {
  require_mine(x);
  return {this, pow_idx(x.idx, base_order_)};
}

std::pair<FieldElem, FieldElem> FieldCtx::trace_norm(const FieldElem& x) const {
  require_mine(x);
  if (base_ == nullptr || deg_ != 2 * base_deg_)
    throw std::invalid_argument("trace_norm requires the quadratic extension of the tower base");
  FieldElem xbar = frobenius_q(x);
  FieldElem tr = add(x, xbar);
  FieldElem nm = mul(x, xbar);
  auto trp = project_to(tr, *base_);
  auto nmp = project_to(nm, *base_);
  if (!trp || !nmp) throw std::logic_error("trace/norm fell outside the base field");
  return {*trp, *nmp};
}

bool FieldCtx::is_square(const FieldElem& x) const {
  require_mine(x);
  if (x.idx == 0) return true;
  if (p_ == 2) return true;  // Frobenius is onto squares in even characteristic
  return pow_idx(x.idx, (order_ - 1) / 2) == 1;
}

std::vector<FieldElem> FieldCtx::find_nonsquares() const {
  if (p_ == 2)
    throw std::domain_error("every element is a square in even characteristic");
  std::vector<bool> sq(order_, false);
  for (std::uint64_t i = 0; i < order_; ++i) {
    sq[mul_idx(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i))] = true;
  }
  std::vector<FieldElem> out;
  for (std::uint64_t i = 0; i < order_; ++i) {
    FieldElem e{this, static_cast<std::uint32_t>(i)};
    if (sq[i] != is_square(e))
      throw std::logic_error("square sweep disagrees with Euler criterion");
    if (!sq[i]) out.push_back(e);
  }
  return out;
}

std::uint64_t FieldCtx::element_order(const FieldElem& x) const {
  require_mine(x);
  if (x.idx == 0) throw std::domain_error("zero has no multiplicative order");
  std::uint64_t ord = order_ - 1;
  std::uint64_t m = ord;
  for (std::uint64_t f = 2; f * f <= m; ++f) {
    if (m % f) continue;
    while (m % f == 0) m /= f;
    while (ord % f == 0 && pow_idx(x.idx, ord / f) == 1) ord /= f;
  }
  if (m > 1) {
    while (ord % m == 0 && pow_idx(x.idx, ord / m) == 1) ord /= m;
  }
  return ord;
}

FieldElem FieldCtx::multiplicative_generator() const {
  for (std::uint64_t i = 1; i < order_; ++i) {
    FieldElem e{this, static_cast<std::uint32_t>(i)};
    if (element_order(e) == order_ - 1) return e;
  }
  throw std::logic_error("no multiplicative generator found");
}

const FieldCtx::Embedding* FieldCtx::embedding_from(const FieldCtx* sub) const {
  for (const auto& e : embeddings_) {
    if (e.from == sub) return &e;
  }
  return nullptr;
}

bool FieldCtx::has_embedding_from(const FieldCtx& sub) const {
  return &sub == this || embedding_from(&sub) != nullptr;
}

FieldElem FieldCtx::embed_into(const FieldElem& x, const FieldCtx& target) const {
  require_mine(x);
  if (&target == this) return x;
  const Embedding* e = target.embedding_from(this);
  if (e == nullptr) throw std::invalid_argument("no embedding between these contexts");
  return {&target, e->fwd[x.idx]};
}

std::optional<FieldElem> FieldCtx::project_to(const FieldElem& x, const FieldCtx& sub) const {
  require_mine(x);
  if (&sub == this) return x;
  const Embedding* e = embedding_from(&sub);
  if (e == nullptr) throw std::invalid_argument("no embedding between these contexts");
  auto it = std::lower_bound(e->rev.begin(), e->rev.end(),
                             std::make_pair(x.idx, std::uint32_t{0}));
  if (it == e->rev.end() || it->first != x.idx) return std::nullopt;
  return FieldElem{&sub, it->second};
}

bool FieldCtx::in_subfield(const FieldElem& x, const FieldCtx& sub) const {
  return project_to(x, sub).has_value();
}

std::string FieldCtx::to_string(const FieldElem& x) const {
  require_mine(x);
  auto cs = coeffs(x);
  std::string out;
  for (std::uint32_t i = 0; i < deg_; ++i) {
    if (i) out += ",";
    out += std::to_string(cs[i]);
  }
  return out;
}

FieldElem FieldCtx::parse(std::string_view text) const {
  std::vector<std::uint32_t> cs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    std::string_view tok = text.substr(pos, next == std::string_view::npos ? next : next - pos);
    if (tok.empty()) throw std::invalid_argument("malformed field element text");
    std::uint64_t v = 0;
    for (char ch : tok) {
      if (ch < '0' || ch > '9') throw std::invalid_argument("malformed field element text");
      v = v * 10 + static_cast<std::uint64_t>(ch - '0');
      if (v >= p_) throw std::invalid_argument("field element coefficient out of range");
    }
    cs.push_back(static_cast<std::uint32_t>(v));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return from_coeffs(cs);
}

const FieldCtx& FieldTower::level(std::uint32_t k) const {
  if (k == 0 || k > levels_.size()) throw std::invalid_argument("tower level out of range");
  return *levels_[k - 1];
}

FieldTower make_field_tower(std::uint32_t p, std::uint32_t n, std::uint32_t k_max,
                            const std::vector<std::uint32_t>* q2_modulus) {
  if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
  if (n == 0 || k_max == 0) throw std::invalid_argument("extension degrees must be positive");
  const std::uint64_t budget = std::min(desk_budget(), kHardCap);
  std::uint64_t top = 1;
  for (std::uint32_t i = 0; i < n * k_max; ++i) {
    top *= p;
    if (top > budget)
      throw std::domain_error("field size p^(n*k) exceeds the desk-scale budget");
  }
  if (q2_modulus != nullptr) {
    if (n != 1)
      throw std::invalid_argument("a prescribed quadratic modulus requires a prime base field");
    if (k_max < 2) throw std::invalid_argument("prescribed modulus needs k_max >= 2");
    if (q2_modulus->size() != 3 || q2_modulus->back() != 1)
      throw std::invalid_argument("prescribed modulus must be monic quadratic");
    for (auto c : *q2_modulus) {
      if (c >= p) throw std::invalid_argument("prescribed modulus coefficient out of range");
    }
    if (!pm_is_irreducible(*q2_modulus, p))
      throw std::invalid_argument("prescribed modulus is reducible");
  }

  FieldTower tower;
  tower.p_ = p;
  tower.n_ = n;
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) q *= p;
  tower.q_ = q;

  for (std::uint32_t j = 1; j <= k_max; ++j) {
    auto ctx = std::unique_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->deg_ = n * j;
    if (j == 2 && q2_modulus != nullptr) {
      ctx->modulus_ = *q2_modulus;
    } else {
      ctx->modulus_ = lex_smallest_irreducible(p, ctx->deg_);
    }
    std::uint64_t ord = 1;
    for (std::uint32_t i = 0; i < ctx->deg_; ++i) ord *= p;
    ctx->order_ = ord;
    ctx->base_deg_ = n;
    ctx->base_order_ = q;
    ctx->base_ = j == 1 ? nullptr : tower.levels_[0].get();

    // Embeddings from every lower level whose index divides this one,
    // lowest level first so the level-1 image is available for the
    // compatibility filter on higher sublevels.
    for (std::uint32_t i = 1; i < j; ++i) {
      if (j % i != 0) continue;
      const FieldCtx& sub = *tower.levels_[i - 1];
      // Roots of the subfield modulus in this field, ascending index order.
      std::vector<std::uint32_t> roots;
      for (std::uint64_t cand = 0; cand < ctx->order_; ++cand) {
        // Horner evaluation of the F_p-coefficient modulus at cand.
        std::uint32_t acc = 0;
        for (std::size_t t = sub.modulus_.size(); t-- > 0;) {
          acc = ctx->mul_idx(acc, static_cast<std::uint32_t>(cand));
          acc = ctx->add(FieldElem{ctx.get(), acc},
                         ctx->from_int(sub.modulus_[t]))
                    .idx;
        }
        if (acc == 0) roots.push_back(static_cast<std::uint32_t>(cand));
      }
      if (roots.empty()) throw std::logic_error("subfield modulus has no root in extension");
      auto embed_elem = [&](std::uint32_t sub_idx, std::uint32_t root) {
        std::array<std::uint32_t, 32> digits{};
        sub.decode(sub_idx, digits.data());
        std::uint32_t acc = 0;
        for (std::uint32_t t = sub.deg_; t-- > 0;) {
          acc = ctx->mul_idx(acc, root);
          acc = ctx->add(FieldElem{ctx.get(), acc}, ctx->from_int(digits[t])).idx;
        }
        return acc;
      };
      std::uint32_t chosen = roots.front();
      if (i > 1) {
        // Keep the square of embeddings over level 1 commuting: the image of
        // the level-1 generator through level i must match its direct image.
        const FieldCtx::Embedding* to_here = ctx->embedding_from(tower.levels_[0].get());
        const FieldCtx::Embedding* to_sub = sub.embedding_from(tower.levels_[0].get());
        if (to_here == nullptr || to_sub == nullptr)
          throw std::logic_error("level-1 embeddings missing");
        const std::uint32_t g1 = tower.levels_[0]->generator().idx;
        const std::uint32_t want = to_here->fwd[g1];
        const std::uint32_t g1_in_sub = to_sub->fwd[g1];
        bool found = false;
        for (std::uint32_t r : roots) {
          if (embed_elem(g1_in_sub, r) == want) {
            chosen = r;
            found = true;
            break;
          }
        }
        if (!found) throw std::logic_error("no level-1-compatible embedding root");
      }
      FieldCtx::Embedding emb;
      emb.from = &sub;
      emb.fwd.resize(sub.order_);
      emb.rev.resize(sub.order_);
      for (std::uint64_t e = 0; e < sub.order_; ++e) {
        std::uint32_t img = embed_elem(static_cast<std::uint32_t>(e), chosen);
        emb.fwd[e] = img;
        emb.rev[e] = {img, static_cast<std::uint32_t>(e)};
      }
      std::sort(emb.rev.begin(), emb.rev.end());
      ctx->embeddings_.push_back(std::move(emb));
    }
    tower.levels_.push_back(std::move(ctx));
  }
  return tower;
}

}  // namespace towerlab
