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

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "towerlab/unipoly.hpp"

namespace towerlab {

/// Point of P^1 over a field context in normal form: either a finite point
/// (x : 1) or the point at infinity (1 : 0). The conventional labels are the
/// standard ones: infinity is (1 : 0), finite x is (x : 1).
struct P1Point {
  const FieldCtx* ctx = nullptr;
  bool inf = false;
  std::uint32_t idx = 0;  // zero when inf

  friend bool operator==(const P1Point&, const P1Point&) = default;
};

P1Point p1_finite(const FieldElem& x);
P1Point p1_infinity(const FieldCtx& ctx);
/// All points: finite points in canonical element order, then infinity.
std::vector<P1Point> p1_enumerate(const FieldCtx& ctx);
/// Stable integer id for DP tables: finite idx, infinity = order().
std::uint64_t p1_id(const P1Point& P);
/// Canonical order used everywhere points are sorted or enumerated.
bool p1_less(const P1Point& a, const P1Point& b);
P1Point p1_embed(const P1Point& P, const FieldCtx& target);
/// Whether P is rational over the subfield (infinity always is).
bool p1_in_subfield(const P1Point& P, const FieldCtx& sub);
/// "inf" or the canonical element string.
std::string p1_to_string(const P1Point& P);

/// Element of PGL2 over a field context: 2x2 matrix up to scalars, stored
/// with the first nonzero entry in row-major order scaled to 1, so each
/// class has exactly one representative. Acts as x -> (a*x + b)/(c*x + d).
struct Mobius {
  const FieldCtx* ctx = nullptr;
  std::array<std::uint32_t, 4> m{};  // a, b, c, d

  friend bool operator==(const Mobius&, const Mobius&) = default;
};

Mobius mobius_make(const FieldElem& a, const FieldElem& b, const FieldElem& c,
                   const FieldElem& d);
Mobius mobius_identity(const FieldCtx& ctx);
FieldElem mobius_entry(const Mobius& M, int i);
Mobius mobius_compose(const Mobius& A, const Mobius& B);  // A after B
Mobius mobius_inverse(const Mobius& M);
/// Order of M as a group element.
unsigned mobius_order(const Mobius& M);
/// Fractional-linear action with projective normalization; never undefined.
/// M's entries are embedded when P lives in an extension.
P1Point mobius_apply(const Mobius& M, const P1Point& P);

/// The whole group in canonical (lexicographic representative) order.
/// Rejected when q^3 exceeds the desk budget.
std::vector<Mobius> pgl2_enumerate(const FieldCtx& ctx);
/// All group elements satisfying every (point, image) constraint, in
/// canonical order. Constraints may live in extensions of ctx. An empty
/// result is a valid return.
std::vector<Mobius> mobius_search(const FieldCtx& ctx,
                                  const std::vector<std::pair<P1Point, P1Point>>& constraints);

/// Rational self-map of P^1 as a reduced fraction num/den with the numerator
/// monic (coprimality and the normalization are enforced on construction).
/// Degree is max(deg num, deg den).
struct RatMap {
  Poly num, den;

  friend bool operator==(const RatMap&, const RatMap&) = default;
};

RatMap ratmap_make(const Poly& num, const Poly& den);
RatMap ratmap_from_mobius(const Mobius& M);
RatMap ratmap_lift(const RatMap& F, const FieldCtx& target);
int ratmap_degree(const RatMap& F);
P1Point ratmap_eval(const RatMap& F, const P1Point& P);

/// post o F o pre as a reduced map; either side may be absent. Möbius
/// composition preserves the degree, which is asserted. When the Möbius
/// entries live in an extension of F's context the result lives there.
RatMap ratmap_compose_mobius(const std::optional<Mobius>& pre, const RatMap& F,
                             const std::optional<Mobius>& post);

/// The full fiber F^{-1}(t) inside P^1(target): multiplicities solve
/// num - t*den = 0 projectively, with the degree-drop point at infinity
/// accounted for. Points in canonical order (finite first, infinity last).
std::vector<std::pair<P1Point, int>> fiber(const RatMap& F, const P1Point& t,
                                           const FieldCtx& target_ctx);

/// Multiplicity of P inside fiber(F, F(P)); 1 means unramified.
int ramification_index(const RatMap& F, const P1Point& P);

/// True iff F o M == F as reduced maps.
bool is_galois_invariant(const RatMap& F, const Mobius& M);

}  // namespace towerlab
