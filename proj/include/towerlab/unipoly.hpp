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

#include <string>
#include <utility>
#include <vector>

#include "towerlab/ffield.hpp"

namespace towerlab {

/// Dense univariate polynomial over a field context. Coefficients are stored
/// little-endian as element indices with no trailing zeros; the zero
/// polynomial is the empty sequence and has degree -1.
struct Poly {
  const FieldCtx* ctx = nullptr;
  std::vector<std::uint32_t> c;

  friend bool operator==(const Poly&, const Poly&) = default;
};

constexpr int kZeroPolyDegree = -1;

Poly poly_zero(const FieldCtx& ctx);
Poly poly_one(const FieldCtx& ctx);
Poly poly_x(const FieldCtx& ctx);
/// X^e with the given coefficient.
Poly poly_monomial(const FieldElem& coeff, unsigned e);
Poly poly_from_elems(const FieldCtx& ctx, const std::vector<FieldElem>& coeffs);

int poly_degree(const Poly& f);
bool poly_is_zero(const Poly& f);
FieldElem poly_coeff(const Poly& f, unsigned i);
FieldElem poly_leading(const Poly& f);  // throws on zero polynomial

Poly poly_add(const Poly& f, const Poly& g);
Poly poly_sub(const Poly& f, const Poly& g);
Poly poly_neg(const Poly& f);
Poly poly_mul(const Poly& f, const Poly& g);
Poly poly_scale(const Poly& f, const FieldElem& s);
/// Quotient and remainder with deg(remainder) < deg(divisor).
std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g);
/// Monic greatest common divisor; gcd(0, 0) is the zero polynomial.
Poly poly_gcd(const Poly& f, const Poly& g);
Poly poly_derivative(const Poly& f);
Poly poly_monic(const Poly& f);

/// Evaluation at x. If x lives in an extension of f's context the
/// coefficients are embedded first.
FieldElem poly_eval(const Poly& f, const FieldElem& x);
/// The same polynomial with coefficients embedded into target.
Poly poly_lift(const Poly& f, const FieldCtx& target);

/// All roots of f in target_ctx (an extension within the built tower) with
/// multiplicities obtained by repeated deflation. Roots come in canonical
/// element order; the sum of multiplicities is at most deg f. Exhaustive
/// scan, rejected beyond the desk budget.
std::vector<std::pair<FieldElem, int>> roots_with_multiplicity(const Poly& f,
                                                               const FieldCtx& target_ctx);

/// True iff X^2 - a*X + b has no root in the (a, b) context. In odd
/// characteristic the root scan is cross-checked against the discriminant
/// test and a disagreement aborts.
bool is_irreducible_quadratic(const FieldElem& a, const FieldElem& b);

/// "c0 + c1*X + ..." with canonical element forms, zero terms kept out.
std::string poly_to_text(const Poly& f);

}  // namespace towerlab
