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

#include <cstdint>
#include <string>
#include <vector>

#include "towerlab/singer.hpp"

namespace towerlab {

/// Parameters of the affine automorphism phi(x) = c*x + d of the target
/// line. Valid parameters satisfy c != 0 and (1 - c)*a = 2*d, and avoid the
/// two pairs that move Q onto itself or its conjugate.
struct PhiParams {
  FieldElem c, d;

  friend bool operator==(const PhiParams&, const PhiParams&) = default;
};

/// A full tower description: the cover f, the twisted cover g = phi o f o psi,
/// the distinguished points, and the scalar data both were built from.
/// Points and maps reference contexts owned by the tower, which must outlive
/// the spec.
struct TowerSpec {
  const FieldTower* tower = nullptr;
  std::uint32_t p = 0, n = 0;
  std::uint64_t q = 0;
  std::vector<std::uint32_t> modulus_q2;  // modulus of F_{q^2} over F_p
  FieldElem a, b;        // trace and norm of theta
  FieldElem t, n_param;  // trace and norm of rho
  PhiParams phi;
  Mobius psi;   // over F_q
  RatMap f, g;  // over F_q, degree q+1
  P1Point Q, Q_bar, rho, rho_bar, nu;  // in F_{q^2}
  std::string provenance;  // generic-search | closed-form | q5-instance
};

Mobius phi_mobius(const PhiParams& phi);

/// All (c, d) with c != 0 satisfying (1 - c)*a = 2*d, minus the two excluded
/// pairs (1, 0) and (-1, a), in lexicographic (c, d) element order. Empty
/// exactly when no valid phi exists (q = 2, 3).
std::vector<PhiParams> phi_candidates(const SingerData& sd);

/// Every (c, d) with c != 0 whose affine map preserves f(R) setwise, found
/// by direct enumeration. Equals the closed-form candidate set before the
/// two exclusions.
std::vector<PhiParams> brute_force_phi_oracle(const SingerData& sd);

struct PsiCandidate {
  P1Point T;   // in R
  Mobius psi;  // over F_q with psi(Q) = T
};

/// For V = phi^{-1}(Q), the fiber f^{-1}(V) (all in R, asserted) and for
/// each of its q+1 points all q+1 maps psi over F_q with psi(Q) = T, in
/// deterministic order. (q+1)^2 candidates for a valid phi.
std::vector<PsiCandidate> psi_candidates(const SingerData& sd, const PhiParams& phi);

/// The reduced degree-(q+1) map phi o f o psi over F_q.
RatMap build_g_composed(const SingerData& sd, const PhiParams& phi, const Mobius& psi);

/// The scale constant of the closed form, c = (2b + 2n - t*a)/(4b - a^2).
/// The printed source formula carries + t*a; the minus-sign version is the
/// one the q = 5 instance satisfies (see build_g_closed_form, which pins it
/// against g(Q) = Q). plus_variant computes the + t*a value for comparison.
/// Odd characteristic only.
FieldElem closed_form_constant(const SingerData& sd, const FieldElem& t,
                               const FieldElem& n_param, bool plus_variant = false);

/// g = (x^{q+1} + c_q x^q + c_1 x + c_0)/(c (x^q - x)) with c_q = (c*a - t)/2,
/// c_1 = -t - c_q, c_0 = n, for a given scale c. Odd characteristic only.
RatMap assemble_g_from_constant(const SingerData& sd, const FieldElem& t,
                                const FieldElem& n_param, const FieldElem& c);

struct ClosedForm {
  RatMap g;
  FieldElem c_den;  // the scale constant
};

/// Closed-form construction of g from rho's minimal polynomial X^2 - t*X + n.
/// Preconditions: odd characteristic, the rho polynomial irreducible,
/// rho not conjugate to theta, c != 0, and phi(Q) outside {Q, Q_bar}
/// (checked through nu = (c_q + rho)/c). Must satisfy g(Q) = Q, asserted.
ClosedForm build_g_closed_form(const SingerData& sd, const FieldElem& t,
                               const FieldElem& n_param);

/// The a = 0, t = 0 family: f = (x^{q+1} + b)/(x^q - x),
/// g = 2b(x^{q+1} + n)/((b + n)(x^q - x)). Requires odd q > 5, -b and -n
/// nonsquares, n outside {b, -b} and additionally n != -3b (the scale
/// c = (b+n)/2b = -1 case). psi is the first Moebius with psi(rho) = theta;
/// validation runs and must pass.
TowerSpec standard_family(const FieldTower& tower, const FieldElem& b,
                          const FieldElem& n_param);

/// Same construction with the n != -3b exclusion skipped and no validation,
/// so the excluded parameters can be inspected. All other preconditions hold.
TowerSpec family_spec_forced(const FieldTower& tower, const FieldElem& b,
                             const FieldElem& n_param);

/// Tower for the worked q = 5 instance (F_25 built from X^2 + X + 2).
FieldTower q5_tower(std::uint32_t k_max = 2);
/// The worked q = 5 instance: theta a root of X^2 + X + 2, phi(x) = 2x + 3,
/// psi(x) = 1/x. The tower must come from q5_tower.
TowerSpec q5_instance(const FieldTower& tower);

/// Generic path: pick a phi candidate, a T in f^{-1}(phi^{-1}(Q)) and a psi
/// with psi(Q) = T by index, and compose.
TowerSpec build_generic_spec(const SingerData& sd, std::size_t phi_index,
                             std::size_t t_index, std::size_t psi_index,
                             const std::string& provenance = "generic-search");

/// A deliberately degenerate spec built from the excluded pair
/// (c, d) = (-1, a), for which phi(Q) = Q_bar and Q is ramified for g.
/// Negative control; never passes validation.
TowerSpec degenerate_conjugate_spec(const SingerData& sd);

/// The named premise checks of the tower argument for one spec.
CheckReport validate_spec(const TowerSpec& spec);

struct SearchResult {
  std::uint64_t candidates = 0;  // (phi, T) pairs examined
  std::vector<TowerSpec> valid;  // specs that passed validation
};

/// Deterministic enumeration over (phi, T) with the first psi of each coset;
/// emits every spec passing validate_spec.
SearchResult search_specs(const SingerData& sd);

/// First (b, n) in lexicographic element order accepted by standard_family,
/// if any.
std::optional<std::pair<FieldElem, FieldElem>> first_family_parameters(
    const FieldTower& tower);

}  // namespace towerlab
