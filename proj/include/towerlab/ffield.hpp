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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace towerlab {

/// Hard size cap for exhaustive sweeps (field orders, PGL2 enumeration).
/// Defaults to 2^20; the TOWERLAB_BUDGET environment variable overrides it.
/// Requests beyond the cap are rejected, never approximated.
std::uint64_t desk_budget();

class FieldCtx;
class FieldTower;

/// Element of a finite field. The index is the canonical reduced form:
/// idx = c0 + c1*p + ... + c_{n-1}*p^{n-1} for the coefficient sequence
/// over F_p in the field generator. Canonical element order is index order.
struct FieldElem {
  const FieldCtx* ctx = nullptr;
  std::uint32_t idx = 0;
  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

/// An absolute extension F_{p^deg} of F_p with a fixed monic irreducible
/// modulus, plus embedding tables from smaller tower levels. Immutable after
/// construction; all operations are pure, so contexts and elements may be
/// shared across threads freely.
///
/// Contexts are built through make_field_tower; they are not constructed
/// standalone so embedding wiring stays consistent.
class FieldCtx {
 public:
  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return deg_; }           // over F_p
  std::uint64_t order() const { return order_; }          // p^deg
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  /// The designated base field F_q of the tower this context belongs to.
  const FieldCtx& base_field() const { return base_ ? *base_ : *this; }
  std::uint32_t base_degree() const { return base_deg_; }  // of F_q over F_p
  std::uint64_t base_order() const { return base_order_; }  // q

  FieldElem zero() const { return {this, 0}; }
  FieldElem one() const { return {this, 1}; }
  FieldElem generator() const;  // residue of X
  FieldElem element(std::uint64_t index) const;
  FieldElem from_coeffs(const std::vector<std::uint32_t>& coeffs) const;
  FieldElem from_int(std::int64_t v) const;  // image of an integer constant
  std::vector<std::uint32_t> coeffs(const FieldElem& x) const;

  FieldElem add(const FieldElem& x, const FieldElem& y) const;
  FieldElem sub(const FieldElem& x, const FieldElem& y) const;
  FieldElem neg(const FieldElem& x) const;
  FieldElem mul(const FieldElem& x, const FieldElem& y) const;
  FieldElem inv(const FieldElem& x) const;  // throws on zero
  FieldElem div(const FieldElem& x, const FieldElem& y) const;
  FieldElem pow(const FieldElem& x, std::int64_t e) const;

  /// x -> x^q relative to the tower base F_q. Applying it k times on
  /// F_{q^k} is the identity.
  FieldElem frobenius_q(const FieldElem& x) const;

  /// Trace and norm of x in F_{q^2} relative to F_q, returned as elements
  /// of the base context. Requires degree() == 2 * base_degree().
  std::pair<FieldElem, FieldElem> trace_norm(const FieldElem& x) const;

  bool is_square(const FieldElem& x) const;
  /// Nonsquares in canonical element order. Also runs the exhaustive y^2
  /// sweep against the Euler criterion and aborts on disagreement.
  /// Throws std::domain_error in even characteristic.
  std::vector<FieldElem> find_nonsquares() const;

  std::uint64_t element_order(const FieldElem& x) const;  // multiplicative
  /// Deterministically first generator of the multiplicative group.
  FieldElem multiplicative_generator() const;

  /// Image of x under the recorded embedding into target (identity if same).
  FieldElem embed_into(const FieldElem& x, const FieldCtx& target) const;
  /// Preimage under the embedding sub -> this, if x lies in the subfield.
  std::optional<FieldElem> project_to(const FieldElem& x, const FieldCtx& sub) const;
  bool in_subfield(const FieldElem& x, const FieldCtx& sub) const;
  bool has_embedding_from(const FieldCtx& sub) const;

  /// Canonical text form "c0,c1,...". All degree() coefficients are printed.
  std::string to_string(const FieldElem& x) const;
  FieldElem parse(std::string_view text) const;

 private:
  friend class FieldTower;
  friend FieldTower make_field_tower(std::uint32_t, std::uint32_t, std::uint32_t,
                                     const std::vector<std::uint32_t>*);
  FieldCtx() = default;

  struct Embedding {
    const FieldCtx* from = nullptr;
    std::vector<std::uint32_t> fwd;                         // index -> index
    std::vector<std::pair<std::uint32_t, std::uint32_t>> rev;  // sorted by image
  };

  void require_mine(const FieldElem& x) const;
  void decode(std::uint32_t idx, std::uint32_t* out) const;  // deg_ digits
  std::uint32_t encode(const std::uint32_t* digits) const;
  std::uint32_t mul_idx(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t pow_idx(std::uint32_t a, std::uint64_t e) const;
  const Embedding* embedding_from(const FieldCtx* sub) const;

  std::uint32_t p_ = 0;
  std::uint32_t deg_ = 0;
  std::uint64_t order_ = 0;
  std::vector<std::uint32_t> modulus_;  // little-endian, monic, length deg_+1
  const FieldCtx* base_ = nullptr;      // tower base (null if this is level 1)
  std::uint32_t base_deg_ = 0;
  std::uint64_t base_order_ = 0;
  std::vector<Embedding> embeddings_;
};

/// The field tower F_q = F_{p^n} < F_{q^2} < ... < F_{q^k_max}, all realized
/// as absolute extensions of F_p with deterministic moduli and embedding
/// tables between levels whose indices divide each other.
class FieldTower {
 public:
  FieldTower(FieldTower&&) = default;
  FieldTower& operator=(FieldTower&&) = default;

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint64_t q() const { return q_; }
  std::uint32_t k_max() const { return static_cast<std::uint32_t>(levels_.size()); }

  /// Level k context, i.e. F_{q^k}; k is 1-based.
  const FieldCtx& level(std::uint32_t k) const;
  const FieldCtx& base() const { return level(1); }

 private:
  friend FieldTower make_field_tower(std::uint32_t, std::uint32_t, std::uint32_t,
                                     const std::vector<std::uint32_t>*);
  FieldTower() = default;

  std::uint32_t p_ = 0, n_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::unique_ptr<FieldCtx>> levels_;
};

/// Build the tower. Moduli are the lexicographically smallest monic
/// irreducibles over F_p (little-endian coefficient order); embeddings send
/// each subfield generator to the deterministically first compatible root of
/// its modulus in the extension. When q2_modulus is given (requires n == 1),
/// level 2 is built from that monic irreducible quadratic over F_p instead,
/// so its generator is a prescribed root.
FieldTower make_field_tower(std::uint32_t p, std::uint32_t n, std::uint32_t k_max,
                            const std::vector<std::uint32_t>* q2_modulus = nullptr);

/// Lexicographically smallest monic irreducible of the given degree over F_p
/// (comparison on the little-endian sequence c0,...,c_{d-1}).
std::vector<std::uint32_t> lex_smallest_irreducible(std::uint32_t p, std::uint32_t d);

/// Exhaustive-at-desk-scale primality test.
bool is_prime_u64(std::uint64_t v);

}  // namespace towerlab
