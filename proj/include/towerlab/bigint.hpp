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
#include <utility>
#include <vector>

namespace towerlab {

/// Arbitrary-precision unsigned integer. Base 2^32 limbs, little-endian,
/// no leading zero limbs (zero is the empty limb vector). Covers exactly
/// the operations the chain-counting DP and the exact reports need.
class BigUint {
 public:
  BigUint() = default;
  BigUint(std::uint64_t v);  // NOLINT: implicit by design, counts start as machine ints

  bool is_zero() const { return limbs_.empty(); }
  bool fits_u64() const { return limbs_.size() <= 2; }
  std::uint64_t to_u64() const;  // throws std::domain_error if too large

  static int cmp(const BigUint& a, const BigUint& b);
  friend bool operator==(const BigUint& a, const BigUint& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const BigUint& a, const BigUint& b) { return cmp(a, b) != 0; }
  friend bool operator<(const BigUint& a, const BigUint& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const BigUint& a, const BigUint& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const BigUint& a, const BigUint& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const BigUint& a, const BigUint& b) { return cmp(a, b) >= 0; }

  BigUint& operator+=(const BigUint& rhs);
  BigUint& operator-=(const BigUint& rhs);  // throws std::domain_error on underflow
  friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
  friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
  friend BigUint operator*(const BigUint& a, const BigUint& b);

  /// Quotient and remainder; remainder < divisor. Throws on divisor == 0.
  static std::pair<BigUint, BigUint> divmod(const BigUint& a, const BigUint& b);
  friend BigUint operator/(const BigUint& a, const BigUint& b) { return divmod(a, b).first; }
  friend BigUint operator%(const BigUint& a, const BigUint& b) { return divmod(a, b).second; }

  static BigUint pow(const BigUint& base, unsigned exp);
  static BigUint gcd(BigUint a, BigUint b);

  /// Floor of the integer square root.
  static BigUint isqrt(const BigUint& n);
  /// Smallest s with s*s >= n.
  static BigUint isqrt_ceil(const BigUint& n);

  std::string to_string() const;  // decimal

 private:
  std::vector<std::uint32_t> limbs_;

  void trim();
  static BigUint shifted_limbs(const BigUint& a, std::size_t k);  // a * 2^(32k)
};

/// Signed wrapper; only what the genus recursion (2g-2 can be negative) needs.
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v);  // NOLINT: implicit by design
  explicit BigInt(BigUint mag, bool negative = false);

  const BigUint& magnitude() const { return mag_; }
  bool negative() const { return neg_; }
  bool is_zero() const { return mag_.is_zero(); }

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  friend bool operator==(const BigInt& a, const BigInt& b);
  friend bool operator<(const BigInt& a, const BigInt& b);
  friend bool operator<=(const BigInt& a, const BigInt& b) { return a < b || a == b; }

  std::string to_string() const;

 private:
  BigUint mag_;
  bool neg_ = false;  // never set when mag_ is zero
};

/// Exact non-negative rational, always stored reduced. Denominator nonzero.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(BigUint num, BigUint den);  // throws on zero denominator
  Rational(std::uint64_t num, std::uint64_t den) : Rational(BigUint(num), BigUint(den)) {}

  const BigUint& num() const { return num_; }
  const BigUint& den() const { return den_; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// "num/den" in lowest terms.
  std::string to_string() const;
  /// Truncated decimal expansion with the given number of fraction digits.
  std::string to_decimal(unsigned digits) const;

 private:
  BigUint num_, den_;
};

}  // namespace towerlab
