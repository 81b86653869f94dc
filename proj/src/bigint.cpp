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

#include "towerlab/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace towerlab {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigUint::BigUint(std::uint64_t v) {
  if (v != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
  }
}

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

std::uint64_t BigUint::to_u64() const {
  if (!fits_u64()) throw std::domain_error("BigUint::to_u64: value exceeds 64 bits");
  std::uint64_t v = 0;
  if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
  if (!limbs_.empty()) v |= limbs_[0];
  return v;
}

int BigUint::cmp(const BigUint& a, const BigUint& b) {
  if (a.limbs_.size() != b.limbs_.size())
    return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
  }
  return 0;
}

BigUint& BigUint::operator+=(const BigUint& rhs) {
  const std::size_t n = std::max(limbs_.size(), rhs.limbs_.size());
  limbs_.resize(n, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = carry + limbs_[i] + (i < rhs.limbs_.size() ? rhs.limbs_[i] : 0u);
    limbs_[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
    carry = s >> 32;
  }
  if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  return *this;
}

BigUint& BigUint::operator-=(const BigUint& rhs) {
  if (cmp(*this, rhs) < 0) throw std::domain_error("BigUint subtraction underflow");
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(limbs_[i]) - borrow -
                     (i < rhs.limbs_.size() ? static_cast<std::int64_t>(rhs.limbs_[i]) : 0);
    if (d < 0) {
      d += static_cast<std::int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    limbs_[i] = static_cast<std::uint32_t>(d);
  }
  trim();
  return *this;
}

BigUint operator*(const BigUint& a, const BigUint& b) {
  BigUint r;
  if (a.is_zero() || b.is_zero()) return r;
  r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
      std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                          r.limbs_[i + j] + carry;
      r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    std::size_t k = i + b.limbs_.size();
    while (carry) {
      std::uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  r.trim();
  return r;
}

BigUint BigUint::shifted_limbs(const BigUint& a, std::size_t k) {
  if (a.is_zero()) return BigUint();
  BigUint r;
  r.limbs_.assign(k, 0);
  r.limbs_.insert(r.limbs_.end(), a.limbs_.begin(), a.limbs_.end());
  return r;
}

std::pair<BigUint, BigUint> BigUint::divmod(const BigUint& a, const BigUint& b) {
  if (b.is_zero()) throw std::domain_error("BigUint division by zero");
  if (cmp(a, b) < 0) return {BigUint(), a};
  if (b.limbs_.size() == 1) {
    // single-limb fast path
    BigUint q;
    q.limbs_.assign(a.limbs_.size(), 0);
    std::uint64_t rem = 0;
    const std::uint64_t d = b.limbs_[0];
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | a.limbs_[i];
      q.limbs_[i] = static_cast<std::uint32_t>(cur / d);
      rem = cur % d;
    }
    q.trim();
    return {q, BigUint(rem)};
  }
  // Schoolbook long division, one limb of quotient at a time. The divisor is
  // normalized so its top limb has the high bit set, which keeps the quotient
  // digit estimate within 2 of the true value.
  int shift = 0;
  {
    std::uint32_t top = b.limbs_.back();
    while (!(top & 0x80000000u)) {
      top <<= 1;
      ++shift;
    }
  }
  auto shl = [](const BigUint& x, int s) {
    if (s == 0) return x;
    BigUint r;
    r.limbs_.assign(x.limbs_.size() + 1, 0);
    for (std::size_t i = 0; i < x.limbs_.size(); ++i) {
      r.limbs_[i] |= x.limbs_[i] << s;
      r.limbs_[i + 1] = x.limbs_[i] >> (32 - s);
    }
    r.trim();
    return r;
  };
  auto shr = [](const BigUint& x, int s) {
    if (s == 0) return x;
    BigUint r;
    r.limbs_.assign(x.limbs_.size(), 0);
    for (std::size_t i = 0; i < x.limbs_.size(); ++i) {
      r.limbs_[i] = x.limbs_[i] >> s;
      if (i + 1 < x.limbs_.size()) r.limbs_[i] |= x.limbs_[i + 1] << (32 - s);
    }
    r.trim();
    return r;
  };
  BigUint u = shl(a, shift);
  BigUint v = shl(b, shift);
  const std::size_t n = v.limbs_.size();
  const std::size_t m = u.limbs_.size() - n;
  BigUint q;
  q.limbs_.assign(m + 1, 0);
  const std::uint64_t vtop = v.limbs_.back();
  for (std::size_t j = m + 1; j-- > 0;) {
    std::uint64_t num_hi = (j + n < u.limbs_.size()) ? u.limbs_[j + n] : 0;
    std::uint64_t num_lo = (j + n - 1 < u.limbs_.size()) ? u.limbs_[j + n - 1] : 0;
    std::uint64_t qhat = ((num_hi << 32) | num_lo) / vtop;
    if (qhat > 0xffffffffu) qhat = 0xffffffffu;
    BigUint t = v * BigUint(qhat);
    BigUint chunk = shifted_limbs(t, j);
    while (cmp(chunk, u) > 0) {
      --qhat;
      chunk -= shifted_limbs(v, j);
    }
    u -= chunk;
    q.limbs_[j] = static_cast<std::uint32_t>(qhat);
  }
  q.trim();
  return {q, shr(u, shift)};
}

BigUint BigUint::pow(const BigUint& base, unsigned exp) {
  BigUint r(1), b = base;
  while (exp) {
    if (exp & 1u) r = r * b;
    b = b * b;
    exp >>= 1;
  }
  return r;
}

BigUint BigUint::gcd(BigUint a, BigUint b) {
  while (!b.is_zero()) {
    BigUint r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BigUint BigUint::isqrt(const BigUint& n) {
  if (n.is_zero()) return BigUint();
  if (n.fits_u64()) {
    std::uint64_t v = n.to_u64();
    std::uint64_t r = static_cast<std::uint64_t>(std::max(0.0, std::sqrt(static_cast<double>(v)) - 2));
    while ((r + 1) <= v / (r + 1)) ++r;
    return BigUint(r);
  }
  // Newton iteration on integers; converges from above.
  BigUint x = n, y = (n + BigUint(1)) / BigUint(2);
  while (cmp(y, x) < 0) {
    x = y;
    y = (x + n / x) / BigUint(2);
  }
  return x;
}

BigUint BigUint::isqrt_ceil(const BigUint& n) {
  BigUint r = isqrt(n);
  if (r * r != n) r += BigUint(1);
  return r;
}

std::string BigUint::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  BigUint cur = *this;
  const BigUint chunk(1000000000u);
  std::vector<std::uint32_t> groups;
  while (!cur.is_zero()) {
    auto [q, r] = divmod(cur, chunk);
    groups.push_back(r.is_zero() ? 0u : static_cast<std::uint32_t>(r.to_u64()));
    cur = std::move(q);
  }
  out = std::to_string(groups.back());
  for (std::size_t i = groups.size() - 1; i-- > 0;) {
    std::string part = std::to_string(groups[i]);
    out += std::string(9 - part.size(), '0') + part;
  }
  return out;
}

BigInt::BigInt(std::int64_t v) {
  if (v < 0) {
    neg_ = true;
    mag_ = BigUint(static_cast<std::uint64_t>(-(v + 1)) + 1);
  } else {
    mag_ = BigUint(static_cast<std::uint64_t>(v));
  }
}

BigInt::BigInt(BigUint mag, bool negative) : mag_(std::move(mag)), neg_(negative) {
  if (mag_.is_zero()) neg_ = false;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  if (a.neg_ == b.neg_) return BigInt(a.mag_ + b.mag_, a.neg_);
  int c = BigUint::cmp(a.mag_, b.mag_);
  if (c == 0) return BigInt();
  if (c > 0) return BigInt(a.mag_ - b.mag_, a.neg_);
  return BigInt(b.mag_ - a.mag_, b.neg_);
}

BigInt operator-(const BigInt& a, const BigInt& b) {
  return a + BigInt(b.mag_, !b.neg_);
}

BigInt operator*(const BigInt& a, const BigInt& b) {
  return BigInt(a.mag_ * b.mag_, a.neg_ != b.neg_);
}

bool operator==(const BigInt& a, const BigInt& b) {
  return a.neg_ == b.neg_ && a.mag_ == b.mag_;
}

bool operator<(const BigInt& a, const BigInt& b) {
  if (a.neg_ != b.neg_) return a.neg_;
  int c = BigUint::cmp(a.mag_, b.mag_);
  return a.neg_ ? c > 0 : c < 0;
}

std::string BigInt::to_string() const {
  return neg_ ? "-" + mag_.to_string() : mag_.to_string();
}

Rational::Rational(BigUint num, BigUint den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("Rational with zero denominator");
  if (num_.is_zero()) {
    den_ = BigUint(1);
    return;
  }
  BigUint g = BigUint::gcd(num_, den_);
  num_ = num_ / g;
  den_ = den_ / g;
}

std::string Rational::to_string() const {
  return num_.to_string() + "/" + den_.to_string();
}

std::string Rational::to_decimal(unsigned digits) const {
  auto [ip, rem] = BigUint::divmod(num_, den_);
  std::string out = ip.to_string();
  if (digits == 0) return out;
  out += ".";
  BigUint r = rem;
  const BigUint ten(10);
  for (unsigned i = 0; i < digits; ++i) {
    r = r * ten;
    auto [d, r2] = BigUint::divmod(r, den_);
    out += d.is_zero() ? "0" : d.to_string();
    r = r2;
  }
  return out;
}

}  // namespace towerlab
