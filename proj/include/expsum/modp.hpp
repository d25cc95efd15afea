// Copyright 2026 The expsum-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>

namespace expsum {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n) noexcept;

u64 mul_mod(u64 a, u64 b, u64 m) noexcept;
u64 pow_mod(u64 base, u64 exp, u64 m) noexcept;
/// Inverse of a modulo m via extended Euclid; requires gcd(a, m) = 1.
u64 inv_mod(u64 a, u64 m);
u64 gcd_u64(u64 a, u64 b) noexcept;

/// Arithmetic in Z/pZ for a prime p < 2^62. Products go through 128-bit
/// intermediates; no floating point.
class PrimeField {
 public:
  static constexpr u64 kMaxModulus = u64{1} << 62;

  explicit PrimeField(u64 p);

  u64 modulus() const noexcept { return p_; }

  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const noexcept { return static_cast<u64>((u128)a * b % p_); }
  u64 pow(u64 a, u64 e) const noexcept { return pow_mod(a, e, p_); }
  u64 inv(u64 a) const;
  u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }

  u64 from_int(i64 v) const noexcept;
  /// Legendre symbol (a/p) as -1, 0, 1. Odd p only.
  int legendre(u64 a) const;

  bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }

 private:
  u64 p_;
};

/// A residue together with its modulus.
struct PrimeFieldElem {
  u64 value = 0;
  u64 modulus = 0;

  friend bool operator==(const PrimeFieldElem&, const PrimeFieldElem&) = default;
};

std::ostream& operator<<(std::ostream& os, const PrimeFieldElem& x);

}  // namespace expsum
