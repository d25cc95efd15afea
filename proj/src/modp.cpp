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

#include "expsum/modp.hpp"

#include <ostream>
#include <string>

#include "expsum/error.hpp"

namespace expsum {

u64 mul_mod(u64 a, u64 b, u64 m) noexcept { return static_cast<u64>((u128)a * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) noexcept {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 gcd_u64(u64 a, u64 b) noexcept {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 inv_mod(u64 a, u64 m) {
  // Extended Euclid on signed 128-bit to stay clear of overflow.
  __int128 r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw Error(ErrorCode::InvalidArgument, "value not invertible modulo " + std::to_string(m));
  if (s0 < 0) s0 += m;
  return static_cast<u64>(s0);
}

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are sufficient for n < 3.3e24.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(u64 p) : p_(p) {
  if (p >= kMaxModulus) throw Error(ErrorCode::InvalidArgument, "modulus must be below 2^62");
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
}

u64 PrimeField::inv(u64 a) const {
  if (a % p_ == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero");
  return inv_mod(a, p_);
}

u64 PrimeField::from_int(i64 v) const noexcept {
  i64 r = v % static_cast<i64>(p_);
  return r < 0 ? static_cast<u64>(r + static_cast<i64>(p_)) : static_cast<u64>(r);
}

int PrimeField::legendre(u64 a) const {
  if (p_ == 2) throw Error(ErrorCode::BadCharacteristic, "Legendre symbol needs an odd prime");
  a %= p_;
  if (a == 0) return 0;
  return pow(a, (p_ - 1) / 2) == 1 ? 1 : -1;
}

std::ostream& operator<<(std::ostream& os, const PrimeFieldElem& x) {
  return os << x.value << " (mod " << x.modulus << ")";
}

}  // namespace expsum
