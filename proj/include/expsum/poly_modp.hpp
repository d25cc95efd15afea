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
#include <utility>
#include <vector>

#include "expsum/modp.hpp"

namespace expsum {

/// Dense univariate polynomial over F_p, constant term first, no trailing
/// zero coefficients. The zero polynomial has degree -1.
class PolyModP {
 public:
  explicit PolyModP(PrimeField field) : field_(field) {}
  PolyModP(PrimeField field, std::vector<u64> coeffs);

  static PolyModP constant(PrimeField field, u64 c);
  /// c * X^deg
  static PolyModP monomial(PrimeField field, int deg, u64 c = 1);

  const PrimeField& field() const noexcept { return field_; }
  u64 modulus() const noexcept { return field_.modulus(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  u64 coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  u64 lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
  const std::vector<u64>& coeffs() const noexcept { return c_; }

  u64 eval(u64 x) const noexcept;
  PolyModP derivative() const;
  PolyModP monic() const;
  PolyModP scaled(u64 s) const;

  PolyModP& operator+=(const PolyModP& o);
  PolyModP& operator-=(const PolyModP& o);
  friend PolyModP operator+(PolyModP a, const PolyModP& b) { return a += b; }
  friend PolyModP operator-(PolyModP a, const PolyModP& b) { return a -= b; }
  friend PolyModP operator*(const PolyModP& a, const PolyModP& b);
  PolyModP operator-() const;

  friend bool operator==(const PolyModP& a, const PolyModP& b) {
    return a.modulus() == b.modulus() && a.c_ == b.c_;
  }

 private:
  void trim() noexcept;

  PrimeField field_;
  std::vector<u64> c_;
};

/// Quotient and remainder of a by b (b nonzero).
std::pair<PolyModP, PolyModP> divmod(const PolyModP& a, const PolyModP& b);
PolyModP operator%(const PolyModP& a, const PolyModP& b);
PolyModP operator/(const PolyModP& a, const PolyModP& b);

/// base^e mod m.
PolyModP pow_mod(const PolyModP& base, u64 e, const PolyModP& m);

/// Monic gcd; gcd(0, 0) is rejected.
PolyModP gcd(const PolyModP& f, const PolyModP& g);

/// True iff gcd(f, f') = 1. Requires p > deg f.
bool is_squarefree(const PolyModP& f);

/// Rabin's test: X^(p^n) = X mod f and gcd(X^(p^(n/r)) - X, f) = 1 for
/// every prime r | n.
bool is_irreducible(const PolyModP& f);

struct Factor {
  PolyModP poly;  // monic irreducible
  int multiplicity;
};

/// Squarefree decomposition, distinct-degree split on X^(p^k), then
/// Cantor-Zassenhaus equal-degree splitting driven by a seeded generator.
/// Output is sorted by (degree, coefficients) so it does not depend on the
/// seed.
std::vector<Factor> factor_mod_p(const PolyModP& f, std::uint64_t seed = 0x5eed);

/// Res(f, g) computed by the Euclidean remainder sequence.
u64 resultant(const PolyModP& f, const PolyModP& g);

}  // namespace expsum
