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

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <vector>

#include "expsum/poly_modp.hpp"

namespace expsum {

/// F_{p^e} = F_p[t] / (m(t)) for a monic irreducible m of degree e.
class ExtField {
 public:
  /// Verifies that `modulus` is monic and irreducible.
  static std::shared_ptr<const ExtField> create(const PolyModP& modulus);
  /// Uses a seeded random search for an irreducible modulus of degree e.
  static std::shared_ptr<const ExtField> create_random(PrimeField base, int degree, std::uint64_t seed);

  const PrimeField& base() const noexcept { return modulus_.field(); }
  const PolyModP& modulus() const noexcept { return modulus_; }
  int degree() const noexcept { return modulus_.degree(); }
  /// p^e as an arbitrary-precision integer.
  mpz_class order() const;

 private:
  explicit ExtField(PolyModP modulus) : modulus_(std::move(modulus)) {}
  PolyModP modulus_;
};

using ExtFieldPtr = std::shared_ptr<const ExtField>;

/// Element of an extension field, stored as a reduced polynomial in t.
class ExtFieldElem {
 public:
  ExtFieldElem(ExtFieldPtr field, PolyModP value);

  static ExtFieldElem zero(const ExtFieldPtr& field);
  static ExtFieldElem one(const ExtFieldPtr& field);
  static ExtFieldElem from_base(const ExtFieldPtr& field, u64 c);
  /// The class of t, a root of the defining modulus.
  static ExtFieldElem generator(const ExtFieldPtr& field);

  const ExtFieldPtr& field() const noexcept { return field_; }
  /// Coefficients in the power basis, padded to length e.
  std::vector<u64> coeffs() const;
  const PolyModP& poly() const noexcept { return value_; }

  bool is_zero() const noexcept { return value_.is_zero(); }
  bool in_base_field() const noexcept { return value_.degree() <= 0; }
  u64 base_value() const;

  ExtFieldElem operator+(const ExtFieldElem& o) const;
  ExtFieldElem operator-(const ExtFieldElem& o) const;
  ExtFieldElem operator*(const ExtFieldElem& o) const;
  ExtFieldElem operator/(const ExtFieldElem& o) const { return *this * o.inverse(); }
  ExtFieldElem operator-() const;
  ExtFieldElem scaled(u64 s) const;
  ExtFieldElem inverse() const;
  ExtFieldElem pow(u64 e) const;
  ExtFieldElem pow(const mpz_class& e) const;
  /// x -> x^p
  ExtFieldElem frobenius() const { return pow(base().modulus()); }

  bool operator==(const ExtFieldElem& o) const { return value_ == o.value_; }
  bool operator!=(const ExtFieldElem& o) const { return !(*this == o); }
  /// Arbitrary total order (by coefficient vector), for sorting.
  bool operator<(const ExtFieldElem& o) const;

 private:
  const PrimeField& base() const noexcept { return field_->base(); }

  ExtFieldPtr field_;
  PolyModP value_;
};

/// Evaluates f (over F_p) at an extension element.
ExtFieldElem evaluate(const PolyModP& f, const ExtFieldElem& x);

struct SplittingOptions {
  int max_extension_degree = 64;
  std::uint64_t seed = 0x5eed;
};

/// All deg f roots of a squarefree f inside one extension F_{p^e}, where e
/// is the lcm of the degrees of the irreducible factors of f. Roots of one
/// factor appear as a full Frobenius orbit {r, r^p, ...}.
std::vector<ExtFieldElem> splitting_roots(const PolyModP& f, const SplittingOptions& opts = {});

}  // namespace expsum
