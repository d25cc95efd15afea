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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "expsum/poly_modp.hpp"

namespace expsum {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n", "-n/d" or a finite decimal such as "1.25" into a canonical
/// rational. Throws Parse on anything else.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// Polynomial with exact rational coefficients stored as integer numerators
/// over one shared positive denominator, constant term first. The
/// representation is canonical: trailing zeros are trimmed and the
/// numerators' content is coprime to the denominator.
class PolyExact {
 public:
  PolyExact() : den_(1) {}
  explicit PolyExact(const std::vector<Rational>& coeffs);
  PolyExact(std::initializer_list<long> integer_coeffs);

  static PolyExact monomial(int deg, const Rational& c = 1);
  static PolyExact constant(const Rational& c) { return monomial(0, c); }

  int degree() const noexcept { return static_cast<int>(num_.size()) - 1; }
  bool is_zero() const noexcept { return num_.empty(); }
  Rational coeff(std::size_t i) const;
  Rational lead() const { return coeff(num_.size() - 1); }
  std::vector<Rational> coefficients() const;
  const std::vector<Integer>& numerators() const noexcept { return num_; }
  const Integer& denominator() const noexcept { return den_; }
  bool is_integral() const { return den_ == 1; }

  Rational eval(const Rational& x) const;
  PolyExact derivative() const;
  /// this(inner(X))
  PolyExact compose(const PolyExact& inner) const;
  /// this(c X + e)
  PolyExact affine_substitute(const Rational& c, const Rational& e) const;
  /// True iff every even-degree coefficient vanishes.
  bool is_odd() const;

  PolyExact operator-() const;
  friend PolyExact operator+(const PolyExact& a, const PolyExact& b);
  friend PolyExact operator-(const PolyExact& a, const PolyExact& b);
  friend PolyExact operator*(const PolyExact& a, const PolyExact& b);
  friend PolyExact operator*(const Rational& s, const PolyExact& a);
  friend bool operator==(const PolyExact& a, const PolyExact& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }

  /// JSON array of coefficient strings, constant term first.
  std::string to_json() const;
  static PolyExact from_json(std::string_view json);
  /// Human-readable form, highest degree first, e.g. "X^3 + X + 1".
  std::string to_string() const;
  /// SHA-256 of the canonical JSON serialization.
  std::array<std::uint8_t, 32> hash() const;
  std::string hash_hex() const;

 private:
  void canonicalize();

  std::vector<Integer> num_;
  Integer den_;
};

std::pair<PolyExact, PolyExact> divmod(const PolyExact& a, const PolyExact& b);

struct ModPReduction {
  PolyModP poly;
  bool degree_dropped;
};

/// Reduction of f modulo p. Throws BadReduction if p divides the
/// denominator of a coefficient.
ModPReduction reduce_mod_p(const PolyExact& f, u64 p);

/// Res(f, g) by the fraction-free subresultant sequence on the integer
/// numerators, then rescaled by the denominators.
Rational resultant(const PolyExact& f, const PolyExact& g);
/// Res(f, f'), nonzero iff f is squarefree (deg f >= 1).
Rational derivative_resultant(const PolyExact& f);

}  // namespace expsum
