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

#include <optional>
#include <span>
#include <vector>

#include "expsum/field_poly.hpp"

namespace expsum {

/// Critical values of a Morse polynomial over F_p, living in one extension
/// of F_p, together with their (always F_p-rational) sum and the shift c
/// that makes the critical values of f + c sum to zero.
struct CriticalData {
  std::vector<ExtFieldElem> values;
  PrimeFieldElem value_sum;
  PrimeFieldElem shift;
};

/// f squarefree, f' squarefree of degree d - 1, critical values distinct.
/// Throws SmallPrime unless p > 2d - 1.
bool is_morse(const PolyModP& f);

/// Throws BadCharacteristic if p | d - 1, InvalidArgument if f is not Morse.
CriticalData critical_data(const PolyModP& f, const SplittingOptions& opts = {});

/// a + b = c + d within the set forces a in {c, d}. Throws DuplicateValues.
bool is_sidon(std::span<const ExtFieldElem> values);

/// Returns the centre alpha when S = alpha - S and every solution of
/// a + b = c + d has a in {c, d} or b = alpha - a. The only possible centre
/// is 2 * sum(S) / |S|.
std::optional<ExtFieldElem> is_symmetric_sidon(std::span<const ExtFieldElem> values);

/// f(x0 + t) - delta = g(t) with g odd.
struct OddForm {
  Rational x0;
  Rational delta;
  PolyExact g;
};

struct OddFormModP {
  u64 x0;
  u64 delta;
  PolyModP g;
};

/// The centre is forced to be x0 = -c_{d-1} / (d * lead), so an absent
/// result proves no odd form exists. Requires d >= 3.
std::optional<OddForm> odd_form(const PolyExact& f);
std::optional<OddFormModP> odd_form(const PolyModP& f);

/// f = outer(inner) with inner monic, inner(0) = 0, both of degree >= 2.
struct Decomposition {
  PolyExact outer;
  PolyExact inner;
};

/// Right-factor search per divisor of deg f (Kozen-Landau style): the
/// candidate inner factor is read off the top coefficients of f, then f is
/// expanded in base `inner` and accepted iff every digit is a constant.
std::optional<Decomposition> find_decomposition(const PolyExact& f);
inline bool is_indecomposable(const PolyExact& f) { return !find_decomposition(f).has_value(); }

enum class EquivalenceField { Rational, AlgebraicClosure };

/// g(X) = a f(c X + e) + b
struct AffineMap {
  Rational a;
  Rational b;
  Rational c;
  Rational e;
};

struct LinearEquivalence {
  /// Any c with c^c_exponent = c_power gives a witness over the algebraic
  /// closure.
  int c_exponent = 1;
  Rational c_power = 1;
  /// Present when a rational witness exists; verified coefficient by
  /// coefficient.
  std::optional<AffineMap> rational_map;
};

std::optional<LinearEquivalence> linear_equivalent(const PolyExact& f, const PolyExact& g, EquivalenceField over);

/// The parameter a with f linearly equivalent over Q to D_d(X, a). Read from
/// the X^{d-2} coefficient of the canonical form, then re-verified.
std::optional<Rational> dickson_equivalent(const PolyExact& f);

enum class FriedPrediction { AbsolutelyIrreducible, Reducible, Undetermined };
const char* to_string(FriedPrediction p) noexcept;

/// Absolute irreducibility of (f(X) - f(Y)) / (X - Y) from the shape of f:
/// degree not an odd prime -> iff indecomposable; degree 3 -> iff not
/// equivalent to X^3; odd prime >= 5 -> irreducible unless Dickson.
FriedPrediction fried_predict(const PolyExact& f);

enum class Tristate { False, True, Unknown };
const char* to_string(Tristate t) noexcept;

enum class Verdict { NotMorse, MorseOnly, SidonMorse, SymmetricSidonMorse };
const char* to_string(Verdict v) noexcept;

struct PrimeCertificate {
  u64 prime;
  bool morse;
  bool sidon;
  std::optional<bool> symmetric_sidon;  // only when an odd form exists
  Verdict verdict;
};

struct GenericityReport {
  PolyExact poly;
  int degree = 0;
  bool morse = false;
  Tristate sidon = Tristate::Unknown;
  /// Number of good primes at which the critical values were not Sidon.
  int sidon_failures = 0;
  bool symmetric_sidon_morse = false;
  std::optional<OddForm> odd_witness;
  bool indecomposable = false;
  std::optional<Decomposition> decomposition;
  std::optional<Rational> dickson_param;
  Verdict verdict = Verdict::NotMorse;
  std::vector<PrimeCertificate> certificates;

  /// MorseOnly means no good prime certified the Sidon property.
  bool definite() const noexcept { return verdict != Verdict::MorseOnly; }
};

/// Good primes keep the Morse configuration under reduction: p > 2d - 1,
/// p does not divide d - 1, a denominator, the leading coefficient, or the
/// resultants Res(f, f'), Res(f', f''), Res(CV_f, CV_f').
bool is_good_prime(const PolyExact& f, u64 p);

struct ClassifyOptions {
  SplittingOptions splitting;
};

/// Morse is decided exactly over Q from the three resultants. Sidon over
/// the algebraic closure is certified by one good prime at which the
/// reduced critical values are Sidon; failure everywhere stays Unknown.
/// Throws NoGoodPrime when f is Morse and no listed prime is good.
GenericityReport classify(const PolyExact& f, std::span<const u64> primes, const ClassifyOptions& opts = {});

}  // namespace expsum
