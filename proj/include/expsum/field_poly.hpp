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

// Exact arithmetic foundation: prime and extension fields, polynomials over
// F_p and Q, resultants, factorization, Dickson polynomials.

#include "expsum/error.hpp"
#include "expsum/ext_field.hpp"
#include "expsum/modp.hpp"
#include "expsum/poly_exact.hpp"
#include "expsum/poly_modp.hpp"

namespace expsum {

/// CV_f(Y) = Res_X(f'(X), Y - f(X)) = lc(f')^d * prod over f'(r) = 0 of (Y - f(r)).
/// Its roots are the critical values of f. Computed by evaluating the
/// univariate resultant at d points and interpolating.
PolyExact critical_value_poly(const PolyExact& f);
/// Same over F_p; requires p > 2d - 1 and deg f' = d - 1.
PolyModP critical_value_poly(const PolyModP& f);

/// D_0 = 2, D_1 = X, D_n = X D_{n-1} - a D_{n-2}.
PolyExact dickson(int d, const Rational& a);

/// Canonical representative under f -> a f(cX + e) + b: monic, no X^{d-1}
/// term, zero constant. The record satisfies poly = a * f(c X + e) + b.
struct CanonicalForm {
  PolyExact poly;
  Rational a;
  Rational b;
  Rational c;
  Rational e;
};

CanonicalForm depress_and_normalize(const PolyExact& f);

}  // namespace expsum
