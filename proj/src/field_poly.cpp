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

#include "expsum/field_poly.hpp"

#include <string>

namespace expsum {

namespace {

// Newton divided differences through (x_i, y_i), x_i = 0, 1, ..., n-1.
PolyExact interpolate(const std::vector<Rational>& ys) {
  const std::size_t n = ys.size();
  std::vector<Rational> dd = ys;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / Rational(static_cast<long>(level));
    }
  }
  PolyExact acc = PolyExact::constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    acc = acc * PolyExact(std::vector<Rational>{Rational(-static_cast<long>(i)), Rational(1)}) +
          PolyExact::constant(dd[i]);
  }
  return acc;
}

PolyModP interpolate_mod_p(const PrimeField& F, const std::vector<u64>& ys) {
  const std::size_t n = ys.size();
  std::vector<u64> dd = ys;
  for (std::size_t level = 1; level < n; ++level) {
    const u64 inv = F.inv(level);
    for (std::size_t i = n - 1; i >= level; --i) dd[i] = F.mul(F.sub(dd[i], dd[i - 1]), inv);
  }
  PolyModP acc = PolyModP::constant(F, dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    acc = acc * PolyModP(F, {F.neg(i), 1}) + PolyModP::constant(F, dd[i]);
  }
  return acc;
}

}  // namespace

PolyExact critical_value_poly(const PolyExact& f) {
  const int d = f.degree();
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "critical values need deg f >= 2");
  const PolyExact df = f.derivative();
  std::vector<Rational> ys;
  for (int y = 0; y < d; ++y) ys.push_back(resultant(df, PolyExact::constant(y) - f));
  return interpolate(ys);
}

PolyModP critical_value_poly(const PolyModP& f) {
  const int d = f.degree();
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "critical values need deg f >= 2");
  if (f.modulus() <= static_cast<u64>(2 * d - 1)) {
    throw Error(ErrorCode::SmallCharacteristic, "need p > 2d - 1, got p = " + std::to_string(f.modulus()));
  }
  const PolyModP df = f.derivative();
  if (df.degree() != d - 1) throw Error(ErrorCode::DegenerateDerivative, "deg f' < d - 1");
  std::vector<u64> ys;
  for (int y = 0; y < d; ++y) ys.push_back(resultant(df, PolyModP::constant(f.field(), static_cast<u64>(y)) - f));
  return interpolate_mod_p(f.field(), ys);
}

PolyExact dickson(int d, const Rational& a) {
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "Dickson degree must be >= 0");
  PolyExact prev = PolyExact::constant(2);
  if (d == 0) return prev;
  PolyExact cur = PolyExact::monomial(1);
  const PolyExact x = PolyExact::monomial(1);
  for (int n = 2; n <= d; ++n) {
    PolyExact next = x * cur - a * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

CanonicalForm depress_and_normalize(const PolyExact& f) {
  const int d = f.degree();
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "canonical form needs deg f >= 2");
  const Rational lead = f.lead();
  CanonicalForm out;
  out.a = 1 / lead;
  out.c = 1;
  out.e = -f.coeff(static_cast<std::size_t>(d - 1)) / (Rational(d) * lead);
  out.e.canonicalize();
  out.a.canonicalize();
  PolyExact shifted = out.a * f.affine_substitute(out.c, out.e);
  out.b = -shifted.coeff(0);
  out.poly = shifted + PolyExact::constant(out.b);
  return out;
}

}  // namespace expsum
