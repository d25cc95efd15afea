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

#include "expsum/poly_modp.hpp"

#include <algorithm>
#include <random>

#include "expsum/error.hpp"

namespace expsum {

PolyModP::PolyModP(PrimeField field, std::vector<u64> coeffs) : field_(field), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= field_.modulus();
  trim();
}

PolyModP PolyModP::constant(PrimeField field, u64 c) { return PolyModP(field, {c}); }

PolyModP PolyModP::monomial(PrimeField field, int deg, u64 c) {
  std::vector<u64> v(static_cast<std::size_t>(deg) + 1, 0);
  v.back() = c;
  return PolyModP(field, std::move(v));
}

void PolyModP::trim() noexcept {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

u64 PolyModP::eval(u64 x) const noexcept {
  u64 acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
  return acc;
}

PolyModP PolyModP::derivative() const {
  if (c_.size() <= 1) return PolyModP(field_);
  std::vector<u64> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = field_.mul(c_[i], i % field_.modulus());
  return PolyModP(field_, std::move(d));
}

PolyModP PolyModP::monic() const {
  if (is_zero()) return *this;
  return scaled(field_.inv(lead()));
}

PolyModP PolyModP::scaled(u64 s) const {
  std::vector<u64> v(c_);
  for (auto& c : v) c = field_.mul(c, s);
  return PolyModP(field_, std::move(v));
}

PolyModP& PolyModP::operator+=(const PolyModP& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_.add(c_[i], o.c_[i]);
  trim();
  return *this;
}

PolyModP& PolyModP::operator-=(const PolyModP& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_.sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

PolyModP PolyModP::operator-() const {
  std::vector<u64> v(c_);
  for (auto& c : v) c = field_.neg(c);
  return PolyModP(field_, std::move(v));
}

PolyModP operator*(const PolyModP& a, const PolyModP& b) {
  if (a.is_zero() || b.is_zero()) return PolyModP(a.field_);
  const auto& F = a.field_;
  const u64 p = F.modulus();
  std::vector<u64> out(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      out[i + j] = static_cast<u64>((out[i + j] + (u128)a.c_[i] * b.c_[j]) % p);
    }
  }
  return PolyModP(F, std::move(out));
}

std::pair<PolyModP, PolyModP> divmod(const PolyModP& a, const PolyModP& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  const auto& F = a.field();
  if (a.degree() < b.degree()) return {PolyModP(F), a};
  std::vector<u64> r(a.coeffs());
  const int db = b.degree();
  std::vector<u64> q(static_cast<std::size_t>(a.degree() - db) + 1, 0);
  const u64 inv_lead = F.inv(b.lead());
  for (int i = a.degree(); i >= db; --i) {
    u64 coef = r[static_cast<std::size_t>(i)];
    if (coef == 0) continue;
    coef = F.mul(coef, inv_lead);
    q[static_cast<std::size_t>(i - db)] = coef;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(i - db + j)];
      slot = F.sub(slot, F.mul(coef, b.coeff(static_cast<std::size_t>(j))));
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {PolyModP(F, std::move(q)), PolyModP(F, std::move(r))};
}

PolyModP operator%(const PolyModP& a, const PolyModP& b) { return divmod(a, b).second; }
PolyModP operator/(const PolyModP& a, const PolyModP& b) { return divmod(a, b).first; }

PolyModP pow_mod(const PolyModP& base, u64 e, const PolyModP& m) {
  PolyModP result = PolyModP::constant(base.field(), 1) % m;
  PolyModP b = base % m;
  while (e) {
    if (e & 1) result = (result * b) % m;
    e >>= 1;
    if (e) b = (b * b) % m;
  }
  return result;
}

PolyModP gcd(const PolyModP& f, const PolyModP& g) {
  if (f.is_zero() && g.is_zero()) throw Error(ErrorCode::InvalidArgument, "gcd(0, 0) is undefined");
  PolyModP a = f, b = g;
  while (!b.is_zero()) {
    PolyModP r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

bool is_squarefree(const PolyModP& f) {
  if (f.degree() < 1) throw Error(ErrorCode::InvalidArgument, "squarefree test needs deg f >= 1");
  if (f.modulus() <= static_cast<u64>(f.degree())) {
    throw Error(ErrorCode::SmallCharacteristic, "need p > deg f");
  }
  return gcd(f, f.derivative()).degree() == 0;
}

namespace {

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (u64 r = 2; r * r <= n; ++r) {
    if (n % r == 0) {
      out.push_back(r);
      while (n % r == 0) n /= r;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// X^(p^k) mod f by k successive p-th powers.
PolyModP frobenius_power_of_x(const PolyModP& f, u64 k) {
  PolyModP h = PolyModP::monomial(f.field(), 1) % f;
  for (u64 i = 0; i < k; ++i) h = pow_mod(h, f.modulus(), f);
  return h;
}

PolyModP pth_root(const PolyModP& f) {
  const u64 p = f.modulus();
  std::vector<u64> v;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) v.push_back(f.coeffs()[i]);
  return PolyModP(f.field(), std::move(v));
}

void squarefree_decompose(const PolyModP& f, int mult_scale, std::vector<Factor>& out) {
  const u64 p = f.modulus();
  PolyModP g = f.derivative();
  if (g.is_zero()) {
    squarefree_decompose(pth_root(f), mult_scale * static_cast<int>(p), out);
    return;
  }
  PolyModP c = gcd(f, g);
  PolyModP w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    PolyModP y = gcd(w, c);
    PolyModP fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i * mult_scale});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree_decompose(pth_root(c), mult_scale * static_cast<int>(p), out);
}

PolyModP random_poly_below(const PolyModP& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist(0, g.modulus() - 1);
  std::vector<u64> v(static_cast<std::size_t>(g.degree()));
  for (auto& c : v) c = dist(rng);
  return PolyModP(g.field(), std::move(v));
}

void equal_degree_split(const PolyModP& g, int d, std::mt19937_64& rng, std::vector<PolyModP>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const u64 p = g.modulus();
  const PolyModP one = PolyModP::constant(g.field(), 1);
  for (;;) {
    PolyModP a = random_poly_below(g, rng);
    if (a.degree() < 1) continue;
    // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
    PolyModP t = a, norm = a;
    for (int i = 1; i < d; ++i) {
      t = pow_mod(t, p, g);
      norm = (norm * t) % g;
    }
    PolyModP b = pow_mod(norm, (p - 1) / 2, g) - one;
    if (b.is_zero()) continue;
    PolyModP h = gcd(g, b);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_split(h, d, rng, out);
      equal_degree_split(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace

bool is_irreducible(const PolyModP& f) {
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const PolyModP x = PolyModP::monomial(f.field(), 1);
  for (u64 r : prime_divisors(static_cast<u64>(n))) {
    PolyModP h = frobenius_power_of_x(f, static_cast<u64>(n) / r) - x;
    if (h.is_zero() || gcd(f, h).degree() != 0) return false;
  }
  return (frobenius_power_of_x(f, static_cast<u64>(n)) - x % f).is_zero();
}

std::vector<Factor> factor_mod_p(const PolyModP& f, std::uint64_t seed) {
  if (f.degree() < 1) throw Error(ErrorCode::InvalidArgument, "factorization needs deg f >= 1");
  if (f.modulus() == 2) throw Error(ErrorCode::SmallCharacteristic, "factorization needs odd p");
  std::mt19937_64 rng(seed);
  std::vector<Factor> squarefree;
  squarefree_decompose(f.monic(), 1, squarefree);

  std::vector<Factor> out;
  const PolyModP x = PolyModP::monomial(f.field(), 1);
  for (const auto& [part, mult] : squarefree) {
    PolyModP rest = part;
    PolyModP h = x % rest;
    for (int i = 1; rest.degree() >= 2 * i; ++i) {
      h = pow_mod(h, f.modulus(), rest);
      PolyModP g = gcd(rest, h - x);
      if (g.degree() > 0) {
        std::vector<PolyModP> pieces;
        equal_degree_split(g, i, rng, pieces);
        for (auto& piece : pieces) out.push_back({std::move(piece), mult});
        rest = rest / g;
        h = h % rest;
      }
    }
    if (rest.degree() > 0) out.push_back({rest.monic(), mult});
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    if (a.poly.coeffs() != b.poly.coeffs()) {
      return std::lexicographical_compare(a.poly.coeffs().rbegin(), a.poly.coeffs().rend(),
                                          b.poly.coeffs().rbegin(), b.poly.coeffs().rend());
    }
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

u64 resultant(const PolyModP& f, const PolyModP& g) {
  if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::InvalidArgument, "resultant of a zero polynomial");
  const auto& F = f.field();
  PolyModP a = f, b = g;
  u64 acc = 1;
  for (;;) {
    const int m = a.degree(), n = b.degree();
    if (n == 0) return F.mul(acc, F.pow(b.lead(), static_cast<u64>(m)));
    if (m == 0) return F.mul(acc, F.pow(a.lead(), static_cast<u64>(n)));
    // Res(a, b) = (-1)^(mn) Res(b, a) = (-1)^(mn) lc(b)^(m - r) Res(b, a mod b)
    PolyModP r = a % b;
    if (r.is_zero()) return 0;
    if ((m & 1) && (n & 1)) acc = F.neg(acc);
    acc = F.mul(acc, F.pow(b.lead(), static_cast<u64>(m - r.degree())));
    a = std::move(b);
    b = std::move(r);
  }
}

}  // namespace expsum
