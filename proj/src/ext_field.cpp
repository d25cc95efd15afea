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

#include "expsum/ext_field.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "expsum/error.hpp"

namespace expsum {

std::shared_ptr<const ExtField> ExtField::create(const PolyModP& modulus) {
  if (modulus.degree() < 1 || modulus.lead() != 1) {
    throw Error(ErrorCode::InvalidArgument, "extension modulus must be monic of degree >= 1");
  }
  if (!is_irreducible(modulus)) throw Error(ErrorCode::InvalidArgument, "extension modulus is reducible");
  return std::shared_ptr<const ExtField>(new ExtField(modulus));
}

std::shared_ptr<const ExtField> ExtField::create_random(PrimeField base, int degree, std::uint64_t seed) {
  if (degree < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
  if (degree == 1) return create(PolyModP::monomial(base, 1));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> dist(0, base.modulus() - 1);
  for (;;) {
    std::vector<u64> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = dist(rng);
    c.back() = 1;
    PolyModP m(base, std::move(c));
    if (is_irreducible(m)) return std::shared_ptr<const ExtField>(new ExtField(std::move(m)));
  }
}

mpz_class ExtField::order() const {
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), base().modulus(), static_cast<unsigned long>(degree()));
  return q;
}

ExtFieldElem::ExtFieldElem(ExtFieldPtr field, PolyModP value) : field_(std::move(field)), value_(std::move(value)) {
  if (value_.degree() >= field_->degree()) value_ = value_ % field_->modulus();
}

ExtFieldElem ExtFieldElem::zero(const ExtFieldPtr& field) { return {field, PolyModP(field->base())}; }
ExtFieldElem ExtFieldElem::one(const ExtFieldPtr& field) { return from_base(field, 1); }
ExtFieldElem ExtFieldElem::from_base(const ExtFieldPtr& field, u64 c) {
  return {field, PolyModP::constant(field->base(), c)};
}
ExtFieldElem ExtFieldElem::generator(const ExtFieldPtr& field) {
  return {field, PolyModP::monomial(field->base(), 1)};
}

std::vector<u64> ExtFieldElem::coeffs() const {
  std::vector<u64> out(static_cast<std::size_t>(field_->degree()), 0);
  for (std::size_t i = 0; i < value_.coeffs().size(); ++i) out[i] = value_.coeffs()[i];
  return out;
}

u64 ExtFieldElem::base_value() const {
  if (!in_base_field()) throw Error(ErrorCode::InvalidArgument, "element is not in the prime field");
  return value_.coeff(0);
}

namespace {

void check_same(const ExtFieldElem& a, const ExtFieldElem& b) {
  if (a.field() != b.field() && !(a.field()->modulus() == b.field()->modulus())) {
    throw Error(ErrorCode::InvalidArgument, "mixing elements of different extension fields");
  }
}

}  // namespace

ExtFieldElem ExtFieldElem::operator+(const ExtFieldElem& o) const {
  check_same(*this, o);
  return {field_, value_ + o.value_};
}
ExtFieldElem ExtFieldElem::operator-(const ExtFieldElem& o) const {
  check_same(*this, o);
  return {field_, value_ - o.value_};
}
ExtFieldElem ExtFieldElem::operator*(const ExtFieldElem& o) const {
  check_same(*this, o);
  return {field_, (value_ * o.value_) % field_->modulus()};
}
ExtFieldElem ExtFieldElem::operator-() const { return {field_, -value_}; }
ExtFieldElem ExtFieldElem::scaled(u64 s) const { return {field_, value_.scaled(s)}; }

ExtFieldElem ExtFieldElem::inverse() const {
  if (is_zero()) throw Error(ErrorCode::InvalidArgument, "inverse of zero in extension field");
  // Extended Euclid: track s with s * value = r (mod modulus).
  PolyModP r0 = field_->modulus(), r1 = value_;
  PolyModP s0(base()), s1 = PolyModP::constant(base(), 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    PolyModP s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant since the modulus is irreducible.
  return {field_, s0.scaled(base().inv(r0.coeff(0)))};
}

ExtFieldElem ExtFieldElem::pow(u64 e) const {
  return {field_, pow_mod(value_, e, field_->modulus())};
}

ExtFieldElem ExtFieldElem::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(mpz_class(-e));
  ExtFieldElem result = one(field_);
  const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (auto i = bits; i-- > 0;) {
    result = result * result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
  }
  return result;
}

bool ExtFieldElem::operator<(const ExtFieldElem& o) const {
  const auto a = coeffs(), b = o.coeffs();
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

ExtFieldElem evaluate(const PolyModP& f, const ExtFieldElem& x) {
  ExtFieldElem acc = ExtFieldElem::zero(x.field());
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * x + ExtFieldElem::from_base(x.field(), f.coeff(static_cast<std::size_t>(i)));
  }
  return acc;
}

namespace {

// Polynomials over F_{p^e}, constant term first, trimmed.
using EPoly = std::vector<ExtFieldElem>;

void etrim(EPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}
int edeg(const EPoly& a) { return static_cast<int>(a.size()) - 1; }

EPoly emul(const EPoly& a, const EPoly& b, const ExtFieldPtr& F) {
  if (a.empty() || b.empty()) return {};
  EPoly out(a.size() + b.size() - 1, ExtFieldElem::zero(F));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  }
  etrim(out);
  return out;
}

std::pair<EPoly, EPoly> edivmod(EPoly a, const EPoly& b, const ExtFieldPtr& F) {
  const int db = edeg(b);
  if (edeg(a) < db) return {{}, a};
  EPoly q(static_cast<std::size_t>(edeg(a) - db) + 1, ExtFieldElem::zero(F));
  const ExtFieldElem inv_lead = b.back().inverse();
  for (int i = edeg(a); i >= db; --i) {
    ExtFieldElem coef = a[static_cast<std::size_t>(i)] * inv_lead;
    if (coef.is_zero()) continue;
    q[static_cast<std::size_t>(i - db)] = coef;
    for (int j = 0; j <= db; ++j) {
      auto& slot = a[static_cast<std::size_t>(i - db + j)];
      slot = slot - coef * b[static_cast<std::size_t>(j)];
    }
  }
  a.resize(static_cast<std::size_t>(db), ExtFieldElem::zero(F));
  etrim(a);
  etrim(q);
  return {q, a};
}

EPoly emonic(EPoly a) {
  const ExtFieldElem inv = a.back().inverse();
  for (auto& c : a) c = c * inv;
  return a;
}

EPoly egcd(EPoly a, EPoly b, const ExtFieldPtr& F) {
  while (!b.empty()) {
    EPoly r = edivmod(a, b, F).second;
    a = std::move(b);
    b = std::move(r);
  }
  return emonic(a);
}

EPoly epowmod(EPoly base, const mpz_class& e, const EPoly& m, const ExtFieldPtr& F) {
  EPoly result{ExtFieldElem::one(F)};
  base = edivmod(base, m, F).second;
  const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (auto i = bits; i-- > 0;) {
    result = edivmod(emul(result, result, F), m, F).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = edivmod(emul(result, base, F), m, F).second;
  }
  return result;
}

// One root in F of a polynomial g over F that splits into distinct linear
// factors, by Cantor-Zassenhaus with (q - 1)/2 powers.
ExtFieldElem find_root(EPoly g, const ExtFieldPtr& F, std::mt19937_64& rng) {
  const mpz_class half = (F->order() - 1) / 2;
  std::uniform_int_distribution<u64> dist(0, F->base().modulus() - 1);
  while (edeg(g) > 1) {
    std::vector<u64> c(static_cast<std::size_t>(F->degree()));
    for (auto& x : c) x = dist(rng);
    ExtFieldElem delta(F, PolyModP(F->base(), c));
    EPoly lin{delta, ExtFieldElem::one(F)};
    EPoly h = epowmod(lin, half, g, F);
    if (h.empty()) continue;
    h[0] = h[0] - ExtFieldElem::one(F);
    etrim(h);
    if (h.empty()) continue;
    EPoly d = egcd(g, h, F);
    if (edeg(d) > 0 && edeg(d) < edeg(g)) {
      // Recurse on the smaller piece.
      EPoly other = edivmod(g, d, F).first;
      g = edeg(d) <= edeg(other) ? std::move(d) : emonic(std::move(other));
    }
  }
  return -(g[0] / g[1]);
}

}  // namespace

std::vector<ExtFieldElem> splitting_roots(const PolyModP& f, const SplittingOptions& opts) {
  if (f.degree() < 1) throw Error(ErrorCode::InvalidArgument, "splitting_roots needs deg f >= 1");
  auto factors = factor_mod_p(f, opts.seed);
  for (const auto& fac : factors) {
    if (fac.multiplicity != 1) throw Error(ErrorCode::InvalidArgument, "splitting_roots needs a squarefree polynomial");
  }
  long e = 1;
  for (const auto& fac : factors) {
    e = std::lcm(e, static_cast<long>(fac.poly.degree()));
    if (e > opts.max_extension_degree) {
      throw Error(ErrorCode::ExtensionTooLarge, "splitting field degree " + std::to_string(e) + " exceeds cap " +
                                                    std::to_string(opts.max_extension_degree));
    }
  }
  ExtFieldPtr F;
  for (const auto& fac : factors) {
    if (fac.poly.degree() == e) {
      F = ExtField::create(fac.poly);
      break;
    }
  }
  if (!F) F = ExtField::create_random(f.field(), static_cast<int>(e), opts.seed);

  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<ExtFieldElem> roots;
  roots.reserve(static_cast<std::size_t>(f.degree()));
  for (const auto& fac : factors) {
    const auto& g = fac.poly;
    ExtFieldElem r = ExtFieldElem::zero(F);
    if (g.degree() == 1) {
      r = ExtFieldElem::from_base(F, f.field().neg(g.coeff(0)));
    } else if (g.degree() == e && F->modulus() == g) {
      r = ExtFieldElem::generator(F);
    } else {
      EPoly lifted;
      for (u64 c : g.coeffs()) lifted.push_back(ExtFieldElem::from_base(F, c));
      r = find_root(std::move(lifted), F, rng);
    }
    for (int i = 0; i < g.degree(); ++i) {
      roots.push_back(r);
      r = r.frobenius();
    }
  }
  return roots;
}

}  // namespace expsum
