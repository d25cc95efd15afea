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

#include "expsum/poly_exact.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "expsum/error.hpp"
#include "json.hpp"

namespace expsum {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  if (s.empty()) throw Error(ErrorCode::Parse, "empty coefficient");
  auto is_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(), [](unsigned char ch) { return std::isdigit(ch); });
  };
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  Rational q;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!is_int(n) || !is_int(d) || d[0] == '-' || d[0] == '+') throw Error(ErrorCode::Parse, "bad ratio '" + s + "'");
    Integer den(strip_plus(d));
    if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + s + "'");
    q = Rational(Integer(strip_plus(n)), den);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    std::string digits = (ip.empty() || ip == "-" || ip == "+") ? "0" : strip_plus(neg ? ip.substr(1) : ip);
    if (!is_int(digits) || digits[0] == '-' || (!fp.empty() && !is_int(fp)) || fp.find_first_of("+-") != std::string::npos) {
      throw Error(ErrorCode::Parse, "bad decimal '" + s + "'");
    }
    Integer scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    Integer n(digits + fp);
    q = Rational(neg ? Integer(-n) : n, scale);
  } else {
    if (!is_int(s)) throw Error(ErrorCode::Parse, "bad coefficient '" + s + "'");
    q = Rational(Integer(strip_plus(s)));
  }
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

PolyExact::PolyExact(const std::vector<Rational>& coeffs) {
  den_ = 1;
  for (const auto& c : coeffs) den_ = lcm(den_, Integer(c.get_den()));
  num_.reserve(coeffs.size());
  for (const auto& c : coeffs) num_.push_back(Integer(c.get_num() * (den_ / c.get_den())));
  canonicalize();
}

PolyExact::PolyExact(std::initializer_list<long> integer_coeffs) : den_(1) {
  for (long c : integer_coeffs) num_.emplace_back(c);
  canonicalize();
}

PolyExact PolyExact::monomial(int deg, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(deg) + 1, Rational(0));
  v.back() = c;
  return PolyExact(v);
}

void PolyExact::canonicalize() {
  while (!num_.empty() && num_.back() == 0) num_.pop_back();
  if (num_.empty()) {
    den_ = 1;
    return;
  }
  Integer g = den_;
  for (const auto& n : num_) {
    if (g == 1) break;
    g = gcd(g, n);
  }
  if (g != 1) {
    for (auto& n : num_) n /= g;
    den_ /= g;
  }
}

Rational PolyExact::coeff(std::size_t i) const {
  if (i >= num_.size()) return Rational(0);
  Rational q(num_[i], den_);
  q.canonicalize();
  return q;
}

std::vector<Rational> PolyExact::coefficients() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coeff(i));
  return out;
}

Rational PolyExact::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = num_.rbegin(); it != num_.rend(); ++it) acc = acc * x + Rational(*it);
  Rational out = acc / Rational(den_);
  out.canonicalize();
  return out;
}

PolyExact PolyExact::derivative() const {
  std::vector<Rational> v;
  for (std::size_t i = 1; i < num_.size(); ++i) v.push_back(coeff(i) * Rational(static_cast<long>(i)));
  return PolyExact(v);
}

PolyExact PolyExact::compose(const PolyExact& inner) const {
  PolyExact acc;
  for (int i = degree(); i >= 0; --i) acc = acc * inner + constant(coeff(static_cast<std::size_t>(i)));
  return acc;
}

PolyExact PolyExact::affine_substitute(const Rational& c, const Rational& e) const {
  return compose(PolyExact(std::vector<Rational>{e, c}));
}

bool PolyExact::is_odd() const {
  for (std::size_t i = 0; i < num_.size(); i += 2) {
    if (num_[i] != 0) return false;
  }
  return true;
}

PolyExact PolyExact::operator-() const {
  PolyExact r = *this;
  for (auto& n : r.num_) n = -n;
  return r;
}

namespace {

std::vector<Rational> add_coeffs(const PolyExact& a, const PolyExact& b, int sign) {
  std::size_t n = std::max(a.numerators().size(), b.numerators().size());
  std::vector<Rational> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = sign > 0 ? Rational(a.coeff(i) + b.coeff(i)) : Rational(a.coeff(i) - b.coeff(i));
  return v;
}

}  // namespace

PolyExact operator+(const PolyExact& a, const PolyExact& b) { return PolyExact(add_coeffs(a, b, 1)); }
PolyExact operator-(const PolyExact& a, const PolyExact& b) { return PolyExact(add_coeffs(a, b, -1)); }

PolyExact operator*(const PolyExact& a, const PolyExact& b) {
  if (a.is_zero() || b.is_zero()) return PolyExact();
  PolyExact r;
  r.num_.assign(a.num_.size() + b.num_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.num_.size(); ++i) {
    for (std::size_t j = 0; j < b.num_.size(); ++j) r.num_[i + j] += a.num_[i] * b.num_[j];
  }
  r.den_ = a.den_ * b.den_;
  r.canonicalize();
  return r;
}

PolyExact operator*(const Rational& s, const PolyExact& a) {
  if (s == 0) return PolyExact();
  PolyExact r = a;
  for (auto& n : r.num_) n *= s.get_num();
  r.den_ *= s.get_den();
  r.canonicalize();
  return r;
}

std::string PolyExact::to_json() const {
  std::string out = "[";
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (i) out += ",";
    out += "\"" + format_rational(coeff(i)) + "\"";
  }
  return out + "]";
}

PolyExact PolyExact::from_json(std::string_view json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("polynomial JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::Parse, "polynomial must be a non-empty JSON array");
  std::vector<Rational> coeffs;
  for (const auto& item : j) {
    if (item.is_string()) {
      coeffs.push_back(parse_rational(item.get<std::string>()));
    } else if (item.is_number_integer()) {
      coeffs.push_back(parse_rational(item.dump()));
    } else {
      throw Error(ErrorCode::Parse, "coefficients must be strings or integers, got " + item.dump());
    }
  }
  return PolyExact(coeffs);
}

std::string PolyExact::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rational c = coeff(static_cast<std::size_t>(i));
    if (c == 0) continue;
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = (mag == 1) && i > 0;
    if (!unit) {
      os << format_rational(mag);
      if (i > 0) os << "*";
    }
    if (i > 0) os << "X";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::array<std::uint8_t, 32> PolyExact::hash() const {
  const std::string text = to_json();
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32) {
    throw Error(ErrorCode::Internal, "SHA-256 failed");
  }
  return out;
}

std::string PolyExact::hash_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto b : hash()) {
    s += digits[b >> 4];
    s += digits[b & 15];
  }
  return s;
}

std::pair<PolyExact, PolyExact> divmod(const PolyExact& a, const PolyExact& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  std::vector<Rational> r = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {PolyExact(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db) + 1, Rational(0));
  const Rational lb = b.lead();
  for (int i = a.degree(); i >= db; --i) {
    Rational coef = r[static_cast<std::size_t>(i)] / lb;
    if (coef == 0) continue;
    q[static_cast<std::size_t>(i - db)] = coef;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= coef * b.coeff(static_cast<std::size_t>(j));
  }
  r.resize(static_cast<std::size_t>(db));
  return {PolyExact(q), PolyExact(r)};
}

ModPReduction reduce_mod_p(const PolyExact& f, u64 p) {
  const Integer pz(std::to_string(p));
  if (f.denominator() % pz == 0) {
    throw Error(ErrorCode::BadReduction, std::to_string(p) + " divides a coefficient denominator");
  }
  PrimeField F(p);
  const u64 den_inv = F.inv(Integer(f.denominator() % pz).get_ui());
  std::vector<u64> c;
  c.reserve(f.numerators().size());
  for (const auto& n : f.numerators()) {
    Integer r = n % pz;
    if (r < 0) r += pz;
    c.push_back(F.mul(r.get_ui(), den_inv));
  }
  PolyModP poly(F, std::move(c));
  const bool dropped = poly.degree() != f.degree();
  return {std::move(poly), dropped};
}

namespace {

using ZPoly = std::vector<Integer>;  // constant first, trimmed

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

Integer content(const ZPoly& a) {
  Integer g = 0;
  for (const auto& c : a) g = gcd(g, c);
  return g;
}

// lc(b)^(deg a - deg b + 1) * a mod b, computed without fractions.
ZPoly pseudo_remainder(ZPoly a, const ZPoly& b) {
  const int db = zdeg(b);
  int e = zdeg(a) - db + 1;
  const Integer& lb = b.back();
  while (!a.empty() && zdeg(a) >= db) {
    const Integer la = a.back();
    const int shift = zdeg(a) - db;
    for (auto& c : a) c *= lb;
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(shift + j)] -= la * b[static_cast<std::size_t>(j)];
    ztrim(a);
    --e;
  }
  Integer scale = 1;
  for (int i = 0; i < e; ++i) scale *= lb;
  for (auto& c : a) c *= scale;
  return a;
}

Integer zpow(const Integer& base, long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

Integer subresultant(ZPoly A, ZPoly B) {
  ztrim(A);
  ztrim(B);
  if (A.empty() || B.empty()) return 0;
  int sign = 1;
  if (zdeg(A) < zdeg(B)) {
    if ((zdeg(A) & 1) && (zdeg(B) & 1)) sign = -1;
    std::swap(A, B);
  }
  if (zdeg(B) == 0) return sign * zpow(B[0], zdeg(A));
  const Integer a = content(A), b = content(B);
  for (auto& c : A) c /= a;
  for (auto& c : B) c /= b;
  const Integer t = zpow(a, zdeg(B)) * zpow(b, zdeg(A));
  Integer g = 1, h = 1;
  for (;;) {
    const int delta = zdeg(A) - zdeg(B);
    if ((zdeg(A) & 1) && (zdeg(B) & 1)) sign = -sign;
    ZPoly R = pseudo_remainder(A, B);
    A = std::move(B);
    const Integer div = g * zpow(h, delta);
    for (auto& c : R) c /= div;
    B = std::move(R);
    g = A.back();
    if (delta > 0) h = zpow(g, delta) / zpow(h, delta - 1);
    if (zdeg(B) <= 0) break;
  }
  if (B.empty()) return 0;
  const int da = zdeg(A);
  const Integer hh = zpow(B.back(), da) / zpow(h, da - 1);
  return sign * t * hh;
}

}  // namespace

Rational resultant(const PolyExact& f, const PolyExact& g) {
  if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::InvalidArgument, "resultant of a zero polynomial");
  Integer r = subresultant(f.numerators(), g.numerators());
  // Res(F/D1, G/D2) = Res(F, G) / (D1^deg g * D2^deg f)
  Integer scale = zpow(f.denominator(), g.degree()) * zpow(g.denominator(), f.degree());
  Rational out(r, scale);
  out.canonicalize();
  return out;
}

Rational derivative_resultant(const PolyExact& f) {
  if (f.degree() < 1) throw Error(ErrorCode::InvalidArgument, "derivative resultant needs deg f >= 1");
  if (f.degree() == 1) return f.lead();
  return resultant(f, f.derivative());
}

}  // namespace expsum
