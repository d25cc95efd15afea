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

#include "expsum/genericity.hpp"

#include <numeric>
#include <string>

namespace expsum {

namespace {

Rational qpow(const Rational& x, long n) {
  if (n < 0) return 1 / qpow(x, -n);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(n));
  Rational out(num, den);
  out.canonicalize();
  return out;
}

// Exact rational n-th roots; empty when none exists.
std::vector<Rational> rational_roots(const Rational& r, unsigned long n) {
  if (r == 0) return {Rational(0)};
  if (n % 2 == 0 && r < 0) return {};
  Integer a = abs(r.get_num()), b = r.get_den(), ra, rb;
  if (!mpz_root(ra.get_mpz_t(), a.get_mpz_t(), n)) return {};
  if (!mpz_root(rb.get_mpz_t(), b.get_mpz_t(), n)) return {};
  Rational root(ra, rb);
  root.canonicalize();
  if (n % 2 == 0) return {root, -root};
  return {r < 0 ? Rational(-root) : root};
}

// f(X + s) over F_p by Horner.
PolyModP shift_mod_p(const PolyModP& f, u64 s) {
  const PrimeField& F = f.field();
  const PolyModP lin(F, {s, 1});
  PolyModP acc(F);
  for (int i = f.degree(); i >= 0; --i) acc = acc * lin + PolyModP::constant(F, f.coeff(static_cast<std::size_t>(i)));
  return acc;
}

bool divides(u64 p, const Integer& n) { return n != 0 && mpz_divisible_ui_p(n.get_mpz_t(), p) != 0; }

bool divides(u64 p, const Rational& q) { return divides(p, q.get_num()) || divides(p, q.get_den()); }

struct ExactMorseData {
  Rational disc_f;
  Rational disc_df;
  Rational disc_cv;
};

ExactMorseData exact_morse_data(const PolyExact& f) {
  ExactMorseData out;
  out.disc_f = derivative_resultant(f);
  out.disc_df = derivative_resultant(f.derivative());
  out.disc_cv = derivative_resultant(critical_value_poly(f));
  return out;
}

bool good_prime(const PolyExact& f, const ExactMorseData& m, u64 p) {
  const int d = f.degree();
  if (!is_prime(p) || p <= static_cast<u64>(2 * d - 1)) return false;
  if (static_cast<u64>(d - 1) % p == 0) return false;
  if (divides(p, f.denominator()) || divides(p, f.numerators().back())) return false;
  if (m.disc_f == 0 || m.disc_df == 0 || m.disc_cv == 0) return false;
  return !divides(p, m.disc_f) && !divides(p, m.disc_df) && !divides(p, m.disc_cv);
}

// Power-series k-th root of a series with constant term 1, to n terms.
std::vector<Rational> series_root(const std::vector<Rational>& r, int k, int n) {
  std::vector<Rational> h(static_cast<std::size_t>(n), Rational(0));
  h[0] = 1;
  for (int m = 1; m < n; ++m) {
    // [t^m] of h^k with h_m still zero
    std::vector<Rational> pw(static_cast<std::size_t>(m + 1), Rational(0));
    pw[0] = 1;
    for (int rep = 0; rep < k; ++rep) {
      std::vector<Rational> next(static_cast<std::size_t>(m + 1), Rational(0));
      for (int i = 0; i <= m; ++i) {
        if (pw[i] == 0) continue;
        for (int j = 0; i + j <= m; ++j) next[i + j] += pw[i] * h[j];
      }
      pw = std::move(next);
    }
    const Rational rm = m < static_cast<int>(r.size()) ? r[m] : Rational(0);
    h[m] = (rm - pw[m]) / k;
    h[m].canonicalize();
  }
  return h;
}

}  // namespace

bool is_morse(const PolyModP& f) {
  const int d = f.degree();
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "Morse test needs deg f >= 2");
  if (f.modulus() <= static_cast<u64>(2 * d - 1)) {
    throw Error(ErrorCode::SmallPrime, "need p > 2d - 1, got p = " + std::to_string(f.modulus()));
  }
  if (!is_squarefree(f)) return false;
  const PolyModP df = f.derivative();
  if (df.degree() != d - 1 || !is_squarefree(df)) return false;
  return is_squarefree(critical_value_poly(f));
}

CriticalData critical_data(const PolyModP& f, const SplittingOptions& opts) {
  const int d = f.degree();
  const u64 p = f.modulus();
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "critical data needs deg f >= 2");
  if (static_cast<u64>(d - 1) % p == 0) {
    throw Error(ErrorCode::BadCharacteristic, "p = " + std::to_string(p) + " divides d - 1");
  }
  if (!is_morse(f)) throw Error(ErrorCode::InvalidArgument, "critical data needs a Morse polynomial");
  const PrimeField& F = f.field();
  const PolyModP cv = critical_value_poly(f);
  CriticalData out;
  out.values = splitting_roots(cv, opts);
  if (static_cast<int>(out.values.size()) != d - 1) {
    throw Error(ErrorCode::Internal, "critical value count mismatch");
  }
  const u64 vieta = F.neg(F.div(cv.coeff(static_cast<std::size_t>(d - 2)), cv.lead()));
  ExtFieldElem total = ExtFieldElem::zero(out.values.front().field());
  for (const auto& v : out.values) total = total + v;
  if (!total.in_base_field() || total.base_value() != vieta) {
    throw Error(ErrorCode::Internal, "critical value sum disagrees with Vieta");
  }
  out.value_sum = {vieta, p};
  out.shift = {F.neg(F.div(vieta, static_cast<u64>(d - 1) % p)), p};
  return out;
}

bool is_sidon(std::span<const ExtFieldElem> s) {
  const std::size_t r = s.size();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (s[i] == s[j]) throw Error(ErrorCode::DuplicateValues, "values must be pairwise distinct");
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c)
        for (std::size_t d = 0; d < r; ++d) {
          if (a == c || a == d) continue;
          if (s[a] + s[b] == s[c] + s[d]) return false;
        }
  return true;
}

std::optional<ExtFieldElem> is_symmetric_sidon(std::span<const ExtFieldElem> s) {
  const std::size_t r = s.size();
  if (r == 0) return std::nullopt;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (s[i] == s[j]) return std::nullopt;
  const ExtFieldPtr& E = s[0].field();
  const u64 p = E->base().modulus();
  if (r % p == 0) return std::nullopt;
  ExtFieldElem total = ExtFieldElem::zero(E);
  for (const auto& v : s) total = total + v;
  const ExtFieldElem alpha = total.scaled(E->base().div(2 % p, r % p));
  for (const auto& v : s) {
    const ExtFieldElem mirror = alpha - v;
    bool found = false;
    for (const auto& w : s) found = found || w == mirror;
    if (!found) return std::nullopt;
  }
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c)
        for (std::size_t d = 0; d < r; ++d) {
          if (a == c || a == d || s[b] == alpha - s[a]) continue;
          if (s[a] + s[b] == s[c] + s[d]) return std::nullopt;
        }
  return alpha;
}

std::optional<OddForm> odd_form(const PolyExact& f) {
  const int d = f.degree();
  if (d < 3) throw Error(ErrorCode::InvalidArgument, "odd form needs deg f >= 3");
  Rational x0 = -f.coeff(static_cast<std::size_t>(d - 1)) / (Rational(d) * f.lead());
  x0.canonicalize();
  const Rational delta = f.eval(x0);
  PolyExact g = f.affine_substitute(1, x0) - PolyExact::constant(delta);
  if (!g.is_odd()) return std::nullopt;
  return OddForm{x0, delta, std::move(g)};
}

std::optional<OddFormModP> odd_form(const PolyModP& f) {
  const int d = f.degree();
  if (d < 3) throw Error(ErrorCode::InvalidArgument, "odd form needs deg f >= 3");
  if (d % 2 == 0) return std::nullopt;
  const PrimeField& F = f.field();
  if (f.modulus() <= static_cast<u64>(d)) throw Error(ErrorCode::SmallCharacteristic, "need p > deg f");
  const u64 x0 = F.neg(F.div(f.coeff(static_cast<std::size_t>(d - 1)), F.mul(static_cast<u64>(d), f.lead())));
  const u64 delta = f.eval(x0);
  PolyModP g = shift_mod_p(f, x0) - PolyModP::constant(F, delta);
  for (int i = 0; i <= g.degree(); i += 2)
    if (g.coeff(static_cast<std::size_t>(i)) != 0) return std::nullopt;
  return OddFormModP{x0, delta, std::move(g)};
}

std::optional<Decomposition> find_decomposition(const PolyExact& f) {
  const int d = f.degree();
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "decomposition needs deg f >= 2");
  const Rational lead = f.lead();
  // Reversed monic f: t^d f(1/t) / lead.
  std::vector<Rational> rev;
  for (int i = d; i >= 0; --i) rev.push_back(f.coeff(static_cast<std::size_t>(i)) / lead);
  for (int e = 2; e < d; ++e) {
    if (d % e != 0) continue;
    const int k = d / e;
    const std::vector<Rational> hs = series_root(rev, k, e);
    std::vector<Rational> hc(static_cast<std::size_t>(e + 1), Rational(0));
    for (int i = 1; i <= e; ++i) hc[static_cast<std::size_t>(i)] = hs[static_cast<std::size_t>(e - i)];
    const PolyExact h(hc);
    std::vector<Rational> digits;
    PolyExact rest = f;
    bool ok = true;
    while (!rest.is_zero()) {
      auto [q, r] = divmod(rest, h);
      if (r.degree() > 0) {
        ok = false;
        break;
      }
      digits.push_back(r.coeff(0));
      rest = std::move(q);
    }
    if (!ok) continue;
    PolyExact g(digits);
    if (g.compose(h) != f) throw Error(ErrorCode::Internal, "decomposition failed to re-verify");
    return Decomposition{std::move(g), h};
  }
  return std::nullopt;
}

std::optional<LinearEquivalence> linear_equivalent(const PolyExact& f, const PolyExact& g, EquivalenceField over) {
  const int d = f.degree();
  if (d != g.degree() || d < 2) return std::nullopt;
  const CanonicalForm cf = depress_and_normalize(f);
  const CanonicalForm cg = depress_and_normalize(g);
  std::vector<long> n;
  std::vector<Rational> r;
  for (int j = 1; j <= d - 2; ++j) {
    const Rational fj = cf.poly.coeff(static_cast<std::size_t>(j));
    const Rational gj = cg.poly.coeff(static_cast<std::size_t>(j));
    if ((fj == 0) != (gj == 0)) return std::nullopt;
    if (fj == 0) continue;
    n.push_back(d - j);
    r.push_back(fj / gj);
  }
  for (std::size_t i = 0; i < n.size(); ++i)
    for (std::size_t k = i + 1; k < n.size(); ++k)
      if (qpow(r[i], n[k]) != qpow(r[k], n[i])) return std::nullopt;

  LinearEquivalence out;
  if (!n.empty()) {
    // Bezout: sum u_i n_i = G, then c^G = prod r_i^{u_i}.
    long G = n[0];
    std::vector<long> u{1};
    for (std::size_t i = 1; i < n.size(); ++i) {
      long a = G, b = n[i], s0 = 1, s1 = 0, t0 = 0, t1 = 1;
      while (b != 0) {
        const long q = a / b;
        a = std::exchange(b, a - q * b);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
      }
      for (auto& x : u) x *= s0;
      u.push_back(t0);
      G = a;
    }
    Rational R = 1;
    for (std::size_t i = 0; i < n.size(); ++i) R *= qpow(r[i], u[i]);
    R.canonicalize();
    out.c_exponent = static_cast<int>(G);
    out.c_power = R;
  }

  for (const Rational& c : rational_roots(out.c_power, static_cast<unsigned long>(out.c_exponent))) {
    if (c == 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n.size() && ok; ++i) ok = qpow(c, n[i]) == r[i];
    if (!ok) continue;
    const Rational cd = qpow(c, -d);
    AffineMap m;
    m.c = c;
    m.a = cd * cf.a / cg.a;
    m.e = cf.e - c * cg.e;
    m.b = (cd * cf.b - cg.b) / cg.a;
    m.a.canonicalize();
    m.b.canonicalize();
    m.e.canonicalize();
    if (m.a * f.affine_substitute(m.c, m.e) + PolyExact::constant(m.b) != g) {
      throw Error(ErrorCode::Internal, "equivalence witness failed to re-verify");
    }
    out.rational_map = m;
    break;
  }
  if (over == EquivalenceField::Rational && !out.rational_map) return std::nullopt;
  return out;
}

std::optional<Rational> dickson_equivalent(const PolyExact& f) {
  const int d = f.degree();
  if (d < 3) throw Error(ErrorCode::InvalidArgument, "Dickson test needs deg f >= 3");
  const CanonicalForm cf = depress_and_normalize(f);
  Rational a0 = -cf.poly.coeff(static_cast<std::size_t>(d - 2)) / d;
  a0.canonicalize();
  if (!linear_equivalent(f, dickson(d, a0), EquivalenceField::Rational)) return std::nullopt;
  return a0;
}

const char* to_string(FriedPrediction p) noexcept {
  switch (p) {
    case FriedPrediction::AbsolutelyIrreducible: return "AbsolutelyIrreducible";
    case FriedPrediction::Reducible: return "Reducible";
    case FriedPrediction::Undetermined: return "Undetermined";
  }
  return "?";
}

FriedPrediction fried_predict(const PolyExact& f) {
  const int d = f.degree();
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "prediction needs deg f >= 2");
  const bool odd_prime = d % 2 == 1 && is_prime(static_cast<u64>(d));
  if (!odd_prime) {
    return is_indecomposable(f) ? FriedPrediction::AbsolutelyIrreducible : FriedPrediction::Reducible;
  }
  if (d == 3) {
    return linear_equivalent(f, PolyExact::monomial(3), EquivalenceField::Rational)
               ? FriedPrediction::Reducible
               : FriedPrediction::AbsolutelyIrreducible;
  }
  return dickson_equivalent(f) ? FriedPrediction::Undetermined : FriedPrediction::AbsolutelyIrreducible;
}

const char* to_string(Tristate t) noexcept {
  switch (t) {
    case Tristate::False: return "false";
    case Tristate::True: return "true";
    case Tristate::Unknown: return "unknown";
  }
  return "?";
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::NotMorse: return "NotMorse";
    case Verdict::MorseOnly: return "MorseOnly";
    case Verdict::SidonMorse: return "SidonMorse";
    case Verdict::SymmetricSidonMorse: return "SymmetricSidonMorse";
  }
  return "?";
}

bool is_good_prime(const PolyExact& f, u64 p) {
  if (f.degree() < 2) throw Error(ErrorCode::InvalidArgument, "need deg f >= 2");
  return good_prime(f, exact_morse_data(f), p);
}

GenericityReport classify(const PolyExact& f, std::span<const u64> primes, const ClassifyOptions& opts) {
  const int d = f.degree();
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "classification needs deg f >= 2");
  for (u64 p : primes)
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");

  GenericityReport rep;
  rep.poly = f;
  rep.degree = d;
  const ExactMorseData m = exact_morse_data(f);
  rep.morse = m.disc_f != 0 && m.disc_df != 0 && m.disc_cv != 0;
  rep.decomposition = find_decomposition(f);
  rep.indecomposable = !rep.decomposition;
  if (d >= 3) {
    rep.dickson_param = dickson_equivalent(f);
    rep.odd_witness = odd_form(f);
  }
  if (!rep.morse) {
    rep.verdict = Verdict::NotMorse;
    return rep;
  }

  for (u64 p : primes) {
    if (!good_prime(f, m, p)) continue;
    PrimeCertificate cert{};
    cert.prime = p;
    const PolyModP fp = reduce_mod_p(f, p).poly;
    cert.morse = is_morse(fp);
    if (!cert.morse) throw Error(ErrorCode::Internal, "Morse property lost at a good prime");
    const CriticalData cd = critical_data(fp, opts.splitting);
    cert.sidon = is_sidon(cd.values);
    if (rep.odd_witness) {
      const PolyModP gp = reduce_mod_p(rep.odd_witness->g, p).poly;
      cert.symmetric_sidon = is_symmetric_sidon(critical_data(gp, opts.splitting).values).has_value();
    }
    if (cert.symmetric_sidon.value_or(false)) cert.verdict = Verdict::SymmetricSidonMorse;
    else if (cert.sidon) cert.verdict = Verdict::SidonMorse;
    else cert.verdict = Verdict::MorseOnly;
    rep.certificates.push_back(cert);
  }
  if (rep.certificates.empty()) throw Error(ErrorCode::NoGoodPrime, "no good prime among the candidates");

  bool sidon = false, symmetric = false;
  for (const auto& c : rep.certificates) {
    sidon = sidon || c.sidon;
    symmetric = symmetric || c.symmetric_sidon.value_or(false);
    if (!c.sidon) ++rep.sidon_failures;
  }
  rep.sidon = sidon ? Tristate::True : Tristate::Unknown;
  rep.symmetric_sidon_morse = symmetric;
  if (symmetric) rep.verdict = Verdict::SymmetricSidonMorse;
  else if (sidon) rep.verdict = Verdict::SidonMorse;
  else rep.verdict = Verdict::MorseOnly;
  return rep;
}

}  // namespace expsum
