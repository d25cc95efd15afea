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

#include "expsum/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "expsum/error.hpp"
#include "expsum/modp.hpp"

namespace expsum {

namespace {

// sum_{x mod q} e(a f(x) / q), f reduced mod q through its denominator.
cplx direct_sum(const PolyExact& f, u64 a, u64 q) {
  Integer qq(static_cast<unsigned long>(q));
  Integer dinv;
  if (mpz_invert(dinv.get_mpz_t(), f.denominator().get_mpz_t(), qq.get_mpz_t()) == 0)
    throw Error(ErrorCode::BadReduction, "denominator not invertible mod " + std::to_string(q));
  std::vector<u64> c;
  for (const auto& n : f.numerators()) {
    Integer r = n * dinv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), qq.get_mpz_t());
    c.push_back(r.get_ui());
  }
  long double re = 0, im = 0;
  for (u64 x = 0; x < q; ++x) {
    u64 v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = (mul_mod(v, x, q) + c[i]) % q;
    const long double ang =
        2 * std::numbers::pi_v<long double> * static_cast<long double>(mul_mod(v, a % q, q)) / static_cast<long double>(q);
    re += std::cos(ang);
    im += std::sin(ang);
  }
  const long double s = std::sqrt(static_cast<long double>(q));
  return {static_cast<double>(re / s), static_cast<double>(im / s)};
}

CheckRow row(std::string check, std::string detail, double value, double ref, double tol, bool relative = true) {
  CheckRow r;
  r.check = std::move(check);
  r.detail = std::move(detail);
  r.value = value;
  r.reference = ref;
  r.error = std::abs(value - ref);
  r.tolerance = relative ? tol * std::max(1.0, std::abs(ref)) : tol;
  r.pass = r.error <= r.tolerance;
  return r;
}

}  // namespace

Table SelfTestReport::table() const {
  Table t;
  t.columns = {"check", "detail", "value", "reference", "error", "tolerance", "pass"};
  t.meta.emplace_back("p", p);
  t.meta.emplace_back("result", std::string(pass ? "pass" : "FAIL"));
  for (const auto& r : rows) t.rows.push_back({r.check, r.detail, r.value, r.reference, r.error, r.tolerance, r.pass});
  return t;
}

SelfTestReport oracle_selftest(const PolyExact& f, u64 p, std::uint64_t seed, TableCache* cache) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  const int d = f.degree();
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "need a nonconstant polynomial");
  if (p <= static_cast<u64>(2 * d - 1)) throw Error(ErrorCode::SmallPrime, "need p > 2d - 1");
  if (!is_admissible_prime(f, p)) throw Error(ErrorCode::BadReduction, "p divides a denominator or the leading coefficient");

  const std::size_t corrupt_before = cache ? cache->corrupt_log().size() : 0;
  const TableProvider tables = cache ? cache->provider() : TableProvider{};
  auto table_at = [&](u64 q) { return tables ? tables(f, q) : compute_table(f, q); };

  SelfTestReport rep;
  rep.p = p;
  const SumTable t = table_at(p);
  const PolyModP fp = reduce_mod_p(f, p).poly;
  ValueDist dist;
  if (cache) {
    if (auto hit = cache->load_dist(f.hash(), p)) {
      dist = std::move(*hit);
    } else {
      dist = value_distribution(fp);
      cache->store(f.hash(), dist);
    }
  } else {
    dist = value_distribution(fp);
  }

  std::mt19937_64 rng(seed);
  std::set<u64> as;
  for (u64 a = 1; a < p && a <= 32; ++a) as.insert(a);
  as.insert(p - 1);
  for (int i = 0; i < 16; ++i) as.insert(1 + rng() % (p - 1));
  double worst = 0;
  for (u64 a : as) worst = std::max(worst, std::abs(t.values[a] - sum_single(fp, a)));
  rep.rows.push_back(row("single_vs_table", std::to_string(as.size()) + " values of a", worst, 0,
                         std::max(1e-8, 4 * t.error_bound), false));

  long double energy = 0, counts2 = 0;
  for (const auto& w : t.values) energy += std::norm(w) * static_cast<long double>(p);
  for (auto n : dist.counts) counts2 += static_cast<long double>(n) * n;
  rep.rows.push_back(row("parseval", "sum |S|^2 vs p sum N^2", static_cast<double>(energy),
                         static_cast<double>(counts2 * static_cast<long double>(p)), 1e-6));

  double conj_err = 0;
  for (u64 a = 1; a < p; ++a) conj_err = std::max(conj_err, std::abs(t.values[p - a] - std::conj(t.values[a])));
  rep.rows.push_back(row("conjugation", "W(-a) vs conj W(a)", conj_err, 0, std::max(1e-12, 2 * t.error_bound), false));

  const double m2_oracle = second_moment_oracle(fp);
  rep.rows.push_back(row("second_moment", "DFT vs curve point count", prime_moment(t, 2), m2_oracle, 1e-6));
  rep.rows.push_back(row("second_moment_counts", "value counts vs curve point count", second_moment_from_counts(dist), m2_oracle, 1e-9));
  rep.rows.push_back(row("fourth_moment", "DFT vs additive energy", prime_moment(t, 4), fourth_moment_oracle(dist), 1e-6));

  const WeilReport w = weil_check(t, d);
  CheckRow weil = row("weil", "max |W(a;p)| <= d - 1", w.max_abs, d - 1, 0, false);
  weil.error = std::max(0.0, w.max_abs - (d - 1));
  weil.tolerance = 1e-8;
  weil.pass = !w.violated && weil.error <= weil.tolerance;
  rep.rows.push_back(weil);

  // q = p r for the first admissible r != p, r > 2d - 1, at which the
  // sampled sums are not all zero. Small r can make f degenerate (X^3 + X is
  // linear on F_3) and X^3 vanishes identically at r = 2 mod 3; either would
  // make the comparison vacuous.
  u64 r = 2 * static_cast<u64>(d) - 1;
  double twist_err = 0, twist_max = 0;
  int tested = 0;
  for (int attempt = 0; attempt < 6 && twist_max < 1e-6; ++attempt) {
    do ++r;
    while (r == p || !is_prime(r) || !is_admissible_prime(f, r));
    const u64 q = p * r;
    std::map<u64, SumTable> pair{{p, t}, {r, table_at(r)}};
    twist_err = twist_max = 0;
    tested = 0;
    for (int i = 0; i < 8; ++i) {
      const u64 a = 1 + rng() % (q - 1);
      if (a % p == 0 || a % r == 0) continue;
      const cplx direct = direct_sum(f, a, q);
      const cplx fast = twisted_extend(pair, static_cast<i64>(a), q);
      twist_err = std::max(twist_err, std::abs(direct - fast) / std::max(1.0, std::abs(direct)));
      twist_max = std::max(twist_max, std::abs(direct));
      ++tested;
    }
  }
  CheckRow tw = row("twisted_vs_crt", "q = " + std::to_string(p) + "*" + std::to_string(r) + ", " + std::to_string(tested) + " values of a",
                    twist_err, 0, 1e-6, false);
  // Still a valid comparison (direct sums really are 0), just a weak one.
  if (twist_max < 1e-6) tw.detail += ", every sampled sum vanished";
  rep.rows.push_back(tw);

  if (cache) {
    const auto log = cache->corrupt_log();
    for (std::size_t i = corrupt_before; i < log.size(); ++i) {
      CheckRow c;
      c.check = "cache";
      c.detail = log[i] + "; evicted and recomputed";
      c.pass = true;
      rep.rows.push_back(c);
    }
    const auto again = cache->load_table(f.hash(), p);
    CheckRow c;
    c.check = "cache_roundtrip";
    c.detail = "reloaded table is bit-identical";
    c.pass = again && again->values.size() == t.values.size() &&
             std::equal(t.values.begin(), t.values.end(), again->values.begin(),
                        [](cplx x, cplx y) { return x.real() == y.real() && x.imag() == y.imag(); });
    rep.rows.push_back(c);
  }

  for (const auto& c : rep.rows) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace expsum
