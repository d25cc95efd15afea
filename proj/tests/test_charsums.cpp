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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "expsum/charsums.hpp"
#include "expsum/moments.hpp"

using namespace expsum;

namespace {

using ld = long double;
using lcplx = std::complex<ld>;

PolyModP P(u64 p, std::vector<u64> c) { return PolyModP(PrimeField(p), std::move(c)); }

lcplx le(ld t) {
  const ld ang = 2 * std::numbers::pi_v<ld> * t;
  return {std::cos(ang), std::sin(ang)};
}

// Direct (1/sqrt q) sum_{x mod q} e(a f(x) / q) for integral f, in long double.
lcplx direct_sum(const PolyExact& f, i64 a, u64 q) {
  std::vector<u64> c;
  for (const auto& n : f.numerators()) {
    Integer r = n % static_cast<unsigned long>(q);
    if (r < 0) r += static_cast<unsigned long>(q);
    c.push_back(r.get_ui());
  }
  const u64 aq = static_cast<u64>(((a % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q));
  lcplx acc = 0;
  for (u64 x = 0; x < q; ++x) {
    u64 v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = static_cast<u64>((static_cast<unsigned __int128>(v) * x + c[i]) % q);
    acc += le(static_cast<ld>(static_cast<u64>(static_cast<unsigned __int128>(v) * aq % q)) / static_cast<ld>(q));
  }
  return acc / std::sqrt(static_cast<ld>(q));
}

std::vector<cplx> naive_dft(const std::vector<cplx>& in, int sign) {
  const std::size_t n = in.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    lcplx acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const lcplx w = le(static_cast<ld>(sign * static_cast<long long>((j * k) % n)) / static_cast<ld>(n));
      acc += lcplx(in[j].real(), in[j].imag()) * w;
    }
    out[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

bool squarefree(u64 q) {
  for (u64 r = 2; r * r <= q; ++r)
    if (q % (r * r) == 0) return false;
  return true;
}

const PolyExact kCubic{1, 1, 0, 1};

}  // namespace

TEST_CASE("dft matches the naive transform") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 97u, 100u, 101u, 1024u, 2003u}) {
    std::vector<cplx> x(n);
    for (auto& z : x) z = {nd(rng), nd(rng)};
    for (int sign : {+1, -1}) {
      auto fast = dft(x, sign);
      auto slow = naive_dft(x, sign);
      double err = 0;
      for (std::size_t k = 0; k < n; ++k) err = std::max(err, std::abs(fast[k] - slow[k]));
      CHECK(err < 1e-10 * std::sqrt(static_cast<double>(n)) * 10);
    }
  }
}

TEST_CASE("value distribution examples") {
  auto a = value_distribution(P(5, {0, 1}));
  CHECK(a.counts == std::vector<std::uint32_t>{1, 1, 1, 1, 1});
  auto b = value_distribution(P(5, {0, 0, 1}));
  CHECK(b.counts == std::vector<std::uint32_t>{1, 2, 0, 0, 2});
  auto c = value_distribution(P(7, {0, 0, 0, 1}));
  CHECK(c.counts == std::vector<std::uint32_t>{1, 3, 0, 0, 0, 0, 3});
  // forward differences agree with evaluation for every degree
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    const u64 p = std::vector<u64>{2, 3, 5, 7, 101, 1009}[t % 6];
    std::vector<u64> co(1 + rng() % 8);
    for (auto& x : co) x = rng() % p;
    PolyModP f = P(p, co);
    if (f.degree() < 1) continue;
    std::vector<std::uint32_t> want(p, 0);
    for (u64 x = 0; x < p; ++x) ++want[f.eval(x)];
    CHECK(value_distribution(f).counts == want);
  }
}

TEST_CASE("sum_single examples") {
  const u64 p = 101;
  CHECK(std::abs(sum_single(P(p, {1, 1, 0, 1}), 0) - std::sqrt(101.0)) < 1e-12);
  for (u64 a = 1; a < p; ++a) CHECK(std::abs(std::abs(sum_single(P(p, {0, 0, 1}), a)) - 1) < 1e-12);
  // value-distribution-weighted summation as the second order
  const auto f7 = P(7, {1, 1, 0, 1});
  const auto dist = value_distribution(f7);
  lcplx w = 0;
  for (u64 v = 0; v < 7; ++v) w += static_cast<ld>(dist.counts[v]) * le(static_cast<ld>(v) / 7);
  w /= std::sqrt(7.0L);
  const cplx s = sum_single(f7, 1);
  CHECK(std::abs(lcplx(s.real(), s.imag()) - w) < 1e-10);
}

TEST_CASE("sum_table agrees with direct summation") {
  const auto t13 = sum_table(P(13, {0, 0, 1}));
  CHECK(std::abs(t13.values[0] - std::sqrt(13.0)) < 1e-12);
  for (u64 a = 1; a < 13; ++a) CHECK(std::abs(std::abs(t13.values[a]) - 1) < 1e-9);

  const auto f = P(101, {1, 1, 0, 1});
  const auto t = sum_table(f);
  for (u64 a = 0; a < 101; ++a) CHECK(std::abs(t.values[a] - sum_single(f, a)) < 1e-8);

  std::mt19937_64 rng(9);
  for (u64 p : {1009ULL, 4099ULL, 65537ULL, 262147ULL}) {
    std::vector<u64> co(5);
    for (auto& x : co) x = rng() % p;
    co.back() = 1;
    const auto g = P(p, co);
    const auto tab = sum_table(g);
    const PolyExact ge(std::vector<Rational>(co.begin(), co.end()));
    double worst = 0;
    for (int i = 0; i < 6; ++i) {
      const u64 a = 1 + rng() % (p - 1);
      const lcplx want = direct_sum(ge, static_cast<i64>(a), p);
      worst = std::max(worst, static_cast<double>(std::abs(lcplx(tab.values[a].real(), tab.values[a].imag()) - want)));
    }
    CHECK(worst <= tab.error_bound);
    CHECK(worst < 1e-8 * std::sqrt(static_cast<double>(p)));
  }
  TableOptions small;
  small.max_prime = 100;
  CHECK_THROWS_WITH_AS(sum_table(f, {}, small), doctest::Contains("PrimeTooLarge"), Error);
}

TEST_CASE("Parseval and conjugation") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const u64 p = primes_in(50, 3000)[rng() % 300];
    std::vector<u64> co(3 + rng() % 4);
    for (auto& x : co) x = rng() % p;
    co.back() = 1 + rng() % (p - 1);
    const auto f = P(p, co);
    const auto dist = value_distribution(f);
    const auto tab = sum_table(dist, f.degree());
    long double lhs = 0;
    for (const auto& w : tab.values) lhs += std::norm(w) * static_cast<ld>(p);  // |S(a)|^2
    unsigned long long sq = 0;
    for (auto c : dist.counts) sq += static_cast<unsigned long long>(c) * c;
    const long double rhs = static_cast<ld>(p) * static_cast<ld>(sq);
    CHECK(std::abs(lhs - rhs) / rhs < 1e-6);
    for (u64 a = 1; a < p; ++a) CHECK(std::abs(tab.values[p - a] - std::conj(tab.values[a])) <= 2 * tab.error_bound);
  }
}

TEST_CASE("normalized tables") {
  // X^3 + X + 1: shift -1 and symmetric centre delta = 1 give the same phase
  for (u64 p : {11ULL, 101ULL, 1009ULL}) {
    const auto f = P(p, {1, 1, 0, 1});
    const auto plain = sum_table(f);
    const auto cd = critical_data(f);
    const auto n1 = normalized_table(plain, cd);
    const auto n2 = normalized_table(plain, cd, odd_form(f));
    CHECK(n1.kind == TableKind::Normalized);
    CHECK(n1.values[0] == cplx{});
    for (u64 a = 1; a < p; ++a) {
      const lcplx ph = le(-static_cast<ld>(a) / static_cast<ld>(p));
      const cplx want = plain.values[a] * cplx(static_cast<double>(ph.real()), static_cast<double>(ph.imag()));
      CHECK(std::abs(n1.values[a] - want) < 1e-12);
      CHECK(std::abs(n2.values[a] - want) < 1e-12);
      // odd phase: the centred sum is real
      CHECK(std::abs(n2.values[a].imag()) < 1e-9);
    }
  }
  CHECK_THROWS_WITH_AS(normalized_table(P(5, {0, 1, 0, 0, 0, 0, 1})), doctest::Contains("BadCharacteristic"), Error);

  // |W~| = |W| on random Morse polynomials; even d brings the Legendre twist
  std::mt19937_64 rng(23);
  int checked = 0;
  while (checked < 1000) {
    const u64 p = primes_in(101, 1000)[rng() % 100];
    const int d = 3 + static_cast<int>(rng() % 4);
    std::vector<u64> co(static_cast<std::size_t>(d) + 1);
    for (auto& x : co) x = rng() % p;
    co.back() = 1;
    const auto f = P(p, co);
    if (static_cast<u64>(d - 1) % p == 0 || !is_morse(f)) continue;
    const auto plain = sum_table(f);
    const auto norm = normalized_table(plain, critical_data(f));
    for (int i = 0; i < 50; ++i, ++checked) {
      const u64 a = 1 + rng() % (p - 1);
      CHECK(std::abs(std::abs(norm.values[a]) - std::abs(plain.values[a])) < 1e-12);
    }
  }
}

TEST_CASE("twisted_extend examples and CRT oracle") {
  std::map<u64, SumTable> tables;
  for (u64 p : primes_in(2, 10000)) tables.emplace(p, compute_table(kCubic, p));

  CHECK(twisted_extend(tables, 5, 101) == tables.at(101).values[5]);
  const cplx w15 = twisted_extend(tables, 1, 15);
  const lcplx d15 = direct_sum(kCubic, 1, 15);
  CHECK(std::abs(w15 - cplx(static_cast<double>(d15.real()), static_cast<double>(d15.imag()))) < 1e-8);
  const cplx manual = tables.at(3).values[inv_mod(5, 3)] * tables.at(5).values[inv_mod(3, 5)];
  CHECK(std::abs(w15 - manual) < 1e-14);
  CHECK(twisted_extend(tables, 1, 12) == cplx{});
  CHECK(twisted_extend(tables, 3, 15) == cplx{});
  CHECK_THROWS_WITH_AS(twisted_extend(tables, 1, 12, true), doctest::Contains("NonSquarefree"), Error);
  std::map<u64, SumTable> partial{{3, tables.at(3)}};
  CHECK_THROWS_WITH_AS(twisted_extend(partial, 1, 15), doctest::Contains("MissingTable"), Error);

  std::mt19937_64 rng(2024);
  int done = 0;
  double worst = 0;
  while (done < 200) {
    const u64 q = 2 + rng() % 9999;
    if (!squarefree(q)) continue;
    const i64 a = static_cast<i64>(rng() % q);
    if (gcd_u64(static_cast<u64>(a), q) != 1) continue;
    const cplx w = twisted_extend(tables, a, q);
    const lcplx want = direct_sum(kCubic, a, q);
    const double scale = std::max<double>(1.0, static_cast<double>(std::abs(want)));
    worst = std::max(worst, std::abs(w - cplx(static_cast<double>(want.real()), static_cast<double>(want.imag()))) / scale);
    ++done;
  }
  CHECK(worst < 1e-6);

  // peeling order does not matter
  for (u64 q : {30ULL, 2310ULL, 1001ULL}) {
    std::vector<u64> ps;
    for (u64 r = 2; r <= q; ++r)
      if (q % r == 0 && is_prime(r)) ps.push_back(r);
    auto lookup = [&](u64 p) { return &tables.at(p); };
    const cplx fwd = twisted_extend_factored(lookup, 7, q, ps);
    std::reverse(ps.begin(), ps.end());
    CHECK(std::abs(twisted_extend_factored(lookup, 7, q, ps) - fwd) < 1e-12);
  }
}

TEST_CASE("measure_transform") {
  const u64 p = 31;
  std::map<u64, std::vector<double>> v;
  v[p] = std::vector<double>(p, 1.0 / p);
  v[37] = std::vector<double>(37, 0.0);
  v[37][0] = 1;
  const auto mt = measure_transform(v);
  for (u64 a = 1; a < p; ++a) CHECK(std::abs(mt.tables.at(p).values[a]) < 1e-12);
  CHECK(mt.envelope.g.at(p) < 1e-7);
  for (u64 a = 0; a < 37; ++a) CHECK(std::abs(mt.tables.at(37).values[a] - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(mt.envelope.g.at(37) - std::sqrt(1 - 1.0 / 37)) < 1e-12);
  CHECK(mt.envelope.G.at(37) == 1);

  // image measure N/p: V = sqrt(p) W
  const auto f = P(101, {1, 1, 0, 1});
  const auto dist = value_distribution(f);
  std::vector<double> img(101);
  for (u64 i = 0; i < 101; ++i) img[i] = dist.counts[i] / 101.0;
  const auto mi = measure_transform({{101, img}});
  const auto tab = sum_table(f);
  for (u64 a = 0; a < 101; ++a) CHECK(std::abs(mi.tables.at(101).values[a] * std::sqrt(101.0) - tab.values[a]) < 1e-10);
  // g(p) is the L2 mean of V over a != 0
  double l2 = 0;
  for (u64 a = 1; a < 101; ++a) l2 += std::norm(mi.tables.at(101).values[a]);
  CHECK(std::abs(std::sqrt(l2 / 101) - mi.envelope.g.at(101)) < 1e-10);

  CHECK_THROWS_WITH_AS(measure_transform({{5, {0.5, 0.5, 0.5, -0.5, 0}}}), doctest::Contains("NotAMeasure"), Error);
  CHECK_THROWS_WITH_AS(measure_transform({{5, {0.5, 0.5, 0.5, 0, 0}}}), doctest::Contains("NotAMeasure"), Error);
}

TEST_CASE("weil_check examples") {
  for (u64 p : {101ULL, 1009ULL}) {
    const auto r = weil_check(sum_table(P(p, {0, 0, 1})), 2);
    CHECK(std::abs(r.max_abs - 1) < 1e-9);
    CHECK_FALSE(r.violated);
  }
  const auto c = weil_check(sum_table(P(9973, {1, 1, 0, 1})), 3);
  CHECK(c.max_abs <= 2 + 1e-8);
  CHECK_FALSE(c.violated);
  const auto q = weil_check(sum_table(P(101, {0, 1, 0, 0, 0, 1})), 5);
  CHECK(q.max_abs <= 4 + 1e-8);
  // a doctored table is flagged
  auto bad = sum_table(P(101, {1, 1, 0, 1}));
  bad.values[7] = 2.5;
  CHECK(weil_check(bad, 3).violated);
}

TEST_CASE("binary table formats") {
  const auto f = P(101, {1, 1, 0, 1});
  auto t = sum_table(f, kCubic.hash());
  std::stringstream ss;
  write_table(ss, t);
  const std::string bytes = ss.str();
  CHECK(bytes.size() == 4 + 2 + 8 + 2 + 32 + 16 * 101);
  CHECK(bytes.substr(0, 4) == "EXPS");
  CHECK(static_cast<unsigned char>(bytes[4]) == 1);
  CHECK(static_cast<unsigned char>(bytes[6]) == 101);
  CHECK(static_cast<unsigned char>(bytes[14]) == 3);
  std::stringstream in(bytes);
  const auto back = read_table(in);
  CHECK(back.p == 101);
  CHECK(back.degree == 3);
  CHECK(back.poly_id == kCubic.hash());
  for (u64 a = 0; a < 101; ++a) CHECK(back.values[a] == t.values[a]);

  std::stringstream trunc(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_WITH_AS(read_table(trunc), doctest::Contains("CacheCorrupt"), Error);
  std::string wrong = bytes;
  wrong[0] = 'X';
  std::stringstream ws(wrong);
  CHECK_THROWS_WITH_AS(read_table(ws), doctest::Contains("CacheCorrupt"), Error);

  const auto dist = value_distribution(f);
  std::stringstream ds;
  write_value_dist(ds, dist);
  CHECK(ds.str().size() == 4 + 8 + 4 * 101);
  std::stringstream din(ds.str());
  CHECK(read_value_dist(din).counts == dist.counts);
}
