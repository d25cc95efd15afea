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
#include <map>
#include <numbers>
#include <random>

#include "doctest.h"
#include "expsum/moments.hpp"

using namespace expsum;

namespace {

PolyModP P(u64 p, std::vector<u64> c) { return PolyModP(PrimeField(p), std::move(c)); }

const PolyExact kCubic{1, 1, 0, 1};
const PolyExact kQuartic{0, 0, 0, 0, 1};

// Direct |W(a;q)| for integral f.
double direct_abs(const PolyExact& f, u64 a, u64 q) {
  std::vector<long long> c;
  for (const auto& n : f.numerators()) c.push_back(n.get_si());
  long double re = 0, im = 0;
  for (u64 x = 0; x < q; ++x) {
    long long v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = ((v * static_cast<long long>(x) + c[i]) % static_cast<long long>(q) + static_cast<long long>(q)) % static_cast<long long>(q);
    const long double ang = 2 * std::numbers::pi_v<long double> * static_cast<long double>((static_cast<u64>(v) * a) % q) / q;
    re += std::cos(ang);
    im += std::sin(ang);
  }
  return static_cast<double>(std::sqrt(re * re + im * im) / std::sqrt(static_cast<long double>(q)));
}

}  // namespace

TEST_CASE("prime_moment examples") {
  for (u64 p : {101ULL, 1009ULL}) {
    const auto t = compute_table(PolyExact{0, 0, 1}, p);
    const double want = static_cast<double>(p - 1) / p;
    CHECK(std::abs(prime_moment(t, 2) - want) < 1e-9);
    CHECK(std::abs(prime_moment(t, 1) - want) < 1e-9);
  }
  const auto t = compute_table(kCubic, 9973);
  CHECK(std::abs(prime_moment(t, 4) - 2) <= 10 / std::sqrt(9973.0));
  CHECK_THROWS_AS(prime_moment(t, 3), Error);
}

TEST_CASE("second moment oracle") {
  for (u64 p : {101ULL, 109ULL, 1009ULL}) {
    CHECK(p % 4 == 1);
    CHECK(std::abs(second_moment_oracle(P(p, {0, 0, 0, 0, 1})) - 3) < 10 / std::sqrt(static_cast<double>(p)));
  }
  for (u64 p : {103ULL, 107ULL, 1019ULL}) {
    CHECK(p % 4 == 3);
    CHECK(std::abs(second_moment_oracle(P(p, {0, 0, 0, 0, 1})) - 1) < 10 / std::sqrt(static_cast<double>(p)));
  }
  const auto f = P(101, {1, 1, 0, 1});
  CHECK(std::abs(second_moment_oracle(f) - prime_moment(sum_table(f), 2)) < 1e-6);
  CHECK(std::abs(second_moment_from_counts(value_distribution(f)) - second_moment_oracle(f)) < 1e-12);
  CHECK_THROWS_WITH_AS(second_moment_oracle(P(3, {1, 1, 0, 1})), doctest::Contains("SmallPrime"), Error);
}

TEST_CASE("fourth moment oracle") {
  CHECK(fourth_moment_oracle(value_distribution(P(101, {0, 1}))) == doctest::Approx(0).epsilon(1e-12));
  CHECK(fourth_moment_count(value_distribution(P(101, {0, 1}))) == static_cast<unsigned __int128>(101 * 101 * 101));
  for (u64 p : {101ULL, 103ULL}) {
    CHECK(std::abs(fourth_moment_oracle(value_distribution(P(p, {0, 0, 1}))) - static_cast<double>(p - 1) / p) < 1e-12);
  }
  const auto f = P(101, {1, 1, 0, 1});
  CHECK(std::abs(fourth_moment_oracle(value_distribution(f)) - prime_moment(sum_table(f), 4)) < 1e-6);
  // large p takes the transform route
  const auto g = P(40009, {1, 1, 0, 1});
  CHECK(std::abs(fourth_moment_oracle(value_distribution(g)) - prime_moment(sum_table(g), 4)) < 1e-6);
}

TEST_CASE("DFT moments equal the counting oracles on random instances") {
  std::mt19937_64 rng(606);
  const auto primes = primes_in(53, 1999);
  for (int t = 0; t < 20; ++t) {
    const u64 p = primes[rng() % primes.size()];
    const int d = 3 + static_cast<int>(rng() % 4);
    std::vector<u64> c(static_cast<std::size_t>(d) + 1);
    for (auto& x : c) x = rng() % p;
    c.back() = 1 + rng() % (p - 1);
    const auto f = P(p, c);
    const auto tab = sum_table(f);
    const double m2 = prime_moment(tab, 2), o2 = second_moment_oracle(f);
    const double m4 = prime_moment(tab, 4), o4 = fourth_moment_oracle(value_distribution(f));
    CHECK(std::abs(m2 - o2) <= 1e-6 * std::max(1.0, std::abs(o2)));
    CHECK(std::abs(m4 - o4) <= 1e-6 * std::max(1.0, std::abs(o4)));
    // Cauchy-Schwarz
    CHECK(m2 * m2 <= m4 * (1 - 1.0 / p) + 1e-9);
  }
}

TEST_CASE("second moment identity over F_{p^2}") {
  // #{f(x) = f(y)} = q + #{F = 0} - #{f' = 0} over F_q, q = p^2, and the
  // character-sum side (1/q) sum_{a != 0} |W_q(a)|^2 matches it.
  for (u64 p : {7ULL, 11ULL}) {
    const PrimeField F(p);
    const auto E = ExtField::create_random(F, 2, 3);
    const auto f = P(p, {1, 1, 0, 1});
    const u64 q = p * p;
    std::vector<ExtFieldElem> elems;
    for (u64 i = 0; i < q; ++i) elems.emplace_back(E, P(p, {i % p, i / p}));
    auto index = [&](const ExtFieldElem& e) {
      const auto c = e.coeffs();
      return c[0] + p * c[1];
    };
    std::vector<u64> values(q), counts(q, 0);
    for (u64 i = 0; i < q; ++i) ++counts[values[i] = index(evaluate(f, elems[i]))];
    u64 same = 0;
    for (u64 c : counts) same += c * c;

    // F(x, y) = sum_k c_k sum_{i+j=k-1} x^i y^j, evaluated pointwise
    u64 curve = 0, diag = 0;
    const auto df = f.derivative();
    for (u64 i = 0; i < q; ++i) {
      if (evaluate(df, elems[i]).is_zero()) ++diag;
      for (u64 j = 0; j < q; ++j) {
        ExtFieldElem acc = ExtFieldElem::zero(E);
        for (int k = 1; k <= f.degree(); ++k) {
          ExtFieldElem inner = ExtFieldElem::zero(E);
          for (int a = 0; a < k; ++a) inner = inner + elems[i].pow(static_cast<u64>(a)) * elems[j].pow(static_cast<u64>(k - 1 - a));
          acc = acc + inner.scaled(f.coeff(static_cast<std::size_t>(k)));
        }
        if (acc.is_zero()) ++curve;
      }
    }
    CHECK(same == q + curve - diag);

    // psi(x) = e(Tr(x) / p), Tr(x) = x + x^p
    auto trace = [&](const ExtFieldElem& e) { return (e + e.frobenius()).base_value(); };
    long double lhs = 0;
    for (u64 ai = 1; ai < q; ++ai) {
      std::complex<long double> s = 0;
      for (u64 x = 0; x < q; ++x) {
        const u64 t = trace(elems[ai] * elems[values[x]]);
        s += std::polar(1.0L, 2 * std::numbers::pi_v<long double> * t / p);
      }
      lhs += std::norm(s) / q;
    }
    lhs /= q;
    const long double rhs = (static_cast<long double>(curve) - diag) / q;
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("moments are unchanged by f -> -f + c") {
  for (u64 p : {101ULL, 1009ULL}) {
    const auto a = compute_table(kCubic, p);
    const auto b = compute_table(-kCubic + PolyExact::constant(17), p);
    for (int e : {1, 2, 4, 6, 8}) CHECK(std::abs(prime_moment(a, e) - prime_moment(b, e)) < 1e-9);
  }
}

TEST_CASE("moment report") {
  MomentOptions opts;
  opts.group = GroupSpec{GroupFamily::SpecialUnitary, 2};
  const auto r = moment_report(kCubic, 1009, opts);
  CHECK(r.error.empty());
  CHECK(std::abs(r.moments.at(2) - r.oracle.at(2)) < 1e-6);
  CHECK(std::abs(r.moments.at(4) - r.oracle.at(4)) < 1e-6);
  CHECK(r.reference.at(4).value == 2);
  CHECK(r.scaled_discrepancy.at(4) == doctest::Approx(std::sqrt(1009.0) * std::abs(r.moments.at(4) - 2)));
  CHECK(moment_report(kCubic, 5).error == "SmallPrime");
  CHECK(moment_report(kCubic, 9).error == "NotPrime");
  const auto rep = classify(kCubic, std::vector<u64>{101});
  const auto g = monodromy_group(rep);
  CHECK(g.family == GroupFamily::UnitarySymplectic);
  CHECK(g.n == 2);
}

TEST_CASE("dichotomy scan") {
  const auto primes = primes_in(401, 3000);
  const auto c = dichotomy_scan(kCubic, primes);
  CHECK(c.verdict == DichotomyVerdict::Case1);
  CHECK(c.high_fraction == 0);
  const auto q = dichotomy_scan(kQuartic, primes);
  CHECK(q.verdict == DichotomyVerdict::Case2);
  for (const auto& row : q.rows) CHECK(row.high == (row.p % 4 == 1));
  CHECK(q.high_fraction > 0.4);
  const auto lin = dichotomy_scan(PolyExact{0, 1}, primes);
  CHECK(lin.verdict == DichotomyVerdict::Inconclusive);
  CHECK_FALSE(lin.warnings.empty());
}

TEST_CASE("kappa estimates") {
  const auto primes = primes_in(11, 1000);
  auto c = estimate_kappa(kCubic, primes);
  CHECK(c.kappa == 2);
  CHECK(c.m == 1);
  auto q = estimate_kappa(kQuartic, primes);
  CHECK(q.kappa == 3);
  CHECK(q.m == 3);
  // X^2: F = X + Y is a single rational line
  auto s = estimate_kappa(PolyExact{0, 0, 1}, primes);
  CHECK(s.kappa == 2);
  CHECK(s.m == 1);
  CHECK_THROWS_WITH_AS(estimate_kappa(kCubic, primes_in(11, 50)), doctest::Contains("InsufficientSamples"), Error);
}

TEST_CASE("Shao partial sums") {
  const u64 xs[] = {1000, 10000};
  for (const auto& pt : shao_partial_sums(kCubic, xs, 2)) {
    CHECK(std::abs(pt.drift) <= 2);
    CHECK_FALSE(pt.low_confidence);
  }
  const PolyExact sq{1, 0, 2, 0, 1};
  for (const auto& pt : shao_partial_sums(sq, xs, 3)) CHECK(pt.sum - 2 * std::log(std::log(static_cast<double>(pt.x))) >= -2);
  const auto small = shao_partial_sum(kCubic, 100);
  CHECK(small.low_confidence);
  CHECK(small.primes < 30);
}

TEST_CASE("cross moments") {
  const PolyExact one[] = {kCubic};
  CHECK(std::abs(cross_moment(one, 1009, 1) - prime_moment(compute_table(kCubic, 1009), 2)) < 1e-12);
  const PolyExact pair[] = {kCubic, PolyExact{1, 2, 0, 1}};
  const double m = cross_moment(pair, 10007, 1);
  CHECK(std::abs(m - 1) <= 10 / std::sqrt(10007.0));
  CHECK_THROWS_WITH_AS(cross_moment(pair, 5, 1), doctest::Contains("SmallPrime"), Error);
}

TEST_CASE("envelope bound") {
  TwistedEnvelope env;
  env.M = 2;
  for (u64 p : primes_in(2, 1000)) env.g[p] = 0;
  const double lx = std::log(1000.0);
  CHECK(envelope_bound(env, 1000) == doctest::Approx(1000 / lx * std::pow(std::log(lx), 2)));
  TwistedEnvelope partial;
  partial.g[2] = 0;
  CHECK_THROWS_WITH_AS(envelope_bound(partial, 100), doctest::Contains("MissingTable"), Error);
}

TEST_CASE("sweeps") {
  SweepOptions opts;
  opts.grid = {60, 150, 300};
  const PolyExact lin[] = {PolyExact{0, 1}};
  const auto z = sweep_q(lin, 1, opts);
  for (const auto& row : z.rows)
    for (const auto& [j, s] : row.sums) CHECK(s < 1e-9);

  // small-x oracle: direct summation over every squarefree q
  const PolyExact cub[] = {kCubic};
  const auto r = sweep_q(cub, 1, opts);
  REQUIRE(r.rows.size() == 3);
  std::map<int, double> want{{1, 0}, {2, 0}, {4, 0}};
  std::size_t next = 0;
  for (u64 q = 2; q <= 300; ++q) {
    bool sqf = true;
    for (u64 d = 2; d * d <= q; ++d) sqf = sqf && q % (d * d) != 0;
    if (sqf) {
      const double w = direct_abs(kCubic, 1, q);
      want[1] += w;
      want[2] += w * w;
      want[4] += w * w * w * w;
    }
    if (next < 3 && q == r.rows[next].x) {
      for (int j : {1, 2, 4}) CHECK(std::abs(r.rows[next].sums.at(j) - want[j]) < 1e-8 * std::max(1.0, want[j]));
      ++next;
    }
  }
  for (std::size_t i = 1; i < r.rows.size(); ++i)
    for (int j : {1, 2, 4}) CHECK(r.rows[i].sums.at(j) >= r.rows[i - 1].sums.at(j));
  CHECK(r.A == 4);
  for (const auto& row : r.rows) CHECK(row.envelope >= row.sums.at(1));

  // bit-identical repeat, and a two-polynomial product has the same shape
  const auto again = sweep_q(cub, 1, opts);
  for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(again.rows[i].sums == r.rows[i].sums);
  const PolyExact two[] = {kCubic, PolyExact{1, 2, 0, 1}};
  const auto m2 = sweep_q(two, 1, opts);
  CHECK(m2.rows.size() == 3);
  CHECK(m2.A == 16);
  CHECK(m2.envelope.M == 4);

  SweepOptions big;
  big.grid = {1000, 40000};
  CHECK_THROWS_WITH_AS(sweep_q(cub, 1, big), doctest::Contains("CapExceeded"), Error);
  CHECK_THROWS_AS(sweep_q(cub, 0, opts), Error);
}
