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

// Acceptance run: one PASS/FAIL line per criterion with the measured
// numbers. Each check compares the library against an independent
// computation written here where one exists.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "expsum/moments.hpp"
#include "expsum/rmt.hpp"

using namespace expsum;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail, double seconds) {
  std::printf("criterion %2d %-28s %s  %s  (%.1fs)\n", id, name, pass ? "PASS" : "FAIL", detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

template <class F>
void criterion(int id, const char* name, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(" threw: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, name, pass, detail, s);
}

// Values of an integer polynomial mod m, by Horner in 128-bit arithmetic.
std::vector<u64> values_mod(const std::vector<long long>& c, u64 m) {
  std::vector<u64> out(m);
  for (u64 x = 0; x < m; ++x) {
    unsigned __int128 v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      const long long ci = ((c[i] % static_cast<long long>(m)) + static_cast<long long>(m)) % static_cast<long long>(m);
      v = (v * x + static_cast<u64>(ci)) % m;
    }
    out[x] = static_cast<u64>(v);
  }
  return out;
}

// (1/sqrt q) sum_x e(a f(x) / q) straight from the definition.
cplx direct_sum(const std::vector<long long>& c, u64 a, u64 q) {
  long double re = 0, im = 0;
  for (u64 v : values_mod(c, q)) {
    const auto t = static_cast<long double>((static_cast<unsigned __int128>(v) * a) % q) / q;
    re += std::cos(2 * std::numbers::pi_v<long double> * t);
    im += std::sin(2 * std::numbers::pi_v<long double> * t);
  }
  const long double s = std::sqrt(static_cast<long double>(q));
  return {static_cast<double>(re / s), static_cast<double>(im / s)};
}

std::vector<long long> ints(const PolyExact& f) {
  std::vector<long long> c;
  for (const auto& n : f.numerators()) c.push_back(n.get_si());
  return c;
}

bool squarefree(u64 q) {
  for (u64 p = 2; p * p <= q; ++p)
    if (q % (p * p) == 0) return false;
  return true;
}

const PolyExact kCubic{1, 1, 0, 1};
const PolyExact kX4{0, 0, 0, 0, 1};

}  // namespace

int main() {
  std::printf("acceptance: tolerances as stated per line; FAIL lines are reported, never relaxed\n");

  criterion(1, "weil-bound", [](std::string& d) {
    double worst = 0, spot = 0;
    u64 argp = 0;
    const auto primes = primes_in(5, 2000);
    for (u64 p : primes) {
      const SumTable t = compute_table(kCubic, p);
      for (u64 a = 1; a < p; ++a)
        if (std::abs(t.values[a]) > worst) {
          worst = std::abs(t.values[a]);
          argp = p;
        }
      // spot-check the transform against the definition at a few a
      if (p % 10 == 3)
        for (u64 a : {u64{1}, p / 2, p - 1}) spot = std::max(spot, std::abs(t.values[a] - direct_sum(ints(kCubic), a, p)));
    }
    d = "max|W| = " + fmt("%.10f", worst) + " at p = " + std::to_string(argp) + " over " + std::to_string(primes.size()) +
        " primes, bound 2 + 1e-8; table vs direct " + fmt("%.1e", spot);
    return worst <= 2 + 1e-8 && spot < 1e-9;
  });

  criterion(2, "twisted-multiplicativity", [](std::string& d) {
    std::mt19937_64 rng(20240601);
    const auto c = ints(kCubic);
    std::map<u64, SumTable> tables;
    for (u64 p : primes_in(2, 10000)) tables.emplace(p, compute_table(kCubic, p));
    double worst = 0;
    int n = 0;
    while (n < 200) {
      const u64 q = 2 + rng() % 9999;
      if (!squarefree(q)) continue;
      const u64 a = 1 + rng() % q;
      if (std::gcd(a, q) != 1) continue;
      const cplx fast = twisted_extend(tables, static_cast<i64>(a), q);
      const cplx slow = direct_sum(c, a, q);
      worst = std::max(worst, std::abs(fast - slow) / std::max(1.0, std::abs(slow)));
      ++n;
    }
    d = "max |fast - direct| / max(1, |direct|) = " + fmt("%.2e", worst) + " over 200 (q, a), tol 1e-6";
    return worst <= 1e-6;
  });

  criterion(3, "second-moment-law", [](std::string& d) {
    double worst = 0;
    u64 at = 0;
    for (u64 p : primes_in(100, 10000)) {
      const double m1 = prime_moment(compute_table(kCubic, p), 2);
      const double s = std::sqrt(static_cast<double>(p)) * std::abs(m1 - 1);
      if (s > worst) {
        worst = s;
        at = p;
      }
    }
    d = "max sqrt(p)|M1 - 1| = " + fmt("%.4f", worst) + " at p = " + std::to_string(at) + ", tol 10";
    return worst <= 10;
  });

  criterion(4, "component-counting-x4", [](std::string& d) {
    double w1 = 0, w3 = 0;
    int n1 = 0, n3 = 0;
    for (u64 p : primes_in(11, 10000)) {
      const double m1 = prime_moment(compute_table(kX4, p), 2);
      const double target = p % 4 == 1 ? 3 : 1;
      const double s = std::sqrt(static_cast<double>(p)) * std::abs(m1 - target);
      // exact values from the value counts: 3 - 3/p and 1 - 1/p
      const double exact = p % 4 == 1 ? 3 - 3.0 / p : 1 - 1.0 / p;
      if (std::abs(m1 - exact) > 1e-9) throw std::runtime_error("M1 off the closed form at p = " + std::to_string(p));
      (p % 4 == 1 ? w1 : w3) = std::max(p % 4 == 1 ? w1 : w3, s);
      ++(p % 4 == 1 ? n1 : n3);
    }
    d = "max sqrt(p)|M1 - 3| = " + fmt("%.4f", w1) + " (" + std::to_string(n1) + " primes 1 mod 4), max sqrt(p)|M1 - 1| = " +
        fmt("%.4f", w3) + " (" + std::to_string(n3) + " primes 3 mod 4), tol 10";
    return w1 <= 10 && w3 <= 10;
  });

  criterion(5, "fourth-moment-dichotomy", [](std::string& d) {
    double worst = 0;
    u64 at = 0;
    int good = 0;
    for (u64 p : primes_in(2, 10000)) {
      if (!is_good_prime(kCubic, p)) continue;
      ++good;
      const double s = std::sqrt(static_cast<double>(p)) * std::abs(prime_moment(compute_table(kCubic, p), 4) - 2);
      if (s > worst) {
        worst = s;
        at = p;
      }
    }
    const auto primes = primes_in(2, 10000);
    const DichotomyReport r = dichotomy_scan(kX4, primes);
    d = "cubic: max sqrt(p)|M2 - 2| = " + fmt("%.4f", worst) + " at p = " + std::to_string(at) + " over " +
        std::to_string(good) + " good primes (tol 10); X^4: high fraction " + fmt("%.4f", r.high_fraction) +
        " of " + std::to_string(r.rows.size()) + " primes (need >= 0.4), verdict " + to_string(r.verdict);
    return worst <= 10 && r.high_fraction >= 0.4;
  });

  criterion(6, "oracle-equivalence", [](std::string& d) {
    std::mt19937_64 rng(6);
    const auto primes = primes_in(53, 1999);
    double worst = 0;
    int done = 0;
    while (done < 20) {
      const int deg = 3 + static_cast<int>(rng() % 4);
      const u64 p = primes[rng() % primes.size()];
      std::vector<long> c(deg + 1);
      for (auto& x : c) x = static_cast<long>(rng() % 41) - 20;
      if (c.back() % static_cast<long>(p) == 0) continue;
      std::vector<Rational> rc(c.begin(), c.end());
      const PolyExact f(rc);
      const SumTable t = compute_table(f, p);
      const PolyModP fp = reduce_mod_p(f, p).poly;
      const ValueDist dist = value_distribution(fp);
      // brute force from locally computed value counts
      std::vector<long long> N(p, 0);
      for (u64 v : values_mod(std::vector<long long>(c.begin(), c.end()), p)) ++N[v];
      long double s2 = 0;
      for (auto n : N) s2 += static_cast<long double>(n) * n;
      unsigned __int128 e4 = 0;
      for (u64 s = 0; s < p; ++s) {
        long long r = 0;
        for (u64 v = 0; v < p; ++v) r += N[v] * N[(s + p - v) % p];
        e4 += static_cast<unsigned __int128>(r) * r;
      }
      const double brute2 = static_cast<double>((s2 - p) / p);
      const double brute4 = static_cast<double>(static_cast<long double>(e4) / (static_cast<long double>(p) * p) - p);
      const double m2 = prime_moment(t, 2), m4 = prime_moment(t, 4);
      auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1e-12, std::abs(b)); };
      worst = std::max({worst, rel(m2, second_moment_oracle(fp)), rel(m4, fourth_moment_oracle(dist)), rel(m2, brute2),
                        rel(m4, brute4)});
      ++done;
    }
    d = "max relative gap DFT vs counting oracles (library and brute force) = " + fmt("%.2e", worst) + " over 20 (f, p), tol 1e-6";
    return worst <= 1e-6;
  });

  criterion(7, "prime-averaged-second-moment", [](std::string& d) {
    const u64 xs[] = {1000, 10000, 100000};
    const PolyExact square{1, 0, 2, 0, 1};  // (X^2 + 1)^2
    const auto kappa = estimate_kappa(kCubic, primes_in(6, 2000));
    const auto a = shao_partial_sums(kCubic, xs, 2);
    const auto b = shao_partial_sums(square, xs, 3);  // drift = S - 2 log log x
    double wa = 0, wb = 1e300;
    for (const auto& pt : a) wa = std::max(wa, std::abs(pt.drift));
    for (const auto& pt : b) wb = std::min(wb, pt.drift);
    d = "cubic: estimated kappa " + std::to_string(kappa.kappa) + ", max |S - loglog x| = " + fmt("%.4f", wa) +
        " (tol 2); (X^2+1)^2: min S - 2 loglog x = " + fmt("%.4f", wb) + " (need >= -2)";
    return kappa.kappa == 2 && wa <= 2 && wb >= -2;
  });

  criterion(8, "group-trace-moments", [](std::string& d) {
    bool ok = true;
    double worst_z = 0;
    const GroupSpec su{GroupFamily::SpecialUnitary, 4}, usp{GroupFamily::UnitarySymplectic, 4};
    const double fact[] = {1, 1, 2, 6, 24}, dfact[] = {1, 1, 3};
    for (int k = 0; k <= 4; ++k) {
      const auto r = reference_moment(su, k);
      ok = ok && r.exact && r.value == fact[k];
      const auto mc = mc_trace_moment(su, k, 100000, 1000 + k);
      const double z = mc.standard_error > 0 ? std::abs(mc.mean - fact[k]) / mc.standard_error : (mc.mean == fact[k] ? 0 : 1e9);
      worst_z = std::max(worst_z, z);
    }
    for (int k = 0; k <= 2; ++k) {
      const auto r = reference_moment(usp, k);
      ok = ok && r.exact && r.value == dfact[k];
      const auto mc = mc_trace_moment(usp, k, 100000, 2000 + k);
      const double z = mc.standard_error > 0 ? std::abs(mc.mean - dfact[k]) / mc.standard_error : (mc.mean == dfact[k] ? 0 : 1e9);
      worst_z = std::max(worst_z, z);
    }
    d = std::string("exact values ") + (ok ? "match" : "MISMATCH") + "; max |MC - exact| / SE = " + fmt("%.3f", worst_z) +
        " at 1e5 samples (tol 3)";
    return ok && worst_z <= 3;
  });

  criterion(9, "cross-moments", [](std::string& d) {
    const PolyExact g{1, 2, 0, 1};          // X^3 + 2X + 1
    const PolyExact quintic{0, 1, 0, 0, 1, 1};  // X^5 + X^4 + X
    const PolyExact pair1[] = {kCubic, g};
    const PolyExact pair2[] = {quintic, kCubic};
    bool pass = true;
    std::string parts;
    for (u64 p : {u64{10007}, u64{20011}}) {
      const double sp = std::sqrt(static_cast<double>(p));
      const double k1 = sp * std::abs(cross_moment(pair1, p, 1) - 1);
      const double k2 = sp * std::abs(cross_moment(pair1, p, 2) - 4);
      const double q1 = sp * std::abs(cross_moment(pair2, p, 1) - 1);
      pass = pass && k1 <= 10 && k2 <= 10 && q1 <= 10;
      parts += " p=" + std::to_string(p) + ": cubics k=1 " + fmt("%.3f", k1) + ", k=2 " + fmt("%.3f", k2) +
               ", quintic/cubic k=1 " + fmt("%.3f", q1) + ";";
    }
    const bool rational = linear_equivalent(kCubic, g, EquivalenceField::Rational).has_value();
    const bool closure = linear_equivalent(kCubic, g, EquivalenceField::AlgebraicClosure).has_value();
    d = "sqrt(p)|M - target| (tol 10):" + parts + " cubics equivalent over Q: " + (rational ? "yes" : "no") +
        ", over Qbar: " + (closure ? "yes" : "no");
    return pass;
  });

  criterion(10, "sweep-trends", [](std::string& d) {
    const PolyExact fs[] = {kCubic};
    SweepOptions opts;
    opts.exponents = {1, 2};
    const SweepReport r = sweep_q(fs, 1, opts);
    // Independent recount of the smallest grid point by direct summation.
    const auto c = ints(kCubic);
    double s1 = 0;
    for (u64 q = 2; q <= 1000; ++q)
      if (squarefree(q)) s1 += std::abs(direct_sum(c, 1, q));
    const double recount = std::abs(s1 - r.rows.front().sums.at(1)) / s1;
    const double C = 1;
    double max_ratio2 = 0;
    bool decreasing = true;
    std::string r1, r2;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      const double x = static_cast<double>(r.rows[i].x);
      const double a = r.rows[i].sums.at(1) / x;
      const double b = r.rows[i].sums.at(2) / (x * std::pow(std::log(std::log(x)), 4));
      max_ratio2 = std::max(max_ratio2, b);
      if (i > 0 && !(a < r.rows[i - 1].sums.at(1) / static_cast<double>(r.rows[i - 1].x))) decreasing = false;
      r1 += (i ? "," : "") + fmt("%.4f", a);
      r2 += (i ? "," : "") + fmt("%.4f", b);
    }
    const double first = r.rows.front().sums.at(1) / 1000.0, last = r.rows.back().sums.at(1) / 30000.0;
    d = "|W|^2 ratios " + r2 + " (max " + fmt("%.4f", max_ratio2) + " <= C = 1); sum|W|/x " + r1 + " stepwise " +
        (decreasing ? "decreasing" : "NOT decreasing") + ", endpoints " + (last < first ? "decrease" : "do not decrease") +
        "; direct recount at x=1000 rel gap " + fmt("%.1e", recount);
    return max_ratio2 <= C && decreasing && recount < 1e-9;
  });

  criterion(11, "classifier", [](std::string& d) {
    const std::vector<u64> primes = default_certificate_primes(6);
    bool ok = true;
    std::string notes;
    auto note = [&](bool c, const std::string& what) {
      ok = ok && c;
      notes += (notes.empty() ? "" : "; ") + what + (c ? " ok" : " WRONG");
    };
    note(classify(PolyExact{0, 0, 0, 1}, primes).verdict == Verdict::NotMorse, "X^3 NotMorse");
    const auto cubic = classify(kCubic, primes);
    note(cubic.verdict == Verdict::SymmetricSidonMorse && cubic.odd_witness && cubic.odd_witness->x0 == 0 &&
             cubic.odd_witness->delta == 1 && cubic.odd_witness->g == PolyExact{0, 1, 0, 1},
         "X^3+X+1 SymmetricSidonMorse witness (0, 1, X^3+X)");
    const PolyExact square{1, 0, 2, 0, 1};
    const auto dec = find_decomposition(square);
    bool verified = false;
    if (dec) {
      // outer(inner) by Horner, independent of the library's compose
      PolyExact acc;
      for (int i = dec->outer.degree(); i >= 0; --i) acc = acc * dec->inner + PolyExact::constant(dec->outer.coeff(i));
      verified = acc == square && dec->outer.degree() >= 2 && dec->inner.degree() >= 2;
    }
    note(verified, "(X^2+1)^2 decomposition verified");
    const auto a = dickson_equivalent(PolyExact{0, 1, 0, 1});
    // D_3(X, a) = X^3 - 3aX
    note(a && *a == Rational(-1, 3) && (PolyExact{0, 1, 0, 1} == PolyExact(std::vector<Rational>{0, -3 * *a, 0, 1})),
         "X^3+X Dickson a = -1/3");
    note(is_indecomposable(PolyExact{0, 1, 0, 0, 0, 0, 1}), "X^6+X indecomposable");
    d = notes;
    return ok;
  });

  std::printf("acceptance: %d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
