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

#include "expsum/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "expsum/parallel.hpp"

namespace expsum {

namespace {

// deg gcd(X^p - X, g): the number of distinct roots of g in F_p.
int rational_root_count(const PolyModP& g) {
  if (g.degree() <= 0) return 0;
  const PrimeField& F = g.field();
  const PolyModP x = PolyModP::monomial(F, 1);
  const PolyModP xp = pow_mod(x, F.modulus(), g) - x;
  if (xp.is_zero()) return g.degree();
  return gcd(g, xp).degree();
}

SumTable table_for(const TableProvider& provider, const PolyExact& f, u64 p) {
  return provider ? provider(f, p) : compute_table(f, p);
}

double pow_abs(cplx w, int exponent) {
  if (exponent == 1) return std::abs(w);
  const double n2 = std::norm(w);
  double r = 1;
  for (int i = 0; i < exponent / 2; ++i) r *= n2;
  return r;
}

void check_exponent(int exponent) {
  if (exponent != 1 && (exponent <= 0 || exponent % 2 != 0)) {
    throw Error(ErrorCode::InvalidArgument, "moment exponent must be 1 or a positive even integer");
  }
}

double loglog(double x) { return std::log(std::log(x)); }

}  // namespace

std::vector<u64> primes_in(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2 || lo > hi) return out;
  std::vector<bool> comp(hi + 1, false);
  for (u64 i = 2; i <= hi; ++i) {
    if (comp[i]) continue;
    if (i >= lo) out.push_back(i);
    for (u64 j = i * i; j <= hi; j += i) comp[j] = true;
  }
  return out;
}

double prime_moment(const SumTable& table, int exponent) {
  check_exponent(exponent);
  double acc = 0;
  for (u64 a = 1; a < table.p; ++a) acc += pow_abs(table.values[a], exponent);
  return acc / static_cast<double>(table.p);
}

double second_moment_oracle(const PolyModP& f) {
  const int d = f.degree();
  const u64 p = f.modulus();
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "second moment oracle needs deg f >= 1");
  if (p <= static_cast<u64>(d)) throw Error(ErrorCode::SmallPrime, "need p > deg f");
  const PrimeField& F = f.field();
  u64 points = 0;
  std::vector<u64> col(static_cast<std::size_t>(d));
  for (u64 x = 0; x < p; ++x) {
    // (f(Y) - f(x)) / (Y - x) by synthetic division.
    col[d - 1] = f.coeff(static_cast<std::size_t>(d));
    for (int j = d - 2; j >= 0; --j) col[j] = F.add(f.coeff(static_cast<std::size_t>(j + 1)), F.mul(x, col[j + 1]));
    points += static_cast<u64>(rational_root_count(PolyModP(F, col)));
  }
  const u64 diag = static_cast<u64>(rational_root_count(f.derivative()));
  return (static_cast<double>(points) - static_cast<double>(diag)) / static_cast<double>(p);
}

double second_moment_from_counts(const ValueDist& dist) {
  u128 sq = 0;
  for (auto c : dist.counts) sq += static_cast<u128>(c) * c;
  return static_cast<double>(static_cast<long double>(sq - dist.p) / static_cast<long double>(dist.p));
}

unsigned __int128 fourth_moment_count(const ValueDist& dist) {
  const u64 p = dist.p;
  std::vector<u64> r(p, 0);
  if (p <= (u64{1} << 15)) {
    std::vector<u64> support;
    for (u64 v = 0; v < p; ++v)
      if (dist.counts[v]) support.push_back(v);
    for (u64 u : support)
      for (u64 v : support) r[(u + v) % p] += static_cast<u64>(dist.counts[u]) * dist.counts[v];
  } else {
    std::vector<cplx> in(p);
    for (u64 v = 0; v < p; ++v) in[v] = static_cast<double>(dist.counts[v]);
    auto hat = dft(in, -1);
    for (auto& z : hat) z *= z;
    auto conv = dft(hat, +1);
    for (u64 s = 0; s < p; ++s) {
      const double v = conv[s].real() / static_cast<double>(p);
      const double rounded = std::nearbyint(v);
      if (std::abs(v - rounded) > 0.25) throw Error(ErrorCode::Internal, "convolution rounding residual too large");
      r[s] = static_cast<u64>(rounded);
    }
  }
  u128 total = 0;
  for (u64 x : r) total += static_cast<u128>(x) * x;
  return total;
}

double fourth_moment_oracle(const ValueDist& dist) {
  const long double p = static_cast<long double>(dist.p);
  const long double n4 = static_cast<long double>(fourth_moment_count(dist));
  return static_cast<double>(n4 / (p * p) - p);
}

bool keeps_degree(const PolyExact& f, u64 p) {
  if (!is_prime(p) || f.degree() < 0) return false;
  if (mpz_divisible_ui_p(f.denominator().get_mpz_t(), p)) return false;
  return !mpz_divisible_ui_p(f.numerators().back().get_mpz_t(), p);
}

bool is_admissible_prime(const PolyExact& f, u64 p) {
  return p > static_cast<u64>(std::max(1, 2 * f.degree() - 1)) && keeps_degree(f, p);
}

SumTable compute_table(const PolyExact& f, u64 p) {
  const ModPReduction red = reduce_mod_p(f, p);
  SumTable t = sum_table(value_distribution(red.poly), f.degree(), f.hash());
  return t;
}

std::vector<u64> default_certificate_primes(int d) {
  std::vector<u64> out;
  for (u64 p = std::max<u64>(101, 2 * static_cast<u64>(d)); out.size() < 12; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

GroupSpec monodromy_group(const GenericityReport& report) {
  GroupSpec g;
  g.n = std::max(1, report.degree - 1);
  g.family = report.symmetric_sidon_morse ? GroupFamily::UnitarySymplectic : GroupFamily::SpecialUnitary;
  return g;
}

MomentReport moment_report(const PolyExact& f, u64 p, const MomentOptions& opts) {
  MomentReport rep;
  rep.p = p;
  if (!is_prime(p)) {
    rep.error = "NotPrime";
    return rep;
  }
  if (!is_admissible_prime(f, p)) {
    rep.error = p <= static_cast<u64>(2 * f.degree() - 1) ? "SmallPrime" : "BadReduction";
    return rep;
  }
  const SumTable t = table_for(opts.tables, f, p);
  for (int e : opts.exponents) rep.moments[e] = prime_moment(t, e);
  if (opts.oracles) {
    const PolyModP fp = reduce_mod_p(f, p).poly;
    const ValueDist dist = value_distribution(fp);
    rep.oracle[2] = second_moment_oracle(fp);
    rep.oracle[4] = fourth_moment_oracle(dist);
  }
  if (opts.group) {
    const double sp = std::sqrt(static_cast<double>(p));
    for (int e : opts.exponents) {
      if (e % 2 != 0) continue;
      rep.reference[e] = reference_moment(*opts.group, e / 2);
      rep.scaled_discrepancy[e] = sp * std::abs(rep.moments[e] - rep.reference[e].value);
    }
  }
  return rep;
}

const char* to_string(DichotomyVerdict v) noexcept {
  switch (v) {
    case DichotomyVerdict::Case1: return "Case1";
    case DichotomyVerdict::Case2: return "Case2";
    case DichotomyVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

DichotomyReport dichotomy_scan(const PolyExact& f, std::span<const u64> primes, const DichotomyOptions& opts) {
  DichotomyReport rep;
  const double T = opts.threshold;
  std::size_t high = 0, resolvable = 0, resolvable_near = 0, resolvable_high = 0;
  bool degenerate = true;
  std::vector<u64> ok;
  for (u64 p : primes)
    if (is_admissible_prime(f, p)) ok.push_back(p);
  std::vector<DichotomyRow> rows(ok.size());
  parallel_for(ok.size(), opts.threads, [&](std::size_t i) {
    const SumTable t = table_for(opts.tables, f, ok[i]);
    rows[i].p = ok[i];
    rows[i].m1 = prime_moment(t, 2);
    rows[i].m2 = prime_moment(t, 4);
  });
  for (DichotomyRow row : rows) {
    const u64 p = row.p;
    const double tol = T / std::sqrt(static_cast<double>(p));
    row.near_two = std::abs(row.m2 - 2) <= tol;
    row.high = row.m2 >= 3 - tol;
    row.resolvable = static_cast<double>(p) > 4 * T * T;
    if (row.m2 > 1e-9) degenerate = false;
    high += row.high;
    if (row.resolvable) {
      ++resolvable;
      resolvable_near += row.near_two;
      resolvable_high += row.high;
    }
    rep.rows.push_back(row);
  }
  if (!rep.rows.empty()) rep.high_fraction = static_cast<double>(high) / static_cast<double>(rep.rows.size());
  if (rep.rows.empty()) {
    rep.warnings.push_back("no admissible primes");
  } else if (degenerate) {
    rep.warnings.push_back("all moments vanish: phase is degenerate");
  } else if (resolvable == 0) {
    rep.warnings.push_back("no prime above 4T^2; bands overlap");
  } else if (resolvable_high > 0) {
    rep.verdict = DichotomyVerdict::Case2;
  } else if (resolvable_near == resolvable) {
    rep.verdict = DichotomyVerdict::Case1;
  }
  return rep;
}

KappaEstimate estimate_kappa(const PolyExact& f, std::span<const u64> sample_primes) {
  KappaEstimate est;
  long total = 0;
  for (u64 p : sample_primes) {
    if (!is_admissible_prime(f, p)) continue;
    const double m1 = second_moment_from_counts(value_distribution(reduce_mod_p(f, p).poly));
    const double r = std::nearbyint(m1);
    est.max_rounding_residual = std::max(est.max_rounding_residual, std::abs(m1 - r));
    total += static_cast<long>(r);
    est.m = std::max(est.m, static_cast<int>(r));
    ++est.primes_used;
  }
  if (est.primes_used < 20) {
    throw Error(ErrorCode::InsufficientSamples,
                "need 20 admissible primes, got " + std::to_string(est.primes_used));
  }
  est.mean_components = static_cast<double>(total) / static_cast<double>(est.primes_used);
  est.kappa = static_cast<int>(std::nearbyint(est.mean_components)) + 1;
  return est;
}

std::vector<ShaoPoint> shao_partial_sums(const PolyExact& f, std::span<const u64> xs, int kappa) {
  std::vector<u64> grid(xs.begin(), xs.end());
  std::sort(grid.begin(), grid.end());
  std::vector<ShaoPoint> out;
  if (grid.empty()) return out;
  if (grid.front() < 100) throw Error(ErrorCode::InvalidArgument, "x must be at least 100");
  double sum = 0;
  std::size_t count = 0, next = 0;
  const std::vector<u64> primes = primes_in(2, grid.back());
  auto emit = [&](u64 x) {
    ShaoPoint pt;
    pt.x = x;
    pt.sum = sum;
    pt.primes = count;
    pt.drift = sum - (kappa - 1) * loglog(static_cast<double>(x));
    pt.low_confidence = count < 100;
    out.push_back(pt);
  };
  for (u64 p : primes) {
    while (next < grid.size() && grid[next] < p) emit(grid[next++]);
    if (!keeps_degree(f, p)) continue;
    sum += second_moment_from_counts(value_distribution(reduce_mod_p(f, p).poly)) / static_cast<double>(p);
    ++count;
  }
  while (next < grid.size()) emit(grid[next++]);
  return out;
}

ShaoPoint shao_partial_sum(const PolyExact& f, u64 x) {
  const std::vector<u64> sample = primes_in(2 * static_cast<u64>(f.degree()), 2000);
  const int kappa = estimate_kappa(f, sample).kappa;
  const u64 xs[] = {x};
  return shao_partial_sums(f, xs, kappa).front();
}

double cross_moment(std::span<const PolyExact> fs, u64 p, int k, const TableProvider& tables) {
  if (fs.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one polynomial");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  std::vector<cplx> prod(p, cplx{1.0, 0.0});
  for (const auto& f : fs) {
    if (p <= static_cast<u64>(2 * f.degree() - 1)) throw Error(ErrorCode::SmallPrime, "need p > 2d - 1");
    if (!is_admissible_prime(f, p)) throw Error(ErrorCode::BadReduction, "p divides a denominator or the leading coefficient");
    const SumTable t = table_for(tables, f, p);
    for (u64 a = 1; a < p; ++a) prod[a] *= t.values[a];
  }
  double acc = 0;
  for (u64 a = 1; a < p; ++a) acc += pow_abs(prod[a], 2 * k);
  return acc / static_cast<double>(p);
}

double envelope_bound(const TwistedEnvelope& env, u64 x) {
  if (x < 3) throw Error(ErrorCode::InvalidArgument, "x must be at least 3");
  double log_prod = 0;
  for (u64 p : primes_in(2, x)) {
    auto it = env.g.find(p);
    if (it == env.g.end()) throw Error(ErrorCode::MissingTable, "envelope lacks p = " + std::to_string(p));
    log_prod += std::log1p(it->second / static_cast<double>(p));
  }
  const double lx = std::log(static_cast<double>(x));
  return static_cast<double>(x) / lx * std::exp(log_prod) * std::pow(std::log(lx), env.M);
}

SweepReport sweep_q(std::span<const PolyExact> fs, i64 a, const SweepOptions& opts) {
  if (fs.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one polynomial");
  if (a < 1) throw Error(ErrorCode::InvalidArgument, "a must be >= 1");
  if (opts.grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty x grid");
  std::vector<u64> grid = opts.grid;
  std::sort(grid.begin(), grid.end());
  const u64 X = grid.back();
  if (X > opts.cap) {
    throw Error(ErrorCode::CapExceeded, "x = " + std::to_string(X) + " above the cap " + std::to_string(opts.cap));
  }
  if (grid.front() < 3) throw Error(ErrorCode::InvalidArgument, "grid points must be at least 3");
  for (int j : opts.exponents) check_exponent(j);

  SweepReport rep;
  rep.a = a;
  rep.A = 1;
  double weil_cap = 1;
  for (const auto& f : fs) {
    const int d = f.degree();
    rep.poly_ids.push_back(f.hash_hex());
    rep.A *= (d - 1) * (d - 1);
    weil_cap *= std::max(1, d - 1);
    if (d >= 5 && d % 2 == 1) {
      const auto primes = opts.certificate_primes.empty() ? default_certificate_primes(d) : opts.certificate_primes;
      try {
        if (classify(f, primes).verdict == Verdict::SymmetricSidonMorse) ++rep.s;
      } catch (const Error&) {
      }
    }
  }
  const int m = static_cast<int>(fs.size());
  const double B = std::pow(2.0, m - rep.s) * std::pow(3.0, rep.s);

  // Smallest prime factors, then the residues each prime must supply.
  std::vector<u64> spf(X + 1, 0);
  for (u64 i = 2; i <= X; ++i)
    if (spf[i] == 0)
      for (u64 j = i; j <= X; j += i)
        if (spf[j] == 0) spf[j] = i;
  auto factor = [&](u64 q, std::vector<u64>& ps) {
    ps.clear();
    while (q > 1) {
      const u64 p = spf[q];
      q /= p;
      if (q % p == 0) return false;
      ps.push_back(p);
    }
    return true;
  };
  const u64 ua = static_cast<u64>(a);
  std::unordered_map<u64, std::vector<u64>> needed;
  std::vector<u64> ps;
  for (u64 q = 2; q <= X; ++q) {
    if (!factor(q, ps) || gcd_u64(ua % q, q) != 1) continue;
    for (u64 p : ps) needed[p].push_back(mul_mod(ua % p, inv_mod((q / p) % p, p), p));
  }

  std::unordered_map<u64, cplx> value;  // key p << 32 | residue
  rep.envelope.M = weil_cap;
  struct PrimeSlot {
    double mx = 0, mean = 0;
    std::vector<cplx> picked;
  };
  const std::vector<u64> sweep_primes = primes_in(2, X);
  std::vector<PrimeSlot> slots(sweep_primes.size());
  parallel_for(sweep_primes.size(), opts.threads, [&](std::size_t i) {
    const u64 p = sweep_primes[i];
    std::vector<cplx> prod(p, cplx{1.0, 0.0});
    for (const auto& f : fs) {
      const SumTable t = table_for(opts.tables, f, p);
      for (u64 r = 0; r < p; ++r) prod[r] *= t.values[r];
    }
    PrimeSlot& slot = slots[i];
    for (u64 r = 1; r < p; ++r) {
      const double v = std::abs(prod[r]);
      slot.mx = std::max(slot.mx, v);
      slot.mean += v;
    }
    slot.mean /= static_cast<double>(p);
    auto it = needed.find(p);
    if (it == needed.end()) return;
    slot.picked.reserve(it->second.size());
    for (u64 r : it->second) slot.picked.push_back(prod[r]);
  });
  for (std::size_t i = 0; i < sweep_primes.size(); ++i) {
    const u64 p = sweep_primes[i];
    rep.envelope.G[p] = slots[i].mx;
    rep.envelope.g[p] = slots[i].mean;
    auto it = needed.find(p);
    if (it == needed.end()) continue;
    for (std::size_t k = 0; k < it->second.size(); ++k) value[(p << 32) | it->second[k]] = slots[i].picked[k];
    slots[i].picked = {};
  }

  // Fixed-size blocks summed in q order: the result does not depend on
  // how the blocks were produced.
  constexpr u64 kBlock = 4096;
  std::map<int, double> total, block;
  std::size_t next = 0;
  auto flush = [&] {
    for (auto& [j, s] : block) {
      total[j] += s;
      s = 0;
    }
  };
  for (int j : opts.exponents) total[j] = block[j] = 0;
  for (u64 q = 2; q <= X; ++q) {
    if (factor(q, ps) && gcd_u64(ua % q, q) == 1) {
      cplx w{1.0, 0.0};
      for (u64 p : ps) w *= value.at((p << 32) | mul_mod(ua % p, inv_mod((q / p) % p, p), p));
      for (int j : opts.exponents) block[j] += pow_abs(w, j);
    }
    if (q % kBlock == 0) flush();
    while (next < grid.size() && grid[next] == q) {
      flush();
      SweepRow row;
      row.x = q;
      const double x = static_cast<double>(q), lx = std::log(x), llx = loglog(x);
      for (int j : opts.exponents) {
        row.sums[j] = total[j];
        double norm = x;
        if (j == 2) norm = x * std::pow(llx, rep.A);
        if (j == 4) norm = x * std::pow(lx, B - 1) * std::pow(llx, rep.A);
        row.ratios[j] = total[j] / norm;
        if (j == 4) row.lower_ratio4 = total[j] / (x / lx);
      }
      row.envelope = envelope_bound(rep.envelope, q);
      rep.rows.push_back(std::move(row));
      ++next;
    }
  }

  // gamma_hat: least squares of log(S_1 / x) against log log x.
  if (std::find(opts.exponents.begin(), opts.exponents.end(), 1) != opts.exponents.end() && rep.rows.size() >= 2) {
    std::vector<double> xs, ys;
    for (const auto& row : rep.rows) {
      if (row.sums.at(1) <= 0) continue;
      xs.push_back(loglog(static_cast<double>(row.x)));
      ys.push_back(std::log(row.sums.at(1) / static_cast<double>(row.x)));
    }
    if (xs.size() >= 2) {
      const double n = static_cast<double>(xs.size());
      const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
      const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
      double sxy = 0, sxx = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
      }
      if (sxx > 0) rep.gamma_hat = -sxy / sxx;
    }
  }
  return rep;
}

}  // namespace expsum
