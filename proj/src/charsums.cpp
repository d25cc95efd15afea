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

#include "expsum/charsums.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace expsum {

namespace {

double table_error_bound(u64 p) {
  const double log_len = std::log2(static_cast<double>(p));
  return 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, log_len) * std::sqrt(static_cast<double>(p));
}

u64 reduce_signed(i64 a, u64 p) {
  const i64 r = a % static_cast<i64>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

template <class T>
void put(std::ostream& os, T v) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  unsigned char buf[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(buf), sizeof(T))) throw Error(ErrorCode::CacheCorrupt, "truncated record");
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

void expect_magic(std::istream& is, const char* magic) {
  char m[4];
  if (!is.read(m, 4) || std::memcmp(m, magic, 4) != 0) {
    throw Error(ErrorCode::CacheCorrupt, std::string("bad magic, expected ") + magic);
  }
}

}  // namespace

ValueDist value_distribution(const PolyModP& f) {
  const u64 p = f.modulus();
  ValueDist out{p, std::vector<std::uint32_t>(p, 0)};
  if (f.degree() <= 0) {
    out.counts[f.coeff(0)] = static_cast<std::uint32_t>(p);
    return out;
  }
  // Forward differences: d additions per point instead of a Horner pass.
  const int d = f.degree();
  const PrimeField& F = f.field();
  std::vector<u64> vals(static_cast<std::size_t>(d) + 1), diff(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) vals[i] = f.eval(static_cast<u64>(i) % p);
  for (int i = 0; i <= d; ++i) {
    diff[i] = vals[0];
    for (int j = 0; j < d - i; ++j) vals[j] = F.sub(vals[j + 1], vals[j]);
  }
  for (u64 x = 0; x < p; ++x) {
    ++out.counts[diff[0]];
    for (int i = 0; i < d; ++i) diff[i] = F.add(diff[i], diff[i + 1]);
  }
  return out;
}

cplx sum_single(const PolyModP& f, u64 a) {
  const u64 p = f.modulus();
  const PrimeField& F = f.field();
  a %= p;
  cplx acc{};
  for (u64 x = 0; x < p; ++x) acc += unit_root(F.mul(a, f.eval(x)), p);
  return acc / std::sqrt(static_cast<double>(p));
}

SumTable sum_table(const ValueDist& dist, int degree, const PolyId& id, const TableOptions& opts) {
  const u64 p = dist.p;
  if (p > opts.max_prime) {
    throw Error(ErrorCode::PrimeTooLarge, "p = " + std::to_string(p) + " above the table cap " + std::to_string(opts.max_prime));
  }
  std::vector<cplx> in(p);
  for (u64 v = 0; v < p; ++v) in[v] = static_cast<double>(dist.counts[v]);
  SumTable t;
  t.p = p;
  t.degree = degree;
  t.poly_id = id;
  t.values = dft(in, +1);
  const double s = 1.0 / std::sqrt(static_cast<double>(p));
  for (auto& w : t.values) w *= s;
  t.error_bound = table_error_bound(p);
  return t;
}

SumTable sum_table(const PolyModP& f, const PolyId& id, const TableOptions& opts) {
  if (f.modulus() > opts.max_prime) {
    throw Error(ErrorCode::PrimeTooLarge, "p = " + std::to_string(f.modulus()) + " above the table cap " + std::to_string(opts.max_prime));
  }
  return sum_table(value_distribution(f), f.degree(), id, opts);
}

SumTable normalized_table(const SumTable& plain, const CriticalData& data, const std::optional<OddFormModP>& odd) {
  const u64 p = plain.p;
  const int d = plain.degree;
  if (static_cast<u64>(d - 1) % p == 0) throw Error(ErrorCode::BadCharacteristic, "p divides d - 1");
  if (plain.kind != TableKind::Plain) throw Error(ErrorCode::InvalidArgument, "table already normalized");
  const PrimeField F(p);
  SumTable out = plain;
  out.kind = TableKind::Normalized;
  for (u64 a = 0; a < p; ++a) {
    if (a == 0) {
      out.values[0] = 0;
      continue;
    }
    cplx phase;
    if (odd) {
      phase = unit_root(F.mul(a, F.neg(odd->delta)), p);
    } else {
      phase = unit_root(F.mul(a, data.shift.value), p);
      if ((d - 1) % 2 == 1 && F.legendre(a) < 0) phase = -phase;
    }
    out.values[a] = phase * plain.values[a];
  }
  out.error_bound = plain.error_bound + 4 * std::numeric_limits<double>::epsilon() * (d - 1);
  return out;
}

SumTable normalized_table(const PolyModP& f, const PolyId& id, const std::optional<OddFormModP>& odd) {
  const CriticalData data = critical_data(f);
  return normalized_table(sum_table(f, id), data, odd);
}

cplx twisted_extend_factored(const TableLookup& tables, i64 a, u64 q, const std::vector<u64>& primes) {
  cplx acc{1.0, 0.0};
  for (u64 p : primes) {
    const SumTable* t = tables(p);
    if (!t) throw Error(ErrorCode::MissingTable, "no table for p = " + std::to_string(p));
    const u64 ap = reduce_signed(a, p);
    if (ap == 0) return {};
    const u64 cof = (q / p) % p;
    acc *= t->values[mul_mod(ap, inv_mod(cof, p), p)];
  }
  return acc;
}

cplx twisted_extend(const TableLookup& tables, i64 a, u64 q, bool strict) {
  if (q == 0) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
  std::vector<u64> primes;
  u64 n = q;
  for (u64 r = 2; r * r <= n; ++r) {
    if (n % r != 0) continue;
    n /= r;
    if (n % r == 0) {
      if (strict) throw Error(ErrorCode::NonSquarefree, std::to_string(q) + " is not squarefree");
      return {};
    }
    primes.push_back(r);
  }
  if (n > 1) primes.push_back(n);
  if (gcd_u64(reduce_signed(a, q), q) != 1 && q != 1) return {};
  return twisted_extend_factored(tables, a, q, primes);
}

cplx twisted_extend(const std::map<u64, SumTable>& tables, i64 a, u64 q, bool strict) {
  return twisted_extend(
      [&](u64 p) -> const SumTable* {
        auto it = tables.find(p);
        return it == tables.end() ? nullptr : &it->second;
      },
      a, q, strict);
}

TwistedEnvelope envelope_from_tables(const std::map<u64, SumTable>& tables, double cap) {
  TwistedEnvelope env;
  env.M = cap;
  for (const auto& [p, t] : tables) {
    double mx = 0, sum = 0;
    for (u64 a = 1; a < p; ++a) {
      const double v = std::abs(t.values[a]);
      mx = std::max(mx, v);
      sum += v;
    }
    env.G[p] = mx;
    env.g[p] = sum / static_cast<double>(p);
    env.M = std::max(env.M, mx);
  }
  return env;
}

MeasureTransform measure_transform(const std::map<u64, std::vector<double>>& v) {
  MeasureTransform out;
  out.envelope.M = 1;
  for (const auto& [p, w] : v) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (w.size() != p) throw Error(ErrorCode::NotAMeasure, "vector length must equal p");
    double total = 0, sq = 0;
    for (double x : w) {
      if (!(x >= 0)) throw Error(ErrorCode::NotAMeasure, "negative or NaN mass");
      total += x;
      sq += x * x;
    }
    if (std::abs(total - 1) > 1e-9) throw Error(ErrorCode::NotAMeasure, "masses must sum to 1");
    std::vector<cplx> in(w.begin(), w.end());
    SumTable t;
    t.p = p;
    t.values = dft(in, +1);
    t.error_bound = table_error_bound(p);
    out.tables.emplace(p, std::move(t));
    out.envelope.G[p] = 1;
    out.envelope.g[p] = std::sqrt(std::max(0.0, sq - 1.0 / static_cast<double>(p)));
  }
  return out;
}

WeilReport weil_check(const SumTable& table, int d) {
  WeilReport r;
  r.p = table.p;
  for (u64 a = 1; a < table.p; ++a) {
    const double v = std::abs(table.values[a]);
    if (v > r.max_abs) {
      r.max_abs = v;
      r.argmax = a;
    }
  }
  r.margin = (d - 1) - r.max_abs;
  r.violated = r.margin < -table.error_bound;
  return r;
}

void write_table(std::ostream& os, const SumTable& t) {
  os.write("EXPS", 4);
  put<std::uint16_t>(os, 1);
  put<std::uint64_t>(os, t.p);
  put<std::uint16_t>(os, static_cast<std::uint16_t>(t.degree));
  os.write(reinterpret_cast<const char*>(t.poly_id.data()), 32);
  for (const cplx& w : t.values) {
    put<double>(os, w.real());
    put<double>(os, w.imag());
  }
  if (!os) throw Error(ErrorCode::Io, "table write failed");
}

SumTable read_table(std::istream& is) {
  expect_magic(is, "EXPS");
  if (get<std::uint16_t>(is) != 1) throw Error(ErrorCode::CacheCorrupt, "unsupported table version");
  SumTable t;
  t.p = get<std::uint64_t>(is);
  t.degree = get<std::uint16_t>(is);
  if (!is_prime(t.p) || t.p > (u64{1} << 32)) throw Error(ErrorCode::CacheCorrupt, "bad prime in table header");
  if (!is.read(reinterpret_cast<char*>(t.poly_id.data()), 32)) throw Error(ErrorCode::CacheCorrupt, "truncated hash");
  t.values.resize(t.p);
  for (auto& w : t.values) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    w = {re, im};
  }
  if (is.peek() != std::char_traits<char>::eof()) throw Error(ErrorCode::CacheCorrupt, "trailing bytes");
  t.error_bound = table_error_bound(t.p);
  return t;
}

void write_value_dist(std::ostream& os, const ValueDist& d) {
  os.write("EXPD", 4);
  put<std::uint64_t>(os, d.p);
  for (auto c : d.counts) put<std::uint32_t>(os, c);
  if (!os) throw Error(ErrorCode::Io, "value distribution write failed");
}

ValueDist read_value_dist(std::istream& is) {
  expect_magic(is, "EXPD");
  ValueDist d;
  d.p = get<std::uint64_t>(is);
  if (!is_prime(d.p) || d.p > (u64{1} << 32)) throw Error(ErrorCode::CacheCorrupt, "bad prime in header");
  d.counts.resize(d.p);
  u64 total = 0;
  for (auto& c : d.counts) total += c = get<std::uint32_t>(is);
  if (total != d.p) throw Error(ErrorCode::CacheCorrupt, "counts do not sum to p");
  if (is.peek() != std::char_traits<char>::eof()) throw Error(ErrorCode::CacheCorrupt, "trailing bytes");
  return d;
}

}  // namespace expsum
