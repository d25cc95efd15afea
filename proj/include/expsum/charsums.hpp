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

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "expsum/dft.hpp"
#include "expsum/genericity.hpp"

namespace expsum {

using PolyId = std::array<std::uint8_t, 32>;

/// counts[v] = #{x in F_p : f(x) = v}
struct ValueDist {
  u64 p = 0;
  std::vector<std::uint32_t> counts;
};

ValueDist value_distribution(const PolyModP& f);

/// (1/sqrt p) sum_x e(a f(x) / p) by direct summation.
cplx sum_single(const PolyModP& f, u64 a);

enum class TableKind : std::uint8_t { Plain = 0, Normalized = 1 };

/// W(a;p) for a = 0..p-1. values[0] is the raw sqrt(p); masked() hides it.
struct SumTable {
  u64 p = 0;
  int degree = 0;
  PolyId poly_id{};
  TableKind kind = TableKind::Plain;
  std::vector<cplx> values;
  double error_bound = 0;

  cplx masked(u64 a) const noexcept { return a % p == 0 ? cplx{} : values[a % p]; }
};

struct TableOptions {
  u64 max_prime = u64{1} << 22;
};

/// All a at once: W(a) = (1/sqrt p) sum_v N[v] e(av/p) through a length-p DFT.
/// Throws PrimeTooLarge above opts.max_prime.
SumTable sum_table(const PolyModP& f, const PolyId& id = {}, const TableOptions& opts = {});
SumTable sum_table(const ValueDist& dist, int degree, const PolyId& id = {}, const TableOptions& opts = {});

/// Non-symmetric (no odd form): (a/p)^{d-1} e(a c / p) W(a), c the critical
/// shift. Symmetric: e(-a delta / p) W(a). Throws BadCharacteristic if p | d-1.
SumTable normalized_table(const SumTable& plain, const CriticalData& data,
                          const std::optional<OddFormModP>& odd = std::nullopt);
SumTable normalized_table(const PolyModP& f, const PolyId& id = {},
                          const std::optional<OddFormModP>& odd = std::nullopt);

using TableLookup = std::function<const SumTable*(u64 p)>;

/// Product over p | q of W(a * inv(q/p) mod p; p). Returns 0 when q is not
/// squarefree (NonSquarefree instead if strict) or gcd(a, q) > 1. Throws
/// MissingTable when a prime factor has no table.
cplx twisted_extend(const TableLookup& tables, i64 a, u64 q, bool strict = false);
cplx twisted_extend(const std::map<u64, SumTable>& tables, i64 a, u64 q, bool strict = false);
/// Same, with the distinct prime factors of squarefree q supplied.
cplx twisted_extend_factored(const TableLookup& tables, i64 a, u64 q, const std::vector<u64>& primes);

/// Bounds for a twisted-multiplicative family: max |V(a;p)| <= G(p) and
/// (1/p) sum_{a != 0} |V(a;p)| <= g(p); M caps every G(p).
struct TwistedEnvelope {
  std::map<u64, double> G;
  std::map<u64, double> g;
  double M = 0;
};

/// Envelope read off plain tables: G(p) the observed maximum, g(p) the
/// observed mean; M = max(cap, max G).
TwistedEnvelope envelope_from_tables(const std::map<u64, SumTable>& tables, double cap);

struct MeasureTransform {
  std::map<u64, SumTable> tables;
  TwistedEnvelope envelope;
};

/// V(a;p) = sum_b v(b;p) e(ab/p) for probability vectors v(.;p), with
/// G(p) = 1 and g(p) = (sum_b v(b;p)^2 - 1/p)^{1/2}. Throws NotAMeasure.
MeasureTransform measure_transform(const std::map<u64, std::vector<double>>& v);

struct WeilReport {
  u64 p = 0;
  double max_abs = 0;
  u64 argmax = 0;
  double margin = 0;  // (d - 1) - max_abs
  bool violated = false;
};

WeilReport weil_check(const SumTable& table, int d);

/// Binary cache formats, little-endian. "EXPS": u16 version = 1, u64 p,
/// u16 d, 32-byte polynomial hash, p pairs of f64 (re, im). "EXPD": u64 p,
/// p u32 counts.
void write_table(std::ostream& os, const SumTable& t);
SumTable read_table(std::istream& is);
void write_value_dist(std::ostream& os, const ValueDist& d);
ValueDist read_value_dist(std::istream& is);

}  // namespace expsum
