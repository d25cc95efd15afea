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

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expsum/charsums.hpp"
#include "expsum/rmt.hpp"

namespace expsum {

/// (1/p) sum_{a=1}^{p-1} |W(a;p)|^exponent; exponent 1 or a positive even
/// integer. a = 0 is always excluded.
double prime_moment(const SumTable& table, int exponent);

/// (#{F(x,y) = 0} - #{f'(x) = 0}) / p with F = (f(X) - f(Y)) / (X - Y),
/// counting roots of each column F(x, Y) as deg gcd(Y^p - Y, F(x, Y)).
/// Throws SmallPrime unless p > d.
double second_moment_oracle(const PolyModP& f);

/// (sum_v N[v]^2 - p) / p, exact in integers before the final division.
double second_moment_from_counts(const ValueDist& dist);

/// #{f(x) + f(y) = f(z) + f(w)} = sum_s r(s)^2 with r = N * N cyclic.
unsigned __int128 fourth_moment_count(const ValueDist& dist);
/// fourth_moment_count / p^2 - p
double fourth_moment_oracle(const ValueDist& dist);

/// Primes usable for moment statistics: p > 2d - 1 and p divides neither a
/// denominator nor the leading numerator. Weaker than is_good_prime, which
/// also needs f Morse.
bool is_admissible_prime(const PolyExact& f, u64 p);
/// p prime, dividing neither a denominator nor the leading numerator.
bool keeps_degree(const PolyExact& f, u64 p);

/// Plain table of f mod p. Supplied by callers that cache tables.
using TableProvider = std::function<SumTable(const PolyExact& f, u64 p)>;
SumTable compute_table(const PolyExact& f, u64 p);

struct MomentReport {
  u64 p = 0;
  std::map<int, double> moments;    // exponent of |W| -> moment
  std::map<int, double> oracle;     // 2 and 4
  std::map<int, ReferenceMoment> reference;
  std::map<int, double> scaled_discrepancy;  // sqrt(p) |moment - reference|
  std::string error;  // set instead of values when the prime is rejected
};

/// Group governing f: USp(d-1) for symmetric Sidon-Morse, SU(d-1) otherwise.
GroupSpec monodromy_group(const GenericityReport& report);

struct MomentOptions {
  std::vector<int> exponents{1, 2, 4, 6, 8};
  bool oracles = true;
  std::optional<GroupSpec> group;
  TableProvider tables;
};

MomentReport moment_report(const PolyExact& f, u64 p, const MomentOptions& opts = {});

enum class DichotomyVerdict { Case1, Case2, Inconclusive };
const char* to_string(DichotomyVerdict v) noexcept;

struct DichotomyRow {
  u64 p = 0;
  double m1 = 0;
  double m2 = 0;
  bool near_two = false;  // |M2 - 2| <= T / sqrt(p)
  bool high = false;      // M2 >= 3 - T / sqrt(p)
  bool resolvable = false;  // p > 4 T^2, so the two bands are disjoint
};

struct DichotomyReport {
  std::vector<DichotomyRow> rows;
  double high_fraction = 0;  // over all scanned primes
  DichotomyVerdict verdict = DichotomyVerdict::Inconclusive;
  std::vector<std::string> warnings;
};

struct DichotomyOptions {
  double threshold = 10;
  TableProvider tables;
  unsigned threads = 1;  // the provider must be thread-safe when > 1
};

/// Non-admissible primes in the list are skipped. The verdict looks only at
/// resolvable primes: Case1 if every one is near 2, Case2 if any is high.
DichotomyReport dichotomy_scan(const PolyExact& f, std::span<const u64> primes, const DichotomyOptions& opts = {});

struct KappaEstimate {
  int kappa = 0;  // Q-components of (f(X) - f(Y)) / (X - Y), plus one
  int m = 0;      // largest per-prime component count
  double mean_components = 0;
  double max_rounding_residual = 0;
  std::size_t primes_used = 0;
};

/// Averages the rounded per-prime second moments (each close to the number
/// of absolutely irreducible components defined over F_p). Throws
/// InsufficientSamples with fewer than 20 admissible primes.
KappaEstimate estimate_kappa(const PolyExact& f, std::span<const u64> sample_primes);

struct ShaoPoint {
  u64 x = 0;
  double sum = 0;  // sum over p <= x with keeps_degree of M_1(p) / p
  double drift = 0;  // sum - (kappa - 1) log log x
  std::size_t primes = 0;
  bool low_confidence = false;
};

/// kappa taken from estimate_kappa over the admissible primes in [2d, 2000).
ShaoPoint shao_partial_sum(const PolyExact& f, u64 x);
std::vector<ShaoPoint> shao_partial_sums(const PolyExact& f, std::span<const u64> xs, int kappa);

/// (1/p) sum_{a != 0} |prod_i W_i(a;p)|^{2k}
double cross_moment(std::span<const PolyExact> fs, u64 p, int k, const TableProvider& tables = {});

struct SweepRow {
  u64 x = 0;
  std::map<int, double> sums;  // exponent j -> sum_{q <= x} |prod W_i(a;q)|^j
  std::map<int, double> ratios;
  double lower_ratio4 = 0;  // j = 4 sum / (x / log x)
  double envelope = 0;      // envelope_bound at x
};

struct SweepReport {
  std::vector<std::string> poly_ids;
  i64 a = 1;
  std::vector<SweepRow> rows;
  int A = 0;  // loglog exponent, prod (d_i - 1)^2
  int s = 0;  // symmetric Sidon-Morse factors of odd degree >= 5
  double gamma_hat = 0;
  TwistedEnvelope envelope;
};

struct SweepOptions {
  std::vector<u64> grid{1000, 3000, 10000, 30000};
  std::vector<int> exponents{1, 2, 4};
  u64 cap = 30000;
  TableProvider tables;
  /// Primes handed to classify when counting s.
  std::vector<u64> certificate_primes;
  unsigned threads = 1;
};

/// Sums over squarefree q <= max(grid). Throws CapExceeded above opts.cap.
SweepReport sweep_q(std::span<const PolyExact> fs, i64 a, const SweepOptions& opts = {});

/// (x / log x) prod_{p <= x} (1 + g(p)/p) (log log x)^M
double envelope_bound(const TwistedEnvelope& env, u64 x);

/// Twelve primes from max(101, 2d) up, handed to classify by default.
std::vector<u64> default_certificate_primes(int d);

/// Primes in [lo, hi] in increasing order.
std::vector<u64> primes_in(u64 lo, u64 hi);

}  // namespace expsum
