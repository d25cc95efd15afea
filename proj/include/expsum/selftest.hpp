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

#include <cstdint>
#include <string>
#include <vector>

#include "expsum/cache.hpp"
#include "expsum/report.hpp"

namespace expsum {

struct CheckRow {
  std::string check;
  std::string detail;
  double value = 0;
  double reference = 0;
  double error = 0;
  double tolerance = 0;
  bool pass = false;
};

struct SelfTestReport {
  u64 p = 0;
  std::vector<CheckRow> rows;
  bool pass = true;

  Table table() const;
};

/// Side-by-side checks of the fast paths against slow ones at one prime:
/// table vs direct summation, Parseval, conjugation symmetry, DFT moments
/// vs the counting oracles, the Weil bound, and twisted extension vs direct
/// summation modulo q = p r for a small prime r. With a cache, tables and
/// value distributions are read through it and any corrupt entry it had to
/// drop is reported as a row.
/// Throws NotPrime, SmallPrime (p <= 2d - 1), BadReduction.
SelfTestReport oracle_selftest(const PolyExact& f, u64 p, std::uint64_t seed = 1, TableCache* cache = nullptr);

}  // namespace expsum
