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
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "expsum/genericity.hpp"
#include "expsum/moments.hpp"

namespace expsum {

inline constexpr const char* kSchemaLine = "# expsum-lab schema v1";

using Cell = std::variant<std::monostate, bool, std::int64_t, std::uint64_t, double, std::string>;

/// A rectangular report. CSV is the stable interface; JSON carries the
/// same rows keyed by column name.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Run-level facts (verdicts, fitted constants). Written as "# key: value"
  /// lines in CSV, a "meta" object in JSON.
  std::vector<std::pair<std::string, Cell>> meta;

  std::string to_csv() const;
  std::string to_json() const;
};

/// Shortest decimal that reads back to the same double ("%.17g" family);
/// nan and inf spelled out.
std::string format_double(double x);

std::string genericity_json(const GenericityReport& r);

/// Columns p, status, then m<e> per exponent, ref<e>/exact<e>/disc<e> per
/// even exponent when a group was given, then oracle2/oracle4.
Table moments_table(const std::vector<MomentReport>& reps, const MomentOptions& opts);
Table dichotomy_table(const DichotomyReport& r, double threshold);
Table shao_table(const std::vector<ShaoPoint>& pts, int kappa);
Table sweep_table(const SweepReport& r, const std::vector<int>& exponents);

}  // namespace expsum
