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

#include <complex>
#include <cstdint>
#include <vector>

namespace expsum {

enum class GroupFamily { SpecialUnitary, UnitarySymplectic };
const char* to_string(GroupFamily f) noexcept;

struct GroupSpec {
  GroupFamily family = GroupFamily::SpecialUnitary;
  int n = 1;  // matrix size; even for the symplectic family
};

struct ReferenceMoment {
  double value = 0;
  bool exact = false;  // otherwise value is only an upper bound
};

/// E |Tr g|^{2k} under Haar measure: k! on SU(n) for k <= n, (2k-1)!! on
/// USp(n) for 1 <= k <= n/2. USp(2) is SU(2), so n = 2 uses the SU values.
ReferenceMoment reference_moment(const GroupSpec& spec, int k);

/// Dense n x n complex matrix, row-major.
struct Matrix {
  int n = 0;
  std::vector<std::complex<double>> a;

  std::complex<double>& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const std::complex<double>& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  std::complex<double> trace() const;
};

Matrix multiply(const Matrix& x, const Matrix& y);
Matrix adjoint(const Matrix& x);

/// Haar-distributed element. SU(n): Gram-Schmidt on a complex Ginibre
/// matrix, then division by an n-th root of the determinant. USp(n):
/// quaternionic Gram-Schmidt, columns paired as v and (-conj(b); conj(a))
/// for v = (a; b), which preserves J = [[0, I], [-I, 0]].
Matrix haar_sample(const GroupSpec& spec, std::uint64_t seed);

struct McEstimate {
  double mean = 0;
  double standard_error = 0;
  std::size_t samples = 0;
};

/// Sample mean of |Tr g|^{2k} with its jackknife standard error. Sample i
/// draws from its own stream derived from (seed, i).
McEstimate mc_trace_moment(const GroupSpec& spec, int k, std::size_t samples, std::uint64_t seed);

}  // namespace expsum
