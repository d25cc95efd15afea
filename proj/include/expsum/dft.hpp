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
#include <cstddef>
#include <span>
#include <vector>

namespace expsum {

using cplx = std::complex<double>;

/// Length-n DFT for any n: out[k] = sum_j in[j] e(sign * jk / n).
/// Backed by FFTW, which stays O(n log n) at prime lengths.
std::vector<cplx> dft(std::span<const cplx> in, int sign);

/// e(num / den) = exp(2 pi i num / den) with num reduced first.
cplx unit_root(unsigned long long num, unsigned long long den) noexcept;

}  // namespace expsum
