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

#include "expsum/dft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "expsum/error.hpp"

namespace expsum {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

cplx unit_root(unsigned long long num, unsigned long long den) noexcept {
  num %= den;
  const long double t = static_cast<long double>(num) / static_cast<long double>(den);
  const long double ang = 2.0L * std::numbers::pi_v<long double> * t;
  return {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
}

std::vector<cplx> dft(std::span<const cplx> in, int sign) {
  const std::size_t n = in.size();
  if (n == 0) return {};
  if (n > static_cast<std::size_t>(INT32_MAX)) throw Error(ErrorCode::InvalidArgument, "transform too long");
  std::vector<cplx> src(in.begin(), in.end()), out(n);
  auto* s = reinterpret_cast<fftw_complex*>(src.data());
  auto* d = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), s, d, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (!plan) throw Error(ErrorCode::Internal, "FFTW planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace expsum
