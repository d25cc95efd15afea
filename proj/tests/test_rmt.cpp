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

#include <cmath>

#include "doctest.h"
#include "expsum/error.hpp"
#include "expsum/rmt.hpp"

using namespace expsum;

namespace {

const GroupSpec kSU4{GroupFamily::SpecialUnitary, 4};
const GroupSpec kUSp4{GroupFamily::UnitarySymplectic, 4};

double unitarity_defect(const Matrix& u) {
  const Matrix g = multiply(adjoint(u), u);
  double worst = 0;
  for (int i = 0; i < u.n; ++i)
    for (int j = 0; j < u.n; ++j) worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

std::complex<double> det(Matrix m) {
  std::complex<double> d = 1;
  for (int c = 0; c < m.n; ++c) {
    int piv = c;
    for (int r = c; r < m.n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    if (piv != c) {
      for (int j = 0; j < m.n; ++j) std::swap(m(piv, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (int r = c + 1; r < m.n; ++r) {
      auto f = m(r, c) / m(c, c);
      for (int j = c; j < m.n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return d;
}

}  // namespace

TEST_CASE("reference moments") {
  const double fact[] = {1, 1, 2, 6, 24};
  for (int k = 0; k <= 4; ++k) {
    auto r = reference_moment(kSU4, k);
    CHECK(r.value == fact[k]);
    CHECK(r.exact);
  }
  CHECK(reference_moment(kUSp4, 0).value == 1);
  CHECK(reference_moment(kUSp4, 1).value == 1);
  CHECK(reference_moment(kUSp4, 2).value == 3);
  CHECK(reference_moment(kUSp4, 2).exact);
  CHECK_FALSE(reference_moment(kUSp4, 3).exact);
  auto big = reference_moment({GroupFamily::SpecialUnitary, 2}, 5);
  CHECK(big.value == 120);
  CHECK_FALSE(big.exact);
  for (int n = 2; n <= 8; ++n) CHECK(reference_moment({GroupFamily::SpecialUnitary, n}, 1).value == 1);
  for (int n = 2; n <= 8; n += 2) CHECK(reference_moment({GroupFamily::UnitarySymplectic, n}, 1).value == 1);
  // USp(2) = SU(2)
  CHECK(reference_moment({GroupFamily::UnitarySymplectic, 2}, 2).value == 2);
  CHECK(reference_moment({GroupFamily::UnitarySymplectic, 2}, 2).exact);
  CHECK_THROWS_AS(reference_moment({GroupFamily::UnitarySymplectic, 3}, 1), Error);
}

TEST_CASE("Haar samples lie in the group") {
  const Matrix one = haar_sample({GroupFamily::SpecialUnitary, 1}, 5);
  CHECK(std::abs(one(0, 0) - 1.0) < 1e-14);
  for (int n = 2; n <= 6; ++n) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const Matrix u = haar_sample({GroupFamily::SpecialUnitary, n}, s);
      CHECK(unitarity_defect(u) < 1e-10);
      CHECK(std::abs(det(u) - 1.0) < 1e-10);
    }
  }
  for (int n = 2; n <= 8; n += 2) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const Matrix u = haar_sample({GroupFamily::UnitarySymplectic, n}, s);
      CHECK(unitarity_defect(u) < 1e-10);
      const int m = n / 2;
      Matrix J{n, std::vector<std::complex<double>>(static_cast<std::size_t>(n) * n)};
      for (int i = 0; i < m; ++i) {
        J(i, m + i) = 1;
        J(m + i, i) = -1;
      }
      Matrix ut{n, u.a};
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ut(i, j) = u(j, i);
      const Matrix w = multiply(multiply(ut, J), u);
      double worst = 0;
      for (std::size_t i = 0; i < w.a.size(); ++i) worst = std::max(worst, std::abs(w.a[i] - J.a[i]));
      CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("Monte Carlo moments match the references") {
  CHECK(mc_trace_moment(kSU4, 0, 1000, 1).mean == 1);
  CHECK(mc_trace_moment(kSU4, 0, 1000, 1).standard_error == 0);
  for (int n : {2, 3, 4}) {
    for (int k = 1; k <= n; ++k) {
      const GroupSpec g{GroupFamily::SpecialUnitary, n};
      const auto est = mc_trace_moment(g, k, 20000, 100 + static_cast<std::uint64_t>(n * 10 + k));
      CHECK(std::abs(est.mean - reference_moment(g, k).value) <= 3 * est.standard_error);
    }
  }
  for (int n : {2, 4, 6}) {
    for (int k = 1; k <= n / 2; ++k) {
      const GroupSpec g{GroupFamily::UnitarySymplectic, n};
      const auto est = mc_trace_moment(g, k, 20000, 200 + static_cast<std::uint64_t>(n * 10 + k));
      CHECK(std::abs(est.mean - reference_moment(g, k).value) <= 3 * est.standard_error);
    }
  }
}

TEST_CASE("left translation leaves |Tr|^2 unchanged") {
  const Matrix g = haar_sample(kSU4, 999);
  double plain = 0, shifted = 0, sq = 0;
  const int N = 20000;
  for (int i = 0; i < N; ++i) {
    const Matrix u = haar_sample(kSU4, 5000 + static_cast<std::uint64_t>(i));
    const double a = std::norm(u.trace());
    const double b = std::norm(multiply(g, u).trace());
    plain += a;
    shifted += b;
    sq += (a - b) * (a - b);
  }
  plain /= N;
  shifted /= N;
  const double se = std::sqrt(sq / N / N);
  CHECK(std::abs(plain - shifted) <= 3 * se + 1e-12);
}
