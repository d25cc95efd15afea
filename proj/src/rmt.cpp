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

#include "expsum/rmt.hpp"

#include <cmath>
#include <random>
#include <string>

#include "expsum/error.hpp"

namespace expsum {

namespace {

using cd = std::complex<double>;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_spec(const GroupSpec& spec) {
  if (spec.n < 1) throw Error(ErrorCode::InvalidArgument, "group dimension must be >= 1");
  if (spec.family == GroupFamily::UnitarySymplectic && spec.n % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "symplectic dimension must be even");
  }
}

cd determinant(Matrix m) {
  const int n = m.n;
  cd det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    if (m(c, c) == cd{}) return 0;
    for (int r = c + 1; r < n; ++r) {
      const cd f = m(r, c) / m(c, c);
      for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

template <class Rng>
cd gaussian(Rng& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  const double re = nd(rng);
  return {re, nd(rng)};
}

// Remove from column v its projection on column j of u, twice for stability.
void project_out(std::vector<cd>& v, const Matrix& u, int j) {
  for (int pass = 0; pass < 2; ++pass) {
    cd dot{};
    for (int i = 0; i < u.n; ++i) dot += std::conj(u(i, j)) * v[i];
    for (int i = 0; i < u.n; ++i) v[i] -= dot * u(i, j);
  }
}

void normalize(std::vector<cd>& v) {
  double s = 0;
  for (const cd& x : v) s += std::norm(x);
  s = std::sqrt(s);
  for (cd& x : v) x /= s;
}

}  // namespace

const char* to_string(GroupFamily f) noexcept {
  return f == GroupFamily::SpecialUnitary ? "SU" : "USp";
}

ReferenceMoment reference_moment(const GroupSpec& spec, int k) {
  check_spec(spec);
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "moment order must be >= 0");
  if (k == 0) return {1.0, true};
  const bool su = spec.family == GroupFamily::SpecialUnitary || spec.n == 2;
  double v = 1;
  if (su) {
    for (int i = 2; i <= k; ++i) v *= i;
    return {v, k <= spec.n};
  }
  for (int i = 2 * k - 1; i > 1; i -= 2) v *= i;
  return {v, k <= spec.n / 2};
}

cd Matrix::trace() const {
  cd t{};
  for (int i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

Matrix multiply(const Matrix& x, const Matrix& y) {
  Matrix z{x.n, std::vector<cd>(x.a.size())};
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k)
      for (int j = 0; j < x.n; ++j) z(i, j) += x(i, k) * y(k, j);
  return z;
}

Matrix adjoint(const Matrix& x) {
  Matrix z{x.n, std::vector<cd>(x.a.size())};
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) z(i, j) = std::conj(x(j, i));
  return z;
}

Matrix haar_sample(const GroupSpec& spec, std::uint64_t seed) {
  check_spec(spec);
  const int n = spec.n;
  std::mt19937_64 rng(splitmix(seed));
  Matrix u{n, std::vector<cd>(static_cast<std::size_t>(n) * n)};
  std::vector<cd> v(static_cast<std::size_t>(n));
  if (spec.family == GroupFamily::SpecialUnitary) {
    for (int c = 0; c < n; ++c) {
      for (auto& x : v) x = gaussian(rng);
      for (int j = 0; j < c; ++j) project_out(v, u, j);
      normalize(v);
      for (int i = 0; i < n; ++i) u(i, c) = v[i];
    }
    const cd det = determinant(u);
    const cd root = std::polar(1.0, std::arg(det) / n);
    for (auto& x : u.a) x /= root;
    return u;
  }
  const int m = n / 2;
  for (int c = 0; c < m; ++c) {
    for (auto& x : v) x = gaussian(rng);
    for (int j = 0; j < c; ++j) {
      project_out(v, u, j);
      project_out(v, u, m + j);
    }
    normalize(v);
    for (int i = 0; i < m; ++i) {
      u(i, c) = v[i];
      u(m + i, c) = v[m + i];
      u(i, m + c) = -std::conj(v[m + i]);
      u(m + i, m + c) = std::conj(v[i]);
    }
  }
  return u;
}

McEstimate mc_trace_moment(const GroupSpec& spec, int k, std::size_t samples, std::uint64_t seed) {
  check_spec(spec);
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "moment order must be >= 0");
  if (samples < 2) throw Error(ErrorCode::InsufficientSamples, "need at least two samples");
  std::vector<double> xs(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = std::norm(haar_sample(spec, splitmix(seed) ^ splitmix(i + 1)).trace());
    xs[i] = std::pow(t, k);
  }
  McEstimate est;
  est.samples = samples;
  double sum = 0;
  for (double x : xs) sum += x;
  est.mean = sum / static_cast<double>(samples);
  // Jackknife: leave-one-out means theta_i = (sum - x_i) / (n - 1).
  const double nn = static_cast<double>(samples);
  double var = 0;
  for (double x : xs) {
    const double loo = (sum - x) / (nn - 1);
    var += (loo - est.mean) * (loo - est.mean);
  }
  est.standard_error = std::sqrt((nn - 1) / nn * var);
  return est;
}

}  // namespace expsum
