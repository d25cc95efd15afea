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

#include "expsum/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace expsum {

unsigned resolve_threads(unsigned requested) noexcept {
  if (requested == 0) requested = std::thread::hardware_concurrency();
  return std::max(1u, requested);
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  // First failure per worker; each worker walks indices in increasing order,
  // so its first failure is its lowest.
  std::vector<std::exception_ptr> err(threads);
  std::vector<std::size_t> err_at(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) {
        try {
          fn(i);
        } catch (...) {
          err[t] = std::current_exception();
          err_at[t] = i;
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  std::size_t best = n;
  std::exception_ptr e;
  for (unsigned t = 0; t < threads; ++t)
    if (err[t] && err_at[t] < best) {
      best = err_at[t];
      e = err[t];
    }
  if (e) std::rethrow_exception(e);
}

}  // namespace expsum
