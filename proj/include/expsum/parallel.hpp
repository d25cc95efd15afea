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

#include <cstddef>
#include <functional>

namespace expsum {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Index i always
/// lands on worker i % threads, so callers that write to slot i get the
/// same output for any thread count. If several calls throw, the exception
/// from the lowest index is rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// 0 means "use the hardware", clamped to at least 1.
unsigned resolve_threads(unsigned requested) noexcept;

}  // namespace expsum
