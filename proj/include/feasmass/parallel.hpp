// Copyright 2026 The feasmass Authors
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

namespace feasmass {

/// Worker cap: FEASMASS_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
std::size_t worker_count();

/// Splits [0, count) into contiguous disjoint ranges and runs body(begin, end)
/// on each, concurrently when count >= min_parallel. Calls made from inside
/// a worker run serially, so nested use never oversubscribes.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)> &body,
                  std::size_t min_parallel = std::size_t{1} << 15);

}  // namespace feasmass
