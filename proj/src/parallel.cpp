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

#include "feasmass/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace feasmass {

namespace {
thread_local bool in_worker = false;
}

std::size_t worker_count() {
    if (const char *env = std::getenv("FEASMASS_THREADS")) {
        try {
            long v = std::stol(env);
            if (v > 0) {
                return static_cast<std::size_t>(v);
            }
        } catch (const std::exception &) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)> &body,
                  std::size_t min_parallel) {
    if (count == 0) {
        return;
    }
    std::size_t workers = std::min(worker_count(), count);
    if (in_worker || workers <= 1 || count < min_parallel) {
        body(0, count);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) {
            break;
        }
        threads.emplace_back([&, w, begin, end] {
            in_worker = true;
            try {
                body(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
            in_worker = false;
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace feasmass
