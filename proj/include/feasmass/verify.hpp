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

#include <string>
#include <vector>

namespace feasmass {

enum class CheckStatus { pass, fail, warn };
std::string to_string(CheckStatus s);

struct CheckLine {
    std::string suite;
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;  // measured values and slack
};

/// Invariant batteries: "harmonic", "twirl", "bounds" or "all". Known
/// discrepancies in the published statements come back as warn, not fail.
std::vector<CheckLine> run_verify_suite(const std::string &suite);

bool all_passed(const std::vector<CheckLine> &lines);

}  // namespace feasmass
