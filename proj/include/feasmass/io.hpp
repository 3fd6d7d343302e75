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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "feasmass/bounds.hpp"
#include "feasmass/experiments.hpp"

namespace feasmass {

/// Everything that determines a run's outputs. Its canonical JSON form is
/// written into every result record and hashed into the run identifier.
struct RunConfig {
    std::string command;
    std::string experiment;
    std::string instance;  // path or bundled name; empty when synthetic
    std::optional<int> synthetic_n;
    std::int64_t synthetic_max_entry = 5;
    GridSpec grid;
    std::uint64_t shots = 500000;
    std::uint64_t seed = 1;
    int depth = 1;
    bool normalized_mixer = false;
    bool include_penalty = true;
    Precision precision = Precision::f64;
    std::vector<double> betas;
    std::vector<double> gammas;
    std::vector<double> thresholds;
    std::string method = "ce";
    std::filesystem::path out_dir = ".";

    std::string canonical_json() const;
    /// 64-bit FNV-1a of canonical_json(), as 16 hex digits.
    std::string hash() const;
};

std::uint64_t fnv1a64(const std::string &bytes);

/// %.17g.
std::string format_double(double v);

std::string bound_report_json(const BoundReport &report);
std::string experiment_result_json(const ExperimentResult &result, const RunConfig &config);

/// "# config_hash=<hash>,seed=<seed>" followed by the header and rows.
void write_surface_csv(const std::filesystem::path &path, const std::vector<SurfacePoint> &surface,
                       const RunConfig &config);
void write_histogram_csv(const std::filesystem::path &path,
                         const std::vector<std::pair<Bitstring, std::uint64_t>> &counts, int num_bits,
                         const RunConfig &config);
/// Appends one line to a JSON-lines file.
void append_json_line(const std::filesystem::path &path, const std::string &line);
/// Truncates then writes the lines.
void write_json_lines(const std::filesystem::path &path, const std::vector<std::string> &lines);

}  // namespace feasmass
