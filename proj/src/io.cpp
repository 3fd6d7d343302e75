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


#include "feasmass/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "feasmass/errors.hpp"

namespace feasmass {

using nlohmann::json;

namespace {

json number_or_string(double v) {
    // JSON has no infinities or NaN.
    if (std::isfinite(v)) {
        return v;
    }
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::ofstream open_for_write(const std::filesystem::path &path, std::ios::openmode mode) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, mode);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    return out;
}

std::string csv_preamble(const RunConfig &config) {
    return "# config_hash=" + config.hash() + ",seed=" + std::to_string(config.seed) + "\n";
}

}  // namespace

std::uint64_t fnv1a64(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string RunConfig::canonical_json() const {
    json j;
    j["command"] = command;
    j["experiment"] = experiment;
    j["instance"] = instance;
    j["synthetic_n"] = synthetic_n ? json(*synthetic_n) : json(nullptr);
    j["synthetic_max_entry"] = synthetic_max_entry;
    j["grid"] = {{"gamma_count", grid.gamma_count}, {"gamma_lo", grid.gamma_lo}, {"gamma_hi", grid.gamma_hi},
                 {"beta_count", grid.beta_count},   {"beta_lo", grid.beta_lo},   {"beta_hi", grid.beta_hi}};
    j["shots"] = shots;
    j["seed"] = seed;
    j["depth"] = depth;
    j["normalized_mixer"] = normalized_mixer;
    j["include_penalty"] = include_penalty;
    j["precision"] = to_string(precision);
    j["betas"] = betas;
    j["gammas"] = gammas;
    j["thresholds"] = thresholds;
    j["method"] = method;
    j["out_dir"] = out_dir.string();
    return j.dump();
}

std::string RunConfig::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a64(canonical_json()));
    return buf;
}

std::string bound_report_json(const BoundReport &report) {
    json j;
    j["name"] = report.name;
    json params = json::object();
    for (const auto &[k, v] : report.params) {
        params[k] = number_or_string(v);
    }
    j["params"] = params;
    if (report.log_value) {
        j["log_value"] = number_or_string(report.log_value->ln());
    }
    if (report.value) {
        j["value"] = number_or_string(*report.value);
    }
    j["satisfied"] = report.satisfied ? json(*report.satisfied) : json(nullptr);
    return j.dump();
}

std::string experiment_result_json(const ExperimentResult &result, const RunConfig &config) {
    json j;
    j["experiment"] = result.experiment;
    j["instance"] = result.instance;
    json params = json::object();
    for (const auto &[k, v] : result.params) {
        params[k] = v;
    }
    j["params"] = params;
    json metrics = json::object();
    for (const auto &m : result.metrics) {
        if (m.log) {
            metrics[m.name] = {{"log_value", number_or_string(m.value)}};
        } else {
            metrics[m.name] = number_or_string(m.value);
        }
    }
    j["metrics"] = metrics;
    j["seed"] = result.seed;
    j["contract_ok"] = result.contract_ok;
    if (!result.violation.empty()) {
        j["violation"] = result.violation;
    }
    j["config"] = json::parse(config.canonical_json());
    j["config_hash"] = config.hash();
    return j.dump();
}

void write_surface_csv(const std::filesystem::path &path, const std::vector<SurfacePoint> &surface,
                       const RunConfig &config) {
    auto out = open_for_write(path, std::ios::trunc);
    out << csv_preamble(config) << "gamma,beta,p_feas\n";
    for (const auto &p : surface) {
        out << format_double(p.gamma) << ',' << format_double(p.beta) << ',' << format_double(p.p_feasible) << '\n';
    }
}

void write_histogram_csv(const std::filesystem::path &path,
                         const std::vector<std::pair<Bitstring, std::uint64_t>> &counts, int num_bits,
                         const RunConfig &config) {
    auto out = open_for_write(path, std::ios::trunc);
    out << csv_preamble(config) << "bitstring,count\n";
    for (const auto &[x, c] : counts) {
        out << bitstring_to_string(x, num_bits) << ',' << c << '\n';
    }
}

void append_json_line(const std::filesystem::path &path, const std::string &line) {
    auto out = open_for_write(path, std::ios::app);
    out << line << '\n';
}

void write_json_lines(const std::filesystem::path &path, const std::vector<std::string> &lines) {
    auto out = open_for_write(path, std::ios::trunc);
    for (const auto &line : lines) {
        out << line << '\n';
    }
}

}  // namespace feasmass
