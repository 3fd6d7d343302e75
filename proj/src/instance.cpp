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

#include "feasmass/instance.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "feasmass/errors.hpp"
#include "feasmass/random.hpp"

namespace feasmass {

std::string bitstring_to_string(Bitstring x, int num_bits) {
    std::string out(static_cast<std::size_t>(num_bits), '0');
    for (int k = 0; k < num_bits; ++k) {
        if ((x >> k) & 1) {
            out[static_cast<std::size_t>(k)] = '1';
        }
    }
    return out;
}

Bitstring bitstring_from_string(const std::string &text) {
    if (text.size() > 64) {
        throw DimensionError("bitstring longer than 64 bits");
    }
    Bitstring x = 0;
    for (std::size_t k = 0; k < text.size(); ++k) {
        if (text[k] == '1') {
            x |= Bitstring{1} << k;
        } else if (text[k] != '0') {
            throw std::invalid_argument("bitstring may only contain '0' and '1': " + text);
        }
    }
    return x;
}

std::int64_t ProblemInstance::max_distance() const {
    return dist.empty() ? 0 : *std::max_element(dist.begin(), dist.end());
}

std::int64_t default_penalty_weight(int n, std::span<const std::int64_t> dist) {
    std::int64_t max_d = dist.empty() ? 0 : *std::max_element(dist.begin(), dist.end());
    return n * max_d + 1;
}

void validate_instance(const ProblemInstance &instance) {
    const int n = instance.n;
    if (n < 1) {
        throw DimensionError("instance size must be positive");
    }
    if (instance.dist.size() != static_cast<std::size_t>(n) * n) {
        throw DimensionError("distance matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    for (int i = 0; i < n; ++i) {
        if (instance.distance(i, i) != 0) {
            throw DimensionError("distance matrix must have a zero diagonal");
        }
    }
    for (auto d : instance.dist) {
        if (d < 0) {
            throw DimensionError("distances must be non-negative");
        }
    }
    if (instance.penalty_weight < 1) {
        throw DimensionError("penalty weight must be positive");
    }
}

namespace {

bool is_comment_or_blank(const std::string &line) {
    auto first = line.find_first_not_of(" \t\r");
    return first == std::string::npos || line[first] == '#';
}

std::vector<std::int64_t> parse_integers(const std::string &line, int line_no) {
    std::vector<std::int64_t> out;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc() || ptr != token.data() + token.size()) {
            throw ParseError("expected an integer, got '" + token + "'", line_no);
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace

ProblemInstance parse_instance(const std::string &text, const std::string &name,
                               std::optional<std::int64_t> penalty_weight) {
    ProblemInstance inst;
    inst.name = name;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int rows = 0;
    bool have_n = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) {
            continue;
        }
        auto values = parse_integers(line, line_no);
        if (!have_n) {
            if (values.size() != 1) {
                throw ParseError("first line must hold the instance size only", line_no);
            }
            if (values[0] < 1 || values[0] > 64) {
                throw ParseError("instance size out of range: " + std::to_string(values[0]), line_no);
            }
            inst.n = static_cast<int>(values[0]);
            have_n = true;
            continue;
        }
        if (rows == inst.n) {
            throw DimensionError("line " + std::to_string(line_no) + ": more than " + std::to_string(inst.n) +
                                 " matrix rows");
        }
        if (values.size() != static_cast<std::size_t>(inst.n)) {
            throw DimensionError("line " + std::to_string(line_no) + ": expected " + std::to_string(inst.n) +
                                 " entries, found " + std::to_string(values.size()));
        }
        inst.dist.insert(inst.dist.end(), values.begin(), values.end());
        ++rows;
    }
    if (!have_n) {
        throw ParseError("missing instance size", line_no);
    }
    if (rows != inst.n) {
        throw DimensionError("expected " + std::to_string(inst.n) + " matrix rows, found " + std::to_string(rows));
    }
    inst.penalty_weight = penalty_weight.value_or(default_penalty_weight(inst.n, inst.dist));
    validate_instance(inst);
    return inst;
}

ProblemInstance load_qoptlib_instance(const std::filesystem::path &path, std::optional<std::int64_t> penalty_weight) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open instance file: " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str(), path.stem().string(), penalty_weight);
}

ProblemInstance make_synthetic_instance(int n, std::int64_t max_entry, std::uint64_t seed) {
    if (n < 1 || max_entry < 1) {
        throw PreconditionError("synthetic instance needs n >= 1 and max_entry >= 1");
    }
    ProblemInstance inst;
    inst.name = "synthetic-n" + std::to_string(n) + "-s" + std::to_string(seed);
    inst.n = n;
    inst.dist.assign(static_cast<std::size_t>(n) * n, 0);
    std::uint64_t counter = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            auto d = static_cast<std::int64_t>(counter_bits(seed, counter++) % static_cast<std::uint64_t>(max_entry)) + 1;
            inst.dist[static_cast<std::size_t>(i) * n + j] = d;
            inst.dist[static_cast<std::size_t>(j) * n + i] = d;
        }
    }
    inst.penalty_weight = default_penalty_weight(n, inst.dist);
    return inst;
}

bool is_permutation_feasible(Bitstring x, int n) {
    const Bitstring row_mask = (Bitstring{1} << n) - 1;
    Bitstring seen = 0;
    for (int i = 0; i < n; ++i) {
        Bitstring row = (x >> (i * n)) & row_mask;
        if (std::popcount(row) != 1 || (seen & row)) {
            return false;
        }
        seen |= row;
    }
    return true;
}

Bitstring permutation_bitstring(std::span<const int> perm) {
    const int n = static_cast<int>(perm.size());
    Bitstring x = 0;
    for (int i = 0; i < n; ++i) {
        x |= Bitstring{1} << bit_index(i, perm[static_cast<std::size_t>(i)], n);
    }
    return x;
}

std::vector<Bitstring> enumerate_feasible(int n) {
    if (n < 1) {
        throw PreconditionError("n must be positive");
    }
    if (n > 8) {
        throw CapacityError("enumerate_feasible supports n <= 8, got " + std::to_string(n));
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Bitstring> out;
    do {
        out.push_back(permutation_bitstring(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

DiagonalCost DiagonalCost::from_table(std::vector<std::int64_t> values) {
    if (values.empty() || !std::has_single_bit(values.size())) {
        throw DimensionError("cost table length must be a power of two");
    }
    DiagonalCost cost;
    cost.num_bits_ = std::countr_zero(values.size());
    int root = 0;
    while (root * root < cost.num_bits_) {
        ++root;
    }
    cost.n_ = root * root == cost.num_bits_ ? root : 0;
    cost.include_penalty_ = false;
    cost.table_ = std::move(values);
    auto [lo, hi] = std::minmax_element(cost.table_.begin(), cost.table_.end());
    cost.min_value_ = *lo;
    cost.max_value_ = *hi;
    return cost;
}

std::int64_t DiagonalCost::penalty(Bitstring y) const {
    if (!structured_) {
        return 0;
    }
    const int n = n_;
    const Bitstring row_mask = (Bitstring{1} << n) - 1;
    std::int64_t total = 0;
    for (int i = 0; i < n; ++i) {
        std::int64_t r = std::popcount((y >> (i * n)) & row_mask) - 1;
        total += r * r;
    }
    for (int j = 0; j < n; ++j) {
        std::int64_t c = -1;
        for (int i = 0; i < n; ++i) {
            c += static_cast<std::int64_t>((y >> bit_index(i, j, n)) & 1);
        }
        total += c * c;
    }
    return total;
}

std::int64_t DiagonalCost::tour_length(Bitstring y) const {
    if (!structured_) {
        return 0;
    }
    const int n = n_;
    const Bitstring row_mask = (Bitstring{1} << n) - 1;
    std::int64_t total = 0;
    for (int t = 0; t < n; ++t) {
        Bitstring here = (y >> (t * n)) & row_mask;
        Bitstring next = (y >> (((t + 1) % n) * n)) & row_mask;
        for (Bitstring a = here; a; a &= a - 1) {
            int u = std::countr_zero(a);
            for (Bitstring b = next; b; b &= b - 1) {
                int v = std::countr_zero(b);
                total += dist_[static_cast<std::size_t>(u) * n + v];
            }
        }
    }
    return total;
}

std::int64_t DiagonalCost::structured(Bitstring y) const {
    std::int64_t c = tour_length(y);
    if (include_penalty_) {
        c += penalty_weight_ * penalty(y);
    }
    return c;
}

std::int64_t DiagonalCost::operator()(Bitstring y) const {
    if (!table_.empty()) {
        return table_[y];
    }
    return structured(y);
}

DiagonalCost build_cost(const ProblemInstance &instance, bool include_penalty) {
    validate_instance(instance);
    const int n = instance.n;
    if (n > 8) {
        throw CapacityError("cost over n*n qubits supports n <= 8");
    }
    DiagonalCost cost;
    cost.n_ = n;
    cost.num_bits_ = n * n;
    cost.dist_ = instance.dist;
    cost.penalty_weight_ = instance.penalty_weight;
    cost.include_penalty_ = include_penalty;
    cost.structured_ = true;
    if (cost.num_bits_ <= DiagonalCost::kMaxTabulatedBits) {
        cost.table_.resize(std::size_t{1} << cost.num_bits_);
        for (std::size_t y = 0; y < cost.table_.size(); ++y) {
            cost.table_[y] = cost.structured(y);
        }
        auto [lo, hi] = std::minmax_element(cost.table_.begin(), cost.table_.end());
        cost.min_value_ = *lo;
        cost.max_value_ = *hi;
    } else {
        // Every row/column sum lies in [0, n], so each squared deviation is at
        // most (n-1)^2; the bilinear tour form is at most n * sum(dist).
        std::int64_t dist_sum = std::accumulate(instance.dist.begin(), instance.dist.end(), std::int64_t{0});
        std::int64_t pen_max = 2 * static_cast<std::int64_t>(n) * (n - 1) * (n - 1);
        cost.min_value_ = 0;
        cost.max_value_ = n * dist_sum + (include_penalty ? instance.penalty_weight * pen_max : 0);
    }
    return cost;
}

}  // namespace feasmass
