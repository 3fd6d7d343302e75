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
#include <span>
#include <string>
#include <vector>

namespace feasmass {

/// A computational basis state over N = n*n qubits.
///
/// Bit (i * n + j) is x_{i,j}: city j sits at tour position i. Rows are
/// positions, columns are cities. The text form writes bit 0 first, so the
/// string reads the n x n matrix row by row ("1001" is the 2x2 identity).
using Bitstring = std::uint64_t;

constexpr int bit_index(int row, int col, int n) {
    return row * n + col;
}

std::string bitstring_to_string(Bitstring x, int num_bits);
Bitstring bitstring_from_string(const std::string &text);

/// Integer TSP instance. dist is stored row-major, n*n entries.
struct ProblemInstance {
    std::string name;
    int n = 0;
    std::vector<std::int64_t> dist;
    std::int64_t penalty_weight = 1;

    std::int64_t distance(int from, int to) const {
        return dist[static_cast<std::size_t>(from) * n + to];
    }
    std::int64_t max_distance() const;
    int num_qubits() const {
        return n * n;
    }
};

/// n * max(dist) + 1: any infeasible string then costs more than any tour.
std::int64_t default_penalty_weight(int n, std::span<const std::int64_t> dist);

/// Validates shape, zero diagonal and non-negativity. Throws DimensionError.
void validate_instance(const ProblemInstance &instance);

/// Parses "n" followed by n rows of n integers. Lines whose first
/// non-blank character is '#' are skipped anywhere in the file.
ProblemInstance parse_instance(const std::string &text, const std::string &name,
                               std::optional<std::int64_t> penalty_weight = std::nullopt);

/// Reads a QOptLib-style instance file. The instance name is the file stem.
ProblemInstance load_qoptlib_instance(const std::filesystem::path &path,
                                      std::optional<std::int64_t> penalty_weight = std::nullopt);

/// Deterministic random symmetric instance with entries in [1, max_entry].
ProblemInstance make_synthetic_instance(int n, std::int64_t max_entry, std::uint64_t seed);

/// True iff every row sum and every column sum of X(x) equals 1.
bool is_permutation_feasible(Bitstring x, int n);

/// Bitstring of the permutation matrix that places city perm[i] at position i.
Bitstring permutation_bitstring(std::span<const int> perm);

/// All n! permutation matrices, in lexicographic order of the permutation
/// (position -> city). Throws CapacityError for n > 8.
std::vector<Bitstring> enumerate_feasible(int n);

/// Diagonal cost C(y) over {0,1}^N with lattice unit omega = 1.
///
/// Either the structured TSP form
///     C(y) = A * [sum_i (row_i(y) - 1)^2 + sum_j (col_j(y) - 1)^2]
///          + sum_t sum_{u,v} dist[u][v] * y_{t,u} * y_{t+1 mod n, v}
/// or an explicit table over all 2^N strings. For N <= 16 the structured
/// form is tabulated at construction.
class DiagonalCost {
   public:
    static constexpr int kMaxTabulatedBits = 16;

    /// An explicit integer cost table; its length must be a power of two.
    static DiagonalCost from_table(std::vector<std::int64_t> values);

    int n() const {
        return n_;
    }
    int num_bits() const {
        return num_bits_;
    }
    /// Lattice unit: C(y) = omega * h(y) with integer h.
    std::int64_t omega() const {
        return 1;
    }
    std::int64_t operator()(Bitstring y) const;
    std::int64_t penalty(Bitstring y) const;
    std::int64_t tour_length(Bitstring y) const;

    /// Lower and upper bounds on C over {0,1}^N. Exact when tabulated.
    std::int64_t min_value() const {
        return min_value_;
    }
    std::int64_t max_value() const {
        return max_value_;
    }
    /// max |h(y) - h(y')|, or a valid upper bound on it when not tabulated.
    std::int64_t spread() const {
        return max_value_ - min_value_;
    }
    bool spread_is_exact() const {
        return !table_.empty();
    }
    bool has_penalty() const {
        return include_penalty_;
    }
    std::span<const std::int64_t> table() const {
        return table_;
    }

   private:
    friend DiagonalCost build_cost(const ProblemInstance &, bool);
    DiagonalCost() = default;
    std::int64_t structured(Bitstring y) const;

    int n_ = 0;
    int num_bits_ = 0;
    std::vector<std::int64_t> dist_;
    std::int64_t penalty_weight_ = 0;
    bool include_penalty_ = true;
    bool structured_ = false;
    std::vector<std::int64_t> table_;
    std::int64_t min_value_ = 0;
    std::int64_t max_value_ = 0;
};

/// Builds the penalised tour cost. With include_penalty = false only the
/// bilinear tour form is kept (raw tour cost).
DiagonalCost build_cost(const ProblemInstance &instance, bool include_penalty = true);

}  // namespace feasmass
