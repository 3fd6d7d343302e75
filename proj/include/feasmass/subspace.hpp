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

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "feasmass/fullspace.hpp"
#include "feasmass/instance.hpp"

namespace feasmass {

constexpr int kMaxSubspaceN = 8;

/// Amplitudes over the n^n block one-hot strings. A symbol tuple (j_0..j_{n-1})
/// has index sum_b j_b n^b (block 0 varies fastest) and corresponds to the
/// bitstring with bit b*n + j_b set in every block b.
class SubspaceState {
   public:
    SubspaceState(int n, std::vector<std::complex<double>> amps);

    int n() const {
        return n_;
    }
    std::size_t size() const {
        return amps_.size();
    }
    std::span<const std::complex<double>> amplitudes() const {
        return amps_;
    }
    std::span<std::complex<double>> amplitudes() {
        return amps_;
    }
    std::complex<double> operator[](std::size_t index) const {
        return amps_[index];
    }
    double norm_squared() const;

   private:
    int n_;
    std::vector<std::complex<double>> amps_;
};

/// n^n, or CapacityError for n outside [1, kMaxSubspaceN].
std::size_t subspace_dimension(int n);

std::vector<int> tuple_from_index(std::size_t index, int n);
std::size_t index_from_tuple(std::span<const int> tuple);
Bitstring tuple_bitstring(std::span<const int> tuple);
Bitstring index_bitstring(std::size_t index, int n);
/// True iff all symbols are distinct.
bool tuple_is_feasible(std::span<const int> tuple);

/// One permutation of [n] per block.
struct BlockPermutation {
    std::vector<std::vector<int>> perms;

    static BlockPermutation identity(int n);
    int n() const {
        return static_cast<int>(perms.size());
    }
    /// (j_0..j_{n-1}) -> (P_0(j_0)..P_{n-1}(j_{n-1})).
    std::vector<int> apply(std::span<const int> tuple) const;
    BlockPermutation inverse() const;
    /// Throws PreconditionError unless every block entry is a bijection on [n].
    void validate() const;
};

/// Product of per-block W states: every amplitude n^{-n/2}.
SubspaceState init_w_product(int n);

/// amps[t] *= exp(-i gamma C(bitstring(t))).
void apply_subspace_cost_phase(SubspaceState &state, const DiagonalCost &cost, double gamma);

/// Restriction of sum_{a<b} (X_a X_b + Y_a Y_b) on n qubits to the single
/// excitation sector, built from the Pauli action on all 2^n basis states.
/// normalized divides by (n - 1).
Eigen::MatrixXd block_xy_sector_matrix(int n, bool normalized);

/// Two-level spectrum of the sector matrix: lambda_u on the uniform vector,
/// lambda_perp on its orthogonal complement.
struct SectorSpectrum {
    double lambda_uniform;
    double lambda_perp;
    /// Largest deviation of the numerical eigenvalues from this two-level form.
    double residual;
};

/// Computed numerically once per (n, normalized) and cached.
SectorSpectrum block_xy_sector_spectrum(int n, bool normalized);

/// exp(-i beta lambda_u) P_unif + exp(-i beta lambda_perp) (I - P_unif).
Eigen::MatrixXcd block_xy_sector_unitary(int n, double beta, bool normalized);

/// Applies the sector unitary independently to each block coordinate.
void apply_block_xy_mixer(SubspaceState &state, double beta, bool normalized);

/// Depth-p CE layer stack from the W product: cost phase, then block mixer.
SubspaceState run_ce(const DiagonalCost &cost, const AngleSchedule &schedule, bool normalized);

/// Probability on tuples with all-distinct symbols.
double subspace_feasible_mass(const SubspaceState &state);

SubspaceState apply_block_permutation(const SubspaceState &state, const BlockPermutation &p);

/// Number of Monte-Carlo permutations used once exhaustive twirling is out of reach.
constexpr std::uint64_t kTwirlSamples = 100000;

struct TwirlResult {
    double mean = 0;
    double max_probability = 0;
    std::uint64_t permutations = 0;
    bool exact = false;
};

/// Average over blockwise permutations P of |<target| P^dagger U |s0>|^2 for
/// one CE layer U. Exhaustive over all (n!)^n permutations for n <= 4,
/// otherwise kTwirlSamples uniform draws from seed. The default target is
/// the identity tuple.
TwirlResult twirl_average(const DiagonalCost &cost, double gamma, double beta, bool normalized,
                          std::optional<std::vector<int>> target = std::nullopt, std::uint64_t seed = 0);

struct Relabeling {
    BlockPermutation permutation;
    double probability = 0;
    bool exact = false;
};

/// First permutation (in enumeration order) maximising the target overlap
/// probability. Exhaustive for n <= 4, otherwise best of kTwirlSamples draws.
Relabeling best_block_relabeling(const DiagonalCost &cost, double gamma, double beta, bool normalized,
                                 std::optional<std::vector<int>> target = std::nullopt, std::uint64_t seed = 0);

/// Copies the subspace amplitudes into a 2^{n^2} register. n <= 4.
FullState embed_to_full(const SubspaceState &state);

/// <psi_CE| P_OH |psi_gen> at depth one, unnormalized block mixer. n <= 4.
std::complex<double> overlap_generic_ce(const DiagonalCost &cost, double gamma, double beta);

/// Block mixer Hamiltonian as a dense n^n x n^n matrix on the subspace.
Eigen::MatrixXd dense_block_mixer(int n, bool normalized);

/// Diagonal projector onto the permutation tuples.
Eigen::MatrixXd permutation_projector(int n);

/// 2 P H (I - P) H P.
Eigen::MatrixXd double_commutator_gram(const Eigen::MatrixXd &h, const Eigen::MatrixXd &p);

/// Smallest eigenvalue of double_commutator_gram for the block mixer. n <= 3.
double double_commutator_min_eigenvalue(int n, bool normalized = false);

}  // namespace feasmass
