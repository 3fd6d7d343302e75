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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "feasmass/instance.hpp"

namespace feasmass {

/// Largest dense register: 2^25 amplitudes (512 MB at double precision).
constexpr int kMaxFullQubits = 25;

enum class Precision { f64, f32 };

Precision parse_precision(const std::string &text);
std::string to_string(Precision p);

/// Cost and mixer angles of a depth-p circuit, applied in order gammas[0],
/// betas[0], gammas[1], ...
struct AngleSchedule {
    std::vector<double> gammas;
    std::vector<double> betas;

    static AngleSchedule single(double gamma, double beta) {
        return AngleSchedule{{gamma}, {beta}};
    }
    int depth() const {
        return static_cast<int>(gammas.size());
    }
    /// Throws PreconditionError unless both lists have the same positive length.
    void validate() const;
};

/// Dense statevector over {0,1}^N. Real selects the storage precision;
/// reductions are always accumulated in double.
template <typename Real>
class BasicFullState {
   public:
    using Amplitude = std::complex<Real>;

    BasicFullState(int num_qubits, std::vector<Amplitude> amps);

    int num_qubits() const {
        return num_qubits_;
    }
    std::size_t size() const {
        return amps_.size();
    }
    std::span<const Amplitude> amplitudes() const {
        return amps_;
    }
    std::span<Amplitude> amplitudes() {
        return amps_;
    }
    Amplitude operator[](Bitstring x) const {
        return amps_[x];
    }
    double norm_squared() const;

   private:
    int num_qubits_;
    std::vector<Amplitude> amps_;
};

using FullState = BasicFullState<double>;
using FullStateF32 = BasicFullState<float>;

/// |+>^N. Throws CapacityError for N > kMaxFullQubits.
template <typename Real = double>
BasicFullState<Real> init_plus(int num_qubits);

/// Computational basis state |x>.
template <typename Real = double>
BasicFullState<Real> basis_state(int num_qubits, Bitstring x);

/// amps[y] *= exp(-i gamma C(y)).
template <typename Real>
void apply_cost_phase(BasicFullState<Real> &state, const DiagonalCost &cost, double gamma);

/// exp(-i beta X) on every qubit, one butterfly pass per qubit.
template <typename Real>
void apply_x_mixer(BasicFullState<Real> &state, double beta);

/// <x| exp(-i beta sum_j X_j) |y> = cos(beta)^(N-d) (-i sin(beta))^d, d = |x xor y|.
std::complex<double> mixer_kernel(Bitstring x, Bitstring y, double beta, int num_qubits);

/// Generic QAOA from |+>^N: cost phase then X mixer, once per layer.
template <typename Real = double>
BasicFullState<Real> run_generic(const DiagonalCost &cost, const AngleSchedule &schedule);

/// Probability mass on the n! permutation matrices.
template <typename Real>
double feasible_mass(const BasicFullState<Real> &state, int n);

/// sum_x |a_x|^4.
template <typename Real>
double fourth_moment(const BasicFullState<Real> &state);

/// shots i.i.d. draws from |amps|^2. The k-th draw uses counter k of the
/// seeded counter generator; draws are sorted and matched against a single
/// cumulative pass over the amplitudes.
template <typename Real>
std::map<Bitstring, std::uint64_t> sample_counts(const BasicFullState<Real> &state, std::uint64_t shots,
                                                 std::uint64_t seed);

/// Inverse-CDF sampling over an explicit probability vector, shared by the
/// full-space and subspace samplers. Returns counts keyed by index.
std::map<std::uint64_t, std::uint64_t> sample_indices(std::span<const double> probabilities, std::uint64_t shots,
                                                      std::uint64_t seed);

}  // namespace feasmass
