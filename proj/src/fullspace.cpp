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


#include "feasmass/fullspace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "feasmass/errors.hpp"
#include "feasmass/parallel.hpp"
#include "feasmass/random.hpp"

namespace feasmass {

namespace {

constexpr std::int64_t kMaxPhaseTable = std::int64_t{1} << 22;

template <typename Real>
double accumulate(const BasicFullState<Real> &state, const std::function<double(std::size_t, double)> &term) {
    // Fixed-size blocks summed in order, so the result does not depend on
    // how many workers ran.
    constexpr std::size_t kBlock = 4096;
    auto amps = state.amplitudes();
    std::size_t blocks = (amps.size() + kBlock - 1) / kBlock;
    std::vector<double> partial(blocks, 0.0);
    parallel_for(
        blocks,
        [&](std::size_t begin, std::size_t end) {
            for (std::size_t b = begin; b < end; b++) {
                double s = 0;
                std::size_t stop = std::min(amps.size(), (b + 1) * kBlock);
                for (std::size_t k = b * kBlock; k < stop; k++) {
                    s += term(k, std::norm(std::complex<double>(amps[k])));
                }
                partial[b] = s;
            }
        },
        8);
    double total = 0;
    for (double v : partial) {
        total += v;
    }
    return total;
}

}  // namespace

Precision parse_precision(const std::string &text) {
    if (text == "f64") {
        return Precision::f64;
    }
    if (text == "f32") {
        return Precision::f32;
    }
    throw PreconditionError("unknown precision '" + text + "' (expected f64 or f32)");
}

std::string to_string(Precision p) {
    return p == Precision::f64 ? "f64" : "f32";
}

void AngleSchedule::validate() const {
    if (gammas.empty() || gammas.size() != betas.size()) {
        throw PreconditionError("angle schedule needs equal, non-zero numbers of gammas and betas");
    }
}

template <typename Real>
BasicFullState<Real>::BasicFullState(int num_qubits, std::vector<Amplitude> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {
    if (num_qubits < 0 || num_qubits > kMaxFullQubits) {
        throw CapacityError("dense register limited to " + std::to_string(kMaxFullQubits) + " qubits, got " +
                            std::to_string(num_qubits));
    }
    if (amps_.size() != (std::size_t{1} << num_qubits)) {
        throw DimensionError("amplitude count does not match 2^N");
    }
}

template <typename Real>
double BasicFullState<Real>::norm_squared() const {
    return accumulate<Real>(*this, [](std::size_t, double p) { return p; });
}

template <typename Real>
BasicFullState<Real> init_plus(int num_qubits) {
    if (num_qubits < 0 || num_qubits > kMaxFullQubits) {
        throw CapacityError("dense register limited to " + std::to_string(kMaxFullQubits) + " qubits, got " +
                            std::to_string(num_qubits));
    }
    std::size_t dim = std::size_t{1} << num_qubits;
    Real a = static_cast<Real>(std::pow(2.0, -0.5 * num_qubits));
    return BasicFullState<Real>(num_qubits, std::vector<std::complex<Real>>(dim, std::complex<Real>(a, 0)));
}

template <typename Real>
BasicFullState<Real> basis_state(int num_qubits, Bitstring x) {
    if (num_qubits < 0 || num_qubits > kMaxFullQubits) {
        throw CapacityError("dense register limited to " + std::to_string(kMaxFullQubits) + " qubits");
    }
    std::size_t dim = std::size_t{1} << num_qubits;
    if (x >= dim) {
        throw DimensionError("basis index out of range");
    }
    std::vector<std::complex<Real>> amps(dim);
    amps[x] = 1;
    return BasicFullState<Real>(num_qubits, std::move(amps));
}

template <typename Real>
void apply_cost_phase(BasicFullState<Real> &state, const DiagonalCost &cost, double gamma) {
    if (cost.num_bits() != state.num_qubits()) {
        throw DimensionError("cost acts on " + std::to_string(cost.num_bits()) + " bits, state has " +
                             std::to_string(state.num_qubits()));
    }
    auto amps = state.amplitudes();
    auto table = cost.table();
    std::int64_t lo = cost.min_value();
    std::int64_t span = cost.spread() + 1;

    auto eval = [&](std::size_t y) -> std::int64_t {
        return table.empty() ? cost(y) : table[y];
    };
    if (span <= kMaxPhaseTable) {
        std::vector<std::complex<double>> phase(static_cast<std::size_t>(span));
        for (std::int64_t c = 0; c < span; c++) {
            phase[c] = std::polar(1.0, -gamma * static_cast<double>(lo + c));
        }
        parallel_for(amps.size(), [&](std::size_t begin, std::size_t end) {
            for (std::size_t y = begin; y < end; y++) {
                auto z = std::complex<double>(amps[y]) * phase[eval(y) - lo];
                amps[y] = std::complex<Real>(z);
            }
        });
    } else {
        parallel_for(amps.size(), [&](std::size_t begin, std::size_t end) {
            for (std::size_t y = begin; y < end; y++) {
                auto z = std::complex<double>(amps[y]) * std::polar(1.0, -gamma * static_cast<double>(eval(y)));
                amps[y] = std::complex<Real>(z);
            }
        });
    }
}

template <typename Real>
void apply_x_mixer(BasicFullState<Real> &state, double beta) {
    auto amps = state.amplitudes();
    const Real c = static_cast<Real>(std::cos(beta));
    const Real s = static_cast<Real>(std::sin(beta));
    const std::complex<Real> mis(0, -s);
    std::size_t half = amps.size() / 2;
    for (int q = 0; q < state.num_qubits(); q++) {
        std::size_t bit = std::size_t{1} << q;
        std::size_t low_mask = bit - 1;
        parallel_for(half, [&](std::size_t begin, std::size_t end) {
            for (std::size_t k = begin; k < end; k++) {
                // Insert a zero at position q to get the partner pair.
                std::size_t i = ((k & ~low_mask) << 1) | (k & low_mask);
                std::size_t j = i | bit;
                auto a = amps[i];
                auto b = amps[j];
                amps[i] = c * a + mis * b;
                amps[j] = mis * a + c * b;
            }
        });
    }
}

std::complex<double> mixer_kernel(Bitstring x, Bitstring y, double beta, int num_qubits) {
    int d = std::popcount(x ^ y);
    std::complex<double> r = std::pow(std::cos(beta), num_qubits - d);
    std::complex<double> mis(0, -std::sin(beta));
    for (int k = 0; k < d; k++) {
        r *= mis;
    }
    return r;
}

template <typename Real>
BasicFullState<Real> run_generic(const DiagonalCost &cost, const AngleSchedule &schedule) {
    schedule.validate();
    auto state = init_plus<Real>(cost.num_bits());
    for (int layer = 0; layer < schedule.depth(); layer++) {
        apply_cost_phase(state, cost, schedule.gammas[layer]);
        apply_x_mixer(state, schedule.betas[layer]);
    }
    return state;
}

template <typename Real>
double feasible_mass(const BasicFullState<Real> &state, int n) {
    if (n * n != state.num_qubits()) {
        throw DimensionError("state has " + std::to_string(state.num_qubits()) + " qubits, expected n^2 = " +
                             std::to_string(n * n));
    }
    double total = 0;
    for (Bitstring x : enumerate_feasible(n)) {
        total += std::norm(std::complex<double>(state[x]));
    }
    return total;
}

template <typename Real>
double fourth_moment(const BasicFullState<Real> &state) {
    return accumulate<Real>(state, [](std::size_t, double p) { return p * p; });
}

namespace {

template <typename ProbAt>
std::map<std::uint64_t, std::uint64_t> sample_sweep(std::size_t size, const ProbAt &prob_at, std::uint64_t shots,
                                                    std::uint64_t seed) {
    std::map<std::uint64_t, std::uint64_t> counts;
    if (shots == 0 || size == 0) {
        return counts;
    }
    double total = 0;
    for (std::size_t k = 0; k < size; k++) {
        total += prob_at(k);
    }
    if (!(total > 0)) {
        throw PreconditionError("cannot sample from a zero vector");
    }
    std::vector<double> draws(shots);
    for (std::uint64_t k = 0; k < shots; k++) {
        draws[k] = counter_uniform(seed, k) * total;
    }
    std::sort(draws.begin(), draws.end());
    double cumulative = 0;
    std::size_t index = 0;
    std::size_t last_nonzero = 0;
    for (double u : draws) {
        while (index < size) {
            double p = prob_at(index);
            if (p > 0) {
                last_nonzero = index;
            }
            if (u < cumulative + p) {
                break;
            }
            cumulative += p;
            index++;
        }
        // Rounding can push u past the final cumulative sum.
        counts[index < size ? index : last_nonzero]++;
    }
    return counts;
}

}  // namespace

std::map<std::uint64_t, std::uint64_t> sample_indices(std::span<const double> probabilities, std::uint64_t shots,
                                                      std::uint64_t seed) {
    for (double p : probabilities) {
        if (p < 0 || !std::isfinite(p)) {
            throw PreconditionError("probabilities must be finite and non-negative");
        }
    }
    return sample_sweep(
        probabilities.size(), [&](std::size_t k) { return probabilities[k]; }, shots, seed);
}

template <typename Real>
std::map<Bitstring, std::uint64_t> sample_counts(const BasicFullState<Real> &state, std::uint64_t shots,
                                                 std::uint64_t seed) {
    auto amps = state.amplitudes();
    return sample_sweep(
        amps.size(), [&](std::size_t k) { return std::norm(std::complex<double>(amps[k])); }, shots, seed);
}

#define FEASMASS_INSTANTIATE(Real)                                                                              \
    template class BasicFullState<Real>;                                                                        \
    template BasicFullState<Real> init_plus<Real>(int);                                                         \
    template BasicFullState<Real> basis_state<Real>(int, Bitstring);                                            \
    template void apply_cost_phase<Real>(BasicFullState<Real> &, const DiagonalCost &, double);                 \
    template void apply_x_mixer<Real>(BasicFullState<Real> &, double);                                          \
    template BasicFullState<Real> run_generic<Real>(const DiagonalCost &, const AngleSchedule &);               \
    template double feasible_mass<Real>(const BasicFullState<Real> &, int);                                     \
    template double fourth_moment<Real>(const BasicFullState<Real> &);                                          \
    template std::map<Bitstring, std::uint64_t> sample_counts<Real>(const BasicFullState<Real> &, std::uint64_t, \
                                                                    std::uint64_t);

FEASMASS_INSTANTIATE(double)
FEASMASS_INSTANTIATE(float)

#undef FEASMASS_INSTANTIATE

}  // namespace feasmass
