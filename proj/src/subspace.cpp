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


#include "feasmass/subspace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "feasmass/errors.hpp"
#include "feasmass/parallel.hpp"
#include "feasmass/random.hpp"

namespace feasmass {

SubspaceState::SubspaceState(int n, std::vector<std::complex<double>> amps) : n_(n), amps_(std::move(amps)) {
    if (amps_.size() != subspace_dimension(n)) {
        throw DimensionError("subspace amplitude count does not match n^n");
    }
}

double SubspaceState::norm_squared() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

std::size_t subspace_dimension(int n) {
    if (n < 1 || n > kMaxSubspaceN) {
        throw CapacityError("subspace simulation supports 1 <= n <= " + std::to_string(kMaxSubspaceN) + ", got " +
                            std::to_string(n));
    }
    std::size_t d = 1;
    for (int b = 0; b < n; b++) {
        d *= static_cast<std::size_t>(n);
    }
    return d;
}

std::vector<int> tuple_from_index(std::size_t index, int n) {
    std::vector<int> t(n);
    for (int b = 0; b < n; b++) {
        t[b] = static_cast<int>(index % n);
        index /= n;
    }
    return t;
}

std::size_t index_from_tuple(std::span<const int> tuple) {
    std::size_t n = tuple.size();
    std::size_t index = 0;
    for (std::size_t b = n; b-- > 0;) {
        if (tuple[b] < 0 || static_cast<std::size_t>(tuple[b]) >= n) {
            throw DimensionError("tuple symbol out of range");
        }
        index = index * n + tuple[b];
    }
    return index;
}

Bitstring tuple_bitstring(std::span<const int> tuple) {
    int n = static_cast<int>(tuple.size());
    Bitstring x = 0;
    for (int b = 0; b < n; b++) {
        x |= Bitstring{1} << bit_index(b, tuple[b], n);
    }
    return x;
}

Bitstring index_bitstring(std::size_t index, int n) {
    Bitstring x = 0;
    for (int b = 0; b < n; b++) {
        x |= Bitstring{1} << bit_index(b, static_cast<int>(index % n), n);
        index /= n;
    }
    return x;
}

bool tuple_is_feasible(std::span<const int> tuple) {
    std::uint64_t seen = 0;
    for (int j : tuple) {
        if (seen >> j & 1) {
            return false;
        }
        seen |= std::uint64_t{1} << j;
    }
    return true;
}

namespace {

bool index_is_feasible(std::size_t index, int n) {
    std::uint32_t seen = 0;
    for (int b = 0; b < n; b++) {
        int j = static_cast<int>(index % n);
        index /= n;
        if (seen >> j & 1) {
            return false;
        }
        seen |= 1u << j;
    }
    return true;
}

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<int> random_permutation(int n, std::uint64_t seed, std::uint64_t &counter) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; i--) {
        auto j = static_cast<int>(counter_bits(seed, counter++) % static_cast<std::uint64_t>(i + 1));
        std::swap(p[i], p[j]);
    }
    return p;
}

}  // namespace

BlockPermutation BlockPermutation::identity(int n) {
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    return BlockPermutation{std::vector<std::vector<int>>(n, id)};
}

std::vector<int> BlockPermutation::apply(std::span<const int> tuple) const {
    if (tuple.size() != perms.size()) {
        throw DimensionError("tuple length does not match block count");
    }
    std::vector<int> out(tuple.size());
    for (std::size_t b = 0; b < tuple.size(); b++) {
        out[b] = perms[b][tuple[b]];
    }
    return out;
}

BlockPermutation BlockPermutation::inverse() const {
    BlockPermutation inv{perms};
    for (std::size_t b = 0; b < perms.size(); b++) {
        for (std::size_t j = 0; j < perms[b].size(); j++) {
            inv.perms[b][perms[b][j]] = static_cast<int>(j);
        }
    }
    return inv;
}

void BlockPermutation::validate() const {
    int n = this->n();
    for (const auto &p : perms) {
        if (static_cast<int>(p.size()) != n) {
            throw PreconditionError("block permutation has wrong length");
        }
        std::vector<bool> hit(n, false);
        for (int v : p) {
            if (v < 0 || v >= n || hit[v]) {
                throw PreconditionError("block permutation entry is not a bijection");
            }
            hit[v] = true;
        }
    }
}

SubspaceState init_w_product(int n) {
    std::size_t d = subspace_dimension(n);
    return SubspaceState(n, std::vector<std::complex<double>>(d, std::pow(static_cast<double>(n), -0.5 * n)));
}

void apply_subspace_cost_phase(SubspaceState &state, const DiagonalCost &cost, double gamma) {
    int n = state.n();
    if (cost.n() != n) {
        throw DimensionError("cost built for n = " + std::to_string(cost.n()) + ", state has n = " +
                             std::to_string(n));
    }
    auto amps = state.amplitudes();
    parallel_for(amps.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; t++) {
            amps[t] *= std::polar(1.0, -gamma * static_cast<double>(cost(index_bitstring(t, n))));
        }
    });
}

Eigen::MatrixXd block_xy_sector_matrix(int n, bool normalized) {
    if (n < 1 || n > kMaxSubspaceN) {
        throw CapacityError("block size out of range");
    }
    std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    const std::complex<double> i(0, 1);
    for (int a = 0; a < n; a++) {
        for (int b = a + 1; b < n; b++) {
            std::size_t flip = (std::size_t{1} << a) | (std::size_t{1} << b);
            for (std::size_t z = 0; z < dim; z++) {
                // Y|0> = i|1>, Y|1> = -i|0>.
                std::complex<double> ya = (z >> a & 1) ? -i : i;
                std::complex<double> yb = (z >> b & 1) ? -i : i;
                full(z ^ flip, z) += 1.0 + ya * yb;
            }
        }
    }
    Eigen::MatrixXd sector(n, n);
    double leak = 0;
    for (int c = 0; c < n; c++) {
        std::size_t col = std::size_t{1} << c;
        for (std::size_t r = 0; r < dim; r++) {
            if (std::popcount(r) == 1) {
                int row = std::countr_zero(r);
                sector(row, c) = full(r, col).real();
                leak = std::max(leak, std::abs(full(r, col).imag()));
            } else {
                leak = std::max(leak, std::abs(full(r, col)));
            }
        }
    }
    if (leak > 1e-12) {
        throw std::logic_error("XY term leaks out of the single-excitation sector");
    }
    if (normalized && n > 1) {
        sector /= static_cast<double>(n - 1);
    }
    return sector;
}

SectorSpectrum block_xy_sector_spectrum(int n, bool normalized) {
    static std::mutex mutex;
    static std::map<std::pair<int, bool>, SectorSpectrum> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(n, normalized);
    if (auto it = cache.find(key); it != cache.end()) {
        return it->second;
    }
    Eigen::MatrixXd m = block_xy_sector_matrix(n, normalized);
    Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    SectorSpectrum s{};
    s.lambda_uniform = u.dot(m * u);
    s.residual = (m * u - s.lambda_uniform * u).norm();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    auto closest = std::min_element(ev.begin(), ev.end(), [&](double a, double b) {
        return std::abs(a - s.lambda_uniform) < std::abs(b - s.lambda_uniform);
    });
    ev.erase(closest);
    s.lambda_perp = 0;
    if (!ev.empty()) {
        s.lambda_perp = std::accumulate(ev.begin(), ev.end(), 0.0) / static_cast<double>(ev.size());
        for (double v : ev) {
            s.residual = std::max(s.residual, std::abs(v - s.lambda_perp));
        }
    }
    if (s.residual > 1e-9) {
        throw std::logic_error("block XY sector matrix is not two-level");
    }
    cache.emplace(key, s);
    return s;
}

Eigen::MatrixXcd block_xy_sector_unitary(int n, double beta, bool normalized) {
    auto s = block_xy_sector_spectrum(n, normalized);
    std::complex<double> eu = std::polar(1.0, -beta * s.lambda_uniform);
    std::complex<double> ep = std::polar(1.0, -beta * s.lambda_perp);
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Constant(n, n, 1.0 / n);
    return eu * p + ep * (Eigen::MatrixXcd::Identity(n, n) - p);
}

void apply_block_xy_mixer(SubspaceState &state, double beta, bool normalized) {
    int n = state.n();
    auto s = block_xy_sector_spectrum(n, normalized);
    std::complex<double> eu = std::polar(1.0, -beta * s.lambda_uniform);
    std::complex<double> ep = std::polar(1.0, -beta * s.lambda_perp);
    auto amps = state.amplitudes();
    std::size_t fibers = amps.size() / n;
    std::size_t stride = 1;
    for (int b = 0; b < n; b++) {
        // v -> ep v + (eu - ep) mean(v) 1 on every fiber along block b.
        parallel_for(fibers, [&](std::size_t begin, std::size_t end) {
            for (std::size_t f = begin; f < end; f++) {
                std::size_t base = (f / stride) * stride * n + f % stride;
                std::complex<double> mean = 0;
                for (int j = 0; j < n; j++) {
                    mean += amps[base + j * stride];
                }
                mean *= (eu - ep) / static_cast<double>(n);
                for (int j = 0; j < n; j++) {
                    auto &a = amps[base + j * stride];
                    a = ep * a + mean;
                }
            }
        });
        stride *= n;
    }
}

SubspaceState run_ce(const DiagonalCost &cost, const AngleSchedule &schedule, bool normalized) {
    schedule.validate();
    auto state = init_w_product(cost.n());
    for (int layer = 0; layer < schedule.depth(); layer++) {
        apply_subspace_cost_phase(state, cost, schedule.gammas[layer]);
        apply_block_xy_mixer(state, schedule.betas[layer], normalized);
    }
    return state;
}

double subspace_feasible_mass(const SubspaceState &state) {
    double total = 0;
    for (std::size_t t = 0; t < state.size(); t++) {
        if (index_is_feasible(t, state.n())) {
            total += std::norm(state[t]);
        }
    }
    return total;
}

SubspaceState apply_block_permutation(const SubspaceState &state, const BlockPermutation &p) {
    int n = state.n();
    if (p.n() != n) {
        throw DimensionError("block permutation size does not match state");
    }
    p.validate();
    std::vector<std::complex<double>> out(state.size());
    for (std::size_t t = 0; t < state.size(); t++) {
        auto tuple = tuple_from_index(t, n);
        out[index_from_tuple(p.apply(tuple))] = state[t];
    }
    return SubspaceState(n, std::move(out));
}

namespace {

std::vector<int> resolve_target(int n, const std::optional<std::vector<int>> &target) {
    if (!target) {
        std::vector<int> id(n);
        std::iota(id.begin(), id.end(), 0);
        return id;
    }
    if (static_cast<int>(target->size()) != n) {
        throw DimensionError("target tuple must have n symbols");
    }
    for (int j : *target) {
        if (j < 0 || j >= n) {
            throw DimensionError("target symbol out of range");
        }
    }
    return *target;
}

/// Visits blockwise permutations: every one when exhaustive, else samples.
/// The visitor gets the permutation and the probability |(U s0)[P target]|^2.
template <typename Visit>
TwirlResult visit_permutations(const DiagonalCost &cost, double gamma, double beta, bool normalized,
                               const std::vector<int> &target, std::uint64_t seed, const Visit &visit) {
    int n = cost.n();
    auto state = run_ce(cost, AngleSchedule::single(gamma, beta), normalized);
    TwirlResult r;
    double sum = 0;
    auto record = [&](const BlockPermutation &p) {
        double prob = std::norm(state[index_from_tuple(p.apply(target))]);
        sum += prob;
        r.max_probability = std::max(r.max_probability, prob);
        r.permutations++;
        visit(p, prob);
    };
    if (n <= 4) {
        r.exact = true;
        auto perms = all_permutations(n);
        std::vector<std::size_t> digit(n, 0);
        BlockPermutation p{std::vector<std::vector<int>>(n, perms[0])};
        while (true) {
            record(p);
            int b = 0;
            while (b < n && ++digit[b] == perms.size()) {
                digit[b] = 0;
                p.perms[b] = perms[0];
                b++;
            }
            if (b == n) {
                break;
            }
            p.perms[b] = perms[digit[b]];
        }
    } else {
        std::uint64_t counter = 0;
        for (std::uint64_t k = 0; k < kTwirlSamples; k++) {
            BlockPermutation p;
            for (int b = 0; b < n; b++) {
                p.perms.push_back(random_permutation(n, seed, counter));
            }
            record(p);
        }
    }
    r.mean = sum / static_cast<double>(r.permutations);
    return r;
}

}  // namespace

TwirlResult twirl_average(const DiagonalCost &cost, double gamma, double beta, bool normalized,
                          std::optional<std::vector<int>> target, std::uint64_t seed) {
    auto t = resolve_target(cost.n(), target);
    return visit_permutations(cost, gamma, beta, normalized, t, seed, [](const BlockPermutation &, double) {});
}

Relabeling best_block_relabeling(const DiagonalCost &cost, double gamma, double beta, bool normalized,
                                 std::optional<std::vector<int>> target, std::uint64_t seed) {
    auto t = resolve_target(cost.n(), target);
    Relabeling best;
    best.probability = -1;
    auto r = visit_permutations(cost, gamma, beta, normalized, t, seed, [&](const BlockPermutation &p, double prob) {
        if (prob > best.probability) {
            best.probability = prob;
            best.permutation = p;
        }
    });
    best.exact = r.exact;
    return best;
}

FullState embed_to_full(const SubspaceState &state) {
    int n = state.n();
    if (n > 4) {
        throw CapacityError("embedding into the full space requires n <= 4");
    }
    std::vector<std::complex<double>> amps(std::size_t{1} << (n * n));
    for (std::size_t t = 0; t < state.size(); t++) {
        amps[index_bitstring(t, n)] = state[t];
    }
    return FullState(n * n, std::move(amps));
}

std::complex<double> overlap_generic_ce(const DiagonalCost &cost, double gamma, double beta) {
    int n = cost.n();
    if (n > 4) {
        throw CapacityError("generic/CE overlap requires n <= 4");
    }
    auto schedule = AngleSchedule::single(gamma, beta);
    auto ce = run_ce(cost, schedule, false);
    auto gen = run_generic<double>(cost, schedule);
    std::complex<double> total = 0;
    for (std::size_t t = 0; t < ce.size(); t++) {
        total += std::conj(ce[t]) * gen[index_bitstring(t, n)];
    }
    return total;
}

Eigen::MatrixXd dense_block_mixer(int n, bool normalized) {
    if (n > 4) {
        throw CapacityError("dense block mixer requires n <= 4");
    }
    std::size_t d = subspace_dimension(n);
    Eigen::MatrixXd m = block_xy_sector_matrix(n, normalized);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    std::size_t stride = 1;
    for (int b = 0; b < n; b++) {
        for (std::size_t t = 0; t < d; t++) {
            int j = static_cast<int>(t / stride % n);
            std::size_t base = t - j * stride;
            for (int k = 0; k < n; k++) {
                h(base + k * stride, t) += m(k, j);
            }
        }
        stride *= n;
    }
    return h;
}

Eigen::MatrixXd permutation_projector(int n) {
    std::size_t d = subspace_dimension(n);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t t = 0; t < d; t++) {
        if (index_is_feasible(t, n)) {
            p(t, t) = 1;
        }
    }
    return p;
}

Eigen::MatrixXd double_commutator_gram(const Eigen::MatrixXd &h, const Eigen::MatrixXd &p) {
    if (h.rows() != h.cols() || p.rows() != h.rows() || p.cols() != h.cols()) {
        throw DimensionError("gram operands must be square and of equal size");
    }
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(h.rows(), h.cols());
    return 2.0 * p * h * (id - p) * h * p;
}

double double_commutator_min_eigenvalue(int n, bool normalized) {
    if (n > 3) {
        throw CapacityError("double-commutator gram requires n <= 3");
    }
    Eigen::MatrixXd g = double_commutator_gram(dense_block_mixer(n, normalized), permutation_projector(n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver((g + g.transpose()) / 2);
    return solver.eigenvalues().minCoeff();
}

}  // namespace feasmass
