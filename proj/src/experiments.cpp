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


#include "feasmass/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "feasmass/errors.hpp"
#include "feasmass/parallel.hpp"

namespace feasmass {

namespace {

std::vector<double> linspace(int count, double lo, double hi) {
    std::vector<double> v(count);
    for (int k = 0; k < count; k++) {
        v[k] = count == 1 ? lo : lo + (hi - lo) * k / (count - 1);
    }
    return v;
}

void require_n(const DiagonalCost &cost, int max_n, const char *what) {
    if (cost.n() < 1 || cost.n() > max_n) {
        throw CapacityError(std::string(what) + " supports n <= " + std::to_string(max_n) + ", got n = " +
                            std::to_string(cost.n()));
    }
}

std::int64_t resolve_lattice(const DiagonalCost &cost, std::optional<std::int64_t> lattice_size) {
    std::int64_t minimum = minimum_lattice_size(cost);
    std::int64_t l = lattice_size.value_or(minimum);
    if (l < minimum) {
        throw PreconditionError("lattice grid size " + std::to_string(l) + " does not exceed the cost spread " +
                                std::to_string(cost.spread()) + "; need L >= " + std::to_string(minimum));
    }
    return l;
}

double lattice_angle(std::int64_t k, std::int64_t l) {
    return 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(l);
}

/// Runs f(index) for every index, in parallel across indices unless each
/// evaluation is itself large enough to parallelise internally.
template <typename F>
std::vector<double> evaluate_all(std::size_t count, bool parallel_outer, const F &f) {
    std::vector<double> out(count);
    auto body = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; k++) {
            out[k] = f(k);
        }
    };
    if (parallel_outer) {
        parallel_for(count, body, 2);
    } else {
        body(0, count);
    }
    return out;
}

GridSearch finish_search(const GridSpec &grid, const std::vector<double> &values) {
    GridSearch s;
    auto gammas = grid.gammas();
    auto betas = grid.betas();
    s.surface.reserve(values.size());
    for (std::size_t k = 0; k < values.size(); k++) {
        s.surface.push_back(SurfacePoint{gammas[k / betas.size()], betas[k % betas.size()], values[k]});
        if (values[k] > values[s.best]) {
            s.best = k;
        }
        if (values[k] < values[s.worst]) {
            s.worst = k;
        }
    }
    return s;
}

}  // namespace

double baseline_probability(int n) {
    double f = 1;
    for (int k = 2; k <= n; k++) {
        f *= k;
    }
    return std::ldexp(f, -n * n);
}

void GridSpec::validate() const {
    if (gamma_count < 1 || beta_count < 1) {
        throw PreconditionError("grid counts must be >= 1");
    }
    if ((gamma_count > 1 && !(gamma_hi > gamma_lo)) || (beta_count > 1 && !(beta_hi > beta_lo))) {
        throw PreconditionError("grid ranges must have positive length when count > 1");
    }
}

std::vector<double> GridSpec::gammas() const {
    return linspace(gamma_count, gamma_lo, gamma_hi);
}

std::vector<double> GridSpec::betas() const {
    return linspace(beta_count, beta_lo, beta_hi);
}

std::optional<double> ExperimentResult::metric(const std::string &name) const {
    for (const auto &m : metrics) {
        if (m.name == name) {
            return m.value;
        }
    }
    return std::nullopt;
}

std::int64_t minimum_lattice_size(const DiagonalCost &cost) {
    return cost.spread() + 1;
}

std::vector<double> lattice_feasible_masses(const DiagonalCost &cost, double beta, std::int64_t lattice_size) {
    require_n(cost, 4, "lattice averaging");
    std::int64_t l = resolve_lattice(cost, lattice_size);
    int n = cost.n();
    return evaluate_all(static_cast<std::size_t>(l), true, [&](std::size_t k) {
        auto state = run_generic<double>(cost, AngleSchedule::single(lattice_angle(k, l), beta));
        return feasible_mass(state, n);
    });
}

AngleAverage exact_angle_average(const DiagonalCost &cost, double beta, std::optional<std::int64_t> lattice_size) {
    AngleAverage a;
    a.lattice_size = resolve_lattice(cost, lattice_size);
    auto masses = lattice_feasible_masses(cost, beta, a.lattice_size);
    double total = 0;
    for (double m : masses) {
        total += m;
    }
    a.mean = total / static_cast<double>(masses.size());
    a.baseline = baseline_probability(cost.n());
    return a;
}

double degenerate_cross_term(const DiagonalCost &cost, double beta) {
    require_n(cost, 4, "degenerate cross term");
    int n = cost.n();
    int num_bits = cost.num_bits();
    std::size_t dim = std::size_t{1} << num_bits;
    std::int64_t lo = cost.min_value();
    std::vector<std::int64_t> level(dim);
    for (std::size_t y = 0; y < dim; y++) {
        level[y] = cost(y) - lo;
    }
    std::vector<std::complex<double>> sums(static_cast<std::size_t>(cost.spread() + 1));
    double total = 0;
    for (Bitstring x : enumerate_feasible(n)) {
        std::fill(sums.begin(), sums.end(), std::complex<double>(0));
        double diagonal = 0;
        for (std::size_t y = 0; y < dim; y++) {
            auto k = mixer_kernel(x, y, beta, num_bits);
            sums[level[y]] += k;
            diagonal += std::norm(k);
        }
        double grouped = 0;
        for (const auto &s : sums) {
            grouped += std::norm(s);
        }
        total += grouped - diagonal;
    }
    return std::ldexp(total, -num_bits);
}

double markov_fraction(const DiagonalCost &cost, double beta, double t, std::optional<std::int64_t> lattice_size) {
    if (!(t > 0)) {
        throw PreconditionError("Markov threshold must be positive");
    }
    std::int64_t l = resolve_lattice(cost, lattice_size);
    auto masses = lattice_feasible_masses(cost, beta, l);
    double threshold = t * baseline_probability(cost.n());
    auto hits = std::count_if(masses.begin(), masses.end(), [&](double m) { return m >= threshold; });
    return static_cast<double>(hits) / static_cast<double>(masses.size());
}

std::vector<L4Point> l4_sweep(const DiagonalCost &cost, const std::vector<double> &betas,
                              std::optional<std::int64_t> lattice_size) {
    require_n(cost, 3, "L4 sweep");
    std::int64_t l = resolve_lattice(cost, lattice_size);
    std::vector<L4Point> out;
    for (double beta : betas) {
        auto moments = evaluate_all(static_cast<std::size_t>(l), true, [&](std::size_t k) {
            return fourth_moment(run_generic<double>(cost, AngleSchedule::single(lattice_angle(k, l), beta)));
        });
        double total = 0;
        for (double m : moments) {
            total += m;
        }
        out.push_back(L4Point{beta, total / static_cast<double>(l), l4_envelope(cost.num_bits(), beta).linear()});
    }
    return out;
}

GridSearch grid_search_generic(const DiagonalCost &cost, const GridSpec &grid, Precision precision) {
    require_n(cost, 5, "generic grid search");
    grid.validate();
    auto gammas = grid.gammas();
    auto betas = grid.betas();
    int n = cost.n();
    // Large registers parallelise inside each pass instead of across grid points.
    bool outer = cost.num_bits() < 20;
    auto values = evaluate_all(grid.size(), outer, [&](std::size_t k) {
        auto schedule = AngleSchedule::single(gammas[k / betas.size()], betas[k % betas.size()]);
        if (precision == Precision::f32) {
            return feasible_mass(run_generic<float>(cost, schedule), n);
        }
        return feasible_mass(run_generic<double>(cost, schedule), n);
    });
    return finish_search(grid, values);
}

GridSearch grid_search_ce(const DiagonalCost &cost, const GridSpec &grid, bool normalized) {
    grid.validate();
    subspace_dimension(cost.n());
    auto gammas = grid.gammas();
    auto betas = grid.betas();
    auto values = evaluate_all(grid.size(), true, [&](std::size_t k) {
        auto schedule = AngleSchedule::single(gammas[k / betas.size()], betas[k % betas.size()]);
        return subspace_feasible_mass(run_ce(cost, schedule, normalized));
    });
    return finish_search(grid, values);
}

TransferResult parameter_transfer(const DiagonalCost &cost, const GridSpec &grid, Precision precision) {
    TransferResult r;
    r.generic = grid_search_generic(cost, grid, precision);
    const auto &best = r.generic.best_point();
    r.p_generic_max = best.p_feasible;
    r.p_ce = subspace_feasible_mass(run_ce(cost, AngleSchedule::single(best.gamma, best.beta), false));
    r.ratio = r.p_ce / r.p_generic_max;
    r.analytic_factor = transfer_factor(cost.n()).exact;
    r.holds = std::log(r.ratio) >= r.analytic_factor.ln() - 1e-12;
    return r;
}

Method parse_method(const std::string &text) {
    if (text == "generic") {
        return Method::generic;
    }
    if (text == "ce") {
        return Method::ce;
    }
    throw PreconditionError("unknown method '" + text + "' (expected generic or ce)");
}

std::string to_string(Method m) {
    return m == Method::generic ? "generic" : "ce";
}

FeasibleHistogram feasible_histogram(const DiagonalCost &cost, Method method, double gamma, double beta,
                                     std::uint64_t shots, std::uint64_t seed, bool normalized, Precision precision) {
    int n = cost.n();
    auto schedule = AngleSchedule::single(gamma, beta);
    std::unordered_map<Bitstring, std::uint64_t> sampled;
    FeasibleHistogram h;
    h.shots = shots;
    if (method == Method::generic) {
        require_n(cost, 5, "generic histogram");
        auto collect = [&](const auto &state) {
            h.p_statevector = feasible_mass(state, n);
            for (const auto &[x, c] : sample_counts(state, shots, seed)) {
                sampled[x] = c;
            }
        };
        if (precision == Precision::f32) {
            collect(run_generic<float>(cost, schedule));
        } else {
            collect(run_generic<double>(cost, schedule));
        }
    } else {
        auto state = run_ce(cost, schedule, normalized);
        h.p_statevector = subspace_feasible_mass(state);
        std::vector<double> probs(state.size());
        for (std::size_t t = 0; t < probs.size(); t++) {
            probs[t] = std::norm(state[t]);
        }
        for (const auto &[t, c] : sample_indices(probs, shots, seed)) {
            sampled[index_bitstring(t, n)] = c;
        }
    }
    for (Bitstring x : enumerate_feasible(n)) {
        auto it = sampled.find(x);
        std::uint64_t c = it == sampled.end() ? 0 : it->second;
        h.counts.emplace_back(x, c);
        h.feasible_shots += c;
    }
    if (shots > 0) {
        h.fraction = static_cast<double>(h.feasible_shots) / static_cast<double>(shots);
        double p = std::clamp(h.p_statevector, 0.0, 1.0);
        h.sigma = std::sqrt(p * (1 - p) / static_cast<double>(shots));
        h.consistent = std::abs(h.fraction - h.p_statevector) <= 5 * h.sigma + 1e-12;
    }
    return h;
}

std::vector<DepthPoint> ce_depth_sweep(const DiagonalCost &cost, const GridSpec &grid, int p_max, bool normalized) {
    require_n(cost, 4, "depth sweep");
    grid.validate();
    if (p_max < 1) {
        throw PreconditionError("depth sweep needs p_max >= 1");
    }
    if (grid.gamma_count > 6 || grid.beta_count > 6) {
        throw PreconditionError("depth sweep grids are limited to 6 points per angle");
    }
    auto gammas = grid.gammas();
    auto betas = grid.betas();
    auto has_zero = [](const std::vector<double> &v) { return std::find(v.begin(), v.end(), 0.0) != v.end(); };
    if (!has_zero(gammas) || !has_zero(betas)) {
        throw PreconditionError("depth sweep grids must contain the zero angle");
    }
    std::size_t per_layer = grid.size();
    std::vector<DepthPoint> out;
    std::size_t combos = 1;
    for (int p = 1; p <= p_max; p++) {
        combos *= per_layer;
        if (combos > 10'000'000) {
            throw CapacityError("depth sweep grid exceeds 10^7 schedules at p = " + std::to_string(p));
        }
        auto schedule_at = [&](std::size_t code) {
            AngleSchedule s;
            for (int layer = 0; layer < p; layer++) {
                std::size_t k = code % per_layer;
                code /= per_layer;
                s.gammas.push_back(gammas[k / betas.size()]);
                s.betas.push_back(betas[k % betas.size()]);
            }
            return s;
        };
        auto values = evaluate_all(combos, true, [&](std::size_t code) {
            return subspace_feasible_mass(run_ce(cost, schedule_at(code), normalized));
        });
        std::size_t best = 0;
        for (std::size_t k = 1; k < values.size(); k++) {
            if (values[k] > values[best]) {
                best = k;
            }
        }
        out.push_back(DepthPoint{p, values[best], schedule_at(best)});
    }
    return out;
}

TwirlExistence twirl_existence_experiment(const DiagonalCost &cost, double gamma, double beta, bool normalized,
                                          std::uint64_t seed) {
    TwirlExistence e;
    e.twirl = twirl_average(cost, gamma, beta, normalized, std::nullopt, seed);
    e.relabeling = best_block_relabeling(cost, gamma, beta, normalized, std::nullopt, seed);
    e.target = 1.0 / static_cast<double>(subspace_dimension(cost.n()));
    return e;
}

}  // namespace feasmass
