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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "feasmass/errors.hpp"
#include "oracles.hpp"

using namespace feasmass;

namespace {

DiagonalCost synthetic_cost(int n, std::uint64_t seed = 3) {
    return build_cost(make_synthetic_instance(n, 5, seed));
}

template <typename Real>
void expect_unit_norm(const BasicFullState<Real> &s, double tol) {
    ASSERT_NEAR(s.norm_squared(), 1.0, tol);
}

}  // namespace

TEST(init_plus, uniform_amplitudes) {
    auto s2 = init_plus(2);
    for (auto a : s2.amplitudes()) {
        ASSERT_EQ(a, std::complex<double>(0.5, 0));
    }
    auto s9 = init_plus(9);
    ASSERT_EQ(s9.size(), 512u);
    for (auto a : s9.amplitudes()) {
        ASSERT_NEAR(a.real(), std::pow(2.0, -4.5), 1e-16);
    }
    ASSERT_THROW(init_plus(26), CapacityError);
}

TEST(init_plus, largest_register_is_normalized) {
    auto s = init_plus<float>(25);
    expect_unit_norm(s, 1e-6);
}

TEST(apply_cost_phase, identity_cases_and_modulus) {
    auto cost = synthetic_cost(2);
    auto s = init_plus(4);
    apply_x_mixer(s, 0.37);
    auto before = s;
    apply_cost_phase(s, cost, 0.0);
    for (std::size_t k = 0; k < s.size(); k++) {
        ASSERT_EQ(s[k], before[k]);
    }
    apply_cost_phase(s, cost, 1.234);
    for (std::size_t k = 0; k < s.size(); k++) {
        ASSERT_NEAR(std::abs(s[k]), std::abs(before[k]), 1e-15);
        auto expected = before[k] * std::polar(1.0, -1.234 * static_cast<double>(cost(k)));
        ASSERT_NEAR(std::abs(s[k] - expected), 0, 1e-14);
    }
    auto zero = DiagonalCost::from_table(std::vector<std::int64_t>(16, 0));
    auto t = before;
    apply_cost_phase(t, zero, 2.5);
    for (std::size_t k = 0; k < t.size(); k++) {
        ASSERT_EQ(t[k], before[k]);
    }
    ASSERT_THROW(apply_cost_phase(t, synthetic_cost(3), 0.1), DimensionError);
}

TEST(apply_x_mixer, zero_and_half_turn) {
    auto s = basis_state(3, 0);
    apply_x_mixer(s, 0.0);
    ASSERT_EQ(s[0], std::complex<double>(1, 0));
    apply_x_mixer(s, std::numbers::pi / 2);
    // (-i)^3 = i.
    ASSERT_NEAR(std::abs(s[7] - std::complex<double>(0, 1)), 0, 1e-15);
    ASSERT_NEAR(s.norm_squared(), 1, 1e-15);
}

TEST(apply_x_mixer, matches_kronecker_oracle) {
    for (int num_bits = 1; num_bits <= 4; num_bits++) {
        for (double beta : {0.1, 0.7, 2.3}) {
            auto m = oracle::x_mixer_matrix(num_bits, beta);
            std::size_t dim = std::size_t{1} << num_bits;
            for (std::size_t y = 0; y < dim; y++) {
                auto s = basis_state(num_bits, y);
                apply_x_mixer(s, beta);
                for (std::size_t x = 0; x < dim; x++) {
                    ASSERT_NEAR(std::abs(s[x] - m(x, y)), 0, 1e-12);
                    ASSERT_NEAR(std::abs(mixer_kernel(x, y, beta, num_bits) - m(x, y)), 0, 1e-12);
                }
            }
        }
    }
}

TEST(mixer_kernel, closed_form_cases) {
    double b = 0.61;
    ASSERT_NEAR(std::abs(mixer_kernel(5, 5, b, 3) - std::pow(std::cos(b), 3)), 0, 1e-15);
    auto full = std::pow(std::complex<double>(0, -std::sin(b)), 3);
    ASSERT_NEAR(std::abs(mixer_kernel(0, 7, b, 3) - full), 0, 1e-15);
    double row = 0;
    for (Bitstring y = 0; y < 16; y++) {
        row += std::norm(mixer_kernel(6, y, 0.7, 4));
    }
    ASSERT_NEAR(row, 1, 1e-14);
}

TEST(run_generic, zero_angles_give_baseline) {
    for (int n = 2; n <= 4; n++) {
        auto s = run_generic(synthetic_cost(n), AngleSchedule::single(0, 0));
        double f = 1;
        for (int k = 2; k <= n; k++) {
            f *= k;
        }
        ASSERT_DOUBLE_EQ(feasible_mass(s, n), std::ldexp(f, -n * n)) << n;
    }
}

TEST(run_generic, norm_preserved) {
    auto cost = synthetic_cost(3);
    for (int k = 0; k < 5; k++) {
        AngleSchedule sched{{0.3 * k + 0.1, 1.7}, {0.2 * k + 0.05, 0.4}};
        expect_unit_norm(run_generic(cost, sched), 1e-9);
    }
}

TEST(run_generic, single_layer_matches_direct_kernel_sum) {
    auto cost = synthetic_cost(2);
    double gamma = 0.4;
    double beta = 0.3;
    auto s = run_generic(cost, AngleSchedule::single(gamma, beta));
    auto m = oracle::x_mixer_matrix(4, beta);
    for (std::size_t x = 0; x < 16; x++) {
        std::complex<double> a = 0;
        for (std::size_t y = 0; y < 16; y++) {
            a += m(x, y) * std::polar(1.0, -gamma * static_cast<double>(cost(y)));
        }
        a *= 0.25;
        ASSERT_NEAR(std::abs(s[x] - a), 0, 1e-10);
    }
}

TEST(run_generic, schedule_validation) {
    auto cost = synthetic_cost(2);
    ASSERT_THROW(run_generic(cost, AngleSchedule{{0.1, 0.2}, {0.3}}), PreconditionError);
    ASSERT_THROW(run_generic(cost, AngleSchedule{}), PreconditionError);
}

TEST(run_generic, single_precision_tracks_double) {
    auto cost = synthetic_cost(3);
    AngleSchedule sched{{0.9, 0.2}, {0.4, 1.1}};
    auto d = run_generic<double>(cost, sched);
    auto f = run_generic<float>(cost, sched);
    for (std::size_t k = 0; k < d.size(); k++) {
        ASSERT_NEAR(std::abs(d[k] - std::complex<double>(f[k])), 0, 1e-5);
    }
    ASSERT_NEAR(feasible_mass(d, 3), feasible_mass(f, 3), 1e-6);
}

TEST(feasible_mass, uniform_and_concentrated) {
    ASSERT_DOUBLE_EQ(feasible_mass(init_plus(9), 3), 6.0 / 512);
    ASSERT_EQ(feasible_mass(init_plus(16), 4), 24.0 / 65536);
    ASSERT_EQ(feasible_mass(basis_state(9, permutation_bitstring(std::vector<int>{2, 0, 1})), 3), 1.0);
    ASSERT_THROW(feasible_mass(init_plus(8), 3), DimensionError);
}

TEST(fourth_moment, uniform_and_basis) {
    ASSERT_NEAR(fourth_moment(init_plus(10)), std::ldexp(1.0, -10), 1e-18);
    ASSERT_EQ(fourth_moment(basis_state(5, 3)), 1.0);
}

TEST(sample_counts, basis_state_single_bin) {
    auto c = sample_counts(basis_state(4, 9), 100, 1);
    ASSERT_EQ(c.size(), 1u);
    ASSERT_EQ(c.at(9), 100u);
}

TEST(sample_counts, zero_shots_empty) {
    ASSERT_TRUE(sample_counts(init_plus(3), 0, 1).empty());
}

TEST(sample_counts, uniform_within_five_sigma) {
    std::uint64_t shots = 400000;
    auto c = sample_counts(init_plus(2), shots, 7);
    double sigma = std::sqrt(shots * 0.25 * 0.75);
    std::uint64_t total = 0;
    for (Bitstring x = 0; x < 4; x++) {
        ASSERT_NEAR(static_cast<double>(c[x]), 100000.0, 5 * sigma);
        total += c[x];
    }
    ASSERT_EQ(total, shots);
}

TEST(sample_counts, deterministic_per_seed) {
    auto s = run_generic(synthetic_cost(2), AngleSchedule::single(0.8, 0.3));
    ASSERT_EQ(sample_counts(s, 5000, 42), sample_counts(s, 5000, 42));
    ASSERT_NE(sample_counts(s, 5000, 42), sample_counts(s, 5000, 43));
}

TEST(sample_indices, never_draws_zero_probability) {
    std::vector<double> p = {0, 0.5, 0, 0.5, 0};
    for (const auto &[k, c] : sample_indices(p, 10000, 3)) {
        ASSERT_TRUE(k == 1 || k == 3);
        ASSERT_GT(c, 0u);
    }
}

TEST(parallel_passes, result_independent_of_worker_count) {
    auto cost = synthetic_cost(4);
    AngleSchedule sched{{0.7}, {0.3}};
    setenv("FEASMASS_THREADS", "1", 1);
    auto one = run_generic(cost, sched);
    setenv("FEASMASS_THREADS", "3", 1);
    auto three = run_generic(cost, sched);
    unsetenv("FEASMASS_THREADS");
    for (std::size_t k = 0; k < one.size(); k++) {
        ASSERT_EQ(one[k], three[k]);
    }
    ASSERT_EQ(fourth_moment(one), fourth_moment(three));
}
