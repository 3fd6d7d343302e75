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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "feasmass/bounds.hpp"
#include "feasmass/fullspace.hpp"
#include "feasmass/instance.hpp"
#include "feasmass/subspace.hpp"

namespace feasmass {

/// Inclusive linspace grids over gamma and beta.
struct GridSpec {
    int gamma_count = 10;
    double gamma_lo = 0;
    double gamma_hi = 3.141592653589793;
    int beta_count = 10;
    double beta_lo = 0;
    double beta_hi = 3.141592653589793;

    /// Throws PreconditionError on a non-positive count or an empty range with count > 1.
    void validate() const;
    std::vector<double> gammas() const;
    std::vector<double> betas() const;
    std::size_t size() const {
        return static_cast<std::size_t>(gamma_count) * beta_count;
    }
};

struct Metric {
    std::string name;
    double value = 0;
    bool log = false;  // natural log
};

/// A finished experiment. wall_seconds is informational and is kept out of
/// written files so reruns stay byte-identical.
struct ExperimentResult {
    std::string experiment;
    std::string instance;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<Metric> metrics;
    std::uint64_t seed = 0;
    double wall_seconds = 0;
    bool contract_ok = true;
    std::string violation;

    void add(const std::string &name, double value, bool log = false) {
        metrics.push_back(Metric{name, value, log});
    }
    std::optional<double> metric(const std::string &name) const;
};

/// n! / 2^{n^2}, the feasible mass of the uniform distribution.
double baseline_probability(int n);

/// The smallest valid lattice grid size, spread + 1.
std::int64_t minimum_lattice_size(const DiagonalCost &cost);

/// P_Pi(beta, 2 pi k / L) for k = 0..L-1. Throws PreconditionError naming
/// the minimum when L <= spread. n <= 4.
std::vector<double> lattice_feasible_masses(const DiagonalCost &cost, double beta, std::int64_t lattice_size);

struct AngleAverage {
    double mean = 0;
    double baseline = 0;
    std::int64_t lattice_size = 0;
};

/// Mean of P_Pi over the lattice grid. lattice_size defaults to spread + 1.
AngleAverage exact_angle_average(const DiagonalCost &cost, double beta,
                                 std::optional<std::int64_t> lattice_size = std::nullopt);

/// 2^{-N} sum_{x in Pi} sum_{y != z, C(y) = C(z)} K(x,y) conj(K(x,z)): the part of
/// the grid mean that equal-cost pairs leave behind. Zero when C is injective.
double degenerate_cross_term(const DiagonalCost &cost, double beta);

/// Fraction of lattice angles with P_Pi >= t * baseline.
double markov_fraction(const DiagonalCost &cost, double beta, double t,
                       std::optional<std::int64_t> lattice_size = std::nullopt);

struct L4Point {
    double beta = 0;
    double mean_fourth_moment = 0;
    double envelope = 0;
};

/// Grid mean of sum |a|^4 for each beta. n <= 3.
std::vector<L4Point> l4_sweep(const DiagonalCost &cost, const std::vector<double> &betas,
                              std::optional<std::int64_t> lattice_size = std::nullopt);

struct SurfacePoint {
    double gamma = 0;
    double beta = 0;
    double p_feasible = 0;
};

struct GridSearch {
    std::vector<SurfacePoint> surface;  // gamma-major order
    std::size_t best = 0;               // first maximum in surface order
    std::size_t worst = 0;              // first minimum in surface order
    const SurfacePoint &best_point() const {
        return surface[best];
    }
    const SurfacePoint &worst_point() const {
        return surface[worst];
    }
};

/// Generic QAOA feasible mass at every grid point. n <= 5; f32 storage is
/// offered for n = 5.
GridSearch grid_search_generic(const DiagonalCost &cost, const GridSpec &grid, Precision precision = Precision::f64);

/// CE subspace feasible mass at every grid point.
GridSearch grid_search_ce(const DiagonalCost &cost, const GridSpec &grid, bool normalized);

struct TransferResult {
    GridSearch generic;
    double p_generic_max = 0;
    double p_ce = 0;
    double ratio = 0;
    LogValue analytic_factor;  // 2^{n^2} / n^n
    bool holds = false;
};

/// Best generic grid angles reused in the CE ansatz with the unnormalized mixer.
TransferResult parameter_transfer(const DiagonalCost &cost, const GridSpec &grid,
                                  Precision precision = Precision::f64);

enum class Method { generic, ce };
Method parse_method(const std::string &text);
std::string to_string(Method m);

struct FeasibleHistogram {
    std::vector<std::pair<Bitstring, std::uint64_t>> counts;  // every feasible string, enumeration order
    std::uint64_t shots = 0;
    std::uint64_t feasible_shots = 0;
    double p_statevector = 0;
    double fraction = 0;
    double sigma = 0;
    bool consistent = true;  // |fraction - p| <= 5 sigma
};

/// Samples the depth-one output at (gamma, beta). normalized only affects ce.
FeasibleHistogram feasible_histogram(const DiagonalCost &cost, Method method, double gamma, double beta,
                                     std::uint64_t shots, std::uint64_t seed, bool normalized = false,
                                     Precision precision = Precision::f64);

struct DepthPoint {
    int depth = 0;
    double best = 0;
    AngleSchedule schedule;
};

/// Joint grid search for p = 1..p_max. Each angle grid must contain 0 and
/// have at most 6 points. n <= 4.
std::vector<DepthPoint> ce_depth_sweep(const DiagonalCost &cost, const GridSpec &grid, int p_max, bool normalized);

struct TwirlExistence {
    TwirlResult twirl;
    Relabeling relabeling;
    double target = 0;  // 1 / n^n
};

TwirlExistence twirl_existence_experiment(const DiagonalCost &cost, double gamma, double beta, bool normalized,
                                          std::uint64_t seed = 0);

}  // namespace feasmass
