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


#include "feasmass/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "feasmass/errors.hpp"

namespace feasmass {

using boost::multiprecision::cpp_int;

namespace {

constexpr double kLn2 = std::numbers::ln2;

double l4_base(double beta) {
    double s = std::sin(2 * beta);
    return 0.5 + s * s / 4;
}

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw PreconditionError(what);
    }
}

}  // namespace

LogValue LogValue::of(double linear) {
    return LogValue(std::log(linear));
}

double LogValue::linear() const {
    return std::exp(ln_);
}

double ln_factorial(int n) {
    require(n >= 0, "factorial of a negative number");
    return std::lgamma(static_cast<double>(n) + 1);
}

LogValue uniform_baseline(int n) {
    require(n >= 2, "baseline needs n >= 2");
    return LogValue(ln_factorial(n) - static_cast<double>(n) * n * kLn2);
}

LogValue l4_envelope(int num_bits, double beta) {
    return LogValue(num_bits * std::log(l4_base(beta)));
}

LogValue l4_feasible_envelope(int n, double beta) {
    return LogValue(0.5 * ln_factorial(n) + 0.5 * n * n * std::log(l4_base(beta)));
}

LogValue lightcone_1d_bound(int n, int p) {
    require(p >= 0, "depth must be non-negative");
    return LogValue(n * (std::log(2.0 * p + 1) - (n - 1) * kLn2));
}

LogValue lightcone_degree_bound(int n, int p, double delta_row, double c) {
    require(delta_row >= 1, "delta_row must be >= 1");
    require(c > 0, "constant C must be positive");
    require(p >= 0, "depth must be non-negative");
    return LogValue(n * (std::log(c) + p * std::log(delta_row) - (n - 1) * kLn2));
}

double lightcone_exponent(int n, double alpha, double delta_row) {
    return -static_cast<double>(n) * n * (kLn2 - alpha * std::log(delta_row));
}

double alpha_star(double delta_row) {
    require(delta_row >= 1, "delta_row must be >= 1");
    if (delta_row == 1) {
        return std::numeric_limits<double>::infinity();
    }
    return kLn2 / std::log(delta_row);
}

TransferFactor transfer_factor(int n) {
    require(n >= 2, "transfer factor needs n >= 2");
    double dn = n;
    return TransferFactor{LogValue(dn * dn * kLn2 - dn * std::log(dn)),
                          LogValue(0.5 * std::log(2 * std::numbers::pi * dn) + dn)};
}

LogValue ratio_master(int n, double alpha, double delta_row, double c_ce, double k) {
    require(c_ce >= 1, "c_ce must be >= 1");
    require(delta_row >= 1, "delta_row must be >= 1");
    double dn = n;
    return LogValue(dn * dn * (kLn2 - alpha * std::log(delta_row)) - k * dn * std::log(dn) + std::log(c_ce));
}

AngleKernel parse_angle_kernel(const std::string &text) {
    if (text == "uniform") {
        return AngleKernel::uniform;
    }
    if (text == "gaussian") {
        return AngleKernel::gaussian;
    }
    throw PreconditionError("unknown angle kernel '" + text + "'");
}

double cross_term_suppression(AngleKernel kind, double width, double delta) {
    double x = width * delta;
    if (kind == AngleKernel::gaussian) {
        return std::exp(-x * x / 2);
    }
    if (x == 0) {
        return 1;
    }
    return std::sin(x) / x;
}

WindowSize low_degree_window_size(int num_bits, int d) {
    require(d >= 0 && d <= num_bits, "window degree must lie in [0, N]");
    WindowSize w;
    cpp_int c = 1;
    w.exact = 0;
    for (int r = 0; r <= d; r++) {
        w.exact += c;
        c = c * (num_bits - r) / (r + 1);
    }
    w.bound = d == 0 ? LogValue(0) : LogValue(d * (1 + std::log(static_cast<double>(num_bits) / d)));
    return w;
}

double markov_tail(double t) {
    require(t > 1, "Markov tail needs t > 1");
    return 1 / t;
}

double onehot_low_degree_mass(int n, int d) {
    double total = 0;
    double c = 1;
    for (int r = 0; r <= std::min(d, n); r++) {
        total += c * (n - 2.0 * r) * (n - 2.0 * r);
        c = c * (n - r) / (r + 1);
    }
    return std::ldexp(total, -2 * n);
}

LogValue onehot_low_degree_bound(int n, int d) {
    return LogValue(-2.0 * n * kLn2 + std::log(2.0 * (d + 1)) + (d + 2) * std::log(static_cast<double>(n)));
}

BoundReport factorial_ratio_report(int n) {
    require(n >= 2, "ratio inequality needs n >= 2");
    double dn = n;
    double lhs = 2 * (dn * std::log(dn) - ln_factorial(n));
    double rhs = dn * (dn - 1) * std::log((dn + 1) / dn);
    return BoundReport{"nn_over_nfact_ratio", {{"n", dn}}, LogValue(lhs - rhs), std::nullopt, lhs > rhs};
}

int control_threshold(double c_t) {
    require(c_t > 0, "c_T must be positive");
    double a = c_t * kLn2 / 2;
    return std::max(9, static_cast<int>(std::ceil(4 / (a * a))));
}

BoundReport control_inequality_report(double c_t, int n_max) {
    int n0 = control_threshold(c_t);
    double worst = -std::numeric_limits<double>::infinity();
    bool ok = true;
    for (int n = n0; n <= n_max; n++) {
        double dn = n;
        double v = dn * std::log(dn) - c_t * dn * dn / 2 * kLn2;
        worst = std::max(worst, v);
        ok = ok && v < 0;
    }
    return BoundReport{"control_inequality",
                       {{"c_T", c_t}, {"n_min", static_cast<double>(n0)}, {"n_max", static_cast<double>(n_max)}},
                       n0 <= n_max ? std::optional<LogValue>(LogValue(worst)) : std::nullopt,
                       n0 <= n_max ? std::nullopt : std::optional<double>(0.0),
                       ok};
}

LogValue low_degree_contribution_bound(int n, double c_t, double t_exp) {
    require(c_t > 0, "C_T must be positive");
    double dn = n;
    return LogValue(std::log(c_t) + t_exp * std::log(dn) - dn * dn * kLn2);
}

LogValue high_degree_contribution_bound(int n) {
    double dn = n;
    return LogValue(0.5 * ln_factorial(n) - dn * dn * kLn2);
}

LogValue harmonic_envelope(int n, double c_t, double t_exp) {
    double a = low_degree_contribution_bound(n, c_t, t_exp).ln();
    double b = high_degree_contribution_bound(n).ln();
    double m = std::max(a, b);
    return LogValue(m + std::log(std::exp(a - m) + std::exp(b - m)));
}

std::vector<BoundReport> stirling_sweep(int n_max) {
    std::vector<BoundReport> out;
    for (int n = 2; n <= n_max; n++) {
        auto t = transfer_factor(n);
        out.push_back(BoundReport{"transfer_factor_vs_stirling_floor",
                                  {{"n", static_cast<double>(n)}, {"exact_ln", t.exact.ln()}},
                                  t.stirling_floor,
                                  std::nullopt,
                                  t.floor_holds()});
    }
    return out;
}

double max_multiprecision_discrepancy(int n) {
    using Big = boost::multiprecision::cpp_bin_float_50;
    require(n >= 2, "discrepancy check needs n >= 2");
    Big fact = 1;
    for (int k = 2; k <= n; k++) {
        fact *= k;
    }
    Big two_nn = boost::multiprecision::pow(Big(2), n * n);
    Big nn = boost::multiprecision::pow(Big(n), n);
    Big lc = boost::multiprecision::pow(Big(2 * 1 + 1) / boost::multiprecision::pow(Big(2), n - 1), n);
    Big floor_v = boost::multiprecision::sqrt(2 * boost::math::constants::pi<Big>() * n) *
                  boost::multiprecision::exp(Big(n));

    auto t = transfer_factor(n);
    std::pair<LogValue, Big> cases[] = {
        {uniform_baseline(n), fact / two_nn},
        {t.exact, two_nn / nn},
        {t.stirling_floor, floor_v},
        {lightcone_1d_bound(n, 1), lc},
    };
    double worst = 0;
    for (const auto &[lv, exact] : cases) {
        Big approx = boost::multiprecision::exp(Big(lv.ln()));
        worst = std::max(worst, static_cast<double>(abs(approx - exact) / exact));
    }
    return worst;
}

}  // namespace feasmass
