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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace feasmass {

/// A natural logarithm. Kept distinct from linear values so the two cannot
/// be compared by accident.
class LogValue {
   public:
    constexpr LogValue() = default;
    constexpr explicit LogValue(double ln) : ln_(ln) {
    }
    static LogValue of(double linear);

    constexpr double ln() const {
        return ln_;
    }
    double linear() const;

    friend constexpr bool operator<(LogValue a, LogValue b) {
        return a.ln_ < b.ln_;
    }
    friend constexpr bool operator<=(LogValue a, LogValue b) {
        return a.ln_ <= b.ln_;
    }
    friend constexpr bool operator>(LogValue a, LogValue b) {
        return a.ln_ > b.ln_;
    }
    friend constexpr bool operator>=(LogValue a, LogValue b) {
        return a.ln_ >= b.ln_;
    }
    friend constexpr LogValue operator*(LogValue a, LogValue b) {
        return LogValue(a.ln_ + b.ln_);
    }
    friend constexpr LogValue operator/(LogValue a, LogValue b) {
        return LogValue(a.ln_ - b.ln_);
    }

   private:
    double ln_ = 0;
};

/// One evaluated bound or inequality. Exactly one of log_value / value is set.
struct BoundReport {
    std::string name;
    std::vector<std::pair<std::string, double>> params;
    std::optional<LogValue> log_value;
    std::optional<double> value;
    std::optional<bool> satisfied;
};

double ln_factorial(int n);

/// ln(n! / 2^{n^2}).
LogValue uniform_baseline(int n);

/// N ln(1/2 + sin^2(2 beta)/4).
LogValue l4_envelope(int num_bits, double beta);

/// (1/2) ln n! + (n^2/2) ln(1/2 + sin^2(2 beta)/4).
LogValue l4_feasible_envelope(int n, double beta);

/// n [ln(2p+1) - (n-1) ln 2].
LogValue lightcone_1d_bound(int n, int p);

/// n [ln C + p ln delta_row - (n-1) ln 2].
LogValue lightcone_degree_bound(int n, int p, double delta_row, double c);

/// -n^2 [ln 2 - alpha ln delta_row], the leading exponent at depth p = alpha n.
double lightcone_exponent(int n, double alpha, double delta_row);

/// ln 2 / ln delta_row, +infinity at delta_row = 1.
double alpha_star(double delta_row);

struct TransferFactor {
    LogValue exact;           // 2^{n^2} / n^n
    LogValue stirling_floor;  // sqrt(2 pi n) e^n
    bool floor_holds() const {
        return exact >= stirling_floor;
    }
};
TransferFactor transfer_factor(int n);

/// n^2 (ln 2 - alpha ln delta_row) - k n ln n + ln c_ce.
LogValue ratio_master(int n, double alpha, double delta_row, double c_ce, double k = 1.0);

enum class AngleKernel { uniform, gaussian };
AngleKernel parse_angle_kernel(const std::string &text);

/// Characteristic function of the widened angle law at frequency delta:
/// sinc(width delta) for uniform, exp(-width^2 delta^2 / 2) for gaussian.
double cross_term_suppression(AngleKernel kind, double width, double delta);

struct WindowSize {
    boost::multiprecision::cpp_int exact;  // sum_{r <= d} C(N, r)
    LogValue bound;                        // (e N / d)^d, 1 at d = 0
};
WindowSize low_degree_window_size(int num_bits, int d);

/// 1 / t. t > 1.
double markov_tail(double t);

/// 2^{-2n} sum_{r <= d} C(n,r) (n - 2r)^2, the degree-d mass of the one-hot indicator.
double onehot_low_degree_mass(int n, int d);
/// 2^{-2n} 2(d+1) n^{d+2}.
LogValue onehot_low_degree_bound(int n, int d);

/// (n^n / n!)^2 > ((n+1)/n)^{n(n-1)}, compared in log space.
BoundReport factorial_ratio_report(int n);

/// max{9, ceil(4/a^2)} with a = c_t ln 2 / 2.
int control_threshold(double c_t);
/// n^n 2^{-c_t n^2 / 2} < 1 for every n in [control_threshold(c_t), n_max].
BoundReport control_inequality_report(double c_t, int n_max);

/// ln(C_T n^{t_exp} / 2^N): low-degree contribution shape.
LogValue low_degree_contribution_bound(int n, double c_t, double t_exp);
/// ln(sqrt(n!) / 2^N): high-degree contribution.
LogValue high_degree_contribution_bound(int n);
/// ln((C_T n^{t_exp} + sqrt(n!)) / 2^N): the summed envelope.
LogValue harmonic_envelope(int n, double c_t, double t_exp);

/// The exact-vs-floor comparison of transfer_factor for every n in [2, n_max].
std::vector<BoundReport> stirling_sweep(int n_max);

/// Relative error between the double log-space value and a 50-digit
/// linear evaluation, for uniform_baseline, transfer_factor and
/// lightcone_1d_bound at this n.
double max_multiprecision_discrepancy(int n);

}  // namespace feasmass
