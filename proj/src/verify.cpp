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


#include "feasmass/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "feasmass/bounds.hpp"
#include "feasmass/errors.hpp"
#include "feasmass/experiments.hpp"
#include "feasmass/harmonic.hpp"
#include "feasmass/io.hpp"
#include "feasmass/random.hpp"
#include "feasmass/subspace.hpp"

namespace feasmass {

using boost::multiprecision::cpp_int;

namespace {

class Battery {
   public:
    explicit Battery(std::string suite) : suite_(std::move(suite)) {
    }
    void check(const std::string &name, bool ok, const std::string &detail, bool warn_on_fail = false) {
        CheckStatus s = ok ? CheckStatus::pass : (warn_on_fail ? CheckStatus::warn : CheckStatus::fail);
        lines_.push_back(CheckLine{suite_, name, s, detail});
    }
    void warn(const std::string &name, const std::string &detail) {
        lines_.push_back(CheckLine{suite_, name, CheckStatus::warn, detail});
    }
    std::vector<CheckLine> take() {
        return std::move(lines_);
    }

   private:
    std::string suite_;
    std::vector<CheckLine> lines_;
};

std::string fmt(double v) {
    return format_double(v);
}

std::string short_fmt(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

std::vector<std::complex<double>> random_complex(std::size_t size, std::uint64_t seed) {
    std::vector<std::complex<double>> v(size);
    for (std::size_t k = 0; k < size; k++) {
        v[k] = {counter_uniform(seed, 2 * k) - 0.5, counter_uniform(seed, 2 * k + 1) - 0.5};
    }
    return v;
}

double max_abs_diff(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b) {
    double worst = 0;
    for (std::size_t k = 0; k < a.size(); k++) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

void harmonic_battery(Battery &b) {
    bool ortho = true;
    for (int n = 1; n <= 12; n++) {
        ortho = ortho && krawtchouk_orthogonality_check(n);
    }
    b.check("krawtchouk_orthogonality", ortho, "exact for 1 <= n <= 12");

    bool symmetric = true;
    for (int n = 1; n <= 10; n++) {
        auto t = KrawtchoukTable::build(n);
        for (int w = 0; w <= n; w++) {
            for (int r = 0; r <= n; r++) {
                symmetric = symmetric && t.values[w][r] * binomial(n, r) == t.values[r][w] * binomial(n, w);
            }
        }
    }
    b.check("krawtchouk_symmetry", symmetric, "K_w(r) C(n,r) = K_r(w) C(n,w) for n <= 10");

    double onehot_err = 0;
    double sphere_err = 0;
    for (int n = 1; n <= 12; n++) {
        for (int w = 0; w <= n; w++) {
            auto direct = walsh_transform(std::span<const double>(sphere_indicator(n, w)));
            auto radial = sphere_spectrum(n, w);
            sphere_err = std::max(sphere_err, max_abs_diff(direct.coeffs, radial.coeffs));
            if (w == 1) {
                for (std::size_t s = 0; s < direct.coeffs.size(); s++) {
                    double expected = std::ldexp(n - 2.0 * std::popcount(s), -n);
                    onehot_err = std::max(onehot_err, std::abs(direct.coeffs[s] - expected));
                }
            }
        }
    }
    b.check("onehot_spectrum", onehot_err <= 1e-12, "max |g1^(S) - 2^-n (n - 2|S|)| = " + fmt(onehot_err));
    b.check("sphere_spectrum_radial", sphere_err <= 1e-10, "max difference = " + fmt(sphere_err));

    {
        const int num_bits = 4;
        std::size_t dim = 1u << num_bits;
        double worst = 0;
        for (double beta : {0.3, 0.9, 2.1}) {
            auto f = random_complex(dim, 11);
            std::vector<std::complex<double>> g(dim);
            for (std::size_t x = 0; x < dim; x++) {
                for (std::size_t y = 0; y < dim; y++) {
                    g[x] += mixer_kernel(x, y, beta, num_bits) * f[y];
                }
            }
            auto fh = walsh_transform(std::span<const std::complex<double>>(f));
            auto gh = walsh_transform(std::span<const std::complex<double>>(g));
            for (std::size_t s = 0; s < dim; s++) {
                auto lam = mixer_walsh_multiplier(num_bits, std::popcount(s), beta);
                worst = std::max(worst, std::abs(gh[s] - lam * fh[s]));
            }
        }
        b.check("mixer_walsh_multiplier", worst <= 1e-10, "N=4 max deviation = " + fmt(worst));
    }

    {
        double fact_err = 0;
        double conv_err = 0;
        for (int n = 1; n <= 3; n++) {
            auto ps = permutation_spectrum(n);
            for (std::size_t s = 0; s < ps.rows.coeffs.size(); s++) {
                double prod = 1;
                for (int i = 0; i < n; i++) {
                    prod *= n - 2.0 * std::popcount((s >> (i * n)) & ((1u << n) - 1));
                }
                fact_err = std::max(fact_err, std::abs(ps.rows[s] - std::ldexp(prod, -n * n)));
            }
            auto conv = dyadic_convolution(ps.rows.coeffs, ps.cols.coeffs);
            conv_err = std::max(conv_err, max_abs_diff(conv, ps.indicator.coeffs));
        }
        b.check("row_spectrum_factorization", fact_err <= 1e-12, "n <= 3 max deviation = " + fmt(fact_err));
        b.check("indicator_is_row_col_convolution", conv_err <= 1e-12, "n <= 3 max deviation = " + fmt(conv_err));
    }

    {
        double worst = 0;
        for (int n = 2; n <= 3; n++) {
            auto cost = build_cost(make_synthetic_instance(n, 5, 7));
            for (int k = 0; k < 4; k++) {
                double gamma = 3 * counter_uniform(21, 2 * k);
                double beta = 3 * counter_uniform(21, 2 * k + 1);
                auto state = run_generic<double>(cost, AngleSchedule::single(gamma, beta));
                worst = std::max(worst, std::abs(feasible_mass_via_plancherel(state, n) - feasible_mass(state, n)));
            }
        }
        b.check("plancherel_feasible_mass", worst <= 1e-9, "n <= 3 max |difference| = " + fmt(worst));
    }

    {
        bool ok = true;
        double closed_err = 0;
        for (int n = 4; n <= 12; n++) {
            auto g1 = walsh_transform(std::span<const double>(sphere_indicator(n, 1)));
            for (int d = 0; d <= 2; d++) {
                double mass = low_degree_mass(g1, d);
                closed_err = std::max(closed_err, std::abs(mass - onehot_low_degree_mass(n, d)));
                ok = ok && mass <= onehot_low_degree_bound(n, d).linear();
            }
        }
        b.check("onehot_low_degree_bound", ok && closed_err <= 1e-15,
                "n in [4,12], d <= 2; closed-form deviation = " + fmt(closed_err));
    }

    {
        // Reported, not asserted: the measured peak of P_Pi relative to the baseline.
        for (int n = 2; n <= 3; n++) {
            auto cost = build_cost(make_synthetic_instance(n, 5, 1));
            GridSpec grid{24, 0, std::numbers::pi, 24, 0, std::numbers::pi};
            auto s = grid_search_generic(cost, grid);
            double baseline = baseline_probability(n);
            double excess = s.best_point().p_feasible / baseline;
            b.check("p1_envelope_n" + std::to_string(n), excess <= 1 + 1e-9,
                    "max P_Pi / baseline over 24x24 grid = " + fmt(excess) + " at gamma=" +
                        fmt(s.best_point().gamma) + " beta=" + fmt(s.best_point().beta),
                    true);
        }
    }
}

void twirl_battery(Battery &b) {
    const double angles[][2] = {{0.4, 0.3}, {1.3, 0.9}, {2.2, 2.7}};
    for (int n = 2; n <= 4; n++) {
        auto cost = build_cost(make_synthetic_instance(n, 5, 3));
        double target = 1.0 / static_cast<double>(subspace_dimension(n));
        double worst = 0;
        bool exists = true;
        int pairs = n == 4 ? 1 : 3;
        for (int k = 0; k < pairs; k++) {
            for (bool normalized : {false, true}) {
                auto r = twirl_average(cost, angles[k][0], angles[k][1], normalized);
                worst = std::max(worst, std::abs(r.mean - target));
                auto best = best_block_relabeling(cost, angles[k][0], angles[k][1], normalized);
                exists = exists && best.probability >= target;
            }
        }
        b.check("twirl_mean_n" + std::to_string(n), worst <= 1e-12,
                "max |mean - 1/n^n| = " + fmt(worst) + (n == 4 ? " (331776 permutations)" : ""));
        b.check("best_relabeling_n" + std::to_string(n), exists, "max probability >= 1/n^n");
    }

    {
        double worst = 0;
        for (int n = 2; n <= 6; n++) {
            for (bool normalized : {false, true}) {
                Eigen::MatrixXcd h = block_xy_sector_matrix(n, normalized).cast<std::complex<double>>();
                for (double beta : {0.1, 0.7, 2.0}) {
                    Eigen::MatrixXcd dense = (std::complex<double>(0, -beta) * h).exp();
                    worst = std::max(worst, (dense - block_xy_sector_unitary(n, beta, normalized)).cwiseAbs().maxCoeff());
                }
            }
        }
        b.check("sector_closed_form", worst <= 1e-9, "n in [2,6] max entry difference = " + fmt(worst));
    }

    {
        std::ostringstream detail;
        bool matches_two = true;
        bool matches_stated = true;
        for (int n = 2; n <= 6; n++) {
            double lu = block_xy_sector_spectrum(n, false).lambda_uniform;
            matches_two = matches_two && std::abs(lu - 2.0 * (n - 1)) <= 1e-12;
            matches_stated = matches_stated && std::abs(lu - (n - 1.0)) <= 1e-12;
            detail << (n > 2 ? ", " : "") << "n=" << n << ": " << fmt(lu);
        }
        detail << "; uniform eigenvalue is 2(n-1), stated n-1";
        if (matches_stated) {
            b.check("uniform_eigenvalue_convention", true, detail.str());
        } else {
            b.check("uniform_eigenvalue_convention", false, detail.str(), matches_two);
        }
    }

    {
        double worst = 0;
        for (int n = 2; n <= 5; n++) {
            auto s = init_w_product(n);
            auto t = s;
            apply_block_xy_mixer(t, 0.77, false);
            std::complex<double> phase = t[0] / s[0];
            for (std::size_t k = 0; k < s.size(); k++) {
                worst = std::max(worst, std::abs(t[k] - phase * s[k]));
            }
        }
        b.check("uniform_start_is_eigenvector", worst <= 1e-12, "max deviation = " + fmt(worst));
    }

    {
        double min_eig = 0;
        double identity_err = 0;
        for (int n = 2; n <= 3; n++) {
            for (bool normalized : {false, true}) {
                min_eig = std::min(min_eig, double_commutator_min_eigenvalue(n, normalized));
                Eigen::MatrixXd h = dense_block_mixer(n, normalized);
                Eigen::MatrixXd p = permutation_projector(n);
                Eigen::MatrixXd hp = h * p - p * h;
                Eigen::MatrixXd lhs = p * (h * hp - hp * h) * p;
                identity_err = std::max(identity_err, (lhs - double_commutator_gram(h, p)).cwiseAbs().maxCoeff());
            }
        }
        b.check("double_commutator_psd", min_eig >= -1e-9, "min eigenvalue = " + fmt(min_eig));
        b.check("double_commutator_identity", identity_err <= 1e-12, "max entry difference = " + fmt(identity_err));
    }
}

void bounds_battery(Battery &b) {
    bool ok = true;
    for (int n = 2; n <= 50; n++) {
        ok = ok && *factorial_ratio_report(n).satisfied;
    }
    b.check("nn_over_nfact_ratio", ok, "holds for 2 <= n <= 50");

    for (double c : {0.1, 0.5, 1.0}) {
        auto r = control_inequality_report(c, 200);
        std::string detail = "c_T=" + short_fmt(c) + ", threshold n=" + std::to_string(control_threshold(c));
        if (r.log_value) {
            detail += ", worst ln(n^n 2^{-c n^2/2}) = " + fmt(r.log_value->ln());
        } else {
            detail += ", threshold beyond 200";
        }
        b.check("control_inequality_c" + short_fmt(c), *r.satisfied, detail);
    }

    for (const auto &r : stirling_sweep(60)) {
        int n = static_cast<int>(r.params[0].second);
        double exact = std::ldexp(1.0, n * n) / std::pow(n, n);
        double floor_v = r.log_value->linear();
        std::string detail = "n=" + std::to_string(n) + ": 2^{n^2}/n^n = " + fmt(exact) +
                             ", sqrt(2 pi n) e^n = " + fmt(floor_v);
        if (n <= 4) {
            b.check("stirling_floor_n" + std::to_string(n), *r.satisfied, detail, true);
        } else if (!*r.satisfied) {
            b.check("stirling_floor_n" + std::to_string(n), false, detail);
        }
    }
    b.check("stirling_floor_5_to_60", true, "exact factor >= floor for 5 <= n <= 60");

    double mp = 0;
    for (int n = 2; n <= 10; n++) {
        mp = std::max(mp, max_multiprecision_discrepancy(n));
    }
    b.check("log_space_vs_50_digit", mp <= 1e-12, "max relative error = " + fmt(mp));

    bool window = true;
    for (int num_bits : {9, 16, 25}) {
        for (int d = 0; d <= num_bits; d++) {
            auto w = low_degree_window_size(num_bits, d);
            window = window && std::log(w.exact.convert_to<double>()) <= w.bound.ln() + 1e-12;
        }
    }
    b.check("window_size_bound", window, "sum_{r<=d} C(N,r) <= (eN/d)^d for N in {9,16,25}");

    double lc = 0;
    for (int n = 2; n <= 8; n++) {
        for (int p = 0; p <= 2; p++) {
            double c = (2.0 * p + 1) / std::pow(2.0, p);
            lc = std::max(lc, std::abs(lightcone_degree_bound(n, p, 2, c).ln() - lightcone_1d_bound(n, p).ln()));
        }
    }
    b.check("lightcone_forms_agree", lc <= 1e-12, "max |difference| = " + fmt(lc));

    bool sinc = true;
    for (int k = 1; k <= 2000; k++) {
        double x = 0.01 * k;
        double v = std::abs(cross_term_suppression(AngleKernel::uniform, x, 1.0));
        sinc = sinc && v <= std::min(1.0, 1.0 / x) + 1e-15;
    }
    b.check("sinc_envelope", sinc, "|sin x / x| <= min{1, 1/x} for x in (0, 20]");
}

}  // namespace

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass:
            return "PASS";
        case CheckStatus::fail:
            return "FAIL";
        default:
            return "WARN";
    }
}

std::vector<CheckLine> run_verify_suite(const std::string &suite) {
    if (suite == "all") {
        std::vector<CheckLine> out;
        for (const char *s : {"harmonic", "twirl", "bounds"}) {
            auto part = run_verify_suite(s);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    Battery b(suite);
    if (suite == "harmonic") {
        harmonic_battery(b);
    } else if (suite == "twirl") {
        twirl_battery(b);
    } else if (suite == "bounds") {
        bounds_battery(b);
    } else {
        throw PreconditionError("unknown verify suite '" + suite + "' (expected harmonic, twirl, bounds or all)");
    }
    return b.take();
}

bool all_passed(const std::vector<CheckLine> &lines) {
    return std::none_of(lines.begin(), lines.end(), [](const CheckLine &l) { return l.status == CheckStatus::fail; });
}

}  // namespace feasmass
