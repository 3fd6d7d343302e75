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
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "feasmass/fullspace.hpp"

namespace feasmass {

constexpr int kMaxWalshBits = 20;

/// f^(S) = 2^{-N} sum_x f(x) (-1)^{|S & x|}, indexed by the mask S.
struct WalshSpectrum {
    int num_bits = 0;
    std::vector<std::complex<double>> coeffs;

    std::complex<double> operator[](std::uint64_t mask) const {
        return coeffs[mask];
    }
    /// sum_S |f^(S)|^2.
    double energy() const;
};

/// In-place unnormalized butterfly. Applying it twice scales by 2^N.
void fwht_unnormalized(std::span<std::complex<double>> values);
void fwht_unnormalized(std::span<double> values);

/// Throws DimensionError for a non-power-of-two length, CapacityError for N > 20.
WalshSpectrum walsh_transform(std::span<const std::complex<double>> values);
WalshSpectrum walsh_transform(std::span<const double> values);

/// f(x) = sum_S f^(S) (-1)^{|S & x|}.
std::vector<std::complex<double>> inverse_walsh_transform(const WalshSpectrum &spectrum);

/// sum_j (-1)^j C(r, j) C(n - r, w - j), exact.
boost::multiprecision::cpp_int krawtchouk(int n, int w, int r);

/// (n+1) x (n+1) table values[w][r] = K_w^{(n)}(r).
struct KrawtchoukTable {
    int n = 0;
    std::vector<std::vector<boost::multiprecision::cpp_int>> values;

    static KrawtchoukTable build(int n);
};

/// sum_r C(n,r) K_w(r) K_w'(r) == 2^n C(n,w) delta_{w,w'} for every pair.
bool krawtchouk_orthogonality_check(const KrawtchoukTable &table);
bool krawtchouk_orthogonality_check(int n);

boost::multiprecision::cpp_int binomial(int n, int k);

/// Spectrum of the weight-w sphere indicator on n bits, filled radially
/// from 2^{-n} K_w(|S|). n <= 16.
WalshSpectrum sphere_spectrum(int n, int w);

/// Indicator of the Hamming sphere of weight w, as a real table.
std::vector<double> sphere_indicator(int n, int w);

/// sum over |S| <= d of |f^(S)|^2.
double low_degree_mass(const WalshSpectrum &spectrum, int d);

/// Spectra of the permutation indicator and of its row and column factors.
struct PermutationSpectra {
    WalshSpectrum indicator;
    WalshSpectrum rows;
    WalshSpectrum cols;
};

/// Row indicator: every row of X(x) is one-hot. Column indicator likewise.
std::vector<double> row_indicator(int n);
std::vector<double> col_indicator(int n);

/// n <= 4.
PermutationSpectra permutation_spectrum(int n);

/// (f * g)(S) = sum_T f(T) g(S xor T), via the transform.
std::vector<std::complex<double>> dyadic_convolution(std::span<const std::complex<double>> f,
                                                     std::span<const std::complex<double>> g);

/// exp(-i beta (N - 2 s)): the Walsh multiplier of the X mixer.
std::complex<double> mixer_walsh_multiplier(int num_bits, int s, double beta);

/// 2^N sum_S conj(1_Pi^(S)) p^(S) with p(x) = |a_x|^2. n <= 4.
double feasible_mass_via_plancherel(const FullState &state, int n);

}  // namespace feasmass
