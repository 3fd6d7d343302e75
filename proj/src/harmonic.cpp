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


#include "feasmass/harmonic.hpp"

#include <bit>
#include <cmath>

#include "feasmass/errors.hpp"
#include "feasmass/instance.hpp"
#include "feasmass/parallel.hpp"

namespace feasmass {

using boost::multiprecision::cpp_int;

namespace {

int checked_log2(std::size_t size) {
    if (size == 0 || !std::has_single_bit(size)) {
        throw DimensionError("transform length " + std::to_string(size) + " is not a power of two");
    }
    int bits = std::countr_zero(size);
    if (bits > kMaxWalshBits) {
        throw CapacityError("Walsh transform limited to N <= " + std::to_string(kMaxWalshBits));
    }
    return bits;
}

template <typename T>
void butterfly(std::span<T> v) {
    checked_log2(v.size());
    std::size_t half = v.size() / 2;
    for (std::size_t bit = 1; bit < v.size(); bit <<= 1) {
        std::size_t low_mask = bit - 1;
        parallel_for(half, [&](std::size_t begin, std::size_t end) {
            for (std::size_t k = begin; k < end; k++) {
                std::size_t i = ((k & ~low_mask) << 1) | (k & low_mask);
                std::size_t j = i | bit;
                T a = v[i];
                T b = v[j];
                v[i] = a + b;
                v[j] = a - b;
            }
        });
    }
}

void check_cube_size(int n, int limit) {
    if (n < 1 || n > limit) {
        throw CapacityError("n = " + std::to_string(n) + " outside supported range [1, " + std::to_string(limit) +
                            "]");
    }
}

}  // namespace

double WalshSpectrum::energy() const {
    double total = 0;
    for (const auto &c : coeffs) {
        total += std::norm(c);
    }
    return total;
}

void fwht_unnormalized(std::span<std::complex<double>> values) {
    butterfly(values);
}

void fwht_unnormalized(std::span<double> values) {
    butterfly(values);
}

WalshSpectrum walsh_transform(std::span<const std::complex<double>> values) {
    WalshSpectrum s;
    s.num_bits = checked_log2(values.size());
    s.coeffs.assign(values.begin(), values.end());
    butterfly(std::span<std::complex<double>>(s.coeffs));
    double scale = std::ldexp(1.0, -s.num_bits);
    for (auto &c : s.coeffs) {
        c *= scale;
    }
    return s;
}

WalshSpectrum walsh_transform(std::span<const double> values) {
    std::vector<std::complex<double>> z(values.begin(), values.end());
    return walsh_transform(std::span<const std::complex<double>>(z));
}

std::vector<std::complex<double>> inverse_walsh_transform(const WalshSpectrum &spectrum) {
    std::vector<std::complex<double>> f = spectrum.coeffs;
    butterfly(std::span<std::complex<double>>(f));
    return f;
}

cpp_int binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) {
        return 0;
    }
    cpp_int r = 1;
    for (int i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return r;
}

cpp_int krawtchouk(int n, int w, int r) {
    if (n < 0 || w < 0 || r < 0 || w > n || r > n) {
        throw DimensionError("Krawtchouk indices out of range: n=" + std::to_string(n) + " w=" + std::to_string(w) +
                             " r=" + std::to_string(r));
    }
    cpp_int total = 0;
    for (int j = 0; j <= w; j++) {
        cpp_int term = binomial(r, j) * binomial(n - r, w - j);
        if (j % 2) {
            total -= term;
        } else {
            total += term;
        }
    }
    return total;
}

KrawtchoukTable KrawtchoukTable::build(int n) {
    KrawtchoukTable t;
    t.n = n;
    t.values.assign(n + 1, std::vector<cpp_int>(n + 1));
    for (int w = 0; w <= n; w++) {
        for (int r = 0; r <= n; r++) {
            t.values[w][r] = krawtchouk(n, w, r);
        }
    }
    return t;
}

bool krawtchouk_orthogonality_check(const KrawtchoukTable &table) {
    int n = table.n;
    cpp_int two_n = cpp_int(1) << n;
    for (int w = 0; w <= n; w++) {
        for (int v = 0; v <= n; v++) {
            cpp_int sum = 0;
            for (int r = 0; r <= n; r++) {
                sum += binomial(n, r) * table.values[w][r] * table.values[v][r];
            }
            cpp_int expected = w == v ? two_n * binomial(n, w) : cpp_int(0);
            if (sum != expected) {
                return false;
            }
        }
    }
    return true;
}

bool krawtchouk_orthogonality_check(int n) {
    return krawtchouk_orthogonality_check(KrawtchoukTable::build(n));
}

WalshSpectrum sphere_spectrum(int n, int w) {
    check_cube_size(n, 16);
    if (w < 0 || w > n) {
        throw DimensionError("sphere weight out of range");
    }
    auto table = KrawtchoukTable::build(n);
    std::vector<double> radial(n + 1);
    for (int r = 0; r <= n; r++) {
        radial[r] = std::ldexp(table.values[w][r].convert_to<double>(), -n);
    }
    WalshSpectrum s;
    s.num_bits = n;
    s.coeffs.resize(std::size_t{1} << n);
    for (std::size_t m = 0; m < s.coeffs.size(); m++) {
        s.coeffs[m] = radial[std::popcount(m)];
    }
    return s;
}

std::vector<double> sphere_indicator(int n, int w) {
    check_cube_size(n, kMaxWalshBits);
    std::vector<double> f(std::size_t{1} << n);
    for (std::size_t x = 0; x < f.size(); x++) {
        f[x] = std::popcount(x) == w ? 1.0 : 0.0;
    }
    return f;
}

double low_degree_mass(const WalshSpectrum &spectrum, int d) {
    double total = 0;
    for (std::size_t m = 0; m < spectrum.coeffs.size(); m++) {
        if (std::popcount(m) <= d) {
            total += std::norm(spectrum.coeffs[m]);
        }
    }
    return total;
}

std::vector<double> row_indicator(int n) {
    check_cube_size(n, 4);
    std::vector<double> f(std::size_t{1} << (n * n));
    std::uint64_t row_mask = (std::uint64_t{1} << n) - 1;
    for (std::size_t x = 0; x < f.size(); x++) {
        bool ok = true;
        for (int i = 0; i < n && ok; i++) {
            ok = std::popcount((x >> (i * n)) & row_mask) == 1;
        }
        f[x] = ok ? 1.0 : 0.0;
    }
    return f;
}

std::vector<double> col_indicator(int n) {
    check_cube_size(n, 4);
    std::vector<double> f(std::size_t{1} << (n * n));
    for (std::size_t x = 0; x < f.size(); x++) {
        bool ok = true;
        for (int j = 0; j < n && ok; j++) {
            int sum = 0;
            for (int i = 0; i < n; i++) {
                sum += (x >> bit_index(i, j, n)) & 1;
            }
            ok = sum == 1;
        }
        f[x] = ok ? 1.0 : 0.0;
    }
    return f;
}

PermutationSpectra permutation_spectrum(int n) {
    check_cube_size(n, 4);
    std::vector<double> ind(std::size_t{1} << (n * n), 0.0);
    for (Bitstring x : enumerate_feasible(n)) {
        ind[x] = 1.0;
    }
    auto rows = row_indicator(n);
    auto cols = col_indicator(n);
    return PermutationSpectra{walsh_transform(std::span<const double>(ind)),
                              walsh_transform(std::span<const double>(rows)),
                              walsh_transform(std::span<const double>(cols))};
}

std::vector<std::complex<double>> dyadic_convolution(std::span<const std::complex<double>> f,
                                                     std::span<const std::complex<double>> g) {
    if (f.size() != g.size()) {
        throw DimensionError("convolution operands differ in length");
    }
    int bits = checked_log2(f.size());
    std::vector<std::complex<double>> a(f.begin(), f.end());
    std::vector<std::complex<double>> b(g.begin(), g.end());
    butterfly(std::span<std::complex<double>>(a));
    butterfly(std::span<std::complex<double>>(b));
    for (std::size_t k = 0; k < a.size(); k++) {
        a[k] *= b[k];
    }
    butterfly(std::span<std::complex<double>>(a));
    double scale = std::ldexp(1.0, -bits);
    for (auto &v : a) {
        v *= scale;
    }
    return a;
}

std::complex<double> mixer_walsh_multiplier(int num_bits, int s, double beta) {
    if (s < 0 || s > num_bits) {
        throw DimensionError("degree outside [0, N]");
    }
    return std::polar(1.0, -beta * static_cast<double>(num_bits - 2 * s));
}

double feasible_mass_via_plancherel(const FullState &state, int n) {
    check_cube_size(n, 4);
    if (state.num_qubits() != n * n) {
        throw DimensionError("state does not have n^2 qubits");
    }
    auto spectra = permutation_spectrum(n);
    std::vector<double> p(state.size());
    auto amps = state.amplitudes();
    for (std::size_t x = 0; x < p.size(); x++) {
        p[x] = std::norm(amps[x]);
    }
    auto ps = walsh_transform(std::span<const double>(p));
    std::complex<double> total = 0;
    for (std::size_t m = 0; m < p.size(); m++) {
        total += std::conj(spectra.indicator.coeffs[m]) * ps.coeffs[m];
    }
    return std::ldexp(total.real(), n * n);
}

}  // namespace feasmass
