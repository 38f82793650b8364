// Copyright 2026 The hmstream Authors
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


// Published reference values used as test oracles.

#ifndef HMSTREAM_TESTS_PUBLISHED_VALUES_HPP
#define HMSTREAM_TESTS_PUBLISHED_VALUES_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace hmstream::published {

struct LogicalRow {
    uint64_t n;
    uint64_t space;
    uint64_t h;
    uint64_t cx;
    uint64_t mcx_small;  // C^{log n + 1}X
    uint64_t mcx_large;  // C^{log n + 3}X
};

inline constexpr std::array<LogicalRow, 5> kLogical = {{
    {4, 4, 10, 28, 4, 8},
    {8, 5, 20, 75, 8, 16},
    {16, 6, 36, 186, 16, 32},
    {32, 7, 69, 441, 32, 64},
    {64, 8, 134, 1016, 64, 128},
}};

struct PhysicalRow {
    uint64_t n;
    uint64_t t;
    uint64_t h;
    uint64_t cnot;
};

inline constexpr std::array<PhysicalRow, 5> kPhysical = {{
    {4, 212, 98, 196},
    {8, 616, 291, 555},
    {16, 1616, 772, 1434},
    {32, 4000, 1925, 3513},
    {64, 9536, 4614, 8312},
}};

struct ResourceRow {
    double n;
    uint64_t logical;
    double toffoli;
    double ccz_infidelity;
    int d_p3;
    double surface_p3;
    int d_p4;
    double surface_p4;
    double two_gross;
    double best_known;
    double lower_bound;
};

inline constexpr std::array<ResourceRow, 12> kResources = {{
    {1e4, 217, 3.22e6, 5.43e-9, 17, 1.42e5, 9, 4.76e4, 2.78e4, 2.09e2, 1.20e1},
    {1e5, 259, 3.85e7, 4.55e-10, 19, 2.03e5, 10, 6.42e4, 3.09e4, 6.62e2, 1.20e1},
    {1e6, 301, 4.48e8, 3.91e-11, 21, 2.82e5, 11, 8.52e4, 3.39e4, 2.10e3, 1.25e2},
    {1e7, 357, 5.32e9, 3.29e-12, 23, 3.94e5, 12, 1.15e5, 3.78e4, 6.63e3, 3.95e2},
    {1e8, 399, 5.95e10, 2.94e-13, 26, 5.56e5, 13, 1.47e5, 4.08e4, 2.10e4, 1.25e3},
    {1e9, 441, 6.58e11, 2.66e-14, 28, 7.08e5, 14, 1.85e5, 4.39e4, 6.63e4, 3.96e3},
    {1e10, 497, 7.42e12, 2.36e-15, 30, 9.11e5, 15, 2.36e5, 4.78e4, 2.10e5, 1.25e4},
    {1e11, 539, 8.05e13, 2.17e-16, 32, 1.12e6, 16, 2.88e5, 5.01e4, 6.63e5, 3.96e4},
    {1e12, 581, 8.68e14, 2.02e-17, 34, 1.36e6, 17, 3.48e5, 5.31e4, 2.10e6, 1.25e5},
    {1e13, 637, 9.52e15, 1.84e-18, 36, 1.67e6, 18, 4.25e5, 5.70e4, 6.63e6, 3.96e5},
    {1e14, 679, 1.02e17, 1.72e-19, 38, 1.98e6, 19, 5.03e5, 7.97e4, 2.10e7, 1.25e6},
    {1e15, 721, 1.08e18, 1.62e-20, 40, 2.32e6, 20, 5.89e5, 8.41e4, 6.63e7, 3.96e6},
}};

/// Rows whose lower-bound entry disagrees with its own formula.
inline constexpr bool lower_bound_row_suspect(double n) { return n < 1e6; }

/// `got` rounded to three significant figures equals `want`.
inline bool same_3sf(double got, double want) {
    const double exponent = std::floor(std::log10(std::abs(got)));
    const double scale = std::pow(10.0, exponent - 2);
    const double rounded = std::round(got / scale) * scale;
    return std::abs(rounded - want) <= 1e-9 * std::abs(want);
}

}  // namespace hmstream::published

#endif
