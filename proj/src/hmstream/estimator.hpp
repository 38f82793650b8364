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

#ifndef HMSTREAM_ESTIMATOR_HPP
#define HMSTREAM_ESTIMATOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hmstream {

enum class CodeFamily : uint8_t { Surface, TwoGross, Bb360 };

const char *code_family_name(CodeFamily f);
/// Accepts "surface", "two-gross", "bb360".
CodeFamily parse_code_family(std::string_view text);

struct CodeSpec {
    CodeFamily family = CodeFamily::Surface;
    double p = 1e-3;
    double p_th = 0.01;
};

enum class DistanceFormula : uint8_t {
    /// ceil(2 log10(1/eps) / log10(p_th/p)); reproduces the tabulated distances.
    Tabulated,
    /// ceil(2 (1 - log10 eps) / log10(p_th/p)); the printed form, kept for
    /// comparison.
    Printed,
};

/// Factory footprints in physical qubits. These are configuration: the
/// defaults are fitted to published totals, not derived.
struct FactoryConfig {
    /// (physical error rate, qubits); the entry closest in log10(p) is used.
    std::vector<std::pair<double, uint64_t>> surface = {{1e-3, 16500}, {1e-4, 12400}};
    /// (minimum CCZ infidelity, qubits), scanned in order; the first entry whose
    /// threshold is <= the target wins, else the last entry.
    std::vector<std::pair<double, uint64_t>> two_gross = {
        {1e-9, 13200}, {1e-11, 14000}, {1e-13, 14700}, {0.0, 15500}};
    uint64_t bb360_module_qubits = 960;
    uint64_t bb360_factory_qubits = 25000;
    /// Above this n the two-gross family switches to the larger block.
    double bb360_min_n = 1e13;

    static FactoryConfig defaults() { return {}; }
    /// Parses the JSON form (see schemas/factory_config.schema.json). Missing
    /// sections keep their defaults. Throws DomainError.
    static FactoryConfig from_json(std::string_view text);
    std::string to_json() const;

    uint64_t surface_factory(double p) const;
    uint64_t two_gross_factory(double ccz_infidelity) const;
};

/// Physical qubits per two-gross module: 576 data/check + 158 LPU + 34 adapter.
inline constexpr uint64_t kTwoGrossModuleQubits = 576 + 158 + 34;
inline constexpr uint64_t kLogicalPerModule = 12;

/// copies * (2 (ceil(log2 n) + 2) - 1).
uint64_t logical_qubits(uint64_t n, uint64_t copies = 7);

/// (1 - gamma) / (3 n ceil(log2 n) + 4 n).
double ccz_infidelity_target(uint64_t n, double gamma = 0.9975);

/// Throws DomainError when p >= p_th.
int surface_distance(double infidelity, double p, double p_th = 0.01,
                     DistanceFormula formula = DistanceFormula::Tabulated);

/// L * 2 d^2 + factory.
uint64_t surface_physical_qubits(uint64_t logical, int distance, uint64_t factory);

/// ceil(L / 12) * 768 + factory.
uint64_t two_gross_physical_qubits(uint64_t logical, uint64_t factory);

struct ResourceEstimate {
    uint64_t n = 0;
    uint64_t copies = 0;
    CodeFamily family = CodeFamily::Surface;
    double p = 0.0;
    uint64_t logical_qubits = 0;
    uint64_t toffoli_per_copy = 0;
    uint64_t toffoli_total = 0;
    double ccz_infidelity = 0.0;
    int distance = 0;      // surface only
    uint64_t modules = 0;  // bivariate bicycle only
    uint64_t factory_qubits = 0;
    uint64_t physical_qubits = 0;
    uint64_t classical_best_known_bits = 0;
    double classical_lower_bound_bits = 0.0;
    /// Set for the larger bivariate bicycle block, whose module overhead is an
    /// assumption.
    bool approximate = false;
};

ResourceEstimate estimate(uint64_t n, const CodeSpec &code, double gamma = 0.9975, uint64_t copies = 7,
                          double alpha = 0.25, const FactoryConfig &factories = FactoryConfig::defaults(),
                          DistanceFormula formula = DistanceFormula::Tabulated);

struct BreakEven {
    /// Last tabulated n where the quantum total is not below the classical
    /// count, and first n where it is.
    std::optional<uint64_t> last_above;
    std::optional<uint64_t> first_below;
};

/// Scans rows in order of n and reports where physical qubits first drop below
/// the classical best-known bits (or lower bound).
BreakEven find_break_even(const std::vector<ResourceEstimate> &rows, bool against_lower_bound);

}  // namespace hmstream

#endif
