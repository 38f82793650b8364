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

#include "hmstream/estimator.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "hmstream/circuit.hpp"
#include "hmstream/errors.hpp"
#include "hmstream/runners.hpp"

namespace hmstream {

const char *code_family_name(CodeFamily f) {
    switch (f) {
        case CodeFamily::Surface: return "surface";
        case CodeFamily::TwoGross: return "two-gross";
        case CodeFamily::Bb360: return "bb360";
    }
    return "?";
}

CodeFamily parse_code_family(std::string_view text) {
    if (text == "surface") {
        return CodeFamily::Surface;
    }
    if (text == "two-gross") {
        return CodeFamily::TwoGross;
    }
    if (text == "bb360") {
        return CodeFamily::Bb360;
    }
    throw DomainError("unknown code family '" + std::string(text) + "'");
}

FactoryConfig FactoryConfig::from_json(std::string_view text) {
    FactoryConfig cfg;
    try {
        const auto j = nlohmann::json::parse(text);
        if (!j.is_object()) {
            throw DomainError("factory config must be a JSON object");
        }
        if (j.contains("surface")) {
            cfg.surface.clear();
            for (const auto &e : j.at("surface")) {
                cfg.surface.emplace_back(e.at("p").get<double>(), e.at("qubits").get<uint64_t>());
            }
        }
        if (j.contains("two_gross")) {
            cfg.two_gross.clear();
            for (const auto &e : j.at("two_gross")) {
                cfg.two_gross.emplace_back(e.at("min_infidelity").get<double>(), e.at("qubits").get<uint64_t>());
            }
        }
        if (j.contains("bb360")) {
            const auto &b = j.at("bb360");
            cfg.bb360_module_qubits = b.value("module_qubits", cfg.bb360_module_qubits);
            cfg.bb360_factory_qubits = b.value("factory_qubits", cfg.bb360_factory_qubits);
            cfg.bb360_min_n = b.value("min_n", cfg.bb360_min_n);
        }
    } catch (const nlohmann::json::exception &e) {
        throw DomainError(std::string("factory config: ") + e.what());
    }
    if (cfg.surface.empty() || cfg.two_gross.empty()) {
        throw DomainError("factory config needs at least one surface and one two-gross entry");
    }
    return cfg;
}

std::string FactoryConfig::to_json() const {
    nlohmann::json j;
    j["surface"] = nlohmann::json::array();
    for (const auto &[p, q] : surface) {
        j["surface"].push_back({{"p", p}, {"qubits", q}});
    }
    j["two_gross"] = nlohmann::json::array();
    for (const auto &[eps, q] : two_gross) {
        j["two_gross"].push_back({{"min_infidelity", eps}, {"qubits", q}});
    }
    j["bb360"] = {{"module_qubits", bb360_module_qubits},
                  {"factory_qubits", bb360_factory_qubits},
                  {"min_n", bb360_min_n}};
    return j.dump(2);
}

uint64_t FactoryConfig::surface_factory(double p) const {
    const auto best = std::min_element(surface.begin(), surface.end(), [&](const auto &x, const auto &y) {
        return std::abs(std::log10(x.first / p)) < std::abs(std::log10(y.first / p));
    });
    return best->second;
}

uint64_t FactoryConfig::two_gross_factory(double ccz_infidelity) const {
    for (const auto &[threshold, qubits] : two_gross) {
        if (ccz_infidelity >= threshold) {
            return qubits;
        }
    }
    return two_gross.back().second;
}

uint64_t logical_qubits(uint64_t n, uint64_t copies) {
    if (n < 4) {
        throw DomainError("n must be >= 4");
    }
    return copies * (2 * static_cast<uint64_t>(ceil_log2(n) + 2) - 1);
}

double ccz_infidelity_target(uint64_t n, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw DomainError("gamma must lie in (0, 1)");
    }
    return (1.0 - gamma) / static_cast<double>(toffoli_count_hm(n, 1));
}

int surface_distance(double infidelity, double p, double p_th, DistanceFormula formula) {
    if (!(p > 0.0 && p < p_th)) {
        throw DomainError("surface code has no threshold advantage at p >= p_th");
    }
    if (!(infidelity > 0.0 && infidelity < 1.0)) {
        throw DomainError("infidelity target must lie in (0, 1)");
    }
    const double suppression = std::log10(p_th / p);
    const double numerator = formula == DistanceFormula::Tabulated ? 2.0 * std::log10(1.0 / infidelity)
                                                                    : 2.0 * (1.0 - std::log10(infidelity));
    return std::max(3, static_cast<int>(std::ceil(numerator / suppression)));
}

uint64_t surface_physical_qubits(uint64_t logical, int distance, uint64_t factory) {
    const auto d = static_cast<uint64_t>(distance);
    return logical * 2 * d * d + factory;
}

uint64_t two_gross_physical_qubits(uint64_t logical, uint64_t factory) {
    return (logical + kLogicalPerModule - 1) / kLogicalPerModule * kTwoGrossModuleQubits + factory;
}

ResourceEstimate estimate(uint64_t n, const CodeSpec &code, double gamma, uint64_t copies, double alpha,
                          const FactoryConfig &factories, DistanceFormula formula) {
    if (copies == 0) {
        throw DomainError("copies must be >= 1");
    }
    ResourceEstimate r;
    r.n = n;
    r.copies = copies;
    r.family = code.family;
    r.p = code.p;
    r.logical_qubits = logical_qubits(n, copies);
    r.toffoli_per_copy = toffoli_count_hm(n, 1);
    r.toffoli_total = toffoli_count_hm(n, copies);
    r.ccz_infidelity = ccz_infidelity_target(n, gamma);
    r.classical_best_known_bits = classical_sketch_size(static_cast<double>(n), alpha);
    r.classical_lower_bound_bits = classical_lower_bound(static_cast<double>(n), alpha, 1.0 / 3.0);

    if (code.family == CodeFamily::TwoGross && static_cast<double>(n) > factories.bb360_min_n) {
        r.family = CodeFamily::Bb360;
    }
    switch (r.family) {
        case CodeFamily::Surface:
            r.distance = surface_distance(r.ccz_infidelity, code.p, code.p_th, formula);
            r.factory_qubits = factories.surface_factory(code.p);
            r.physical_qubits = surface_physical_qubits(r.logical_qubits, r.distance, r.factory_qubits);
            break;
        case CodeFamily::TwoGross:
            r.modules = (r.logical_qubits + kLogicalPerModule - 1) / kLogicalPerModule;
            r.factory_qubits = factories.two_gross_factory(r.ccz_infidelity);
            r.physical_qubits = two_gross_physical_qubits(r.logical_qubits, r.factory_qubits);
            break;
        case CodeFamily::Bb360:
            r.modules = (r.logical_qubits + kLogicalPerModule - 1) / kLogicalPerModule;
            r.factory_qubits = factories.bb360_factory_qubits;
            r.physical_qubits = r.modules * factories.bb360_module_qubits + r.factory_qubits;
            r.approximate = true;
            break;
    }
    return r;
}

BreakEven find_break_even(const std::vector<ResourceEstimate> &rows, bool against_lower_bound) {
    std::vector<ResourceEstimate> sorted(rows);
    std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) { return a.n < b.n; });
    BreakEven out;
    for (const auto &r : sorted) {
        const double classical = against_lower_bound ? r.classical_lower_bound_bits
                                                     : static_cast<double>(r.classical_best_known_bits);
        if (static_cast<double>(r.physical_qubits) < classical) {
            out.first_below = r.n;
            return out;
        }
        out.last_above = r.n;
    }
    return out;
}

}  // namespace hmstream
