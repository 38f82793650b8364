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


#include <gtest/gtest.h>

#include <cmath>

#include "hmstream/errors.hpp"
#include "hmstream/estimator.hpp"
#include "published_values.hpp"

namespace hmstream {
namespace {

double rel(double got, double want) { return std::abs(got - want) / want; }

std::vector<ResourceEstimate> rows(CodeFamily family, double p) {
    std::vector<ResourceEstimate> out;
    for (const auto &row : published::kResources) {
        out.push_back(estimate(static_cast<uint64_t>(row.n), {family, p}));
    }
    return out;
}

TEST(Estimator, LogicalToffoliAndInfidelityColumns) {
    for (const auto &row : published::kResources) {
        const auto e = estimate(static_cast<uint64_t>(row.n), {});
        EXPECT_EQ(e.logical_qubits, row.logical) << row.n;
        EXPECT_TRUE(published::same_3sf(static_cast<double>(e.toffoli_total), row.toffoli)) << row.n;
        EXPECT_TRUE(published::same_3sf(e.ccz_infidelity, row.ccz_infidelity)) << row.n << " " << e.ccz_infidelity;
    }
}

TEST(Estimator, SurfaceDistancesExact) {
    for (const auto &row : published::kResources) {
        const auto n = static_cast<uint64_t>(row.n);
        EXPECT_EQ(estimate(n, {CodeFamily::Surface, 1e-3}).distance, row.d_p3) << row.n;
        EXPECT_EQ(estimate(n, {CodeFamily::Surface, 1e-4}).distance, row.d_p4) << row.n;
    }
}

TEST(Estimator, PhysicalTotalsWithinTolerance) {
    for (const auto &row : published::kResources) {
        const auto n = static_cast<uint64_t>(row.n);
        EXPECT_LE(rel(estimate(n, {CodeFamily::Surface, 1e-3}).physical_qubits, row.surface_p3), 0.05) << row.n;
        EXPECT_LE(rel(estimate(n, {CodeFamily::Surface, 1e-4}).physical_qubits, row.surface_p4), 0.05) << row.n;
        const auto g = estimate(n, {CodeFamily::TwoGross, 1e-3});
        EXPECT_LE(rel(g.physical_qubits, row.two_gross), 0.10) << row.n;
        EXPECT_EQ(g.approximate, row.n > 1e13);
    }
}

TEST(Estimator, ClassicalColumns) {
    for (const auto &row : published::kResources) {
        const auto e = estimate(static_cast<uint64_t>(row.n), {});
        EXPECT_LE(rel(e.classical_best_known_bits, row.best_known), 0.01) << row.n;
        if (!published::lower_bound_row_suspect(row.n)) {
            EXPECT_LE(rel(e.classical_lower_bound_bits, row.lower_bound), 0.01) << row.n;
        }
    }
    // The two early rows disagree with the formula by far more than rounding.
    EXPECT_GT(rel(estimate(100000, {}).classical_lower_bound_bits, 1.20e1), 1.0);
}

TEST(Estimator, BreakEven) {
    const auto g = rows(CodeFamily::TwoGross, 1e-3);
    const auto best = find_break_even(g, false);
    ASSERT_TRUE(best.first_below.has_value());
    EXPECT_EQ(*best.last_above, 100000000U);
    EXPECT_EQ(*best.first_below, 1000000000U);
    const auto lower = find_break_even(g, true);
    EXPECT_EQ(*lower.last_above, 100000000000U);
    EXPECT_EQ(*lower.first_below, 1000000000000U);
    const auto surface = find_break_even(rows(CodeFamily::Surface, 1e-3), true);
    EXPECT_EQ(*surface.last_above, 100000000000000U);
    EXPECT_EQ(*surface.first_below, 1000000000000000U);
    EXPECT_FALSE(find_break_even({}, false).first_below.has_value());
}

TEST(Estimator, DistanceFormulas) {
    EXPECT_EQ(surface_distance(5.43e-9, 1e-3), 17);
    EXPECT_EQ(surface_distance(5.43e-9, 1e-3, 0.01, DistanceFormula::Printed), 19);
    EXPECT_EQ(surface_distance(0.5, 1e-3), 3);
    EXPECT_THROW(surface_distance(1e-9, 0.01), DomainError);
    EXPECT_THROW(surface_distance(1e-9, 0.02), DomainError);
    EXPECT_THROW(estimate(1000, {CodeFamily::Surface, 0.05}), DomainError);
}

TEST(Estimator, BivariateBicycleAccounting) {
    EXPECT_EQ(kTwoGrossModuleQubits, 768U);
    EXPECT_EQ(two_gross_physical_qubits(217, 13200), 19U * 768U + 13200U);
    const auto e = estimate(100000000000000ULL, {CodeFamily::TwoGross, 1e-3});
    EXPECT_EQ(e.family, CodeFamily::Bb360);
    EXPECT_EQ(e.physical_qubits, 57U * 960U + 25000U);
    EXPECT_TRUE(estimate(10000, {CodeFamily::Bb360, 1e-3}).approximate);
}

TEST(FactoryConfig, JsonRoundTripAndOverrides) {
    const auto defaults = FactoryConfig::defaults();
    const auto back = FactoryConfig::from_json(defaults.to_json());
    EXPECT_EQ(back.surface, defaults.surface);
    EXPECT_EQ(back.two_gross, defaults.two_gross);
    EXPECT_EQ(back.bb360_module_qubits, defaults.bb360_module_qubits);

    const auto custom = FactoryConfig::from_json(R"({"surface": [{"p": 0.001, "qubits": 1000}]})");
    EXPECT_EQ(custom.surface_factory(1e-3), 1000U);
    EXPECT_EQ(custom.two_gross, defaults.two_gross);
    const auto e = estimate(10000, {CodeFamily::Surface, 1e-3}, 0.9975, 7, 0.25, custom);
    EXPECT_EQ(e.physical_qubits, 217U * 2U * 17U * 17U + 1000U);

    EXPECT_THROW(FactoryConfig::from_json("[1]"), DomainError);
    EXPECT_THROW(FactoryConfig::from_json(R"({"surface": []})"), DomainError);
    EXPECT_THROW(FactoryConfig::from_json(R"({"surface": [{"p": "x"}]})"), DomainError);
    EXPECT_THROW(FactoryConfig::from_json("{"), DomainError);
}

TEST(FactoryConfig, TwoGrossLookup) {
    const auto f = FactoryConfig::defaults();
    EXPECT_EQ(f.two_gross_factory(5e-9), 13200U);
    EXPECT_EQ(f.two_gross_factory(5e-10), 14000U);
    EXPECT_EQ(f.two_gross_factory(5e-12), 14700U);
    EXPECT_EQ(f.two_gross_factory(5e-14), 15500U);
}

TEST(CodeFamily, Names) {
    for (auto f : {CodeFamily::Surface, CodeFamily::TwoGross, CodeFamily::Bb360}) {
        EXPECT_EQ(parse_code_family(code_family_name(f)), f);
    }
    EXPECT_THROW(parse_code_family("color"), DomainError);
}

}  // namespace
}  // namespace hmstream
