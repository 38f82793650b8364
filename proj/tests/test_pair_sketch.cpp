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

#include <array>
#include <cmath>
#include <numeric>

#include "hmstream/errors.hpp"
#include "hmstream/pair_sketch.hpp"

namespace hmstream {
namespace {

std::vector<Amplitude> random_amplitudes(int k, Rng &rng) {
    std::vector<Amplitude> amps(std::size_t{1} << k);
    double norm = 0.0;
    for (auto &a : amps) {
        a = {rng.uniform() - 0.5, rng.uniform() - 0.5};
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return amps;
}

std::vector<Amplitude> basis(int k, uint64_t e) {
    std::vector<Amplitude> amps(std::size_t{1} << k);
    amps[e] = 1.0;
    return amps;
}

void expect_close(const std::vector<Amplitude> &got, const std::vector<Amplitude> &want, double tol = 1e-9) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_NEAR(std::abs(got[i] - want[i]), 0.0, tol) << "index " << i;
    }
}

// Equality up to a global phase fitted on the largest component.
void expect_close_up_to_phase(const std::vector<Amplitude> &got, const std::vector<Amplitude> &want) {
    std::size_t big = 0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        if (std::abs(want[i]) > std::abs(want[big])) {
            big = i;
        }
    }
    const Amplitude phase = got[big] / want[big];
    EXPECT_NEAR(std::abs(phase), 1.0, 1e-9);
    std::vector<Amplitude> scaled(want);
    for (auto &a : scaled) {
        a *= phase;
    }
    expect_close(got, scaled);
}

TEST(Create, FullCubeIsHadamardLayer) {
    std::vector<SketchElement> all(8);
    std::iota(all.begin(), all.end(), 0);
    const auto circuit = prepare_uniform_circuit(3, all);
    ASSERT_EQ(circuit.size(), 3U);
    for (const auto &g : circuit) {
        EXPECT_EQ(g.kind, GateKind::H);
    }
    auto s = PairSketch::create(3, all);
    for (auto a : s.sketch_amplitudes()) {
        EXPECT_NEAR(std::abs(a - 1.0 / std::sqrt(8.0)), 0.0, 1e-12);
    }
}

TEST(Create, TwoQubitCube) {
    const std::array<SketchElement, 4> t = {0, 1, 2, 3};
    auto s = PairSketch::create(2, t);
    for (auto a : s.sketch_amplitudes()) {
        EXPECT_NEAR(std::abs(a - 0.5), 0.0, 1e-12);
    }
}

// Subcube x {fixed bits} uses H on free bits and X on fixed ones.
TEST(Create, SubcubeWithFixedOnes) {
    const std::array<SketchElement, 4> t = {0b0100, 0b0101, 0b1100, 0b1101};
    const auto circuit = prepare_uniform_circuit(4, t);
    ASSERT_EQ(circuit.size(), 3U);
    auto s = PairSketch::create(4, t);
    std::vector<Amplitude> want(16);
    for (auto e : t) {
        want[e] = 0.5;
    }
    expect_close(s.sketch_amplitudes(), want, 1e-12);
}

TEST(Create, ArbitrarySetMatchesIndicatorVector) {
    const std::array<SketchElement, 3> t = {0b000, 0b011, 0b101};
    auto s = PairSketch::create(3, t);
    std::vector<Amplitude> want(8);
    for (auto e : t) {
        want[e] = 1.0 / std::sqrt(3.0);
    }
    expect_close(s.sketch_amplitudes(), want, 1e-12);
}

TEST(Create, RandomSetsMatchIndicatorVector) {
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 1 + static_cast<int>(rng.below(5));
        std::vector<SketchElement> t;
        for (uint64_t e = 0; e < (uint64_t{1} << k); ++e) {
            if (rng.coin()) {
                t.push_back(e);
            }
        }
        if (t.empty()) {
            t.push_back(0);
        }
        auto s = PairSketch::create(k, t);
        std::vector<Amplitude> want(std::size_t{1} << k);
        for (auto e : t) {
            want[e] = 1.0 / std::sqrt(static_cast<double>(t.size()));
        }
        expect_close(s.sketch_amplitudes(), want, 1e-10);
    }
}

TEST(Create, Errors) {
    EXPECT_THROW(PairSketch::create(3, std::vector<SketchElement>{}), DomainError);
    EXPECT_THROW(PairSketch::create(3, std::vector<SketchElement>{8}), DomainError);
    EXPECT_THROW(PairSketch::create(3, std::vector<SketchElement>{1, 1}), DomainError);
    EXPECT_THROW(PairSketch::create(13, std::vector<SketchElement>{1}), CapacityError);
}

TEST(QueryOne, DeterministicCases) {
    Rng rng(1);
    auto exact = PairSketch::from_amplitudes(3, basis(3, 5), {}, &rng);
    EXPECT_TRUE(exact.query_one(5));
    const std::array<SketchElement, 4> t = {0, 1, 2, 3};
    auto s = PairSketch::create(3, t, {}, &rng);
    EXPECT_FALSE(s.query_one(6));
    expect_close(s.sketch_amplitudes(), [] {
        std::vector<Amplitude> w(8);
        for (int i = 0; i < 4; ++i) {
            w[static_cast<std::size_t>(i)] = 0.5;
        }
        return w;
    }());
}

TEST(QueryOne, BornRuleFrequency) {
    Rng rng(2);
    const std::array<SketchElement, 4> t = {1, 2, 4, 7};
    const int shots = 20000;
    int hits = 0;
    for (int i = 0; i < shots; ++i) {
        auto s = PairSketch::create(3, t, {}, &rng);
        hits += s.query_one(4);
    }
    const double p = static_cast<double>(hits) / shots;
    EXPECT_NEAR(p, 0.25, 4.0 * std::sqrt(0.25 * 0.75 / shots));
}

TEST(QueryPair, PlusStateGivesPlus) {
    Rng rng(4);
    std::vector<Amplitude> amps(16);
    amps[0b0110] = amps[0b1011] = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 20; ++i) {
        auto s = PairSketch::from_amplitudes(4, amps, {}, &rng);
        EXPECT_EQ(s.query_pair(0b0110, 0b1011), PvmOutcome::Plus);
        // Post-measurement state is the projected state (|a>+|b>)/sqrt2.
        expect_close_up_to_phase(s.sketch_amplitudes(), amps);
    }
    amps[0b1011] = -amps[0b1011];
    auto m = PairSketch::from_amplitudes(4, amps, {}, &rng);
    EXPECT_EQ(m.query_pair(0b0110, 0b1011), PvmOutcome::Minus);
    expect_close_up_to_phase(m.sketch_amplitudes(), amps);
}

TEST(QueryPair, OrthogonalStateUnchanged) {
    Rng rng(5);
    std::vector<Amplitude> amps(8);
    amps[1] = 0.6;
    amps[4] = Amplitude(0.0, 0.8);
    auto s = PairSketch::from_amplitudes(3, amps, {}, &rng);
    EXPECT_EQ(s.query_pair(2, 7), PvmOutcome::Zero);
    expect_close_up_to_phase(s.sketch_amplitudes(), amps);
}

TEST(QueryPair, DistinctElementsRequired) {
    Rng rng(5);
    auto s = PairSketch::from_amplitudes(3, basis(3, 0), {}, &rng);
    EXPECT_THROW(s.query_pair(3, 3), DomainError);
    EXPECT_THROW(s.query_pair(3, 9), DomainError);
}

// Sampled frequencies against projector probabilities; the zero branch is the
// renormalized complement projection.
TEST(QueryPair, MatchesProjectorProbabilitiesOnRandomStates) {
    Rng rng(6);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 2 + static_cast<int>(rng.below(3));
        const uint64_t dim = uint64_t{1} << k;
        const uint64_t a = rng.below(dim);
        uint64_t b = rng.below(dim);
        if (a == b) {
            b = (a + 1) % dim;
        }
        const auto amps = random_amplitudes(k, rng);
        auto probe = QuantumState::from_amplitudes(amps);
        const std::array<uint64_t, 2> ab = {a, b};
        const std::array<int, 2> plus = {1, 1};
        const std::array<int, 2> minus = {1, -1};
        const double p_plus = projector_probability(probe, ab, plus);
        const double p_minus = projector_probability(probe, ab, minus);

        auto s = PairSketch::from_amplitudes(k, amps, {}, &rng);
        const auto out = s.query_pair(a, b);
        const auto post = s.sketch_amplitudes();
        if (out == PvmOutcome::Zero) {
            // (1 - P+ - P-)|psi> removes the span{|a>,|b>} component.
            std::vector<Amplitude> want(amps);
            want[a] = want[b] = 0.0;
            const double norm = std::sqrt(1.0 - p_plus - p_minus);
            for (auto &w : want) {
                w /= norm;
            }
            expect_close_up_to_phase(post, want);
        } else {
            EXPECT_NEAR(std::abs(std::abs(post[a]) - std::sqrt(0.5)), 0.0, 1e-9);
            EXPECT_NEAR(std::abs(std::abs(post[b]) - std::sqrt(0.5)), 0.0, 1e-9);
            const Amplitude ratio = post[b] / post[a];
            EXPECT_NEAR(std::abs(ratio - (out == PvmOutcome::Plus ? 1.0 : -1.0)), 0.0, 1e-9);
        }
    }
}

TEST(QueryPair, FrequenciesFollowBornRule) {
    Rng rng(7);
    const auto amps = random_amplitudes(3, rng);
    auto probe = QuantumState::from_amplitudes(amps);
    const auto p = pair_probabilities(probe, 3, 5);
    const int shots = 20000;
    std::array<int, 3> hist{};
    for (int i = 0; i < shots; ++i) {
        auto s = PairSketch::from_amplitudes(3, amps, {}, &rng);
        ++hist[static_cast<std::size_t>(s.query_pair(3, 5))];
    }
    const std::array<double, 3> want = {p.plus, p.minus, p.zero};
    for (std::size_t i = 0; i < 3; ++i) {
        const double sigma = std::sqrt(want[i] * (1.0 - want[i]) / shots);
        EXPECT_NEAR(hist[i] / static_cast<double>(shots), want[i], 4.0 * sigma + 1e-12);
    }
}

TEST(QueryPair, UniformOverEightHasOneOverN) {
    // n = 4 elements per label, 2n = 8 sketch elements; a, b in the support.
    Rng rng(8);
    std::vector<SketchElement> t(8);
    std::iota(t.begin(), t.end(), 0);
    auto s = PairSketch::create(3, t, {}, &rng);
    auto probe = QuantumState::from_amplitudes(s.sketch_amplitudes());
    const auto p = pair_probabilities(probe, 1, 6);
    EXPECT_NEAR(p.plus, 0.25, 1e-12);
    EXPECT_NEAR(p.minus, 0.0, 1e-12);
}

TEST(QueryPair, GateBudget) {
    Rng rng(9);
    const int k = 5;
    std::vector<SketchElement> t(32);
    std::iota(t.begin(), t.end(), 0);
    ExecutorOptions opts;
    opts.policy = MeasurePolicy::ForceZero;
    auto s = PairSketch::create(k, t, opts, &rng);
    const GateCounts before = s.logical_counts();
    s.query_pair(0b00110, 0b10011);
    s.sketch_amplitudes();  // flush the inverse basis change
    GateCounts delta = s.logical_counts();
    EXPECT_EQ(delta.h - before.h, 2U);
    EXPECT_EQ(delta.cx - before.cx, 2U * (k - 1));
    EXPECT_LE(delta.x - before.x, 2U);
    EXPECT_EQ(delta.mcx.at(k + 1), 2U);
}

std::vector<Amplitude> permute(const std::vector<Amplitude> &amps, uint64_t a, uint64_t b) {
    // Explicit permutation matrix P with P|a> = |b>, P|b> = |a>.
    const std::size_t d = amps.size();
    std::vector<Amplitude> out(d);
    for (std::size_t col = 0; col < d; ++col) {
        const std::size_t row = col == a ? b : (col == b ? a : col);
        out[row] += amps[col];
    }
    return out;
}

TEST(Update, TranspositionMapsBasisStates) {
    auto s = PairSketch::from_amplitudes(3, basis(3, 0b011));
    s.update_transposition(0b011, 0b101);
    expect_close(s.sketch_amplitudes(), basis(3, 0b101));
    auto other = PairSketch::from_amplitudes(3, basis(3, 0b110));
    other.update_transposition(0b011, 0b101);
    expect_close(other.sketch_amplitudes(), basis(3, 0b110));
}

TEST(Update, RandomStateTransposition) {
    Rng rng(10);
    const auto amps = random_amplitudes(3, rng);
    auto s = PairSketch::from_amplitudes(3, amps);
    s.update_transposition(0b011, 0b101);
    expect_close(s.sketch_amplitudes(), permute(amps, 0b011, 0b101));
}

TEST(Update, CompositionMatchesPermutationMatrices) {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 1 + static_cast<int>(rng.below(4));
        const uint64_t dim = uint64_t{1} << k;
        std::vector<std::pair<SketchElement, SketchElement>> pi;
        const int len = static_cast<int>(rng.below(5));
        for (int i = 0; i < len; ++i) {
            const uint64_t a = rng.below(dim);
            const uint64_t b = (a + 1 + rng.below(dim - 1)) % dim;
            pi.emplace_back(a, b);
        }
        const auto amps = random_amplitudes(k, rng);
        std::vector<Amplitude> want = amps;
        for (const auto &[a, b] : pi) {
            want = permute(want, a, b);
        }
        auto s = PairSketch::from_amplitudes(k, amps);
        s.update(pi);
        expect_close(s.sketch_amplitudes(), want);
    }
}

TEST(Update, OverlappingTranspositionsCompose) {
    auto s = PairSketch::from_amplitudes(2, basis(2, 0));
    const std::vector<std::pair<SketchElement, SketchElement>> pi = {{0, 1}, {1, 2}};
    s.update(pi);
    expect_close(s.sketch_amplitudes(), basis(2, 2));
    auto id = PairSketch::from_amplitudes(2, basis(2, 3));
    id.update({});
    expect_close(id.sketch_amplitudes(), basis(2, 3));
}

TEST(Update, GateBudget) {
    const int k = 4;
    auto s = PairSketch::from_amplitudes(k, basis(k, 0));
    s.update_transposition(0b0010, 0b1011);
    const auto &g = s.logical_counts();
    EXPECT_EQ(g.h, 2U);
    EXPECT_EQ(g.cx, 2U * k);
    EXPECT_LE(g.x, 3U * k);
    EXPECT_EQ(g.mcx.at(k + 1), 2U);
    EXPECT_THROW(s.update_transposition(3, 3), DomainError);
}

TEST(Update, PhysicalExecutionMatchesLogical) {
    Rng rng(13);
    const auto amps = random_amplitudes(4, rng);
    ExecutorOptions phys;
    phys.physical = true;
    auto s = PairSketch::from_amplitudes(4, amps, phys);
    s.update_transposition(0b0001, 0b1110);
    expect_close(s.sketch_amplitudes(), permute(amps, 0b0001, 0b1110));
    EXPECT_LE(s.physical_counts().x, 3U * 4U);
}

}  // namespace
}  // namespace hmstream
