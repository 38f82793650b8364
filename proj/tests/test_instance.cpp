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

#include <algorithm>
#include <set>

#include "hmstream/errors.hpp"
#include "hmstream/instance.hpp"

namespace hmstream {
namespace {

const Rational kQuarter{1, 4};

// Rebuilds (x, M, z) from a stream, independently of to_stream.
HMInstance parse_back(const HMInstance &meta, const std::vector<StreamUpdate> &stream) {
    HMInstance out;
    out.n = meta.n;
    out.alpha = meta.alpha;
    out.kind = meta.kind;
    out.seed = meta.seed;
    out.x.assign(meta.n, 0);
    bool ended = false;
    for (const auto &u : stream) {
        EXPECT_FALSE(ended) << "update after End";
        switch (u.kind) {
            case StreamUpdate::Kind::Vertex: out.x.at(u.u) = u.label; break;
            case StreamUpdate::Kind::Edge: out.edges.push_back({u.u, u.v, u.label}); break;
            case StreamUpdate::Kind::End: ended = true; break;
        }
    }
    EXPECT_TRUE(ended);
    return out;
}

TEST(Rational, ParseAndReduce) {
    EXPECT_EQ(Rational::parse("2/8"), kQuarter);
    EXPECT_EQ(Rational::parse("3"), (Rational{3, 1}));
    EXPECT_THROW(Rational::parse("1/0"), DomainError);
    EXPECT_THROW(Rational::parse("a/4"), DomainError);
    EXPECT_THROW(Rational::parse("1/"), DomainError);
    EXPECT_EQ(kQuarter.to_string(), "1/4");
}

TEST(Generate, SmallYesInstance) {
    const auto inst = generate(4, kQuarter, Case::Yes, 1);
    ASSERT_EQ(inst.edges.size(), 1U);
    const auto &e = inst.edges[0];
    EXPECT_EQ(inst.x[e.u] ^ inst.x[e.v], e.z);
    EXPECT_FALSE(validate(inst));
}

TEST(Generate, NoInstanceHasDisjointContradictingEdges) {
    const auto inst = generate(8, kQuarter, Case::No, 2);
    ASSERT_EQ(inst.edges.size(), 2U);
    std::set<uint64_t> seen;
    for (const auto &e : inst.edges) {
        EXPECT_NE(inst.x[e.u] ^ inst.x[e.v], e.z);
        EXPECT_TRUE(seen.insert(e.u).second);
        EXPECT_TRUE(seen.insert(e.v).second);
    }
}

TEST(Generate, DeterministicInSeed) {
    EXPECT_EQ(to_json(generate(32, kQuarter, Case::Yes, 42)), to_json(generate(32, kQuarter, Case::Yes, 42)));
    EXPECT_NE(to_json(generate(32, kQuarter, Case::Yes, 42)), to_json(generate(32, kQuarter, Case::Yes, 43)));
}

TEST(Generate, DomainErrors) {
    EXPECT_THROW(generate(12, kQuarter, Case::Yes, 0), DomainError);
    EXPECT_THROW(generate(2, kQuarter, Case::Yes, 0), DomainError);
    EXPECT_THROW(generate(4, Rational{1, 8}, Case::Yes, 0), DomainError);
    EXPECT_THROW(generate(8, Rational{1, 2}, Case::Yes, 0), DomainError);
    EXPECT_THROW(generate(8, Rational{0, 1}, Case::Yes, 0), DomainError);
}

TEST(Generate, ThousandSeedsValidate) {
    for (uint64_t seed = 0; seed < 1000; ++seed) {
        const auto inst = generate(32, kQuarter, seed % 2 ? Case::Yes : Case::No, seed);
        ASSERT_FALSE(validate(inst)) << seed;
        std::set<uint64_t> endpoints;
        for (const auto &e : inst.edges) {
            endpoints.insert(e.u);
            endpoints.insert(e.v);
        }
        EXPECT_EQ(endpoints.size(), 16U);
    }
}

TEST(Stream, ShapeAndOrder) {
    const auto inst = generate(4, kQuarter, Case::Yes, 3);
    const auto s = to_stream(inst);
    ASSERT_EQ(s.size(), 6U);
    EXPECT_EQ(s[0], StreamUpdate::vertex(0, inst.x[0]));
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(s[static_cast<std::size_t>(i)].kind, StreamUpdate::Kind::Vertex);
        EXPECT_EQ(s[static_cast<std::size_t>(i)].u, static_cast<uint64_t>(i));
    }
    EXPECT_EQ(s[4].kind, StreamUpdate::Kind::Edge);
    EXPECT_EQ(s[5].kind, StreamUpdate::Kind::End);
}

TEST(Stream, RoundTripThroughParseBack) {
    for (uint64_t n : {4ULL, 8ULL, 64ULL, 1024ULL}) {
        for (auto kind : {Case::Yes, Case::No}) {
            const auto inst = generate(n, kQuarter, kind, n * 7);
            const auto s = to_stream(inst);
            EXPECT_EQ(s.size(), n + n / 4 + 1);
            EXPECT_EQ(parse_back(inst, s), inst);
        }
    }
}

TEST(Validate, ReportsViolations) {
    auto inst = generate(16, kQuarter, Case::Yes, 5);
    auto dup = inst;
    const uint64_t shared = dup.edges[0].u;
    const uint64_t other = dup.edges[1].v;
    dup.edges[1] = {std::min(shared, other), std::max(shared, other), dup.edges[1].z};
    ASSERT_TRUE(validate(dup));
    EXPECT_EQ(validate(dup)->rule, "disjointness");

    auto flipped = inst;
    flipped.edges[2].z ^= 1;
    ASSERT_TRUE(validate(flipped));
    EXPECT_EQ(validate(flipped)->rule, "case-consistency");

    auto short_x = inst;
    short_x.x.pop_back();
    EXPECT_EQ(validate(short_x)->rule, "labels");

    auto missing = inst;
    missing.edges.pop_back();
    EXPECT_EQ(validate(missing)->rule, "matching-size");
}

TEST(Json, CanonicalRoundTrip) {
    const auto inst = generate(8, kQuarter, Case::No, 9);
    const auto text = to_json(inst);
    EXPECT_EQ(text.rfind("{\"alpha\":[1,4],\"case\":\"no\",\"edges\":[[", 0), 0U) << text;
    const auto back = from_json(text);
    EXPECT_EQ(back, inst);
    EXPECT_EQ(to_json(back), text);
}

TEST(Json, RejectsInvalid) {
    EXPECT_THROW(from_json("{"), DomainError);
    EXPECT_THROW(from_json(R"({"alpha":[1,4],"case":"yes","edges":[],"n":4,"seed":0,"x":"0000"})"), DomainError);
    EXPECT_THROW(from_json(R"({"alpha":[1,4],"case":"maybe","edges":[[0,1,0]],"n":4,"seed":0,"x":"0000"})"),
                 DomainError);
    EXPECT_NO_THROW(from_json(R"({"alpha":[1,4],"case":"yes","edges":[[0,1,1]],"n":4,"seed":0,"x":"0100"})"));
}

}  // namespace
}  // namespace hmstream
