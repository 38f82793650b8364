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

#ifndef HMSTREAM_INSTANCE_HPP
#define HMSTREAM_INSTANCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hmstream {

/// Non-negative rational in lowest terms.
struct Rational {
    uint64_t num = 0;
    uint64_t den = 1;

    /// Reduces num/den. Throws DomainError on a zero denominator.
    static Rational make(uint64_t num, uint64_t den);
    /// Parses "num/den" or a bare integer.
    static Rational parse(std::string_view text);

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;

    friend bool operator==(const Rational &, const Rational &) = default;
};

enum class Case : uint8_t { Yes, No };

const char *case_name(Case c);
/// Accepts "yes" or "no". Throws DomainError otherwise.
Case parse_case(std::string_view text);

struct Edge {
    uint64_t u;
    uint64_t v;
    uint8_t z;

    friend bool operator==(const Edge &, const Edge &) = default;
};

struct HMInstance {
    uint64_t n = 0;
    Rational alpha;
    Case kind = Case::Yes;
    uint64_t seed = 0;
    std::vector<uint8_t> x;
    std::vector<Edge> edges;

    friend bool operator==(const HMInstance &, const HMInstance &) = default;
};

struct StreamUpdate {
    enum class Kind : uint8_t { Vertex, Edge, End };

    Kind kind = Kind::End;
    uint64_t u = 0;  // the vertex of a Vertex update
    uint64_t v = 0;
    uint8_t label = 0;

    static StreamUpdate vertex(uint64_t v, uint8_t label) { return {Kind::Vertex, v, 0, label}; }
    static StreamUpdate edge(uint64_t u, uint64_t v, uint8_t z) { return {Kind::Edge, u, v, z}; }
    static StreamUpdate end() { return {}; }

    friend bool operator==(const StreamUpdate &, const StreamUpdate &) = default;
};

/// Number of matching edges alpha * n. Throws DomainError unless alpha is in
/// (0, 1/4] and alpha * n is an integer.
uint64_t matching_size(uint64_t n, Rational alpha);

/// Random instance: uniform labels, uniform partial matching, z fixed by the
/// case. Deterministic in `seed`. Throws DomainError unless n is a power of two
/// >= 4 and alpha is admissible.
HMInstance generate(uint64_t n, Rational alpha, Case kind, uint64_t seed);

/// n vertex updates in ascending order, the matching edges in list order, End.
std::vector<StreamUpdate> to_stream(const HMInstance &instance);

struct Violation {
    std::string rule;
    std::string detail;
};

/// First violated invariant, or nullopt.
std::optional<Violation> validate(const HMInstance &instance);

/// Canonical JSON (sorted keys, compact, no trailing newline).
std::string to_json(const HMInstance &instance);

/// Parses and validates. Throws DomainError on malformed or invalid input.
HMInstance from_json(std::string_view text);

}  // namespace hmstream

#endif
