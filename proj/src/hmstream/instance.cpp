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

#include "hmstream/instance.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include <json.hpp>

#include "hmstream/circuit.hpp"
#include "hmstream/errors.hpp"
#include "hmstream/rng.hpp"

namespace hmstream {

namespace {

uint64_t parse_u64(std::string_view text, std::string_view what) {
    uint64_t value = 0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw DomainError("bad " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

Rational Rational::make(uint64_t num, uint64_t den) {
    if (den == 0) {
        throw DomainError("rational with zero denominator");
    }
    const uint64_t g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return make(parse_u64(text, "rational"), 1);
    }
    return make(parse_u64(text.substr(0, slash), "numerator"), parse_u64(text.substr(slash + 1), "denominator"));
}

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

const char *case_name(Case c) { return c == Case::Yes ? "yes" : "no"; }

Case parse_case(std::string_view text) {
    if (text == "yes" || text == "YES") {
        return Case::Yes;
    }
    if (text == "no" || text == "NO") {
        return Case::No;
    }
    throw DomainError("case must be yes or no, got '" + std::string(text) + "'");
}

uint64_t matching_size(uint64_t n, Rational alpha) {
    if (alpha.num == 0 || alpha.num * 4 > alpha.den) {
        throw DomainError("alpha must lie in (0, 1/4], got " + alpha.to_string());
    }
    if (n % alpha.den != 0) {
        throw DomainError("alpha * n is not an integer for n=" + std::to_string(n) + ", alpha=" + alpha.to_string());
    }
    return n / alpha.den * alpha.num;
}

HMInstance generate(uint64_t n, Rational alpha, Case kind, uint64_t seed) {
    if (n < 4 || !is_power_of_two(n)) {
        throw DomainError("n must be a power of two >= 4, got " + std::to_string(n));
    }
    const uint64_t m = matching_size(n, alpha);
    Rng rng(seed);
    HMInstance inst;
    inst.n = n;
    inst.alpha = alpha;
    inst.kind = kind;
    inst.seed = seed;
    inst.x.resize(n);
    for (auto &bit : inst.x) {
        bit = rng.coin() ? 1 : 0;
    }
    std::vector<uint64_t> order(n);
    std::iota(order.begin(), order.end(), uint64_t{0});
    for (uint64_t i = n - 1; i > 0; --i) {
        std::swap(order[i], order[rng.below(i + 1)]);
    }
    inst.edges.reserve(m);
    for (uint64_t e = 0; e < m; ++e) {
        const uint64_t a = order[2 * e];
        const uint64_t b = order[2 * e + 1];
        const uint8_t parity = inst.x[a] ^ inst.x[b];
        inst.edges.push_back({std::min(a, b), std::max(a, b), static_cast<uint8_t>(kind == Case::Yes ? parity : parity ^ 1)});
    }
    return inst;
}

std::vector<StreamUpdate> to_stream(const HMInstance &instance) {
    std::vector<StreamUpdate> out;
    out.reserve(instance.n + instance.edges.size() + 1);
    for (uint64_t v = 0; v < instance.n; ++v) {
        out.push_back(StreamUpdate::vertex(v, instance.x[v]));
    }
    for (const auto &e : instance.edges) {
        out.push_back(StreamUpdate::edge(e.u, e.v, e.z));
    }
    out.push_back(StreamUpdate::end());
    return out;
}

std::optional<Violation> validate(const HMInstance &inst) {
    if (inst.n < 4 || !is_power_of_two(inst.n)) {
        return Violation{"size", "n=" + std::to_string(inst.n) + " is not a power of two >= 4"};
    }
    uint64_t m = 0;
    try {
        m = matching_size(inst.n, inst.alpha);
    } catch (const DomainError &e) {
        return Violation{"alpha", e.what()};
    }
    if (inst.x.size() != inst.n) {
        return Violation{"labels", "x has length " + std::to_string(inst.x.size())};
    }
    for (uint64_t v = 0; v < inst.n; ++v) {
        if (inst.x[v] > 1) {
            return Violation{"labels", "x[" + std::to_string(v) + "] is not a bit"};
        }
    }
    if (inst.edges.size() != m) {
        return Violation{"matching-size",
                         "expected " + std::to_string(m) + " edges, found " + std::to_string(inst.edges.size())};
    }
    std::vector<bool> used(inst.n, false);
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
        const auto &e = inst.edges[i];
        const std::string where = "edge " + std::to_string(i);
        if (e.u >= inst.n || e.v >= inst.n) {
            return Violation{"vertex-range", where + " has an endpoint outside [0, n)"};
        }
        if (e.u >= e.v) {
            return Violation{"edge-order", where + " does not satisfy u < v"};
        }
        if (e.z > 1) {
            return Violation{"edge-label", where + " label is not a bit"};
        }
        if (used[e.u] || used[e.v]) {
            return Violation{"disjointness", where + " reuses a matched vertex"};
        }
        used[e.u] = used[e.v] = true;
        const uint8_t parity = inst.x[e.u] ^ inst.x[e.v];
        const uint8_t expected = inst.kind == Case::Yes ? parity : parity ^ 1;
        if (e.z != expected) {
            return Violation{"case-consistency", where + " label contradicts the " + case_name(inst.kind) + " case"};
        }
    }
    return std::nullopt;
}

std::string to_json(const HMInstance &inst) {
    nlohmann::json j;
    j["n"] = inst.n;
    j["alpha"] = {inst.alpha.num, inst.alpha.den};
    j["case"] = case_name(inst.kind);
    j["seed"] = inst.seed;
    std::string bits(inst.x.size(), '0');
    for (std::size_t i = 0; i < inst.x.size(); ++i) {
        bits[i] = inst.x[i] ? '1' : '0';
    }
    j["x"] = bits;
    j["edges"] = nlohmann::json::array();
    for (const auto &e : inst.edges) {
        j["edges"].push_back({e.u, e.v, e.z});
    }
    return j.dump();
}

HMInstance from_json(std::string_view text) {
    HMInstance inst;
    try {
        const auto j = nlohmann::json::parse(text);
        inst.n = j.at("n").get<uint64_t>();
        const auto &alpha = j.at("alpha");
        if (!alpha.is_array() || alpha.size() != 2) {
            throw DomainError("alpha must be [num, den]");
        }
        inst.alpha = Rational::make(alpha[0].get<uint64_t>(), alpha[1].get<uint64_t>());
        inst.kind = parse_case(j.at("case").get<std::string>());
        inst.seed = j.at("seed").get<uint64_t>();
        const auto bits = j.at("x").get<std::string>();
        inst.x.reserve(bits.size());
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw DomainError("x must be a bitstring");
            }
            inst.x.push_back(static_cast<uint8_t>(c - '0'));
        }
        for (const auto &e : j.at("edges")) {
            if (!e.is_array() || e.size() != 3) {
                throw DomainError("edge must be [u, v, z]");
            }
            inst.edges.push_back({e[0].get<uint64_t>(), e[1].get<uint64_t>(), e[2].get<uint8_t>()});
        }
    } catch (const nlohmann::json::exception &e) {
        throw DomainError(std::string("instance JSON: ") + e.what());
    }
    if (auto bad = validate(inst)) {
        throw DomainError("invalid instance (" + bad->rule + "): " + bad->detail);
    }
    return inst;
}

}  // namespace hmstream
