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


#ifndef HMSTREAM_EXPERIMENT_HPP
#define HMSTREAM_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hmstream/instance.hpp"
#include "hmstream/runners.hpp"

namespace hmstream {

inline constexpr double kWilsonZ95 = 1.959963984540054;

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// Wilson score interval for `hits` out of `trials`. Throws DomainError for
/// trials == 0 or hits > trials.
Interval wilson_interval(uint64_t hits, uint64_t trials, double z = kWilsonZ95);

enum class CaseMix : uint8_t { Yes, No, Mix };

struct ExperimentConfig {
    uint64_t n = 16;
    Rational alpha = Rational::make(1, 4);
    CaseMix cases = CaseMix::Yes;
    uint64_t shots = 2000;
    uint64_t seed = 1;
    double depolarizing_p = 0.0;
    bool physical = false;
    /// Empty endpoint runs shots in-process.
    std::string endpoint;
    unsigned jobs = 1;
    unsigned retries = 3;
    uint64_t timeout_ms = 30000;
    bool exact = false;
    /// Archived instance (JSON). Overrides n, alpha, case and seed for the
    /// instance itself; shot seeds still derive from `seed`.
    std::optional<std::string> instance_json;

    /// Throws DomainError on missing or out-of-range fields.
    static ExperimentConfig from_json(std::string_view text);
    std::string to_json() const;
    /// Throws DomainError unless shots >= 1, jobs >= 1 and the case mix is
    /// compatible with the mode.
    void check() const;
};

/// The instances a configuration scores against: one, or a YES/NO pair for
/// CaseMix::Mix (shot i uses entry i % 2).
std::vector<HMInstance> experiment_instances(const ExperimentConfig &config);

struct ShotRecord {
    bool aborted = false;
    SketchOutcome outcome;
    unsigned attempts = 0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<HMInstance> instances;
    std::vector<ShotRecord> shots;
    uint64_t correct = 0;
    uint64_t wrong = 0;
    uint64_t null = 0;
    uint64_t aborted = 0;
    std::optional<OutcomeDistribution> exact;
    double wall_ms = 0.0;
    std::string timestamp;

    uint64_t completed() const noexcept { return correct + wrong + null; }
};

/// Runs every shot, in parallel over `config.jobs` threads. Shot i uses
/// Rng(derive_seed(seed, i)), so the result does not depend on scheduling.
/// Remote shots open one connection each and retry on TransportError.
ExperimentResult run_experiment(const ExperimentConfig &config);

/// Results document. Every field except "metadata" is a deterministic function
/// of the configuration.
std::string results_json(const ExperimentResult &result);

struct Figure2bRow {
    uint64_t n = 0;
    std::string noise;
    OutcomeDistribution dist;
    std::optional<uint64_t> copies;
    std::optional<uint64_t> total_qubits;
};

/// Copies needed for 2/3 success and the total width copies * (ceil(log2 n) +
/// 2). Both are empty when k_max copies do not suffice.
Figure2bRow figure2b_row(uint64_t n, std::string noise, const OutcomeDistribution &dist,
                         uint64_t k_max = 10000);

std::string figure2b_csv(const std::vector<Figure2bRow> &rows);

}  // namespace hmstream

#endif
