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

#ifndef HMSTREAM_BOOSTING_HPP
#define HMSTREAM_BOOSTING_HPP

#include <cstdint>
#include <optional>

#include "hmstream/runners.hpp"

namespace hmstream {

/// Per-copy outcome probabilities (alpha, alpha/2, 1 - 3 alpha/2) of the ideal
/// sketch. Throws DomainError unless alpha is in (0, 1/4].
OutcomeDistribution ideal_copy_distribution(double alpha);

/// Probability that a majority vote over k independent copies is correct.
/// Ties, including the all-null outcome, are settled by a fair coin.
/// Evaluated by exact trinomial enumeration.
double vote_success(uint64_t k, const OutcomeDistribution &per_copy);
double vote_success(uint64_t k, double alpha);

/// Smallest k <= k_max with vote_success(k) >= target, found with an
/// incremental recurrence on the distribution of (#correct - #wrong).
/// nullopt if no such k exists, returned at once when a target above 1/2 is
/// unreachable because p_correct <= p_wrong.
std::optional<uint64_t> min_copies(const OutcomeDistribution &per_copy, double target = 2.0 / 3.0,
                                   uint64_t k_max = 10000);
std::optional<uint64_t> min_copies(double alpha, double target = 2.0 / 3.0, uint64_t k_max = 10000);

/// delta + k (1 - gamma) with delta = 1 - vote_success(k, alpha), clamped to
/// [0, 1].
double noisy_failure(uint64_t k, double alpha, double gamma);

struct Tolerance {
    double infidelity = 0.0;
    bool feasible = false;
};

/// (budget - delta(k, alpha)) / k, or {0, false} when delta >= budget.
Tolerance max_tolerable_infidelity(uint64_t k, double alpha, double budget = 1.0 / 3.0);

/// copies * (ceil(log2 n) + 2).
uint64_t total_quantum_space(uint64_t n, uint64_t copies);

}  // namespace hmstream

#endif
