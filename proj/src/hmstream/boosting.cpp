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

#include "hmstream/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hmstream/circuit.hpp"
#include "hmstream/errors.hpp"

namespace hmstream {

namespace {

void check_distribution(const OutcomeDistribution &d) {
    const double sum = d.p_correct + d.p_wrong + d.p_null;
    if (d.p_correct < 0.0 || d.p_wrong < 0.0 || d.p_null < 0.0 || std::abs(sum - 1.0) > 1e-9) {
        throw DomainError("per-copy probabilities must be non-negative and sum to 1");
    }
}

// count * log(p), with 0 * log(0) = 0.
double weighted_log(uint64_t count, double p) {
    if (count == 0) {
        return 0.0;
    }
    return p > 0.0 ? static_cast<double>(count) * std::log(p) : -INFINITY;
}

}  // namespace

OutcomeDistribution ideal_copy_distribution(double alpha) {
    if (!(alpha > 0.0 && alpha <= 0.25)) {
        throw DomainError("alpha must lie in (0, 1/4]");
    }
    return {alpha, alpha / 2.0, 1.0 - 1.5 * alpha};
}

double vote_success(uint64_t k, const OutcomeDistribution &d) {
    check_distribution(d);
    if (k == 0) {
        return 0.5;
    }
    const double log_k_fact = std::lgamma(static_cast<double>(k) + 1.0);
    double win = 0.0;
    double tie = 0.0;
    for (uint64_t p = 0; p <= k; ++p) {
        for (uint64_t q = 0; q <= std::min(p, k - p); ++q) {
            const uint64_t r = k - p - q;
            const double log_term = log_k_fact - std::lgamma(static_cast<double>(p) + 1.0) -
                                    std::lgamma(static_cast<double>(q) + 1.0) -
                                    std::lgamma(static_cast<double>(r) + 1.0) + weighted_log(p, d.p_correct) +
                                    weighted_log(q, d.p_wrong) + weighted_log(r, d.p_null);
            const double term = std::exp(log_term);
            (p > q ? win : tie) += term;
        }
    }
    return std::clamp(win + 0.5 * tie, 0.0, 1.0);
}

double vote_success(uint64_t k, double alpha) { return vote_success(k, ideal_copy_distribution(alpha)); }

std::optional<uint64_t> min_copies(const OutcomeDistribution &d, double target, uint64_t k_max) {
    check_distribution(d);
    if (target > 0.5 && d.p_correct <= d.p_wrong) {
        return std::nullopt;
    }
    // dist[j] = Pr[#correct - #wrong = j - k] after k copies.
    std::vector<double> dist = {1.0};
    std::vector<double> next;
    for (uint64_t k = 1; k <= k_max; ++k) {
        next.assign(dist.size() + 2, 0.0);
        for (std::size_t j = 0; j < dist.size(); ++j) {
            next[j] += dist[j] * d.p_wrong;
            next[j + 1] += dist[j] * d.p_null;
            next[j + 2] += dist[j] * d.p_correct;
        }
        dist.swap(next);
        double success = 0.5 * dist[k];
        for (std::size_t j = k + 1; j < dist.size(); ++j) {
            success += dist[j];
        }
        if (success >= target) {
            return k;
        }
    }
    return std::nullopt;
}

std::optional<uint64_t> min_copies(double alpha, double target, uint64_t k_max) {
    return min_copies(ideal_copy_distribution(alpha), target, k_max);
}

double noisy_failure(uint64_t k, double alpha, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw DomainError("gamma must lie in [0, 1]");
    }
    const double delta = 1.0 - vote_success(k, alpha);
    return std::clamp(delta + static_cast<double>(k) * (1.0 - gamma), 0.0, 1.0);
}

Tolerance max_tolerable_infidelity(uint64_t k, double alpha, double budget) {
    if (k == 0) {
        throw DomainError("k must be >= 1");
    }
    const double delta = 1.0 - vote_success(k, alpha);
    if (delta >= budget) {
        return {0.0, false};
    }
    return {(budget - delta) / static_cast<double>(k), true};
}

uint64_t total_quantum_space(uint64_t n, uint64_t copies) {
    if (n < 2) {
        throw DomainError("n must be >= 2");
    }
    return copies * static_cast<uint64_t>(ceil_log2(n) + 2);
}

}  // namespace hmstream
