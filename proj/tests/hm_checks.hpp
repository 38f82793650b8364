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


#ifndef HMSTREAM_TESTS_HM_CHECKS_HPP
#define HMSTREAM_TESTS_HM_CHECKS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "hmstream/circuit.hpp"
#include "hmstream/pair_sketch.hpp"
#include "hmstream/runners.hpp"

namespace hmstream::checks {

/// Gate trace of the forced-zero worst-case run at size n.
inline std::vector<GateOp> worst_case_trace(uint64_t n) {
    std::vector<GateOp> trace;
    InstanceSource source(worst_case_stream(n));
    ShotOptions options;
    options.policy = MeasurePolicy::ForceZero;
    options.trace = &trace;
    Rng rng(0);
    run_quantum_shot(source, n, options, rng);
    return trace;
}

/// Largest column deviation between the logical trace and its physical
/// lowering, over every basis input with scratch qubits at |0>, after fitting
/// one global phase.
inline double decomposed_equivalence_error(uint64_t n) {
    const int width = ceil_log2(n) + 2;
    const int total = PairSketch::total_qubits(width);
    std::vector<int> scratch;
    for (int i = width + 2; i < total; ++i) {
        scratch.push_back(i);
    }
    const auto logical = worst_case_trace(n);
    std::vector<GateOp> physical;
    for (const auto &op : logical) {
        const auto lowered = lower_to_physical(op, scratch);
        physical.insert(physical.end(), lowered.begin(), lowered.end());
    }
    std::complex<double> phase = 0.0;
    double worst = 0.0;
    for (uint64_t s = 0; s < (uint64_t{1} << (width + 2)); ++s) {
        auto a = QuantumState::allocate(total);
        auto b = QuantumState::allocate(total);
        a[0] = 0.0;
        b[0] = 0.0;
        a[s] = 1.0;
        b[s] = 1.0;
        for (const auto &op : logical) {
            apply(a, op);
        }
        for (const auto &op : physical) {
            apply(b, op);
        }
        if (s == 0) {
            std::complex<double> overlap = 0.0;
            for (std::size_t i = 0; i < a.dimension(); ++i) {
                overlap += std::conj(a[i]) * b[i];
            }
            phase = overlap / std::abs(overlap);
        }
        for (std::size_t i = 0; i < a.dimension(); ++i) {
            worst = std::max(worst, std::abs(b[i] - phase * a[i]));
        }
    }
    return worst;
}

}  // namespace hmstream::checks

#endif
