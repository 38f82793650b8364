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

#include "hmstream/executor.hpp"

#include <algorithm>

#include "hmstream/errors.hpp"

namespace hmstream {

Executor::Executor(QuantumState &state, std::vector<int> scratch, ExecutorOptions options, Rng *rng)
    : state_(state), scratch_(std::move(scratch)), options_(options), rng_(rng) {
    if (options_.depolarizing_p != 0.0 && !options_.physical) {
        throw DomainError("depolarizing noise requires physical execution");
    }
    if (options_.depolarizing_p < 0.0 || options_.depolarizing_p > 1.0) {
        throw DomainError("depolarizing probability outside [0,1]");
    }
    if (options_.depolarizing_p > 0.0 && rng_ == nullptr) {
        throw DomainError("noisy executor needs an rng");
    }
}

void Executor::tally_lowering(const GateOp &op) {
    if (op.kind != GateKind::MCX) {
        for (const auto &g : lower_to_physical(op, scratch_)) {
            physical_.record(g);
        }
        return;
    }
    const int zeros = static_cast<int>(
        std::count_if(op.controls.begin(), op.controls.end(), [](const Control &c) { return !c.polarity; }));
    const auto key = std::make_pair(static_cast<int>(op.controls.size()), zeros);
    auto it = mcx_cost_cache_.find(key);
    if (it == mcx_cost_cache_.end()) {
        GateCounts cost;
        for (const auto &g : lower_to_physical(op, scratch_)) {
            cost.record(g);
        }
        it = mcx_cost_cache_.emplace(key, cost).first;
    }
    physical_ += it->second;
}

void Executor::run_physical(std::span<const GateOp> ops) {
    for (const auto &g : ops) {
        hmstream::apply(state_, g);
        physical_.record(g);
        if (g.kind == GateKind::CX && options_.depolarizing_p > 0.0) {
            if (inject_depolarizing(state_, g.controls[0].qubit, g.target, options_.depolarizing_p, *rng_) != 0) {
                ++noise_events_;
            }
        }
    }
}

void Executor::apply(const GateOp &op) {
    validate(op, state_.num_qubits());
    logical_.record(op);
    if (options_.trace != nullptr) {
        options_.trace->push_back(op);
    }
    if (options_.physical) {
        run_physical(lower_to_physical(op, scratch_));
        return;
    }
    hmstream::apply(state_, op);
    if (options_.tally_physical) {
        tally_lowering(op);
    }
}

void Executor::apply_block(std::span<const GateOp> ops) {
    for (const auto &op : ops) {
        validate(op, state_.num_qubits());
        logical_.record(op);
        if (options_.trace != nullptr) {
            options_.trace->push_back(op);
        }
    }
    if (!options_.physical && !options_.tally_physical) {
        for (const auto &op : ops) {
            hmstream::apply(state_, op);
        }
        return;
    }
    std::vector<GateOp> lowered;
    for (const auto &op : ops) {
        auto part = lower_to_physical(op, scratch_);
        lowered.insert(lowered.end(), part.begin(), part.end());
    }
    cancel_adjacent_x(lowered);
    if (options_.physical) {
        run_physical(lowered);
        return;
    }
    for (const auto &op : ops) {
        hmstream::apply(state_, op);
    }
    for (const auto &g : lowered) {
        physical_.record(g);
    }
}

int Executor::measure(int qubit) {
    if (options_.policy == MeasurePolicy::ForceZero) {
        if (1.0 - probability_one(state_, qubit) <= 0.0) {
            throw InternalError("forced-zero measurement has zero probability");
        }
        collapse(state_, qubit, 0);
        return 0;
    }
    if (rng_ == nullptr) {
        throw DomainError("sampled measurement needs an rng");
    }
    return measure_qubit(state_, qubit, *rng_);
}

void Executor::reset_from_one(int qubit) {
    const GateOp flip = GateOp::x(qubit);
    logical_.record(flip);
    if (options_.trace != nullptr) {
        options_.trace->push_back(flip);
    }
    physical_.record(flip);
    hmstream::apply(state_, flip);
}

}  // namespace hmstream
