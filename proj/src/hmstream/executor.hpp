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

#ifndef HMSTREAM_EXECUTOR_HPP
#define HMSTREAM_EXECUTOR_HPP

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "hmstream/circuit.hpp"
#include "hmstream/rng.hpp"
#include "hmstream/statevector.hpp"

namespace hmstream {

enum class MeasurePolicy {
    Sample,
    /// Post-select outcome 0 on every measurement. Drives the worst-case
    /// (never terminating) circuit for gate tallies.
    ForceZero,
};

struct ExecutorOptions {
    /// Lower every gate to {H, X, T, Tdg, CX} before applying it.
    bool physical = false;
    /// Depolarizing probability after each physical CX. Requires `physical`.
    double depolarizing_p = 0.0;
    MeasurePolicy policy = MeasurePolicy::Sample;
    /// Tally the physical lowering even when applying logically.
    bool tally_physical = false;
    /// When set, every logical gate is appended here in application order.
    std::vector<GateOp> *trace = nullptr;
};

/// Applies a gate stream to one shot's state and keeps logical and physical
/// tallies. Single owner, not thread safe.
class Executor {
   public:
    Executor(QuantumState &state, std::vector<int> scratch, ExecutorOptions options, Rng *rng);

    void apply(const GateOp &op);

    /// Applies a run of gates whose physical lowering is peephole-optimized as
    /// one unit (adjacent X pairs cancel).
    void apply_block(std::span<const GateOp> ops);

    /// Computational-basis measurement with collapse.
    int measure(int qubit);

    /// Classically controlled X returning a measured-1 qubit to |0>.
    void reset_from_one(int qubit);

    QuantumState &state() noexcept { return state_; }
    const QuantumState &state() const noexcept { return state_; }
    const GateCounts &logical() const noexcept { return logical_; }
    const GateCounts &physical() const noexcept { return physical_; }
    std::span<const int> scratch() const noexcept { return scratch_; }
    const ExecutorOptions &options() const noexcept { return options_; }
    uint64_t noise_events() const noexcept { return noise_events_; }

   private:
    void run_physical(std::span<const GateOp> ops);
    void tally_lowering(const GateOp &op);

    QuantumState &state_;
    std::vector<int> scratch_;
    ExecutorOptions options_;
    Rng *rng_;
    GateCounts logical_;
    GateCounts physical_;
    uint64_t noise_events_ = 0;
    // Physical tallies of MCX lowering keyed by (controls, zero-polarity controls).
    std::map<std::pair<int, int>, GateCounts> mcx_cost_cache_;
};

}  // namespace hmstream

#endif
