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

#ifndef HMSTREAM_PAIR_SKETCH_HPP
#define HMSTREAM_PAIR_SKETCH_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "hmstream/executor.hpp"
#include "hmstream/statevector.hpp"

namespace hmstream {

/// A sketch element is a k-bit string packed into the low bits of an integer
/// (bit i is sketch qubit i).
using SketchElement = uint64_t;

/// Quantum pair sketch of width k.
///
/// Register layout: sketch qubits [0, k), flag ancillas k and k+1, then
/// max(k-2, 0) clean scratch qubits used only by decomposed MCX gates.
///
/// The inverse basis change after a query_pair is held back and applied
/// right before the next operation or state read, so a caller that stops
/// after its last query never pays for it (see discard_pending).
class PairSketch {
   public:
    /// Prepares (1/sqrt|T|) sum_{t in T} |t>. Throws DomainError on empty T,
    /// out-of-width elements, or duplicates.
    static PairSketch create(int width, std::span<const SketchElement> elements, ExecutorOptions options = {},
                             Rng *rng = nullptr);

    /// Wraps explicit sketch amplitudes (length 2^width) without emitting
    /// gates. Test and oracle entry point.
    static PairSketch from_amplitudes(int width, std::span<const Amplitude> amplitudes, ExecutorOptions options = {},
                                      Rng *rng = nullptr);

    /// Sketch register, two ancillas and the MCX scratch qubits.
    static int total_qubits(int width);
    /// Qubits actually simulated: scratch is only allocated for physical
    /// execution.
    static int allocated_qubits(int width, const ExecutorOptions &options);

    int width() const noexcept { return width_; }
    int ancilla(int i) const noexcept { return width_ + i; }

    /// Projects onto |a><a| versus its complement. Returns true on |a>.
    bool query_one(SketchElement a);

    /// Three-outcome measurement onto (|a> +- |b>)/sqrt2 and the complement.
    PvmOutcome query_pair(SketchElement a, SketchElement b);

    /// Swaps the amplitudes of |a> and |b>.
    void update_transposition(SketchElement a, SketchElement b);

    /// Applies transpositions in list order.
    void update(std::span<const std::pair<SketchElement, SketchElement>> transpositions);

    /// Applies a logical gate on the register.
    void apply(const GateOp &op);

    /// Drops any pending inverse basis change. The sketch is unusable
    /// afterwards except for tallies.
    void discard_pending();

    /// Amplitudes of the k sketch qubits with ancillas and scratch at |0>.
    std::vector<Amplitude> sketch_amplitudes();

    /// Full register state after flushing pending gates.
    const QuantumState &state();

    const GateCounts &logical_counts() const noexcept { return executor_.logical(); }
    const GateCounts &physical_counts() const noexcept { return executor_.physical(); }
    const Executor &executor() const noexcept { return executor_; }

   private:
    PairSketch(int width, std::unique_ptr<QuantumState> state, ExecutorOptions options, Rng *rng);

    void check_element(SketchElement e) const;
    void flush();
    std::vector<Control> selector(SketchElement e) const;

    int width_;
    std::unique_ptr<QuantumState> state_;
    Executor executor_;
    std::vector<GateOp> pending_;
    bool dead_ = false;
};

/// Emits the amplitude-splitting state preparation for `elements` on qubits
/// [0, width), or the Hadamard/X layer when the set is a subcube. Exposed for
/// tests that count gates.
std::vector<GateOp> prepare_uniform_circuit(int width, std::span<const SketchElement> elements);

}  // namespace hmstream

#endif
