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

#ifndef HMSTREAM_CIRCUIT_HPP
#define HMSTREAM_CIRCUIT_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hmstream/statevector.hpp"

namespace hmstream {

constexpr bool is_power_of_two(uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// ceil(log2(n)) for n >= 1, exact in integer arithmetic.
constexpr int ceil_log2(uint64_t n) {
    int bits = 0;
    while (bits < 64 && (uint64_t{1} << bits) < n) {
        ++bits;
    }
    return bits;
}

/// Gate tallies. `mcx` is keyed by the total number of qubits the gate
/// touches, so a gate with c controls is recorded under c + 1 (C^{c+1}X).
struct GateCounts {
    uint64_t h = 0;
    uint64_t x = 0;
    uint64_t t = 0;  // T and T-dagger
    uint64_t cx = 0;
    uint64_t ry = 0;
    uint64_t ccx = 0;
    uint64_t rccx = 0;  // both adjoints
    std::map<int, uint64_t> mcx;

    void record(const GateOp &op);
    uint64_t mcx_total() const;
    GateCounts &operator+=(const GateCounts &other);
    friend bool operator==(const GateCounts &, const GateCounts &) = default;
};

/// Decomposes a multi-controlled X into {X, CX, CCX, RCCX, RCCXdg}.
///
/// One control gives a CX and two give a CCX. With c >= 3 controls the gate
/// is a ladder of c-2 relative-phase Toffolis computing the running AND into
/// `scratch`, one exact Toffoli onto the target, then the adjoint ladder. The
/// relative phases cancel pairwise. Zero-polarity controls are conjugated by
/// X. The first c-2 scratch qubits must be |0> and are returned to |0>.
///
/// Throws DecompositionError if fewer than c-2 scratch qubits are supplied
/// and IndexError if a scratch qubit collides with the gate's qubits.
std::vector<GateOp> decompose_mcx(std::span<const Control> controls, int target,
                                  std::span<const int> scratch);

/// Number of scratch qubits decompose_mcx needs for `num_controls`.
constexpr int mcx_scratch_needed(int num_controls) { return num_controls > 2 ? num_controls - 2 : 0; }

/// Lowers one gate to the physical set {H, X, T, Tdg, CX}. MCX gates use
/// `scratch` as in decompose_mcx. RY has no physical lowering here and is
/// returned unchanged.
std::vector<GateOp> lower_to_physical(const GateOp &op, std::span<const int> scratch);

/// Removes adjacent X X pairs on the same qubit (no intervening gate on that
/// qubit).
void cancel_adjacent_x(std::vector<GateOp> &ops);

/// Closed-form worst-case logical counts for the HM sketch at size n:
/// (2n + log n) H, (2n-1)(log n + 2) CX, n C^{log n + 1}X, 2n C^{log n + 3}X.
/// Throws DomainError unless n is a power of two >= 4.
GateCounts logical_counts_hm(uint64_t n);

/// Sketch width log2(n) + 2.
int hm_space(uint64_t n);

struct PhysicalCountsFormula {
    uint64_t t;
    uint64_t h;
    uint64_t cnot_closed_form;  // 20 n log n + 8n - log n - 2
    uint64_t cnot_upper;        // closed form + 2n
};

/// Closed forms for the non-fault-tolerant decomposition of the worst-case
/// HM circuit.
PhysicalCountsFormula physical_counts_hm(uint64_t n);

/// Toffoli count k * (3n ceil(log2 n) + 4n) for k sketch copies.
uint64_t toffoli_count_hm(uint64_t n, uint64_t copies);

}  // namespace hmstream

#endif
