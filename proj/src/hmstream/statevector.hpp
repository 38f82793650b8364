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

#ifndef HMSTREAM_STATEVECTOR_HPP
#define HMSTREAM_STATEVECTOR_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hmstream/rng.hpp"

namespace hmstream {

using Amplitude = std::complex<double>;

/// Desk-scale cap on register width. 24 qubits is 256 MiB of amplitudes.
inline constexpr int kDefaultMaxQubits = 24;

/// Tolerance on the squared norm after unitaries and renormalized
/// measurements.
inline constexpr double kNormTolerance = 1e-10;

/// Dense statevector. Qubit q is bit q of the basis index (qubit 0 is the
/// least significant bit).
class QuantumState {
   public:
    /// |0...0> on `num_qubits` qubits. Throws CapacityError outside
    /// [1, max_qubits].
    static QuantumState allocate(int num_qubits, int max_qubits = kDefaultMaxQubits);

    /// Wraps an explicit amplitude vector. Length must be a power of two.
    static QuantumState from_amplitudes(std::vector<Amplitude> amplitudes);

    int num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }

    std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }
    const Amplitude &operator[](std::size_t i) const { return amplitudes_[i]; }
    Amplitude &operator[](std::size_t i) { return amplitudes_[i]; }

    double norm_squared() const noexcept;
    void renormalize();

   private:
    QuantumState(int num_qubits, std::vector<Amplitude> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

    int num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

enum class GateKind : uint8_t {
    H,
    X,
    T,
    Tdg,
    /// CX^e with exponent e in {0,1}. An exponent-0 slot is the identity but
    /// still occupies a two-qubit gate in the schedule.
    CX,
    /// Multi-controlled X with per-control polarity.
    MCX,
    /// Exact three-qubit Toffoli, positive controls only.
    CCX,
    /// Relative-phase Toffoli (4 T) and its adjoint.
    RCCX,
    RCCXdg,
    /// Y rotation by `angle`, optionally multi-controlled (state preparation).
    RY,
};

const char *gate_kind_name(GateKind kind);

struct Control {
    int qubit;
    /// true fires on |1>, false fires on |0>.
    bool polarity = true;

    friend bool operator==(const Control &, const Control &) = default;
};

struct GateOp {
    GateKind kind;
    int target;
    std::vector<Control> controls;
    bool enabled = true;  // CX exponent
    double angle = 0.0;   // RY only

    static GateOp h(int q) { return {GateKind::H, q, {}}; }
    static GateOp x(int q) { return {GateKind::X, q, {}}; }
    static GateOp t(int q) { return {GateKind::T, q, {}}; }
    static GateOp tdg(int q) { return {GateKind::Tdg, q, {}}; }
    static GateOp cx(int c, int t, bool exponent = true) { return {GateKind::CX, t, {{c, true}}, exponent}; }
    static GateOp mcx(std::vector<Control> controls, int t) { return {GateKind::MCX, t, std::move(controls)}; }
    static GateOp ccx(int c0, int c1, int t) { return {GateKind::CCX, t, {{c0, true}, {c1, true}}}; }
    static GateOp rccx(int c0, int c1, int t) { return {GateKind::RCCX, t, {{c0, true}, {c1, true}}}; }
    static GateOp rccx_dg(int c0, int c1, int t) { return {GateKind::RCCXdg, t, {{c0, true}, {c1, true}}}; }
    static GateOp ry(int q, double theta, std::vector<Control> controls = {}) {
        GateOp op{GateKind::RY, q, std::move(controls)};
        op.angle = theta;
        return op;
    }

    std::string to_string() const;
};

/// Throws IndexError unless every index is in range, the target is not a
/// control, and controls are pairwise distinct.
void validate(const GateOp &op, int num_qubits);

/// Applies `op` in place after validation.
void apply(QuantumState &state, const GateOp &op);

/// The gate sequence of a relative-phase Toffoli over {H, T, Tdg, CX}.
std::vector<GateOp> rccx_sequence(int c0, int c1, int target, bool adjoint);

/// The standard 7-T exact Toffoli over {H, T, Tdg, CX}.
std::vector<GateOp> ccx_sequence(int c0, int c1, int target);

/// Probability that measuring `qubit` yields 1.
double probability_one(const QuantumState &state, int qubit);

/// Projects `qubit` onto `outcome` and renormalizes. Throws InternalError if
/// the outcome has zero probability.
void collapse(QuantumState &state, int qubit, int outcome);

/// Samples a computational-basis measurement of `qubit` and collapses.
int measure_qubit(QuantumState &state, int qubit, Rng &rng);

/// <psi|P|psi> for the rank-1 projector P onto sum_i s_i|b_i> / sqrt(|B|),
/// where s_i = signs[i] (+1 or -1).
double projector_probability(const QuantumState &state, std::span<const uint64_t> basis,
                             std::span<const int> signs);

enum class PvmOutcome : uint8_t { Plus, Minus, Zero };

const char *pvm_outcome_name(PvmOutcome o);

struct PairProbabilities {
    double plus;
    double minus;
    double zero;
};

/// Born probabilities of {P+, P-, P0} where P+- project onto
/// (|a> +- |b>)/sqrt2. Throws InternalError if they do not sum to 1 within
/// 1e-8.
PairProbabilities pair_probabilities(const QuantumState &state, uint64_t a, uint64_t b);

/// Samples the three-outcome pair PVM directly on the amplitudes and
/// projects. Used as an oracle for the gate-level query_pair.
PvmOutcome measure_pvm(QuantumState &state, uint64_t a, uint64_t b, Rng &rng);

/// Applies P to the state (no renormalization).
void apply_pauli(QuantumState &state, int qubit, int pauli);

struct NoiseConfig {
    double two_qubit_depolarizing_p = 0.0;
    uint64_t rng_seed = 0;
};

/// Trajectory depolarizing channel on (q1, q2): with probability p applies one
/// of the 15 non-identity two-qubit Paulis uniformly. Returns the Pauli index
/// applied (1..15, encoded 4*P1 + P2 with I=0,X=1,Y=2,Z=3), or 0.
int inject_depolarizing(QuantumState &state, int q1, int q2, double p, Rng &rng);

}  // namespace hmstream

#endif
