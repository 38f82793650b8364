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

#include "hmstream/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hmstream/errors.hpp"

namespace hmstream {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct ControlMask {
    uint64_t mask = 0;
    uint64_t value = 0;
};

ControlMask control_mask(const std::vector<Control> &controls) {
    ControlMask m;
    for (const auto &c : controls) {
        const uint64_t bit = uint64_t{1} << c.qubit;
        m.mask |= bit;
        if (c.polarity) {
            m.value |= bit;
        }
    }
    return m;
}

void apply_h(QuantumState &s, int q) {
    const uint64_t bit = uint64_t{1} << q;
    const std::size_t dim = s.dimension();
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) {
            continue;
        }
        const Amplitude a = s[i];
        const Amplitude b = s[i | bit];
        s[i] = (a + b) * kInvSqrt2;
        s[i | bit] = (a - b) * kInvSqrt2;
    }
}

void apply_controlled_x(QuantumState &s, int target, const ControlMask &m) {
    const uint64_t bit = uint64_t{1} << target;
    const std::size_t dim = s.dimension();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & bit) == 0 && (i & m.mask) == m.value) {
            std::swap(s[i], s[i | bit]);
        }
    }
}

void apply_phase(QuantumState &s, int q, Amplitude phase) {
    const uint64_t bit = uint64_t{1} << q;
    const std::size_t dim = s.dimension();
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) {
            s[i] *= phase;
        }
    }
}

void apply_controlled_ry(QuantumState &s, int target, const ControlMask &m, double theta) {
    const double c = std::cos(theta / 2);
    const double sn = std::sin(theta / 2);
    const uint64_t bit = uint64_t{1} << target;
    const std::size_t dim = s.dimension();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & bit) == 0 && (i & m.mask) == m.value) {
            const Amplitude a = s[i];
            const Amplitude b = s[i | bit];
            s[i] = c * a - sn * b;
            s[i | bit] = sn * a + c * b;
        }
    }
}

}  // namespace

QuantumState QuantumState::allocate(int num_qubits, int max_qubits) {
    if (num_qubits < 1 || num_qubits > max_qubits) {
        throw CapacityError("qubit count " + std::to_string(num_qubits) + " outside [1, " +
                            std::to_string(max_qubits) + "]");
    }
    std::vector<Amplitude> amps(std::size_t{1} << num_qubits);
    amps[0] = 1.0;
    return QuantumState(num_qubits, std::move(amps));
}

QuantumState QuantumState::from_amplitudes(std::vector<Amplitude> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw DomainError("amplitude vector length must be a power of two >= 2");
    }
    int m = 0;
    while ((std::size_t{1} << m) < dim) {
        ++m;
    }
    if (m > kDefaultMaxQubits) {
        throw CapacityError("amplitude vector exceeds qubit cap");
    }
    return QuantumState(m, std::move(amplitudes));
}

double QuantumState::norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto &a : amplitudes_) {
        acc += std::norm(a);
    }
    return acc;
}

void QuantumState::renormalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) {
        throw InternalError("cannot renormalize a zero vector");
    }
    const double scale = 1.0 / std::sqrt(n2);
    for (auto &a : amplitudes_) {
        a *= scale;
    }
}

const char *gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::T: return "T";
        case GateKind::Tdg: return "Tdg";
        case GateKind::CX: return "CX";
        case GateKind::MCX: return "MCX";
        case GateKind::CCX: return "CCX";
        case GateKind::RCCX: return "RCCX";
        case GateKind::RCCXdg: return "RCCXdg";
        case GateKind::RY: return "RY";
    }
    return "?";
}

std::string GateOp::to_string() const {
    std::ostringstream os;
    os << gate_kind_name(kind);
    if (kind == GateKind::CX && !enabled) {
        os << "^0";
    }
    os << "(";
    for (const auto &c : controls) {
        os << (c.polarity ? "" : "!") << c.qubit << ",";
    }
    os << "->" << target << ")";
    return os.str();
}

void validate(const GateOp &op, int num_qubits) {
    auto in_range = [&](int q) { return q >= 0 && q < num_qubits; };
    if (!in_range(op.target)) {
        throw IndexError("target qubit " + std::to_string(op.target) + " out of range");
    }
    std::size_t expected = 0;
    switch (op.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::T:
        case GateKind::Tdg: expected = 0; break;
        case GateKind::CX: expected = 1; break;
        case GateKind::CCX:
        case GateKind::RCCX:
        case GateKind::RCCXdg: expected = 2; break;
        case GateKind::MCX:
        case GateKind::RY: expected = op.controls.size(); break;
    }
    if (op.controls.size() != expected) {
        throw IndexError(std::string(gate_kind_name(op.kind)) + " has wrong control count");
    }
    if (op.kind == GateKind::MCX && op.controls.empty()) {
        throw IndexError("MCX needs at least one control");
    }
    for (std::size_t i = 0; i < op.controls.size(); ++i) {
        const int q = op.controls[i].qubit;
        if (!in_range(q)) {
            throw IndexError("control qubit " + std::to_string(q) + " out of range");
        }
        if (q == op.target) {
            throw IndexError("control equals target on qubit " + std::to_string(q));
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (op.controls[j].qubit == q) {
                throw IndexError("duplicate control qubit " + std::to_string(q));
            }
        }
        if ((op.kind == GateKind::CCX || op.kind == GateKind::RCCX || op.kind == GateKind::RCCXdg ||
             op.kind == GateKind::CX) &&
            !op.controls[i].polarity) {
            throw IndexError(std::string(gate_kind_name(op.kind)) + " takes positive controls only");
        }
    }
}

std::vector<GateOp> ccx_sequence(int a, int b, int c) {
    return {GateOp::h(c),      GateOp::cx(b, c), GateOp::tdg(c),   GateOp::cx(a, c), GateOp::t(c),
            GateOp::cx(b, c),  GateOp::tdg(c),   GateOp::cx(a, c), GateOp::t(b),     GateOp::t(c),
            GateOp::h(c),      GateOp::cx(a, b), GateOp::t(a),     GateOp::tdg(b),   GateOp::cx(a, b)};
}

std::vector<GateOp> rccx_sequence(int a, int b, int c, bool adjoint) {
    std::vector<GateOp> seq = {GateOp::h(c),   GateOp::t(c),     GateOp::cx(b, c),
                               GateOp::tdg(c), GateOp::cx(a, c), GateOp::t(c),
                               GateOp::cx(b, c), GateOp::tdg(c), GateOp::h(c)};
    if (!adjoint) {
        return seq;
    }
    std::reverse(seq.begin(), seq.end());
    for (auto &g : seq) {
        if (g.kind == GateKind::T) {
            g.kind = GateKind::Tdg;
        } else if (g.kind == GateKind::Tdg) {
            g.kind = GateKind::T;
        }
    }
    return seq;
}

void apply(QuantumState &state, const GateOp &op) {
    validate(op, state.num_qubits());
    static const Amplitude kT = std::polar(1.0, std::numbers::pi / 4);
    switch (op.kind) {
        case GateKind::H: apply_h(state, op.target); break;
        case GateKind::X: apply_controlled_x(state, op.target, {}); break;
        case GateKind::T: apply_phase(state, op.target, kT); break;
        case GateKind::Tdg: apply_phase(state, op.target, std::conj(kT)); break;
        case GateKind::CX:
            if (op.enabled) {
                apply_controlled_x(state, op.target, control_mask(op.controls));
            }
            break;
        case GateKind::MCX:
        case GateKind::CCX: apply_controlled_x(state, op.target, control_mask(op.controls)); break;
        case GateKind::RCCX:
        case GateKind::RCCXdg:
            for (const auto &g : rccx_sequence(op.controls[0].qubit, op.controls[1].qubit, op.target,
                                               op.kind == GateKind::RCCXdg)) {
                apply(state, g);
            }
            break;
        case GateKind::RY: apply_controlled_ry(state, op.target, control_mask(op.controls), op.angle); break;
    }
}

double probability_one(const QuantumState &state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits()) {
        throw IndexError("measured qubit out of range");
    }
    const uint64_t bit = uint64_t{1} << qubit;
    double p = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if (i & bit) {
            p += std::norm(state[i]);
        }
    }
    return p;
}

void collapse(QuantumState &state, int qubit, int outcome) {
    const uint64_t bit = uint64_t{1} << qubit;
    const uint64_t keep = outcome ? bit : 0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if ((i & bit) != keep) {
            state[i] = 0.0;
        }
    }
    state.renormalize();
}

int measure_qubit(QuantumState &state, int qubit, Rng &rng) {
    const double p1 = probability_one(state, qubit);
    const int outcome = rng.uniform() < p1 ? 1 : 0;
    collapse(state, qubit, outcome);
    return outcome;
}

double projector_probability(const QuantumState &state, std::span<const uint64_t> basis,
                             std::span<const int> signs) {
    if (basis.size() != signs.size() || basis.empty()) {
        throw DomainError("projector needs one sign per basis state");
    }
    Amplitude overlap = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i] >= state.dimension()) {
            throw IndexError("projector basis index out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (basis[j] == basis[i]) {
                throw DomainError("projector basis states must be distinct");
            }
        }
        overlap += static_cast<double>(signs[i]) * state[basis[i]];
    }
    return std::norm(overlap) / static_cast<double>(basis.size());
}

const char *pvm_outcome_name(PvmOutcome o) {
    switch (o) {
        case PvmOutcome::Plus: return "Plus";
        case PvmOutcome::Minus: return "Minus";
        case PvmOutcome::Zero: return "Zero";
    }
    return "?";
}

PairProbabilities pair_probabilities(const QuantumState &state, uint64_t a, uint64_t b) {
    if (a == b) {
        throw DomainError("pair PVM needs distinct basis states");
    }
    const uint64_t basis[2] = {a, b};
    const int plus[2] = {1, 1};
    const int minus[2] = {1, -1};
    PairProbabilities p{};
    p.plus = projector_probability(state, basis, plus);
    p.minus = projector_probability(state, basis, minus);
    p.zero = state.norm_squared() - std::norm(state[a]) - std::norm(state[b]);
    if (p.zero < 0.0) {
        p.zero = 0.0;
    }
    const double total = p.plus + p.minus + p.zero;
    if (std::abs(total - 1.0) > 1e-8) {
        throw InternalError("pair PVM probabilities sum to " + std::to_string(total));
    }
    return p;
}

PvmOutcome measure_pvm(QuantumState &state, uint64_t a, uint64_t b, Rng &rng) {
    const PairProbabilities p = pair_probabilities(state, a, b);
    const double r = rng.uniform();
    const Amplitude sa = state[a];
    const Amplitude sb = state[b];
    if (r < p.plus || r < p.plus + p.minus) {
        const bool plus = r < p.plus;
        const double sign = plus ? 1.0 : -1.0;
        const Amplitude coeff = (sa + sign * sb) * 0.5;
        for (std::size_t i = 0; i < state.dimension(); ++i) {
            state[i] = 0.0;
        }
        state[a] = coeff;
        state[b] = sign * coeff;
        state.renormalize();
        return plus ? PvmOutcome::Plus : PvmOutcome::Minus;
    }
    state[a] = 0.0;
    state[b] = 0.0;
    state.renormalize();
    return PvmOutcome::Zero;
}

void apply_pauli(QuantumState &state, int qubit, int pauli) {
    const uint64_t bit = uint64_t{1} << qubit;
    switch (pauli) {
        case 0: return;
        case 1: apply_controlled_x(state, qubit, {}); return;
        case 2:
            // Y = i X Z
            for (std::size_t i = 0; i < state.dimension(); ++i) {
                if ((i & bit) == 0) {
                    const Amplitude a0 = state[i];
                    const Amplitude a1 = state[i | bit];
                    state[i] = Amplitude(0, -1) * a1;
                    state[i | bit] = Amplitude(0, 1) * a0;
                }
            }
            return;
        case 3: apply_phase(state, qubit, -1.0); return;
        default: throw DomainError("Pauli index must be 0..3");
    }
}

int inject_depolarizing(QuantumState &state, int q1, int q2, double p, Rng &rng) {
    if (q1 == q2) {
        throw DomainError("depolarizing channel needs two distinct qubits");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("depolarizing probability outside [0,1]");
    }
    if (p == 0.0 || rng.uniform() >= p) {
        return 0;
    }
    const int which = 1 + static_cast<int>(rng.below(15));
    apply_pauli(state, q1, which / 4);
    apply_pauli(state, q2, which % 4);
    return which;
}

}  // namespace hmstream
