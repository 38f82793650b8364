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

#include "hmstream/circuit.hpp"

#include <algorithm>
#include <string>

#include "hmstream/errors.hpp"

namespace hmstream {

void GateCounts::record(const GateOp &op) {
    switch (op.kind) {
        case GateKind::H: ++h; break;
        case GateKind::X: ++x; break;
        case GateKind::T:
        case GateKind::Tdg: ++t; break;
        case GateKind::CX: ++cx; break;
        case GateKind::MCX: ++mcx[static_cast<int>(op.controls.size()) + 1]; break;
        case GateKind::CCX: ++ccx; break;
        case GateKind::RCCX:
        case GateKind::RCCXdg: ++rccx; break;
        case GateKind::RY: ++ry; break;
    }
}

uint64_t GateCounts::mcx_total() const {
    uint64_t total = 0;
    for (const auto &[arity, count] : mcx) {
        total += count;
    }
    return total;
}

GateCounts &GateCounts::operator+=(const GateCounts &o) {
    h += o.h;
    x += o.x;
    t += o.t;
    cx += o.cx;
    ry += o.ry;
    ccx += o.ccx;
    rccx += o.rccx;
    for (const auto &[arity, count] : o.mcx) {
        mcx[arity] += count;
    }
    return *this;
}

std::vector<GateOp> decompose_mcx(std::span<const Control> controls, int target, std::span<const int> scratch) {
    const int c = static_cast<int>(controls.size());
    if (c < 1) {
        throw DecompositionError("MCX needs at least one control");
    }
    const int needed = mcx_scratch_needed(c);
    if (static_cast<int>(scratch.size()) < needed) {
        throw DecompositionError("C^" + std::to_string(c + 1) + "X needs " + std::to_string(needed) +
                                 " scratch qubits, got " + std::to_string(scratch.size()));
    }
    for (int i = 0; i < needed; ++i) {
        const int s = scratch[i];
        if (s == target || std::any_of(controls.begin(), controls.end(), [&](const Control &k) { return k.qubit == s; })) {
            throw IndexError("scratch qubit " + std::to_string(s) + " overlaps the gate");
        }
    }

    std::vector<GateOp> out;
    for (const auto &k : controls) {
        if (!k.polarity) {
            out.push_back(GateOp::x(k.qubit));
        }
    }
    const std::size_t flips = out.size();

    if (c == 1) {
        out.push_back(GateOp::cx(controls[0].qubit, target));
    } else if (c == 2) {
        out.push_back(GateOp::ccx(controls[0].qubit, controls[1].qubit, target));
    } else {
        std::vector<GateOp> ladder;
        ladder.push_back(GateOp::rccx(controls[0].qubit, controls[1].qubit, scratch[0]));
        for (int i = 2; i < c - 1; ++i) {
            ladder.push_back(GateOp::rccx(scratch[i - 2], controls[i].qubit, scratch[i - 1]));
        }
        out.insert(out.end(), ladder.begin(), ladder.end());
        out.push_back(GateOp::ccx(scratch[c - 3], controls[c - 1].qubit, target));
        for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) {
            GateOp inv = *it;
            inv.kind = GateKind::RCCXdg;
            out.push_back(inv);
        }
    }

    for (std::size_t i = 0; i < flips; ++i) {
        out.push_back(out[i]);
    }
    return out;
}

std::vector<GateOp> lower_to_physical(const GateOp &op, std::span<const int> scratch) {
    switch (op.kind) {
        case GateKind::CCX: return ccx_sequence(op.controls[0].qubit, op.controls[1].qubit, op.target);
        case GateKind::RCCX:
        case GateKind::RCCXdg:
            return rccx_sequence(op.controls[0].qubit, op.controls[1].qubit, op.target,
                                 op.kind == GateKind::RCCXdg);
        case GateKind::MCX: {
            std::vector<GateOp> out;
            for (const auto &g : decompose_mcx(op.controls, op.target, scratch)) {
                auto lowered = lower_to_physical(g, {});
                out.insert(out.end(), lowered.begin(), lowered.end());
            }
            return out;
        }
        default: return {op};
    }
}

void cancel_adjacent_x(std::vector<GateOp> &ops) {
    std::vector<GateOp> out;
    out.reserve(ops.size());
    // Qubit -> index in `out` of a pending X with no later gate on that qubit.
    std::map<int, std::size_t> last_x;
    std::vector<bool> dead;
    for (auto &op : ops) {
        if (op.kind == GateKind::X) {
            auto it = last_x.find(op.target);
            if (it != last_x.end()) {
                dead[it->second] = true;
                last_x.erase(it);
                continue;
            }
            last_x[op.target] = out.size();
            out.push_back(op);
            dead.push_back(false);
            continue;
        }
        last_x.erase(op.target);
        for (const auto &c : op.controls) {
            last_x.erase(c.qubit);
        }
        out.push_back(op);
        dead.push_back(false);
    }
    ops.clear();
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!dead[i]) {
            ops.push_back(std::move(out[i]));
        }
    }
}

namespace {

int require_hm_size(uint64_t n) {
    if (n < 4 || !is_power_of_two(n)) {
        throw DomainError("graph size must be a power of two >= 4, got " + std::to_string(n));
    }
    return ceil_log2(n);
}

}  // namespace

int hm_space(uint64_t n) { return require_hm_size(n) + 2; }

GateCounts logical_counts_hm(uint64_t n) {
    const uint64_t lg = static_cast<uint64_t>(require_hm_size(n));
    GateCounts g;
    g.h = 2 * n + lg;
    g.cx = (2 * n - 1) * (lg + 2);
    g.mcx[static_cast<int>(lg) + 1] = n;
    g.mcx[static_cast<int>(lg) + 3] = 2 * n;
    return g;
}

PhysicalCountsFormula physical_counts_hm(uint64_t n) {
    const uint64_t lg = static_cast<uint64_t>(require_hm_size(n));
    PhysicalCountsFormula f{};
    f.t = n * (5 + 24 * lg);
    f.h = (1 + 12 * n) * lg;
    f.cnot_closed_form = 20 * n * lg + 8 * n - lg - 2;
    f.cnot_upper = f.cnot_closed_form + 2 * n;
    return f;
}

uint64_t toffoli_count_hm(uint64_t n, uint64_t copies) {
    if (n < 4) {
        throw DomainError("graph size must be >= 4");
    }
    const uint64_t lg = static_cast<uint64_t>(ceil_log2(n));
    return copies * (3 * n * lg + 4 * n);
}

}  // namespace hmstream
