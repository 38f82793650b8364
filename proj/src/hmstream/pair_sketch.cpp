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

#include "hmstream/pair_sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "hmstream/errors.hpp"

namespace hmstream {

namespace {

std::vector<int> scratch_qubits(int width) {
    std::vector<int> s;
    for (int i = 0; i < mcx_scratch_needed(width); ++i) {
        s.push_back(width + 2 + i);
    }
    return s;
}

void check_width(int width) {
    if (width < 1 || PairSketch::total_qubits(width) > kDefaultMaxQubits) {
        throw CapacityError("sketch width " + std::to_string(width) + " does not fit the simulator");
    }
}

// Splits `elements` (all sharing the bits above `bit`) on `bit`, emitting a
// controlled RY on that qubit, then recurses into both halves.
void split(int bit, uint64_t prefix, int width, std::vector<SketchElement> elements, std::vector<GateOp> &out) {
    if (bit < 0) {
        return;
    }
    std::vector<SketchElement> zeros;
    std::vector<SketchElement> ones;
    for (auto e : elements) {
        ((e >> bit) & 1U ? ones : zeros).push_back(e);
    }
    if (!ones.empty()) {
        std::vector<Control> controls;
        for (int q = width - 1; q > bit; --q) {
            controls.push_back({q, ((prefix >> q) & 1U) != 0});
        }
        const double ratio = static_cast<double>(zeros.size()) / static_cast<double>(elements.size());
        out.push_back(GateOp::ry(bit, 2.0 * std::acos(std::sqrt(ratio)), std::move(controls)));
    }
    if (!zeros.empty()) {
        split(bit - 1, prefix, width, std::move(zeros), out);
    }
    if (!ones.empty()) {
        split(bit - 1, prefix | (uint64_t{1} << bit), width, std::move(ones), out);
    }
}

}  // namespace

std::vector<GateOp> prepare_uniform_circuit(int width, std::span<const SketchElement> elements) {
    if (elements.empty()) {
        throw DomainError("cannot create a sketch of the empty set");
    }
    const uint64_t limit = width >= 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
    std::vector<SketchElement> sorted(elements.begin(), elements.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("sketch set has duplicate elements");
    }
    uint64_t all_and = limit;
    uint64_t all_or = 0;
    for (auto e : sorted) {
        if ((e & ~limit) != 0) {
            throw DomainError("element " + std::to_string(e) + " exceeds width " + std::to_string(width));
        }
        all_and &= e;
        all_or |= e;
    }

    std::vector<GateOp> out;
    const uint64_t free_bits = all_or & ~all_and;
    if (std::popcount(free_bits) < 64 && sorted.size() == (uint64_t{1} << std::popcount(free_bits))) {
        for (int q = 0; q < width; ++q) {
            if ((free_bits >> q) & 1U) {
                out.push_back(GateOp::h(q));
            } else if ((all_and >> q) & 1U) {
                out.push_back(GateOp::x(q));
            }
        }
        return out;
    }
    split(width - 1, 0, width, std::move(sorted), out);
    return out;
}

int PairSketch::total_qubits(int width) { return width + 2 + mcx_scratch_needed(width); }

int PairSketch::allocated_qubits(int width, const ExecutorOptions &options) {
    return options.physical ? total_qubits(width) : width + 2;
}

PairSketch::PairSketch(int width, std::unique_ptr<QuantumState> state, ExecutorOptions options, Rng *rng)
    : width_(width), state_(std::move(state)), executor_(*state_, scratch_qubits(width), options, rng) {}

PairSketch PairSketch::create(int width, std::span<const SketchElement> elements, ExecutorOptions options, Rng *rng) {
    check_width(width);
    const auto circuit = prepare_uniform_circuit(width, elements);
    auto state = std::make_unique<QuantumState>(QuantumState::allocate(allocated_qubits(width, options)));
    PairSketch sketch(width, std::move(state), options, rng);
    for (const auto &op : circuit) {
        sketch.executor_.apply(op);
    }
    return sketch;
}

PairSketch PairSketch::from_amplitudes(int width, std::span<const Amplitude> amplitudes, ExecutorOptions options,
                                       Rng *rng) {
    check_width(width);
    if (amplitudes.size() != (std::size_t{1} << width)) {
        throw DomainError("amplitude vector does not match sketch width");
    }
    auto state = std::make_unique<QuantumState>(QuantumState::allocate(allocated_qubits(width, options)));
    std::copy(amplitudes.begin(), amplitudes.end(), state->amplitudes().begin());
    if (std::abs(state->norm_squared() - 1.0) > kNormTolerance) {
        throw DomainError("sketch amplitudes are not normalized");
    }
    return PairSketch(width, std::move(state), options, rng);
}

void PairSketch::check_element(SketchElement e) const {
    if (width_ < 64 && (e >> width_) != 0) {
        throw DomainError("element " + std::to_string(e) + " exceeds width " + std::to_string(width_));
    }
}

std::vector<Control> PairSketch::selector(SketchElement e) const {
    std::vector<Control> controls;
    controls.reserve(static_cast<std::size_t>(width_));
    for (int q = 0; q < width_; ++q) {
        controls.push_back({q, ((e >> q) & 1U) != 0});
    }
    return controls;
}

void PairSketch::flush() {
    if (dead_) {
        throw InternalError("sketch used after discard_pending");
    }
    for (const auto &op : pending_) {
        executor_.apply(op);
    }
    pending_.clear();
}

void PairSketch::discard_pending() {
    pending_.clear();
    dead_ = true;
}

void PairSketch::apply(const GateOp &op) {
    flush();
    executor_.apply(op);
}

bool PairSketch::query_one(SketchElement a) {
    check_element(a);
    flush();
    const int flag = ancilla(0);
    executor_.apply(GateOp::mcx(selector(a), flag));
    const bool hit = executor_.measure(flag) == 1;
    if (hit) {
        executor_.reset_from_one(flag);
    }
    return hit;
}

PvmOutcome PairSketch::query_pair(SketchElement a, SketchElement b) {
    check_element(a);
    check_element(b);
    if (a == b) {
        throw DomainError("query_pair needs distinct elements");
    }
    flush();
    const SketchElement d = a ^ b;
    const int pivot = std::countr_zero(d);

    std::vector<GateOp> fan;
    for (int q = 0; q < width_; ++q) {
        if (q != pivot) {
            fan.push_back(GateOp::cx(pivot, q, ((d >> q) & 1U) != 0));
        }
    }
    for (const auto &op : fan) {
        executor_.apply(op);
    }
    executor_.apply(GateOp::h(pivot));

    const SketchElement plus = ((a >> pivot) & 1U) == 0 ? a : b;
    const SketchElement minus = plus ^ (uint64_t{1} << pivot);
    const GateOp flags[2] = {GateOp::mcx(selector(plus), ancilla(0)), GateOp::mcx(selector(minus), ancilla(1))};
    executor_.apply_block(flags);

    PvmOutcome outcome = PvmOutcome::Zero;
    if (executor_.measure(ancilla(0)) == 1) {
        executor_.reset_from_one(ancilla(0));
        outcome = PvmOutcome::Plus;
    } else if (executor_.measure(ancilla(1)) == 1) {
        executor_.reset_from_one(ancilla(1));
        outcome = PvmOutcome::Minus;
    }

    pending_.push_back(GateOp::h(pivot));
    pending_.insert(pending_.end(), fan.rbegin(), fan.rend());
    return outcome;
}

void PairSketch::update_transposition(SketchElement a, SketchElement b) {
    check_element(a);
    check_element(b);
    if (a == b) {
        throw DomainError("transposition needs distinct elements");
    }
    flush();
    const SketchElement d = a ^ b;
    const int pivot = ancilla(0);
    std::vector<GateOp> block;
    block.push_back(GateOp::h(pivot));
    for (int q = 0; q < width_; ++q) {
        block.push_back(GateOp::cx(pivot, q, ((d >> q) & 1U) != 0));
    }
    block.push_back(GateOp::mcx(selector(a), pivot));
    block.push_back(GateOp::mcx(selector(b), pivot));
    for (int q = 0; q < width_; ++q) {
        block.push_back(GateOp::cx(pivot, q, ((d >> q) & 1U) != 0));
    }
    block.push_back(GateOp::h(pivot));
    executor_.apply_block(block);
}

void PairSketch::update(std::span<const std::pair<SketchElement, SketchElement>> transpositions) {
    for (const auto &[a, b] : transpositions) {
        update_transposition(a, b);
    }
}

const QuantumState &PairSketch::state() {
    flush();
    return *state_;
}

std::vector<Amplitude> PairSketch::sketch_amplitudes() {
    flush();
    const std::size_t dim = std::size_t{1} << width_;
    std::vector<Amplitude> out(state_->amplitudes().begin(), state_->amplitudes().begin() + dim);
    return out;
}

}  // namespace hmstream
