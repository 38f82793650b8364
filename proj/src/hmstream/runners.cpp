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

#include "hmstream/runners.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hmstream/errors.hpp"

namespace hmstream {

namespace {

int require_sketch_size(uint64_t n) {
    if (n < 4 || !is_power_of_two(n)) {
        throw DomainError("sketch size needs n a power of two >= 4, got " + std::to_string(n));
    }
    return ceil_log2(n);
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 0.25)) {
        throw DomainError("alpha must lie in (0, 1/4]");
    }
}

struct EdgeQuery {
    int a;
    int b;
};

// Label pairs in query order.
constexpr EdgeQuery kQueries[4] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

Verdict plus_verdict(const EdgeQuery &q, uint8_t z) { return ((q.a ^ q.b ^ z) & 1) == 0 ? Verdict::Yes : Verdict::No; }

void check_vertex(uint64_t v, uint64_t n) {
    if (v >= n) {
        throw ProtocolError("vertex " + std::to_string(v) + " outside [0, " + std::to_string(n) + ")");
    }
}

}  // namespace

const char *verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Null: return "null";
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
    }
    return "?";
}

SketchOutcome score(SketchOutcome outcome, Case truth) {
    outcome.correct = outcome.verdict != Verdict::Null &&
                      (outcome.verdict == Verdict::Yes) == (truth == Case::Yes);
    return outcome;
}

StreamUpdate InstanceSource::next() {
    if (cursor_ >= updates_.size()) {
        throw ProtocolError("stream exhausted");
    }
    return updates_[cursor_++];
}

SketchElement hm_element(uint64_t vertex, int label, int parity, int log_n) {
    return vertex | (static_cast<uint64_t>(label & 1) << log_n) | (static_cast<uint64_t>(parity & 1) << (log_n + 1));
}

ShotResult run_quantum_shot(UpdateSource &source, uint64_t n, const ShotOptions &options, Rng &rng) {
    const int lg = require_sketch_size(n);
    const int width = lg + 2;
    if (PairSketch::total_qubits(width) > kDefaultMaxQubits) {
        throw CapacityError("n=" + std::to_string(n) + " needs more qubits than the simulator allows");
    }
    ExecutorOptions eo;
    eo.physical = options.physical || options.depolarizing_p > 0.0;
    eo.depolarizing_p = options.depolarizing_p;
    eo.policy = options.policy;
    eo.tally_physical = options.tally_physical;
    eo.trace = options.trace;

    std::vector<SketchElement> initial;
    initial.reserve(2 * n);
    for (int parity = 0; parity < 2; ++parity) {
        for (uint64_t v = 0; v < n; ++v) {
            initial.push_back(hm_element(v, 0, parity, lg));
        }
    }
    PairSketch sketch = PairSketch::create(width, initial, eo, &rng);

    ShotResult result;
    bool edges_started = false;
    uint64_t step = 0;
    bool done = false;
    while (!done) {
        const StreamUpdate u = source.next();
        ++result.updates_consumed;
        switch (u.kind) {
            case StreamUpdate::Kind::Vertex: {
                if (edges_started) {
                    throw ProtocolError("vertex update after the first edge");
                }
                check_vertex(u.u, n);
                if (u.label > 1) {
                    throw ProtocolError("vertex label is not a bit");
                }
                if (u.label == 1) {
                    std::vector<Control> select;
                    for (int q = 0; q < lg; ++q) {
                        select.push_back({q, ((u.u >> q) & 1U) != 0});
                    }
                    sketch.apply(GateOp::mcx(std::move(select), lg));
                }
                break;
            }
            case StreamUpdate::Kind::Edge: {
                edges_started = true;
                check_vertex(u.u, n);
                check_vertex(u.v, n);
                if (u.u == u.v || u.label > 1) {
                    throw ProtocolError("malformed edge update");
                }
                for (const auto &q : kQueries) {
                    const int parity = q.a ^ q.b;
                    ++step;
                    const auto out =
                        sketch.query_pair(hm_element(u.u, q.a, parity, lg), hm_element(u.v, q.b, parity, lg));
                    if (out == PvmOutcome::Plus) {
                        result.outcome.verdict = plus_verdict(q, u.label);
                        done = true;
                        break;
                    }
                    if (out == PvmOutcome::Minus) {
                        done = true;
                        break;
                    }
                }
                break;
            }
            case StreamUpdate::Kind::End: done = true; break;
        }
    }
    sketch.discard_pending();
    result.outcome.terminating_step = step;
    source.report(result.outcome.verdict, step);
    result.logical = sketch.logical_counts();
    result.physical = sketch.physical_counts();
    result.noise_events = sketch.executor().noise_events();
    return result;
}

std::vector<StreamUpdate> worst_case_stream(uint64_t n) {
    require_sketch_size(n);
    std::vector<StreamUpdate> out;
    for (uint64_t v = 0; v < n; ++v) {
        out.push_back(StreamUpdate::vertex(v, 1));
    }
    for (uint64_t i = 0; i < n / 4; ++i) {
        out.push_back(StreamUpdate::edge(2 * i, 2 * i + 1, 0));
    }
    out.push_back(StreamUpdate::end());
    return out;
}

WorstCaseCounts count_worst_case(uint64_t n) {
    InstanceSource source(worst_case_stream(n));
    ShotOptions options;
    options.policy = MeasurePolicy::ForceZero;
    options.tally_physical = true;
    Rng rng(0);
    const auto shot = run_quantum_shot(source, n, options, rng);
    return {shot.logical, shot.physical};
}

OutcomeDistribution exact_distribution_from(const HMInstance &instance, std::span<const Amplitude> initial) {
    const int lg = require_sketch_size(instance.n);
    if (initial.size() != (std::size_t{1} << (lg + 2))) {
        throw DomainError("initial sketch state has the wrong dimension");
    }
    auto state = QuantumState::from_amplitudes(std::vector<Amplitude>(initial.begin(), initial.end()));
    OutcomeDistribution dist;
    double weight = 1.0;
    for (const auto &e : instance.edges) {
        for (const auto &q : kQueries) {
            const int parity = q.a ^ q.b;
            const auto ea = hm_element(e.u, q.a, parity, lg);
            const auto eb = hm_element(e.v, q.b, parity, lg);
            const auto p = pair_probabilities(state, ea, eb);
            const bool right = (plus_verdict(q, e.z) == Verdict::Yes) == (instance.kind == Case::Yes);
            (right ? dist.p_correct : dist.p_wrong) += weight * p.plus;
            dist.p_null += weight * p.minus;
            weight *= p.zero;
            if (weight <= 0.0 || p.zero <= 1e-300) {
                return dist;
            }
            state[ea] = 0.0;
            state[eb] = 0.0;
            state.renormalize();
        }
    }
    dist.p_null += weight;
    return dist;
}

OutcomeDistribution exact_distribution(const HMInstance &instance) {
    const int lg = require_sketch_size(instance.n);
    if (auto bad = validate(instance)) {
        throw DomainError("invalid instance (" + bad->rule + "): " + bad->detail);
    }
    std::vector<Amplitude> amps(std::size_t{1} << (lg + 2));
    const double a = 1.0 / std::sqrt(2.0 * static_cast<double>(instance.n));
    for (uint64_t v = 0; v < instance.n; ++v) {
        for (int parity = 0; parity < 2; ++parity) {
            amps[hm_element(v, instance.x[v], parity, lg)] = a;
        }
    }
    return exact_distribution_from(instance, amps);
}

OutcomeDistribution exact_distribution_depolarized(const HMInstance &instance, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw DomainError("gamma must lie in [0, 1]");
    }
    const auto pure = exact_distribution(instance);
    const std::size_t dim = std::size_t{1} << (ceil_log2(instance.n) + 2);
    OutcomeDistribution mixed;
    std::vector<Amplitude> basis(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        basis[s] = 1.0;
        const auto d = exact_distribution_from(instance, basis);
        basis[s] = 0.0;
        mixed.p_correct += d.p_correct / static_cast<double>(dim);
        mixed.p_wrong += d.p_wrong / static_cast<double>(dim);
        mixed.p_null += d.p_null / static_cast<double>(dim);
    }
    return {gamma * pure.p_correct + (1.0 - gamma) * mixed.p_correct,
            gamma * pure.p_wrong + (1.0 - gamma) * mixed.p_wrong,
            gamma * pure.p_null + (1.0 - gamma) * mixed.p_null};
}

SketchOutcome run_classical_shot(UpdateSource &source, uint64_t n, uint64_t k, Rng &rng) {
    if (k > n) {
        throw DomainError("classical sketch size exceeds n");
    }
    std::vector<uint64_t> order(n);
    for (uint64_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    std::vector<uint8_t> sampled(n, 0);
    for (uint64_t i = 0; i < k; ++i) {
        std::swap(order[i], order[i + rng.below(n - i)]);
        sampled[order[i]] = 1;
    }
    // 0 or 1 for a stored label, 2 for not stored.
    std::vector<uint8_t> label(n, 2);
    SketchOutcome out;
    uint64_t edges = 0;
    for (;;) {
        const StreamUpdate u = source.next();
        if (u.kind == StreamUpdate::Kind::Vertex) {
            check_vertex(u.u, n);
            if (sampled[u.u]) {
                label[u.u] = u.label & 1;
            }
            continue;
        }
        if (u.kind == StreamUpdate::Kind::Edge) {
            check_vertex(u.u, n);
            check_vertex(u.v, n);
            ++edges;
            if (label[u.u] != 2 && label[u.v] != 2) {
                out.verdict = ((label[u.u] ^ label[u.v]) == (u.label & 1)) ? Verdict::Yes : Verdict::No;
                break;
            }
            continue;
        }
        out.verdict = rng.coin() ? Verdict::Yes : Verdict::No;
        break;
    }
    out.terminating_step = edges;
    source.report(out.verdict, edges);
    return out;
}

uint64_t classical_sketch_size(double n, double alpha) {
    check_alpha(alpha);
    if (!(n >= 1.0)) {
        throw DomainError("n must be >= 1");
    }
    return static_cast<uint64_t>(std::ceil(std::sqrt(std::log(3.0) * n / alpha)));
}

double classical_lower_bound(double n, double alpha, double epsilon) {
    check_alpha(alpha);
    if (!(epsilon < 0.5)) {
        throw DomainError("epsilon must be < 1/2");
    }
    if (!(n >= 1.0)) {
        throw DomainError("n must be >= 1");
    }
    return (0.5 - epsilon) * std::sqrt((n - 1.0) / (2.0 * alpha)) / (std::numbers::e * std::numbers::ln2);
}

double collision_bound(double n, double alpha, double k) {
    check_alpha(alpha);
    if (k < 0.0 || k > n) {
        throw DomainError("k must lie in [0, n]");
    }
    return std::exp(-alpha * k * k / n);
}

}  // namespace hmstream
