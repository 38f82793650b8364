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

#ifndef HMSTREAM_RUNNERS_HPP
#define HMSTREAM_RUNNERS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hmstream/circuit.hpp"
#include "hmstream/executor.hpp"
#include "hmstream/instance.hpp"
#include "hmstream/pair_sketch.hpp"
#include "hmstream/rng.hpp"

namespace hmstream {

/// Wire values of the RESULT message.
enum class Verdict : uint8_t { Null = 0, Yes = 1, No = 2 };

const char *verdict_name(Verdict v);

struct SketchOutcome {
    Verdict verdict = Verdict::Null;
    /// 1-based index of the measurement that fired, or the number of
    /// measurements performed when the verdict is Null.
    uint64_t terminating_step = 0;
    /// Verdict agrees with the instance case. Never set for Null.
    bool correct = false;
};

/// Marks `outcome.correct` against the ground truth.
SketchOutcome score(SketchOutcome outcome, Case truth);

struct OutcomeDistribution {
    double p_correct = 0.0;
    double p_wrong = 0.0;
    double p_null = 0.0;
};

/// Pull-based source of stream updates.
class UpdateSource {
   public:
    virtual ~UpdateSource() = default;
    /// Next update. Called at most once after End has been returned.
    virtual StreamUpdate next() = 0;
    /// Optional verdict report once the consumer stops pulling.
    virtual void report(Verdict verdict, uint64_t step) {
        (void)verdict;
        (void)step;
    }
};

/// In-process iterator over to_stream(instance).
class InstanceSource : public UpdateSource {
   public:
    explicit InstanceSource(const HMInstance &instance) : updates_(to_stream(instance)) {}
    explicit InstanceSource(std::vector<StreamUpdate> updates) : updates_(std::move(updates)) {}

    StreamUpdate next() override;
    void report(Verdict verdict, uint64_t step) override { reported_ = {verdict, step}; }

    std::size_t served() const noexcept { return cursor_; }
    std::optional<std::pair<Verdict, uint64_t>> reported() const { return reported_; }

   private:
    std::vector<StreamUpdate> updates_;
    std::size_t cursor_ = 0;
    std::optional<std::pair<Verdict, uint64_t>> reported_;
};

struct ShotOptions {
    /// Run on the decomposed physical circuit.
    bool physical = false;
    /// Two-qubit depolarizing probability after every physical CX. A nonzero
    /// value implies `physical`.
    double depolarizing_p = 0.0;
    MeasurePolicy policy = MeasurePolicy::Sample;
    bool tally_physical = false;
    std::vector<GateOp> *trace = nullptr;
};

struct ShotResult {
    SketchOutcome outcome;
    GateCounts logical;
    GateCounts physical;
    uint64_t noise_events = 0;
    uint64_t updates_consumed = 0;
};

/// Sketch element (vertex, label, parity) packed as v | label << L |
/// parity << (L + 1) with L = log2 n.
SketchElement hm_element(uint64_t vertex, int label, int parity, int log_n);

/// One sketch execution against a stream. Stops pulling after a Plus or Minus
/// outcome and reports the verdict to the source. Throws ProtocolError on an
/// out-of-order or out-of-range update and DomainError unless n is a power of
/// two >= 4.
ShotResult run_quantum_shot(UpdateSource &source, uint64_t n, const ShotOptions &options, Rng &rng);

/// Stream that drives every gate of the sketch: all n vertices labelled 1,
/// then n/4 disjoint edges. Run under MeasurePolicy::ForceZero it never
/// terminates early.
std::vector<StreamUpdate> worst_case_stream(uint64_t n);

struct WorstCaseCounts {
    GateCounts logical;
    GateCounts physical;
};

/// Gate tallies of one forced-zero run over worst_case_stream(n). The state is
/// simulated logically; the physical tally comes from the lowering.
WorstCaseCounts count_worst_case(uint64_t n);

/// Exact outcome distribution by branch enumeration over the measurement
/// sequence, starting from the ideal sketch state.
OutcomeDistribution exact_distribution(const HMInstance &instance);

/// Same enumeration starting from explicit sketch amplitudes.
OutcomeDistribution exact_distribution_from(const HMInstance &instance, std::span<const Amplitude> initial);

/// Enumeration for the state gamma * ideal + (1 - gamma) * I / 2^m, m the
/// sketch width.
OutcomeDistribution exact_distribution_depolarized(const HMInstance &instance, double gamma);

/// Sampling classical baseline: stores the labels of k uniformly chosen
/// vertices and answers on the first edge with both endpoints stored, else
/// flips a fair coin at End. `terminating_step` counts edges seen.
SketchOutcome run_classical_shot(UpdateSource &source, uint64_t n, uint64_t k, Rng &rng);

/// ceil(sqrt(ln 3 * n / alpha)).
uint64_t classical_sketch_size(double n, double alpha);

/// (1 / (e ln 2)) (1/2 - eps) sqrt((n - 1) / (2 alpha)). Throws DomainError for
/// eps >= 1/2 or alpha outside (0, 1/4].
double classical_lower_bound(double n, double alpha, double epsilon);

/// exp(-alpha k^2 / n). Throws DomainError for k > n.
double collision_bound(double n, double alpha, double k);

}  // namespace hmstream

#endif
