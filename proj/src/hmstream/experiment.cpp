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


#include "hmstream/experiment.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hmstream/boosting.hpp"
#include "hmstream/errors.hpp"
#include "hmstream/stream_client.hpp"

namespace hmstream {

namespace {

const char *mix_name(CaseMix m) {
    switch (m) {
        case CaseMix::Yes: return "yes";
        case CaseMix::No: return "no";
        case CaseMix::Mix: return "mix";
    }
    return "?";
}

CaseMix parse_mix(std::string_view s) {
    if (s == "yes") {
        return CaseMix::Yes;
    }
    if (s == "no") {
        return CaseMix::No;
    }
    if (s == "mix") {
        return CaseMix::Mix;
    }
    throw DomainError("case must be yes, no or mix");
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json estimate_json(uint64_t hits, uint64_t trials) {
    if (trials == 0) {
        return nullptr;
    }
    const auto ci = wilson_interval(hits, trials);
    return {{"value", static_cast<double>(hits) / static_cast<double>(trials)},
            {"wilson95", {ci.low, ci.high}}};
}

ShotResult local_shot(const HMInstance &inst, const ShotOptions &options, uint64_t seed) {
    InstanceSource source(inst);
    Rng rng(seed);
    return run_quantum_shot(source, inst.n, options, rng);
}

ShotRecord remote_shot(const ExperimentConfig &config, const HMInstance &inst, const ShotOptions &options,
                       uint64_t seed) {
    const ClientOptions client{net::Endpoint::parse(config.endpoint), std::chrono::milliseconds(config.timeout_ms)};
    ShotRecord record;
    for (unsigned attempt = 0; attempt <= config.retries; ++attempt) {
        record.attempts = attempt + 1;
        try {
            RemoteSource source(client);
            if (source.hello().n != inst.n || source.hello().num_edges != inst.edges.size()) {
                throw ProtocolError("server instance (n=" + std::to_string(source.hello().n) +
                                    ", edges=" + std::to_string(source.hello().num_edges) +
                                    ") does not match the configured instance");
            }
            Rng rng(seed);
            record.outcome = run_quantum_shot(source, inst.n, options, rng).outcome;
            record.aborted = false;
            return record;
        } catch (const TransportError &) {
            record.aborted = true;
        }
    }
    return record;
}

}  // namespace

Interval wilson_interval(uint64_t hits, uint64_t trials, double z) {
    if (trials == 0 || hits > trials) {
        throw DomainError("Wilson interval needs 0 <= hits <= trials, trials > 0");
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(hits) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
    ExperimentConfig c;
    try {
        const auto j = nlohmann::json::parse(text);
        if (!j.is_object()) {
            throw DomainError("experiment config must be a JSON object");
        }
        c.n = j.value("n", c.n);
        if (j.contains("alpha")) {
            c.alpha = Rational::parse(j.at("alpha").get<std::string>());
        }
        if (j.contains("case")) {
            c.cases = parse_mix(j.at("case").get<std::string>());
        }
        c.shots = j.value("shots", c.shots);
        c.seed = j.value("seed", c.seed);
        c.depolarizing_p = j.value("depolarizing_p", c.depolarizing_p);
        c.physical = j.value("physical", c.physical);
        c.endpoint = j.value("endpoint", c.endpoint);
        c.jobs = j.value("jobs", c.jobs);
        c.retries = j.value("retries", c.retries);
        c.timeout_ms = j.value("timeout_ms", c.timeout_ms);
        c.exact = j.value("exact", c.exact);
        if (j.contains("instance") && !j.at("instance").is_null()) {
            c.instance_json = j.at("instance").is_string() ? j.at("instance").get<std::string>()
                                                           : j.at("instance").dump();
        }
    } catch (const nlohmann::json::exception &e) {
        throw DomainError(std::string("experiment config: ") + e.what());
    }
    return c;
}

std::string ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["alpha"] = alpha.to_string();
    j["case"] = mix_name(cases);
    j["shots"] = shots;
    j["seed"] = seed;
    j["depolarizing_p"] = depolarizing_p;
    j["physical"] = physical;
    j["endpoint"] = endpoint;
    j["jobs"] = jobs;
    j["retries"] = retries;
    j["timeout_ms"] = timeout_ms;
    j["exact"] = exact;
    j["instance"] = instance_json ? nlohmann::json::parse(*instance_json) : nlohmann::json(nullptr);
    return j.dump();
}

void ExperimentConfig::check() const {
    if (shots == 0) {
        throw DomainError("shots must be >= 1");
    }
    if (jobs == 0) {
        throw DomainError("jobs must be >= 1");
    }
    if (!(depolarizing_p >= 0.0 && depolarizing_p <= 1.0)) {
        throw DomainError("depolarizing probability outside [0, 1]");
    }
    if (!endpoint.empty() && cases == CaseMix::Mix) {
        throw DomainError("a remote run scores against the single instance the server holds; case mix is local only");
    }
    if (instance_json && cases == CaseMix::Mix) {
        throw DomainError("case mix cannot be combined with an archived instance");
    }
}

std::vector<HMInstance> experiment_instances(const ExperimentConfig &config) {
    if (config.instance_json) {
        return {hmstream::from_json(*config.instance_json)};
    }
    switch (config.cases) {
        case CaseMix::Yes: return {generate(config.n, config.alpha, Case::Yes, config.seed)};
        case CaseMix::No: return {generate(config.n, config.alpha, Case::No, config.seed)};
        case CaseMix::Mix:
            return {generate(config.n, config.alpha, Case::Yes, config.seed),
                    generate(config.n, config.alpha, Case::No, config.seed)};
    }
    return {};
}

ExperimentResult run_experiment(const ExperimentConfig &config) {
    config.check();
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentResult result;
    result.config = config;
    result.timestamp = utc_timestamp();
    result.instances = experiment_instances(config);
    ShotOptions options;
    options.physical = config.physical;
    options.depolarizing_p = config.depolarizing_p;
    if (options.depolarizing_p > 0.0) {
        options.physical = true;
    }

    result.shots.resize(config.shots);
    std::atomic<uint64_t> next{0};
    std::mutex error_mu;
    std::exception_ptr first_error;
    const auto worker = [&] {
        for (;;) {
            const uint64_t i = next.fetch_add(1);
            if (i >= config.shots) {
                return;
            }
            try {
                const auto &inst = result.instances[i % result.instances.size()];
                const uint64_t seed = derive_seed(config.seed, i);
                ShotRecord rec;
                if (config.endpoint.empty()) {
                    rec.outcome = local_shot(inst, options, seed).outcome;
                    rec.attempts = 1;
                } else {
                    rec = remote_shot(config, inst, options, seed);
                }
                if (!rec.aborted) {
                    rec.outcome = score(rec.outcome, inst.kind);
                }
                result.shots[i] = rec;
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                next.store(config.shots);
                return;
            }
        }
    };
    const unsigned threads = std::min<uint64_t>(config.jobs, config.shots);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }

    for (const auto &s : result.shots) {
        if (s.aborted) {
            ++result.aborted;
        } else if (s.outcome.verdict == Verdict::Null) {
            ++result.null;
        } else if (s.outcome.correct) {
            ++result.correct;
        } else {
            ++result.wrong;
        }
    }
    if (config.exact) {
        OutcomeDistribution avg;
        for (const auto &inst : result.instances) {
            const auto d = exact_distribution(inst);
            const double w = 1.0 / static_cast<double>(result.instances.size());
            avg.p_correct += w * d.p_correct;
            avg.p_wrong += w * d.p_wrong;
            avg.p_null += w * d.p_null;
        }
        result.exact = avg;
    }
    result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

std::string results_json(const ExperimentResult &r) {
    nlohmann::json j;
    j["format"] = "hmstream.results/1";
    j["config"] = nlohmann::json::parse(r.config.to_json());
    j["config"].erase("jobs");
    nlohmann::json instances = nlohmann::json::array();
    for (const auto &inst : r.instances) {
        instances.push_back({{"n", inst.n},
                             {"alpha", inst.alpha.to_string()},
                             {"case", case_name(inst.kind)},
                             {"seed", inst.seed},
                             {"num_edges", inst.edges.size()}});
    }
    j["instances"] = instances;
    j["counts"] = {{"correct", r.correct}, {"wrong", r.wrong}, {"null", r.null}, {"aborted", r.aborted}};
    j["completed"] = r.completed();
    j["estimates"] = {{"p_correct", estimate_json(r.correct, r.completed())},
                      {"p_wrong", estimate_json(r.wrong, r.completed())},
                      {"p_null", estimate_json(r.null, r.completed())}};
    uint64_t steps = 0;
    uint64_t retried = 0;
    for (const auto &s : r.shots) {
        if (!s.aborted) {
            steps += s.outcome.terminating_step;
        }
        retried += s.attempts > 1 ? 1 : 0;
    }
    j["mean_terminating_step"] =
        r.completed() ? static_cast<double>(steps) / static_cast<double>(r.completed()) : 0.0;
    j["exact"] = r.exact ? nlohmann::json{{"p_correct", r.exact->p_correct},
                                          {"p_wrong", r.exact->p_wrong},
                                          {"p_null", r.exact->p_null}}
                         : nlohmann::json(nullptr);
    j["metadata"] = {{"wall_ms", r.wall_ms}, {"timestamp", r.timestamp}, {"retried_shots", retried}};
    return j.dump(2);
}

Figure2bRow figure2b_row(uint64_t n, std::string noise, const OutcomeDistribution &dist, uint64_t k_max) {
    Figure2bRow row;
    row.n = n;
    row.noise = std::move(noise);
    row.dist = dist;
    row.copies = min_copies(dist, 2.0 / 3.0, k_max);
    if (row.copies) {
        row.total_qubits = total_quantum_space(n, *row.copies);
    }
    return row;
}

std::string figure2b_csv(const std::vector<Figure2bRow> &rows) {
    std::ostringstream out;
    out.precision(10);
    out << "n,noise,p_correct,p_wrong,p_null,copies,total_qubits\n";
    for (const auto &r : rows) {
        out << r.n << ',' << r.noise << ',' << r.dist.p_correct << ',' << r.dist.p_wrong << ',' << r.dist.p_null
            << ',';
        if (r.copies) {
            out << *r.copies << ',' << *r.total_qubits;
        } else {
            out << "unbounded,unbounded";
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace hmstream
