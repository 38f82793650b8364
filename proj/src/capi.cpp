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


#include "hmstream/hmstream.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <json.hpp>

#include "hmstream/boosting.hpp"
#include "hmstream/errors.hpp"
#include "hmstream/estimator.hpp"
#include "hmstream/experiment.hpp"
#include "hmstream/runners.hpp"
#include "hmstream/stream_server.hpp"

struct hm_instance {
    hmstream::HMInstance value;
};

struct hm_server {
    std::unique_ptr<std::ofstream> file;
    std::unique_ptr<hmstream::StreamServer> server;
};

namespace {

thread_local std::string g_last_error;

hm_status status_of(hmstream::ErrorCode code) {
    using hmstream::ErrorCode;
    switch (code) {
        case ErrorCode::Domain: return HM_ERR_DOMAIN;
        case ErrorCode::Index: return HM_ERR_INDEX;
        case ErrorCode::Capacity: return HM_ERR_CAPACITY;
        case ErrorCode::Decomposition: return HM_ERR_DECOMPOSITION;
        case ErrorCode::Protocol: return HM_ERR_PROTOCOL;
        case ErrorCode::Transport: return HM_ERR_TRANSPORT;
        case ErrorCode::Io: return HM_ERR_IO;
        case ErrorCode::Internal: return HM_ERR_INTERNAL;
    }
    return HM_ERR_INTERNAL;
}

struct InvalidArgument {
    std::string what;
};

template <class F>
hm_status guarded(F &&body) {
    g_last_error.clear();
    try {
        body();
        return HM_OK;
    } catch (const InvalidArgument &e) {
        g_last_error = e.what;
        return HM_ERR_INVALID_ARGUMENT;
    } catch (const hmstream::Error &e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const nlohmann::json::exception &e) {
        g_last_error = e.what();
        return HM_ERR_DOMAIN;
    } catch (const std::bad_alloc &) {
        g_last_error = "out of memory";
        return HM_ERR_CAPACITY;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return HM_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown exception";
        return HM_ERR_INTERNAL;
    }
}

template <class T>
T &require(T *p, const char *name) {
    if (p == nullptr) {
        throw InvalidArgument{std::string(name) + " must not be null"};
    }
    return *p;
}

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

hmstream::OutcomeDistribution to_dist(const hm_distribution &d) { return {d.p_correct, d.p_wrong, d.p_null}; }

hm_distribution from_dist(const hmstream::OutcomeDistribution &d) { return {d.p_correct, d.p_wrong, d.p_null}; }

nlohmann::json counts_json(const hmstream::GateCounts &g) {
    nlohmann::json mcx = nlohmann::json::object();
    for (const auto &[size, count] : g.mcx) {
        mcx[std::to_string(size)] = count;
    }
    return {{"h", g.h}, {"x", g.x}, {"t", g.t}, {"cx", g.cx}, {"ry", g.ry}, {"mcx", mcx}};
}

}  // namespace

extern "C" {

const char *hm_version(void) { return "0.1.0"; }

const char *hm_status_name(hm_status status) {
    switch (status) {
        case HM_OK: return "ok";
        case HM_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case HM_ERR_DOMAIN: return "domain";
        case HM_ERR_INDEX: return "index";
        case HM_ERR_CAPACITY: return "capacity";
        case HM_ERR_DECOMPOSITION: return "decomposition";
        case HM_ERR_PROTOCOL: return "protocol";
        case HM_ERR_TRANSPORT: return "transport";
        case HM_ERR_IO: return "io";
        case HM_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char *hm_last_error_message(void) { return g_last_error.c_str(); }

void hm_free_string(char *s) { std::free(s); }

hm_status hm_instance_generate(uint64_t n, const char *alpha, const char *kind, uint64_t seed, hm_instance **out) {
    return guarded([&] {
        auto &slot = require(out, "out");
        const auto a = hmstream::Rational::parse(&require(alpha, "alpha"));
        const auto k = hmstream::parse_case(&require(kind, "kind"));
        slot = new hm_instance{hmstream::generate(n, a, k, seed)};
    });
}

hm_status hm_instance_from_json(const char *json, hm_instance **out) {
    return guarded([&] {
        auto &slot = require(out, "out");
        slot = new hm_instance{hmstream::from_json(&require(json, "json"))};
    });
}

hm_status hm_instance_to_json(const hm_instance *instance, char **out) {
    return guarded([&] {
        auto &slot = require(out, "out");
        slot = dup_string(hmstream::to_json(require(instance, "instance").value));
    });
}

hm_status hm_instance_info(const hm_instance *instance, uint64_t *n, uint64_t *num_edges) {
    return guarded([&] {
        const auto &inst = require(instance, "instance").value;
        require(n, "n") = inst.n;
        require(num_edges, "num_edges") = inst.edges.size();
    });
}

void hm_instance_free(hm_instance *instance) { delete instance; }

hm_status hm_exact_distribution(const hm_instance *instance, double gamma, hm_distribution *out) {
    return guarded([&] {
        const auto &inst = require(instance, "instance").value;
        auto &slot = require(out, "out");
        slot = from_dist(gamma == 1.0 ? hmstream::exact_distribution(inst)
                                      : hmstream::exact_distribution_depolarized(inst, gamma));
    });
}

hm_status hm_server_start(const hm_instance *instance, const char *endpoint, uint64_t timeout_ms,
                          const char *log_path, hm_server **out) {
    return guarded([&] {
        auto &slot = require(out, "out");
        auto handle = std::make_unique<hm_server>();
        std::ostream *log = nullptr;
        if (log_path != nullptr && std::string(log_path) == "-") {
            log = &std::cout;
        } else if (log_path != nullptr) {
            handle->file = std::make_unique<std::ofstream>(log_path, std::ios::app);
            if (!*handle->file) {
                throw hmstream::IoError(std::string("cannot open log file ") + log_path);
            }
            log = handle->file.get();
        }
        hmstream::ServerOptions options;
        options.endpoint = hmstream::net::Endpoint::parse(&require(endpoint, "endpoint"));
        options.receive_timeout = std::chrono::milliseconds(timeout_ms);
        options.log = log;
        handle->server = std::make_unique<hmstream::StreamServer>(require(instance, "instance").value, options);
        handle->server->start();
        slot = handle.release();
    });
}

uint16_t hm_server_port(const hm_server *server) { return server ? server->server->port() : 0; }

uint64_t hm_server_results(const hm_server *server) { return server ? server->server->results_received() : 0; }

hm_status hm_server_stop(hm_server *server) {
    return guarded([&] { require(server, "server").server->stop(); });
}

void hm_server_free(hm_server *server) { delete server; }

hm_status hm_run_experiment(const char *config_json, char **results_json) {
    return guarded([&] {
        auto &slot = require(results_json, "results_json");
        const auto config = hmstream::ExperimentConfig::from_json(&require(config_json, "config_json"));
        slot = dup_string(hmstream::results_json(hmstream::run_experiment(config)));
    });
}

hm_status hm_figure2b_csv(const char *rows_json, uint64_t k_max, char **csv) {
    return guarded([&] {
        auto &slot = require(csv, "csv");
        const auto rows = nlohmann::json::parse(&require(rows_json, "rows_json"));
        if (!rows.is_array() || rows.empty()) {
            throw hmstream::DomainError("figure2b needs a non-empty array of rows");
        }
        std::vector<hmstream::Figure2bRow> out;
        for (const auto &r : rows) {
            const hmstream::OutcomeDistribution d{r.at("p_correct").get<double>(), r.at("p_wrong").get<double>(),
                                                  r.at("p_null").get<double>()};
            out.push_back(hmstream::figure2b_row(r.at("n").get<uint64_t>(), r.at("noise").get<std::string>(), d,
                                                 k_max));
        }
        slot = dup_string(hmstream::figure2b_csv(out));
    });
}

hm_status hm_ideal_distribution(double alpha, hm_distribution *out) {
    return guarded([&] { require(out, "out") = from_dist(hmstream::ideal_copy_distribution(alpha)); });
}

hm_status hm_vote_success(uint64_t k, const hm_distribution *per_copy, double *out) {
    return guarded([&] { require(out, "out") = hmstream::vote_success(k, to_dist(require(per_copy, "per_copy"))); });
}

hm_status hm_min_copies(const hm_distribution *per_copy, double target, uint64_t k_max, uint64_t *out, int *found) {
    return guarded([&] {
        const auto k = hmstream::min_copies(to_dist(require(per_copy, "per_copy")), target, k_max);
        require(found, "found") = k.has_value() ? 1 : 0;
        require(out, "out") = k.value_or(0);
    });
}

hm_status hm_noisy_failure(uint64_t k, double alpha, double gamma, double *out) {
    return guarded([&] { require(out, "out") = hmstream::noisy_failure(k, alpha, gamma); });
}

hm_status hm_tolerable_infidelity(uint64_t k, double alpha, double budget, double *out, int *feasible) {
    return guarded([&] {
        const auto t = hmstream::max_tolerable_infidelity(k, alpha, budget);
        require(out, "out") = t.infidelity;
        require(feasible, "feasible") = t.feasible ? 1 : 0;
    });
}

hm_status hm_total_quantum_space(uint64_t n, uint64_t copies, uint64_t *out) {
    return guarded([&] { require(out, "out") = hmstream::total_quantum_space(n, copies); });
}

hm_status hm_classical_sketch_size(double n, double alpha, uint64_t *out) {
    return guarded([&] { require(out, "out") = hmstream::classical_sketch_size(n, alpha); });
}

hm_status hm_classical_lower_bound(double n, double alpha, double epsilon, double *out) {
    return guarded([&] { require(out, "out") = hmstream::classical_lower_bound(n, alpha, epsilon); });
}

hm_status hm_collision_bound(double n, double alpha, double k, double *out) {
    return guarded([&] { require(out, "out") = hmstream::collision_bound(n, alpha, k); });
}

hm_status hm_estimate(uint64_t n, const char *request_json, char **out_json) {
    return guarded([&] {
        auto &slot = require(out_json, "out_json");
        const auto req = request_json ? nlohmann::json::parse(request_json) : nlohmann::json::object();
        hmstream::CodeSpec code;
        code.family = hmstream::parse_code_family(req.value("code", std::string("surface")));
        code.p = req.value("p", code.p);
        code.p_th = req.value("p_th", code.p_th);
        const auto factories = req.contains("factories")
                                   ? hmstream::FactoryConfig::from_json(req.at("factories").dump())
                                   : hmstream::FactoryConfig::defaults();
        const std::string formula = req.value("formula", std::string("tabulated"));
        if (formula != "tabulated" && formula != "printed") {
            throw hmstream::DomainError("formula must be tabulated or printed");
        }
        const auto e = hmstream::estimate(
            n, code, req.value("gamma", 0.9975), req.value("copies", uint64_t{7}), req.value("alpha", 0.25),
            factories,
            formula == "printed" ? hmstream::DistanceFormula::Printed : hmstream::DistanceFormula::Tabulated);
        nlohmann::json j = {{"n", e.n},
                            {"copies", e.copies},
                            {"code", hmstream::code_family_name(e.family)},
                            {"p", e.p},
                            {"logical_qubits", e.logical_qubits},
                            {"toffoli_per_copy", e.toffoli_per_copy},
                            {"toffoli_total", e.toffoli_total},
                            {"ccz_infidelity", e.ccz_infidelity},
                            {"distance", e.distance},
                            {"modules", e.modules},
                            {"factory_qubits", e.factory_qubits},
                            {"physical_qubits", e.physical_qubits},
                            {"classical_best_known_bits", e.classical_best_known_bits},
                            {"classical_lower_bound_bits", e.classical_lower_bound_bits},
                            {"approximate", e.approximate}};
        slot = dup_string(j.dump());
    });
}

hm_status hm_default_factories(char **out_json) {
    return guarded([&] { require(out_json, "out_json") = dup_string(hmstream::FactoryConfig::defaults().to_json()); });
}

hm_status hm_gate_counts(uint64_t n, char **out_json) {
    return guarded([&] {
        auto &slot = require(out_json, "out_json");
        const auto emitted = hmstream::count_worst_case(n);
        const auto logical = hmstream::logical_counts_hm(n);
        const auto physical = hmstream::physical_counts_hm(n);
        nlohmann::json j = {
            {"n", n},
            {"space", hmstream::hm_space(n)},
            {"emitted", {{"logical", counts_json(emitted.logical)}, {"physical", counts_json(emitted.physical)}}},
            {"closed_form",
             {{"logical", counts_json(logical)},
              {"physical",
               {{"t", physical.t},
                {"h", physical.h},
                {"cnot_closed_form", physical.cnot_closed_form},
                {"cnot_upper", physical.cnot_upper}}}}}};
        slot = dup_string(j.dump());
    });
}

}  // extern "C"
