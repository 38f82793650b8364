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


// Command-line front end. Links only the C interface.

#include <csignal>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hmstream/hmstream.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitTransport = 3;
constexpr int kExitDomain = 4;

struct Failure {
    hm_status status;
    std::string message;
};

struct UsageError {
    std::string message;
};

void check(hm_status s, const std::string &context = "") {
    if (s != HM_OK) {
        throw Failure{s, (context.empty() ? "" : context + ": ") + hm_last_error_message()};
    }
}

int exit_code(hm_status s) {
    switch (s) {
        case HM_OK: return kExitOk;
        case HM_ERR_INVALID_ARGUMENT: return kExitUsage;
        case HM_ERR_PROTOCOL:
        case HM_ERR_TRANSPORT: return kExitTransport;
        case HM_ERR_INTERNAL: return 1;
        default: return kExitDomain;
    }
}

std::string take(char *s) {
    std::string out(s);
    hm_free_string(s);
    return out;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Failure{HM_ERR_IO, "cannot read " + path};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw Failure{HM_ERR_IO, "cannot write " + path};
    }
}

// Integer or scientific notation ("1e12") for sizes.
uint64_t parse_count(const std::string &text) {
    char *end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !(v >= 0.0) || v > 9.2e18 || std::floor(v) != v) {
        throw UsageError{"'" + text + "' is not a non-negative integer"};
    }
    return static_cast<uint64_t>(v);
}

std::vector<uint64_t> parse_counts(const std::vector<std::string> &items) {
    std::vector<uint64_t> out;
    for (const auto &s : items) {
        out.push_back(parse_count(s));
    }
    return out;
}

std::string format_number(double v) {
    std::ostringstream s;
    s.precision(10);
    s << v;
    return s.str();
}

std::string sci3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

// Subcommand config files are merged after parsing; flags given on the
// command line keep precedence.
std::map<CLI::App *, std::string> g_config_paths;

void add_config_options(CLI::App *sub, std::string &save_path) {
    sub->add_option("--config", g_config_paths[sub], "Read options from a flat key = value file")
        ->check(CLI::ExistingFile);
    sub->allow_config_extras(CLI::config_extras_mode::error);
    sub->add_option("--save-config", save_path, "Write the effective options to FILE and exit");
}

bool save_config_if_requested(CLI::App *sub, const std::string &save_path) {
    if (save_path.empty()) {
        return false;
    }
    std::string text = sub->config_to_str(true, false);
    std::string filtered;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
        if (line.rfind("save-config", 0) == 0 || line.rfind("config", 0) == 0) {
            continue;
        }
        filtered += line + "\n";
    }
    write_output(save_path, filtered);
    return true;
}

struct InstanceOptions {
    uint64_t n = 16;
    std::string alpha = "1/4";
    std::string kind = "yes";
    uint64_t seed = 1;
    std::string instance_path;
};

void add_instance_options(CLI::App *sub, InstanceOptions &o, bool allow_mix) {
    sub->add_option("--n", o.n, "Number of vertices (power of two)")->capture_default_str();
    sub->add_option("--alpha", o.alpha, "Matching density as num/den")->capture_default_str();
    sub->add_option("--case", o.kind, allow_mix ? "yes, no or mix" : "yes or no")
        ->capture_default_str()
        ->check(allow_mix ? CLI::IsMember({"yes", "no", "mix"}) : CLI::IsMember({"yes", "no"}));
    sub->add_option("--seed", o.seed, "Instance and shot seed")->capture_default_str();
    sub->add_option("--instance", o.instance_path, "Archived instance JSON (overrides n, alpha, case)");
}

// ---- serve ----

struct ServeOptions {
    InstanceOptions inst;
    std::string host = "127.0.0.1";
    uint16_t port = 9000;
    std::string log = "-";
    std::string port_file;
    uint64_t timeout_ms = 30000;
    std::string save;
};

int cmd_serve(CLI::App *sub, const ServeOptions &o) {
    if (save_config_if_requested(sub, o.save)) {
        return kExitOk;
    }
    hm_instance *inst = nullptr;
    if (!o.inst.instance_path.empty()) {
        check(hm_instance_from_json(read_file(o.inst.instance_path).c_str(), &inst), o.inst.instance_path);
    } else {
        check(hm_instance_generate(o.inst.n, o.inst.alpha.c_str(), o.inst.kind.c_str(), o.inst.seed, &inst));
    }
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    hm_server *server = nullptr;
    const std::string endpoint =
        (o.host.find(':') != std::string::npos ? "[" + o.host + "]" : o.host) + ":" + std::to_string(o.port);
    const hm_status s = hm_server_start(inst, endpoint.c_str(), o.timeout_ms, o.log.c_str(), &server);
    hm_instance_free(inst);
    check(s, "serve " + endpoint);
    const uint16_t port = hm_server_port(server);
    std::cerr << "hmstream: serving on " << o.host << ":" << port << '\n';
    if (!o.port_file.empty()) {
        std::ofstream pf(o.port_file);
        pf << port << '\n';
    }
    int sig = 0;
    sigwait(&signals, &sig);
    hm_server_stop(server);
    std::cerr << "hmstream: " << hm_server_results(server) << " results received\n";
    hm_server_free(server);
    return kExitOk;
}

// ---- run ----

struct RunOptions {
    InstanceOptions inst;
    uint64_t shots = 2000;
    double depolarizing = 0.0;
    bool physical = false;
    std::string endpoint;
    bool local = false;
    unsigned jobs = 1;
    unsigned retries = 3;
    uint64_t timeout_ms = 30000;
    bool exact = false;
    std::string output = "-";
    std::string save;
};

int cmd_run(CLI::App *sub, const RunOptions &o) {
    if (save_config_if_requested(sub, o.save)) {
        return kExitOk;
    }
    if (o.shots == 0) {
        throw UsageError{"--shots must be at least 1"};
    }
    nlohmann::json config = {{"n", o.inst.n},
                             {"alpha", o.inst.alpha},
                             {"case", o.inst.kind},
                             {"seed", o.inst.seed},
                             {"shots", o.shots},
                             {"depolarizing_p", o.depolarizing},
                             {"physical", o.physical},
                             {"endpoint", o.local ? "" : o.endpoint},
                             {"jobs", o.jobs},
                             {"retries", o.retries},
                             {"timeout_ms", o.timeout_ms},
                             {"exact", o.exact}};
    if (!o.inst.instance_path.empty()) {
        config["instance"] = nlohmann::json::parse(read_file(o.inst.instance_path));
    }
    char *results = nullptr;
    check(hm_run_experiment(config.dump().c_str(), &results), "run");
    const std::string text = take(results);
    write_output(o.output, text + "\n");
    const auto counts = nlohmann::json::parse(text).at("counts");
    if (counts.at("aborted").get<uint64_t>() == o.shots) {
        std::cerr << "hmstream: every shot aborted on transport errors\n";
        return kExitTransport;
    }
    return kExitOk;
}

// ---- figure2b ----

struct Figure2bOptions {
    std::vector<std::string> results;
    bool exact = false;
    std::vector<std::string> n_list;
    std::vector<double> gamma_list = {1.0};
    std::string alpha = "1/4";
    uint64_t seed = 1;
    uint64_t k_max = 10000;
    std::string output = "-";
    std::string save;
};

int cmd_figure2b(CLI::App *sub, const Figure2bOptions &o) {
    if (save_config_if_requested(sub, o.save)) {
        return kExitOk;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &path : o.results) {
        const auto j = nlohmann::json::parse(read_file(path));
        const auto &est = j.at("estimates");
        if (est.at("p_correct").is_null()) {
            throw Failure{HM_ERR_DOMAIN, path + ": no completed shots"};
        }
        const double p = j.at("config").at("depolarizing_p").get<double>();
        rows.push_back({{"n", j.at("instances").at(0).at("n")},
                        {"noise", p > 0 ? "p=" + format_number(p) : std::string("noiseless")},
                        {"p_correct", est.at("p_correct").at("value")},
                        {"p_wrong", est.at("p_wrong").at("value")},
                        {"p_null", est.at("p_null").at("value")}});
    }
    if (o.exact) {
        if (o.n_list.empty()) {
            throw UsageError{"--exact needs --n-list"};
        }
        for (uint64_t n : parse_counts(o.n_list)) {
            hm_instance *inst = nullptr;
            check(hm_instance_generate(n, o.alpha.c_str(), "yes", o.seed, &inst), "n=" + std::to_string(n));
            for (double gamma : o.gamma_list) {
                hm_distribution d{};
                const hm_status s = hm_exact_distribution(inst, gamma, &d);
                if (s != HM_OK) {
                    hm_instance_free(inst);
                    check(s, "n=" + std::to_string(n) + " gamma=" + format_number(gamma));
                }
                rows.push_back({{"n", n},
                                {"noise", "gamma=" + format_number(gamma)},
                                {"p_correct", d.p_correct},
                                {"p_wrong", d.p_wrong},
                                {"p_null", d.p_null}});
            }
            hm_instance_free(inst);
        }
    }
    if (rows.empty()) {
        throw UsageError{"figure2b needs --results FILE... or --exact --n-list N..."};
    }
    char *csv = nullptr;
    check(hm_figure2b_csv(rows.dump().c_str(), o.k_max, &csv), "figure2b");
    write_output(o.output, take(csv));
    return kExitOk;
}

// ---- counts ----

struct CountsOptions {
    std::vector<std::string> n_list = {"4", "8", "16", "32", "64"};
    bool json = false;
    std::string output = "-";
    std::string save;
};

int cmd_counts(CLI::App *sub, const CountsOptions &o) {
    if (save_config_if_requested(sub, o.save)) {
        return kExitOk;
    }
    nlohmann::json all = nlohmann::json::array();
    std::ostringstream csv;
    csv << "n,space,h,cx,mcx_vertex,mcx_query,t_physical,h_physical,cnot_physical,"
           "cx_closed_form,h_closed_form,cnot_closed_form,cnot_upper\n";
    for (uint64_t n : parse_counts(o.n_list)) {
        char *out = nullptr;
        check(hm_gate_counts(n, &out), "n=" + std::to_string(n));
        const auto j = nlohmann::json::parse(take(out));
        all.push_back(j);
        const int lg = j.at("space").get<int>() - 2;
        const auto &lo = j.at("emitted").at("logical");
        const auto &ph = j.at("emitted").at("physical");
        const auto &cf = j.at("closed_form");
        csv << n << ',' << j.at("space") << ',' << lo.at("h") << ',' << lo.at("cx") << ','
            << lo.at("mcx").value(std::to_string(lg + 1), 0) << ',' << lo.at("mcx").value(std::to_string(lg + 3), 0)
            << ',' << ph.at("t") << ',' << ph.at("h") << ',' << ph.at("cx") << ',' << cf.at("logical").at("cx")
            << ',' << cf.at("logical").at("h") << ',' << cf.at("physical").at("cnot_closed_form") << ','
            << cf.at("physical").at("cnot_upper") << '\n';
    }
    write_output(o.output, o.json ? all.dump(2) + "\n" : csv.str());
    return kExitOk;
}

// ---- vote ----

struct VoteOptions {
    std::vector<double> alphas = {0.25};
    double target = 2.0 / 3.0;
    uint64_t k_max = 10000;
    std::optional<uint64_t> k;
    double gamma = 1.0;
    bool json = false;
    std::string output = "-";
    std::string save;
};

int cmd_vote(CLI::App *sub, const VoteOptions &o) {
    if (save_config_if_requested(sub, o.save)) {
        return kExitOk;
    }
    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream csv;
    csv << "alpha,min_copies,vote_success_at_min";
    if (o.k) {
        csv << ",k,vote_success_at_k,noisy_failure_at_k";
    }
    csv << '\n';
    for (double alpha : o.alphas) {
        const std::string ctx = "alpha=" + format_number(alpha);
        hm_distribution d{};
        check(hm_ideal_distribution(alpha, &d), ctx);
        uint64_t k = 0;
        int found = 0;
        check(hm_min_copies(&d, o.target, o.k_max, &k, &found), ctx);
        double at_min = 0.0;
        if (found) {
            check(hm_vote_success(k, &d, &at_min), ctx);
        }
        nlohmann::json row = {{"alpha", alpha},
                              {"min_copies", found ? nlohmann::json(k) : nlohmann::json(nullptr)},
                              {"vote_success_at_min", found ? nlohmann::json(at_min) : nlohmann::json(nullptr)}};
        csv << format_number(alpha) << ',' << (found ? std::to_string(k) : "unbounded") << ','
            << (found ? format_number(at_min) : "");
        if (o.k) {
            double v = 0.0;
            double failure = 0.0;
            check(hm_vote_success(*o.k, &d, &v), ctx);
            check(hm_noisy_failure(*o.k, alpha, o.gamma, &failure), ctx);
            row["k"] = *o.k;
            row["vote_success_at_k"] = v;
            row["noisy_failure_at_k"] = failure;
            csv << ',' << *o.k << ',' << format_number(v) << ',' << format_number(failure);
        }
        csv << '\n';
        rows.push_back(row);
    }
    write_output(o.output, o.json ? rows.dump(2) + "\n" : csv.str());
    return kExitOk;
}

// ---- bound ----

struct BoundOptions {
    std::vector<std::string> n_list = {"1e6"};
    double alpha = 0.25;
    double epsilon = 1.0 / 3.0;
    bool json = false;
    std::string output = "-";
    std::string save;
};

int cmd_bound(CLI::App *sub, const BoundOptions &o) {
    if (save_config_if_requested(sub, o.save)) {
        return kExitOk;
    }
    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream csv;
    csv << "n,alpha,epsilon,best_known_bits,lower_bound_bits,best_known_3sf,lower_bound_3sf\n";
    for (uint64_t n : parse_counts(o.n_list)) {
        const std::string ctx = "n=" + std::to_string(n);
        uint64_t best = 0;
        double lower = 0.0;
        check(hm_classical_sketch_size(static_cast<double>(n), o.alpha, &best), ctx);
        check(hm_classical_lower_bound(static_cast<double>(n), o.alpha, o.epsilon, &lower), ctx);
        rows.push_back({{"n", n},
                        {"alpha", o.alpha},
                        {"epsilon", o.epsilon},
                        {"best_known_bits", best},
                        {"lower_bound_bits", lower}});
        csv << n << ',' << format_number(o.alpha) << ',' << format_number(o.epsilon) << ',' << best << ','
            << format_number(lower) << ',' << sci3(static_cast<double>(best)) << ',' << sci3(lower) << '\n';
    }
    write_output(o.output, o.json ? rows.dump(2) + "\n" : csv.str());
    return kExitOk;
}

// ---- estimate ----

struct EstimateOptions {
    std::vector<std::string> n_list = {"1e4", "1e5", "1e6", "1e7", "1e8", "1e9", "1e10", "1e11", "1e12", "1e13",
                                       "1e14", "1e15"};
    std::string code = "surface";
    double p = 1e-3;
    double p_th = 0.01;
    double gamma = 0.9975;
    uint64_t copies = 7;
    double alpha = 0.25;
    std::string factories;
    bool printed = false;
    bool break_even = false;
    bool json = false;
    std::string output = "-";
    std::string save;
};

int cmd_estimate(CLI::App *sub, const EstimateOptions &o) {
    if (save_config_if_requested(sub, o.save)) {
        return kExitOk;
    }
    nlohmann::json request = {{"code", o.code},         {"p", o.p},         {"p_th", o.p_th},
                              {"gamma", o.gamma},       {"copies", o.copies}, {"alpha", o.alpha},
                              {"formula", o.printed ? "printed" : "tabulated"}};
    if (!o.factories.empty()) {
        request["factories"] = nlohmann::json::parse(read_file(o.factories));
    }
    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream csv;
    csv << "n,code,p,logical_qubits,toffoli_total,ccz_infidelity,distance,modules,factory_qubits,"
           "physical_qubits,classical_best_known_bits,classical_lower_bound_bits,approximate\n";
    for (uint64_t n : parse_counts(o.n_list)) {
        char *out = nullptr;
        check(hm_estimate(n, request.dump().c_str(), &out), "n=" + std::to_string(n));
        const auto j = nlohmann::json::parse(take(out));
        rows.push_back(j);
        csv << n << ',' << j.at("code").get<std::string>() << ',' << format_number(o.p) << ','
            << j.at("logical_qubits") << ',' << j.at("toffoli_total") << ','
            << sci3(j.at("ccz_infidelity").get<double>()) << ',' << j.at("distance") << ',' << j.at("modules")
            << ',' << j.at("factory_qubits") << ',' << j.at("physical_qubits") << ','
            << j.at("classical_best_known_bits") << ','
            << format_number(j.at("classical_lower_bound_bits").get<double>()) << ','
            << (j.at("approximate").get<bool>() ? "true" : "false") << '\n';
    }
    if (o.break_even) {
        for (const char *against : {"classical_best_known_bits", "classical_lower_bound_bits"}) {
            std::string last = "none";
            std::string first = "none";
            for (const auto &r : rows) {
                if (r.at("physical_qubits").get<double>() < r.at(against).get<double>()) {
                    first = std::to_string(r.at("n").get<uint64_t>());
                    break;
                }
                last = std::to_string(r.at("n").get<uint64_t>());
            }
            std::cerr << "break-even vs " << against << ": above at n=" << last << ", below at n=" << first << '\n';
        }
    }
    write_output(o.output, o.json ? rows.dump(2) + "\n" : csv.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hidden Matching streaming sketch: simulation, networked runs and resource estimates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(hm_version()));

    ServeOptions serve;
    auto *s = app.add_subcommand("serve", "Serve an instance's update stream over TCP");
    add_instance_options(s, serve.inst, false);
    s->add_option("--host", serve.host, "Bind address")->capture_default_str();
    s->add_option("--port", serve.port, "TCP port (0 picks a free one)")->capture_default_str();
    s->add_option("--log", serve.log, "Session log file, '-' for stdout")->capture_default_str();
    s->add_option("--port-file", serve.port_file, "Write the bound port to FILE");
    s->add_option("--timeout-ms", serve.timeout_ms, "Receive timeout per session")->capture_default_str();
    add_config_options(s, serve.save);

    RunOptions run;
    auto *r = app.add_subcommand("run", "Run sketch shots locally or against a server");
    add_instance_options(r, run.inst, true);
    r->add_option("--shots", run.shots, "Number of shots")->capture_default_str();
    r->add_option("--depolarizing", run.depolarizing, "Two-qubit depolarizing probability per CX")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    r->add_flag("--physical", run.physical, "Simulate the decomposed circuit");
    r->add_option("--endpoint", run.endpoint, "Server host:port")->envname("HMSTREAM_ENDPOINT");
    r->add_flag("--local", run.local, "Run in-process even if an endpoint is set");
    r->add_option("--jobs", run.jobs, "Parallel shots")->capture_default_str()->check(CLI::PositiveNumber);
    r->add_option("--retries", run.retries, "Transport retries per shot")->capture_default_str();
    r->add_option("--timeout-ms", run.timeout_ms, "Receive timeout")->capture_default_str();
    r->add_flag("--exact", run.exact, "Also report the exact distribution");
    r->add_option("--output,-o", run.output, "Results file, '-' for stdout")->capture_default_str();
    add_config_options(r, run.save);

    Figure2bOptions fig;
    auto *f = app.add_subcommand("figure2b", "Total space to reach 2/3 success, as CSV");
    f->add_option("--results", fig.results, "Results JSON files from 'run'");
    f->add_flag("--exact", fig.exact, "Use exact distributions for --n-list and --gamma-list");
    f->add_option("--n-list", fig.n_list, "Sizes for --exact")->delimiter(',');
    f->add_option("--gamma-list", fig.gamma_list, "Sketch fidelities for --exact")->delimiter(',');
    f->add_option("--alpha", fig.alpha, "Matching density for --exact")->capture_default_str();
    f->add_option("--seed", fig.seed, "Instance seed for --exact")->capture_default_str();
    f->add_option("--k-max", fig.k_max, "Largest copy count tried")->capture_default_str();
    f->add_option("--output,-o", fig.output, "CSV file")->capture_default_str();
    add_config_options(f, fig.save);

    CountsOptions counts;
    auto *c = app.add_subcommand("counts", "Worst-case gate tallies, emitted and closed form");
    c->add_option("--n-list", counts.n_list, "Sizes")->delimiter(',')->capture_default_str();
    c->add_flag("--json", counts.json, "JSON instead of CSV");
    c->add_option("--output,-o", counts.output, "Output file")->capture_default_str();
    add_config_options(c, counts.save);

    VoteOptions vote;
    auto *v = app.add_subcommand("vote", "Majority-vote boosting");
    v->add_option("--alpha", vote.alphas, "One or more alphas")->delimiter(',')->capture_default_str();
    v->add_option("--target", vote.target, "Success target")->capture_default_str();
    v->add_option("--k-max", vote.k_max, "Largest copy count tried")->capture_default_str();
    v->add_option("--k", vote.k, "Also evaluate this copy count");
    v->add_option("--gamma", vote.gamma, "Per-copy fidelity for the noisy failure at --k")->capture_default_str();
    v->add_flag("--json", vote.json, "JSON instead of CSV");
    v->add_option("--output,-o", vote.output, "Output file")->capture_default_str();
    add_config_options(v, vote.save);

    BoundOptions bound;
    auto *b = app.add_subcommand("bound", "Classical space: best-known sketch and lower bound");
    b->add_option("--n,--n-list", bound.n_list, "Sizes")->delimiter(',')->capture_default_str();
    b->add_option("--alpha", bound.alpha, "Matching density")->capture_default_str();
    b->add_option("--epsilon", bound.epsilon, "Worst-case error")->capture_default_str();
    b->add_flag("--json", bound.json, "JSON instead of CSV");
    b->add_option("--output,-o", bound.output, "Output file")->capture_default_str();
    add_config_options(b, bound.save);

    EstimateOptions est;
    auto *e = app.add_subcommand("estimate", "Fault-tolerant resource estimate");
    e->add_option("--n-list", est.n_list, "Sizes")->delimiter(',')->capture_default_str();
    e->add_option("--code", est.code, "surface, two-gross or bb360")
        ->capture_default_str()
        ->check(CLI::IsMember({"surface", "two-gross", "bb360"}));
    e->add_option("--p", est.p, "Physical error rate")->capture_default_str();
    e->add_option("--p-th", est.p_th, "Threshold error rate")->capture_default_str();
    e->add_option("--gamma", est.gamma, "Target sketch fidelity")->capture_default_str();
    e->add_option("--copies", est.copies, "Sketch copies")->capture_default_str();
    e->add_option("--alpha", est.alpha, "Matching density for the classical columns")->capture_default_str();
    e->add_option("--factories", est.factories, "Factory configuration JSON");
    e->add_flag("--printed-distance", est.printed, "Use the printed distance formula");
    e->add_flag("--break-even", est.break_even, "Report break-even rows on stderr");
    e->add_flag("--json", est.json, "JSON instead of CSV");
    e->add_option("--output,-o", est.output, "Output file")->capture_default_str();
    add_config_options(e, est.save);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &ex) {
        return app.exit(ex);
    } catch (const CLI::CallForAllHelp &ex) {
        return app.exit(ex);
    } catch (const CLI::CallForVersion &ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError &ex) {
        app.exit(ex);
        return kExitUsage;
    }

    try {
        for (auto &[sub, path] : g_config_paths) {
            if (*sub && !path.empty()) {
                std::ifstream in(path);
                sub->parse_from_stream(in);
            }
        }
    } catch (const CLI::ParseError &ex) {
        app.exit(ex);
        return kExitUsage;
    }

    try {
        if (*s) {
            return cmd_serve(s, serve);
        }
        if (*r) {
            return cmd_run(r, run);
        }
        if (*f) {
            return cmd_figure2b(f, fig);
        }
        if (*c) {
            return cmd_counts(c, counts);
        }
        if (*v) {
            return cmd_vote(v, vote);
        }
        if (*b) {
            return cmd_bound(b, bound);
        }
        return cmd_estimate(e, est);
    } catch (const UsageError &ex) {
        std::cerr << "hmstream: " << ex.message << '\n';
        return kExitUsage;
    } catch (const Failure &ex) {
        std::cerr << "hmstream: " << hm_status_name(ex.status) << " error: " << ex.message << '\n';
        return exit_code(ex.status);
    } catch (const nlohmann::json::exception &ex) {
        std::cerr << "hmstream: bad JSON input: " << ex.what() << '\n';
        return kExitDomain;
    } catch (const std::invalid_argument &ex) {
        std::cerr << "hmstream: bad number: " << ex.what() << '\n';
        return kExitUsage;
    }
}
