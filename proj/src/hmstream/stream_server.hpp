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


#ifndef HMSTREAM_STREAM_SERVER_HPP
#define HMSTREAM_STREAM_SERVER_HPP

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <thread>
#include <vector>

#include "hmstream/instance.hpp"
#include "hmstream/net.hpp"

namespace hmstream {

struct ServerOptions {
    net::Endpoint endpoint;
    std::chrono::milliseconds receive_timeout{30000};
    /// One JSON object per finished session. Not owned.
    std::ostream *log = nullptr;
};

struct SessionRecord {
    uint64_t session_id = 0;
    uint64_t updates_served = 0;
    std::optional<wire::Result> result;
    double wall_ms = 0.0;
};

/// JSON line {session_id, updates_served, result, wall_ms}; result is null or
/// {outcome, terminating_step}.
std::string session_log_line(const SessionRecord &r);

/// Serves to_stream(instance) to every connection, one thread per session.
/// Each session has its own cursor.
class StreamServer {
   public:
    /// Throws DomainError for an invalid instance.
    StreamServer(HMInstance instance, ServerOptions options);
    ~StreamServer();
    StreamServer(const StreamServer &) = delete;
    StreamServer &operator=(const StreamServer &) = delete;

    /// Binds and starts accepting. Throws TransportError.
    void start();
    uint16_t port() const noexcept { return port_; }
    /// Stops accepting, aborts open sessions and waits for their threads.
    void stop();

    std::vector<SessionRecord> sessions() const;
    uint64_t results_received() const noexcept { return results_.load(); }
    const HMInstance &instance() const noexcept { return instance_; }

   private:
    void accept_loop();
    void serve_session(net::Socket socket, uint64_t session_id);
    void finish(const SessionRecord &record);

    HMInstance instance_;
    std::vector<StreamUpdate> stream_;
    ServerOptions options_;
    std::optional<net::Listener> listener_;
    uint16_t port_ = 0;
    std::thread acceptor_;
    std::atomic<bool> stopping_{false};
    std::atomic<uint64_t> next_session_{1};
    std::atomic<uint64_t> results_{0};

    mutable std::mutex mu_;
    std::condition_variable idle_;
    std::set<int> open_fds_;
    std::size_t active_ = 0;
    std::vector<SessionRecord> records_;
};

}  // namespace hmstream

#endif
