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


#include "hmstream/stream_server.hpp"

#include <sys/socket.h>

#include <json.hpp>

#include "hmstream/runners.hpp"

namespace hmstream {

std::string session_log_line(const SessionRecord &r) {
    nlohmann::json j;
    j["session_id"] = r.session_id;
    j["updates_served"] = r.updates_served;
    if (r.result) {
        j["result"] = {{"outcome", verdict_name(static_cast<Verdict>(r.result->outcome))},
                       {"terminating_step", r.result->step}};
    } else {
        j["result"] = nullptr;
    }
    j["wall_ms"] = r.wall_ms;
    return j.dump();
}

StreamServer::StreamServer(HMInstance instance, ServerOptions options)
    : instance_(std::move(instance)), options_(std::move(options)) {
    if (auto bad = validate(instance_)) {
        throw DomainError("invalid instance (" + bad->rule + "): " + bad->detail);
    }
    stream_ = to_stream(instance_);
}

StreamServer::~StreamServer() { stop(); }

void StreamServer::start() {
    listener_.emplace(options_.endpoint);
    port_ = listener_->port();
    acceptor_ = std::thread([this] { accept_loop(); });
}

void StreamServer::stop() {
    if (stopping_.exchange(true)) {
        return;
    }
    if (acceptor_.joinable()) {
        acceptor_.join();
    }
    std::unique_lock lock(mu_);
    for (int fd : open_fds_) {
        ::shutdown(fd, SHUT_RDWR);
    }
    idle_.wait(lock, [this] { return active_ == 0; });
    if (listener_) {
        listener_->close();
    }
}

std::vector<SessionRecord> StreamServer::sessions() const {
    std::lock_guard lock(mu_);
    return records_;
}

void StreamServer::accept_loop() {
    while (!stopping_.load()) {
        net::Socket s = listener_->accept(std::chrono::milliseconds(100));
        if (!s.valid()) {
            continue;
        }
        {
            std::lock_guard lock(mu_);
            open_fds_.insert(s.fd());
            ++active_;
        }
        const uint64_t id = next_session_.fetch_add(1);
        std::thread([this, sock = std::move(s), id]() mutable { serve_session(std::move(sock), id); }).detach();
    }
}

void StreamServer::finish(const SessionRecord &record) {
    std::lock_guard lock(mu_);
    records_.push_back(record);
    if (options_.log != nullptr) {
        *options_.log << session_log_line(record) << '\n' << std::flush;
    }
}

void StreamServer::serve_session(net::Socket socket, uint64_t session_id) {
    const auto t0 = std::chrono::steady_clock::now();
    const int fd = socket.fd();
    SessionRecord record;
    record.session_id = session_id;
    net::Connection conn(std::move(socket));
    try {
        conn.socket().set_receive_timeout(options_.receive_timeout);
        const auto order_error = [&](const std::string &what) {
            conn.send(wire::Error{wire::ErrorCode::ProtocolOrder, what});
        };
        bool greeted = false;
        std::size_t cursor = 0;
        bool open = true;
        while (open) {
            wire::Message m;
            try {
                m = conn.receive();
            } catch (const wire::MalformedFrame &e) {
                conn.send(wire::Error{wire::ErrorCode::Malformed, e.what()});
                break;
            }
            switch (wire::tag_of(m)) {
                case wire::Tag::Hello:
                    if (greeted) {
                        order_error("duplicate HELLO");
                    } else if (std::get<wire::Hello>(m).version != wire::kVersion) {
                        order_error("unsupported protocol version");
                        open = false;
                    } else {
                        greeted = true;
                        conn.send(wire::HelloAck{wire::kVersion, instance_.n, instance_.edges.size(), session_id});
                    }
                    break;
                case wire::Tag::Next:
                    if (!greeted) {
                        order_error("NEXT before HELLO");
                    } else if (cursor >= stream_.size()) {
                        conn.send(wire::Error{wire::ErrorCode::StreamExhausted, "stream exhausted"});
                    } else {
                        conn.send(wire::from_update(stream_[cursor++]));
                        record.updates_served = cursor;
                    }
                    break;
                case wire::Tag::Result:
                    if (!greeted) {
                        order_error("RESULT before HELLO");
                    } else {
                        record.result = std::get<wire::Result>(m);
                        results_.fetch_add(1);
                        open = false;
                    }
                    break;
                default: order_error(std::string("unexpected ") + wire::tag_name(wire::tag_of(m))); break;
            }
        }
        conn.socket().shutdown_write();
    } catch (const Error &) {
        // Peer gone or timed out: the session ends without a result.
    }
    record.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    {
        std::lock_guard lock(mu_);
        open_fds_.erase(fd);
    }
    conn.socket().close();
    finish(record);
    std::lock_guard lock(mu_);
    --active_;
    idle_.notify_all();
}

}  // namespace hmstream
