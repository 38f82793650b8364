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


#ifndef HMSTREAM_STREAM_CLIENT_HPP
#define HMSTREAM_STREAM_CLIENT_HPP

#include <chrono>
#include <cstdint>

#include "hmstream/net.hpp"
#include "hmstream/runners.hpp"

namespace hmstream {

struct ClientOptions {
    net::Endpoint endpoint;
    std::chrono::milliseconds timeout{30000};
};

/// Pulls updates from a StreamServer. Connection failures and undecodable
/// server bytes surface as TransportError; an ERROR reply surfaces as
/// ProtocolError.
class RemoteSource : public UpdateSource {
   public:
    /// Connects and performs the HELLO exchange.
    explicit RemoteSource(const ClientOptions &options);

    const wire::HelloAck &hello() const noexcept { return ack_; }
    StreamUpdate next() override;
    /// Sends RESULT and half-closes the connection.
    void report(Verdict verdict, uint64_t step) override;
    uint64_t received() const noexcept { return received_; }

   private:
    wire::Message exchange(const wire::Message &request);

    net::Connection conn_;
    wire::HelloAck ack_;
    uint64_t received_ = 0;
    bool reported_ = false;
};

}  // namespace hmstream

#endif
