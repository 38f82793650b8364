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


#include "hmstream/stream_client.hpp"

namespace hmstream {

RemoteSource::RemoteSource(const ClientOptions &options)
    : conn_(net::connect_to(options.endpoint, options.timeout)) {
    const auto reply = exchange(wire::Hello{});
    const auto *ack = std::get_if<wire::HelloAck>(&reply);
    if (ack == nullptr) {
        throw TransportError(std::string("expected HELLO_ACK, got ") + wire::tag_name(wire::tag_of(reply)));
    }
    ack_ = *ack;
}

wire::Message RemoteSource::exchange(const wire::Message &request) {
    wire::Message reply;
    try {
        conn_.send(request);
        reply = conn_.receive();
    } catch (const wire::MalformedFrame &e) {
        throw TransportError(e.what());
    }
    if (const auto *err = std::get_if<wire::Error>(&reply)) {
        throw ProtocolError("server error " + std::to_string(static_cast<int>(err->code)) + ": " + err->message);
    }
    return reply;
}

StreamUpdate RemoteSource::next() {
    const auto reply = exchange(wire::Next{});
    try {
        const auto u = wire::to_update(reply);
        ++received_;
        return u;
    } catch (const ProtocolError &e) {
        throw TransportError(e.what());
    }
}

void RemoteSource::report(Verdict verdict, uint64_t step) {
    if (reported_) {
        return;
    }
    reported_ = true;
    conn_.send(wire::Result{static_cast<uint8_t>(verdict), step});
    conn_.socket().shutdown_write();
}

}  // namespace hmstream
