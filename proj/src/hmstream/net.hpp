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


#ifndef HMSTREAM_NET_HPP
#define HMSTREAM_NET_HPP

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

#include "hmstream/wire.hpp"

namespace hmstream::net {

struct Endpoint {
    std::string host = "127.0.0.1";
    uint16_t port = 0;

    /// "host:port" or ":port"; the host may be a bracketed IPv6 literal.
    /// Throws DomainError.
    static Endpoint parse(std::string_view text);
    std::string to_string() const;
};

/// Owning file descriptor.
class Socket {
   public:
    Socket() = default;
    explicit Socket(int fd) : fd_(fd) {}
    ~Socket();
    Socket(Socket &&other) noexcept : fd_(other.release()) {}
    Socket &operator=(Socket &&other) noexcept;
    Socket(const Socket &) = delete;
    Socket &operator=(const Socket &) = delete;

    int fd() const noexcept { return fd_; }
    bool valid() const noexcept { return fd_ >= 0; }
    int release() noexcept;
    void close() noexcept;
    /// Half-closes the sending side.
    void shutdown_write() noexcept;
    void set_receive_timeout(std::chrono::milliseconds timeout);

   private:
    int fd_ = -1;
};

/// Connects with a receive timeout. Throws TransportError.
Socket connect_to(const Endpoint &endpoint, std::chrono::milliseconds timeout);

class Listener {
   public:
    /// Binds and listens. Port 0 picks an ephemeral port. Throws
    /// TransportError.
    explicit Listener(const Endpoint &endpoint);

    uint16_t port() const noexcept { return port_; }
    /// Waits up to `wait` for a connection; returns an invalid socket on
    /// timeout.
    Socket accept(std::chrono::milliseconds wait);
    void close() noexcept { socket_.close(); }

   private:
    Socket socket_;
    uint16_t port_ = 0;
};

/// Message-level view of a connected socket.
class Connection {
   public:
    explicit Connection(Socket socket) : socket_(std::move(socket)) {}

    void send(const wire::Message &m);
    void send_raw(std::span<const uint8_t> bytes);
    /// Next message. Throws TransportError on EOF, timeout or a socket error,
    /// and wire::MalformedFrame on undecodable bytes.
    wire::Message receive();
    /// True once the peer has closed and every buffered frame was consumed.
    bool at_eof() const noexcept { return eof_ && reader_.pending() == 0; }

    Socket &socket() noexcept { return socket_; }

   private:
    Socket socket_;
    wire::FrameReader reader_;
    bool eof_ = false;
};

}  // namespace hmstream::net

#endif
