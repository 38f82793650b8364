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


#include "hmstream/net.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>

namespace hmstream::net {

namespace {

std::string errno_text(const char *what) { return std::string(what) + ": " + std::strerror(errno); }

struct AddrInfo {
    addrinfo *list = nullptr;
    ~AddrInfo() {
        if (list != nullptr) {
            freeaddrinfo(list);
        }
    }
};

AddrInfo resolve(const Endpoint &endpoint, bool passive) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = passive ? AI_PASSIVE : 0;
    AddrInfo info;
    const std::string port = std::to_string(endpoint.port);
    const int rc = getaddrinfo(endpoint.host.empty() ? nullptr : endpoint.host.c_str(), port.c_str(), &hints,
                               &info.list);
    if (rc != 0) {
        throw TransportError("cannot resolve " + endpoint.to_string() + ": " + gai_strerror(rc));
    }
    return info;
}

}  // namespace

Endpoint Endpoint::parse(std::string_view text) {
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos) {
        throw DomainError("endpoint '" + std::string(text) + "' is not host:port");
    }
    Endpoint e;
    std::string_view host = text.substr(0, colon);
    if (host.size() >= 2 && host.front() == '[' && host.back() == ']') {
        host = host.substr(1, host.size() - 2);
    }
    if (!host.empty()) {
        e.host = std::string(host);
    }
    const auto port = text.substr(colon + 1);
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
    if (ec != std::errc{} || ptr != port.data() + port.size() || port.empty() || value > 65535) {
        throw DomainError("bad port in endpoint '" + std::string(text) + "'");
    }
    e.port = static_cast<uint16_t>(value);
    return e;
}

std::string Endpoint::to_string() const {
    const bool v6 = host.find(':') != std::string::npos;
    return (v6 ? "[" + host + "]" : host) + ":" + std::to_string(port);
}

Socket::~Socket() { close(); }

Socket &Socket::operator=(Socket &&other) noexcept {
    if (this != &other) {
        close();
        fd_ = other.release();
    }
    return *this;
}

int Socket::release() noexcept {
    const int fd = fd_;
    fd_ = -1;
    return fd;
}

void Socket::close() noexcept {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

void Socket::shutdown_write() noexcept {
    if (fd_ >= 0) {
        ::shutdown(fd_, SHUT_WR);
    }
}

void Socket::set_receive_timeout(std::chrono::milliseconds timeout) {
    timeval tv{};
    tv.tv_sec = static_cast<time_t>(timeout.count() / 1000);
    tv.tv_usec = static_cast<suseconds_t>((timeout.count() % 1000) * 1000);
    if (setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv) != 0) {
        throw TransportError(errno_text("setsockopt(SO_RCVTIMEO)"));
    }
}

Socket connect_to(const Endpoint &endpoint, std::chrono::milliseconds timeout) {
    const auto info = resolve(endpoint, false);
    std::string last = "no addresses";
    for (auto *ai = info.list; ai != nullptr; ai = ai->ai_next) {
        Socket s(::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol));
        if (!s.valid()) {
            last = errno_text("socket");
            continue;
        }
        if (::connect(s.fd(), ai->ai_addr, ai->ai_addrlen) != 0) {
            last = errno_text("connect");
            continue;
        }
        const int one = 1;
        setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
        s.set_receive_timeout(timeout);
        return s;
    }
    throw TransportError("cannot connect to " + endpoint.to_string() + ": " + last);
}

Listener::Listener(const Endpoint &endpoint) {
    const auto info = resolve(endpoint, true);
    std::string last = "no addresses";
    for (auto *ai = info.list; ai != nullptr; ai = ai->ai_next) {
        Socket s(::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol));
        if (!s.valid()) {
            last = errno_text("socket");
            continue;
        }
        const int one = 1;
        setsockopt(s.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
        if (::bind(s.fd(), ai->ai_addr, ai->ai_addrlen) != 0 || ::listen(s.fd(), 128) != 0) {
            last = errno_text("bind/listen");
            continue;
        }
        sockaddr_storage addr{};
        socklen_t len = sizeof addr;
        getsockname(s.fd(), reinterpret_cast<sockaddr *>(&addr), &len);
        port_ = ntohs(addr.ss_family == AF_INET6 ? reinterpret_cast<sockaddr_in6 *>(&addr)->sin6_port
                                                 : reinterpret_cast<sockaddr_in *>(&addr)->sin_port);
        socket_ = std::move(s);
        return;
    }
    throw TransportError("cannot listen on " + endpoint.to_string() + ": " + last);
}

Socket Listener::accept(std::chrono::milliseconds wait) {
    pollfd p{socket_.fd(), POLLIN, 0};
    const int rc = ::poll(&p, 1, static_cast<int>(wait.count()));
    if (rc <= 0 || !(p.revents & POLLIN)) {
        return Socket{};
    }
    Socket s(::accept4(socket_.fd(), nullptr, nullptr, SOCK_CLOEXEC));
    if (s.valid()) {
        const int one = 1;
        setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    }
    return s;
}

void Connection::send(const wire::Message &m) { send_raw(wire::encode_frame(m)); }

void Connection::send_raw(std::span<const uint8_t> bytes) {
    std::size_t sent = 0;
    while (sent < bytes.size()) {
        const auto n = ::send(socket_.fd(), bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw TransportError(errno_text("send"));
        }
        sent += static_cast<std::size_t>(n);
    }
}

wire::Message Connection::receive() {
    for (;;) {
        if (auto payload = reader_.next_payload()) {
            return wire::decode_payload(*payload);
        }
        if (eof_) {
            if (reader_.pending() > 0) {
                throw wire::MalformedFrame("connection closed inside a frame");
            }
            throw TransportError("connection closed by peer");
        }
        uint8_t buf[4096];
        const auto n = ::recv(socket_.fd(), buf, sizeof buf, 0);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            if (errno == EAGAIN || errno == EWOULDBLOCK) {
                throw TransportError("receive timed out");
            }
            throw TransportError(errno_text("recv"));
        }
        if (n == 0) {
            eof_ = true;
            continue;
        }
        reader_.feed(std::span<const uint8_t>(buf, static_cast<std::size_t>(n)));
    }
}

}  // namespace hmstream::net
