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


#ifndef HMSTREAM_WIRE_HPP
#define HMSTREAM_WIRE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hmstream/errors.hpp"
#include "hmstream/instance.hpp"

namespace hmstream::wire {

inline constexpr uint8_t kVersion = 1;
inline constexpr uint32_t kMaxPayload = 65535;

enum class Tag : uint8_t {
    Hello = 0x01,
    HelloAck = 0x02,
    Next = 0x03,
    Vertex = 0x04,
    Edge = 0x05,
    End = 0x06,
    Result = 0x07,
    Error = 0x7F,
};

enum class ErrorCode : uint8_t {
    ProtocolOrder = 0x01,
    StreamExhausted = 0x02,
    Malformed = 0x03,
};

struct Hello {
    uint8_t version = kVersion;
    friend bool operator==(const Hello &, const Hello &) = default;
};
struct HelloAck {
    uint8_t version = kVersion;
    uint64_t n = 0;
    uint64_t num_edges = 0;
    uint64_t session_id = 0;
    friend bool operator==(const HelloAck &, const HelloAck &) = default;
};
struct Next {
    friend bool operator==(const Next &, const Next &) = default;
};
struct Vertex {
    uint64_t v = 0;
    uint8_t label = 0;
    friend bool operator==(const Vertex &, const Vertex &) = default;
};
struct Edge {
    uint64_t u = 0;
    uint64_t v = 0;
    uint8_t label = 0;
    friend bool operator==(const Edge &, const Edge &) = default;
};
struct End {
    friend bool operator==(const End &, const End &) = default;
};
struct Result {
    uint8_t outcome = 0;  // 0 null, 1 yes, 2 no
    uint64_t step = 0;
    friend bool operator==(const Result &, const Result &) = default;
};
struct Error {
    ErrorCode code = ErrorCode::Malformed;
    std::string message;
    friend bool operator==(const Error &, const Error &) = default;
};

using Message = std::variant<Hello, HelloAck, Next, Vertex, Edge, End, Result, Error>;

/// A frame or payload that violates the encoding.
struct MalformedFrame : ProtocolError {
    explicit MalformedFrame(const std::string &w) : ProtocolError("malformed frame: " + w) {}
};

Tag tag_of(const Message &m);
const char *tag_name(Tag t);

/// Tag byte followed by the body. Throws DomainError for values the format
/// cannot carry (labels above 1, outcome above 2, over-long error text).
std::vector<uint8_t> encode_payload(const Message &m);

/// Four-byte little-endian length prefix followed by the payload.
std::vector<uint8_t> encode_frame(const Message &m);

/// Strict inverse of encode_payload. Throws MalformedFrame on an unknown tag, a
/// body of the wrong length, an out-of-range field or invalid UTF-8.
Message decode_payload(std::span<const uint8_t> payload);

/// Decodes exactly one complete frame. Throws MalformedFrame when the prefix
/// disagrees with the byte count.
Message decode_frame(std::span<const uint8_t> frame);

Message from_update(const StreamUpdate &u);
/// Vertex, Edge and End messages only; anything else throws ProtocolError.
StreamUpdate to_update(const Message &m);

bool valid_utf8(std::span<const uint8_t> bytes);

/// Incremental frame splitter over a byte stream.
class FrameReader {
   public:
    void feed(std::span<const uint8_t> bytes);
    /// Next complete payload, if buffered. Throws MalformedFrame as soon as a
    /// length prefix is zero or exceeds kMaxPayload.
    std::optional<std::vector<uint8_t>> next_payload();
    /// Bytes received but not yet returned.
    std::size_t pending() const noexcept { return buffer_.size() - start_; }

   private:
    std::vector<uint8_t> buffer_;
    std::size_t start_ = 0;
};

}  // namespace hmstream::wire

#endif
