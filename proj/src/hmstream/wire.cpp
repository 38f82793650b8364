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


#include "hmstream/wire.hpp"

#include <type_traits>

namespace hmstream::wire {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void put_u64(std::vector<uint8_t> &out, uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
}

void put_u16(std::vector<uint8_t> &out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
}

void check_bit(uint8_t label) {
    if (label > 1) {
        throw DomainError("label " + std::to_string(label) + " is not a bit");
    }
}

class Cursor {
   public:
    explicit Cursor(std::span<const uint8_t> bytes) : bytes_(bytes) {}

    uint8_t u8() {
        need(1);
        return bytes_[pos_++];
    }
    uint16_t u16() {
        need(2);
        const uint16_t v = static_cast<uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
        pos_ += 2;
        return v;
    }
    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            v |= static_cast<uint64_t>(bytes_[pos_ + i]) << (8 * i);
        }
        pos_ += 8;
        return v;
    }
    std::span<const uint8_t> take(std::size_t n) {
        need(n);
        auto s = bytes_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    uint8_t bit(const char *field) {
        const uint8_t b = u8();
        if (b > 1) {
            throw MalformedFrame(std::string(field) + " is not a bit");
        }
        return b;
    }
    void finish(const char *what) const {
        if (pos_ != bytes_.size()) {
            throw MalformedFrame(std::string(what) + " body has trailing bytes");
        }
    }

   private:
    void need(std::size_t n) const {
        if (bytes_.size() - pos_ < n) {
            throw MalformedFrame("truncated body");
        }
    }

    std::span<const uint8_t> bytes_;
    std::size_t pos_ = 0;
};

uint32_t read_u32(std::span<const uint8_t> b) {
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) | (static_cast<uint32_t>(b[2]) << 16) |
           (static_cast<uint32_t>(b[3]) << 24);
}

}  // namespace

Tag tag_of(const Message &m) {
    return std::visit(Overloaded{
                          [](const Hello &) { return Tag::Hello; },
                          [](const HelloAck &) { return Tag::HelloAck; },
                          [](const Next &) { return Tag::Next; },
                          [](const Vertex &) { return Tag::Vertex; },
                          [](const Edge &) { return Tag::Edge; },
                          [](const End &) { return Tag::End; },
                          [](const Result &) { return Tag::Result; },
                          [](const Error &) { return Tag::Error; },
                      },
                      m);
}

const char *tag_name(Tag t) {
    switch (t) {
        case Tag::Hello: return "HELLO";
        case Tag::HelloAck: return "HELLO_ACK";
        case Tag::Next: return "NEXT";
        case Tag::Vertex: return "VERTEX";
        case Tag::Edge: return "EDGE";
        case Tag::End: return "END";
        case Tag::Result: return "RESULT";
        case Tag::Error: return "ERROR";
    }
    return "?";
}

std::vector<uint8_t> encode_payload(const Message &m) {
    std::vector<uint8_t> out;
    out.push_back(static_cast<uint8_t>(tag_of(m)));
    std::visit(Overloaded{
                   [&](const Hello &h) { out.push_back(h.version); },
                   [&](const HelloAck &a) {
                       out.push_back(a.version);
                       put_u64(out, a.n);
                       put_u64(out, a.num_edges);
                       put_u64(out, a.session_id);
                   },
                   [](const Next &) {},
                   [&](const Vertex &v) {
                       check_bit(v.label);
                       put_u64(out, v.v);
                       out.push_back(v.label);
                   },
                   [&](const Edge &e) {
                       check_bit(e.label);
                       put_u64(out, e.u);
                       put_u64(out, e.v);
                       out.push_back(e.label);
                   },
                   [](const End &) {},
                   [&](const Result &r) {
                       if (r.outcome > 2) {
                           throw DomainError("result outcome out of range");
                       }
                       out.push_back(r.outcome);
                       put_u64(out, r.step);
                   },
                   [&](const Error &e) {
                       const auto code = static_cast<uint8_t>(e.code);
                       if (code < 1 || code > 3) {
                           throw DomainError("unknown error code");
                       }
                       if (e.message.size() > kMaxPayload - 4) {
                           throw DomainError("error message too long");
                       }
                       if (!valid_utf8({reinterpret_cast<const uint8_t *>(e.message.data()), e.message.size()})) {
                           throw DomainError("error message is not UTF-8");
                       }
                       out.push_back(code);
                       put_u16(out, static_cast<uint16_t>(e.message.size()));
                       out.insert(out.end(), e.message.begin(), e.message.end());
                   },
               },
               m);
    return out;
}

std::vector<uint8_t> encode_frame(const Message &m) {
    const auto payload = encode_payload(m);
    std::vector<uint8_t> out;
    out.reserve(payload.size() + 4);
    const auto len = static_cast<uint32_t>(payload.size());
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<uint8_t>(len >> (8 * i)));
    }
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

Message decode_payload(std::span<const uint8_t> payload) {
    if (payload.empty()) {
        throw MalformedFrame("empty payload");
    }
    if (payload.size() > kMaxPayload) {
        throw MalformedFrame("payload exceeds 65535 bytes");
    }
    Cursor c(payload.subspan(1));
    Message m;
    switch (payload[0]) {
        case static_cast<uint8_t>(Tag::Hello): m = Hello{c.u8()}; break;
        case static_cast<uint8_t>(Tag::HelloAck): {
            HelloAck a;
            a.version = c.u8();
            a.n = c.u64();
            a.num_edges = c.u64();
            a.session_id = c.u64();
            m = a;
            break;
        }
        case static_cast<uint8_t>(Tag::Next): m = Next{}; break;
        case static_cast<uint8_t>(Tag::Vertex): {
            Vertex v;
            v.v = c.u64();
            v.label = c.bit("vertex label");
            m = v;
            break;
        }
        case static_cast<uint8_t>(Tag::Edge): {
            Edge e;
            e.u = c.u64();
            e.v = c.u64();
            e.label = c.bit("edge label");
            m = e;
            break;
        }
        case static_cast<uint8_t>(Tag::End): m = End{}; break;
        case static_cast<uint8_t>(Tag::Result): {
            Result r;
            r.outcome = c.u8();
            if (r.outcome > 2) {
                throw MalformedFrame("result outcome out of range");
            }
            r.step = c.u64();
            m = r;
            break;
        }
        case static_cast<uint8_t>(Tag::Error): {
            Error e;
            const uint8_t code = c.u8();
            if (code < 1 || code > 3) {
                throw MalformedFrame("unknown error code");
            }
            e.code = static_cast<ErrorCode>(code);
            const auto text = c.take(c.u16());
            if (!valid_utf8(text)) {
                throw MalformedFrame("error message is not UTF-8");
            }
            e.message.assign(text.begin(), text.end());
            m = e;
            break;
        }
        default: throw MalformedFrame("unknown tag " + std::to_string(payload[0]));
    }
    c.finish(tag_name(static_cast<Tag>(payload[0])));
    return m;
}

Message decode_frame(std::span<const uint8_t> frame) {
    if (frame.size() < 4) {
        throw MalformedFrame("frame shorter than its length prefix");
    }
    const uint32_t len = read_u32(frame);
    if (len != frame.size() - 4) {
        throw MalformedFrame("length prefix disagrees with payload size");
    }
    return decode_payload(frame.subspan(4));
}

Message from_update(const StreamUpdate &u) {
    switch (u.kind) {
        case StreamUpdate::Kind::Vertex: return Vertex{u.u, u.label};
        case StreamUpdate::Kind::Edge: return Edge{u.u, u.v, u.label};
        case StreamUpdate::Kind::End: return End{};
    }
    return End{};
}

StreamUpdate to_update(const Message &m) {
    if (const auto *v = std::get_if<Vertex>(&m)) {
        return StreamUpdate::vertex(v->v, v->label);
    }
    if (const auto *e = std::get_if<Edge>(&m)) {
        return StreamUpdate::edge(e->u, e->v, e->label);
    }
    if (std::holds_alternative<End>(m)) {
        return StreamUpdate::end();
    }
    throw ProtocolError(std::string("expected a stream update, got ") + tag_name(tag_of(m)));
}

bool valid_utf8(std::span<const uint8_t> s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const uint8_t b = s[i];
        int extra;
        uint32_t cp;
        if (b < 0x80) {
            ++i;
            continue;
        } else if ((b & 0xE0) == 0xC0) {
            extra = 1;
            cp = b & 0x1F;
        } else if ((b & 0xF0) == 0xE0) {
            extra = 2;
            cp = b & 0x0F;
        } else if ((b & 0xF8) == 0xF0) {
            extra = 3;
            cp = b & 0x07;
        } else {
            return false;
        }
        if (s.size() - i <= static_cast<std::size_t>(extra)) {
            return false;
        }
        for (int k = 1; k <= extra; ++k) {
            if ((s[i + k] & 0xC0) != 0x80) {
                return false;
            }
            cp = (cp << 6) | (s[i + k] & 0x3F);
        }
        static constexpr uint32_t kMin[4] = {0, 0x80, 0x800, 0x10000};
        if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            return false;
        }
        i += static_cast<std::size_t>(extra) + 1;
    }
    return true;
}

void FrameReader::feed(std::span<const uint8_t> bytes) {
    if (start_ > 0 && start_ == buffer_.size()) {
        buffer_.clear();
        start_ = 0;
    }
    buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::optional<std::vector<uint8_t>> FrameReader::next_payload() {
    if (pending() < 4) {
        return std::nullopt;
    }
    const uint32_t len = read_u32(std::span(buffer_).subspan(start_, 4));
    if (len == 0 || len > kMaxPayload) {
        throw MalformedFrame("length prefix " + std::to_string(len) + " outside [1, 65535]");
    }
    if (pending() < 4 + std::size_t{len}) {
        return std::nullopt;
    }
    std::vector<uint8_t> payload(buffer_.begin() + static_cast<std::ptrdiff_t>(start_ + 4),
                                 buffer_.begin() + static_cast<std::ptrdiff_t>(start_ + 4 + len));
    start_ += 4 + len;
    if (start_ > 4096 && start_ * 2 > buffer_.size()) {
        buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(start_));
        start_ = 0;
    }
    return payload;
}

}  // namespace hmstream::wire
