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


#include <gtest/gtest.h>

#include "hmstream/wire.hpp"
#include "wire_gen.hpp"

namespace hmstream {
namespace {

using wire::Message;

TEST(Codec, KnownByteLayouts) {
    EXPECT_EQ(wire::encode_frame(wire::Hello{}), (std::vector<uint8_t>{2, 0, 0, 0, 0x01, 0x01}));
    EXPECT_EQ(wire::encode_frame(wire::Next{}), (std::vector<uint8_t>{1, 0, 0, 0, 0x03}));
    EXPECT_EQ(wire::encode_frame(wire::Vertex{0x0102, 1}),
              (std::vector<uint8_t>{10, 0, 0, 0, 0x04, 0x02, 0x01, 0, 0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(wire::encode_frame(wire::Result{2, 5}),
              (std::vector<uint8_t>{10, 0, 0, 0, 0x07, 2, 5, 0, 0, 0, 0, 0, 0, 0}));
    EXPECT_EQ(wire::encode_frame(wire::Error{wire::ErrorCode::StreamExhausted, "ab"}),
              (std::vector<uint8_t>{6, 0, 0, 0, 0x7F, 2, 2, 0, 'a', 'b'}));
    EXPECT_EQ(wire::encode_payload(wire::HelloAck{1, 32, 8, 7}).size(), 26U);
    EXPECT_EQ(wire::encode_payload(wire::Edge{1, 2, 0}).size(), 18U);
}

TEST(Codec, EveryTypeRoundTrips) {
    const std::vector<Message> all = {
        wire::Hello{},       wire::HelloAck{1, 32, 8, 99}, wire::Next{},          wire::Vertex{31, 1},
        wire::Edge{3, 9, 0}, wire::End{},                  wire::Result{1, 12}, wire::Error{wire::ErrorCode::Malformed, "bad \xC3\xA9"},
    };
    for (const auto &m : all) {
        EXPECT_EQ(wire::decode_frame(wire::encode_frame(m)), m) << wire::tag_name(wire::tag_of(m));
    }
}

TEST(Codec, RandomMessagesRoundTrip) {
    Rng rng(2026);
    for (int i = 0; i < 10000; ++i) {
        const auto m = wiregen::random_message(rng);
        const auto frame = wire::encode_frame(m);
        ASSERT_EQ(wire::decode_frame(frame), m);
        ASSERT_EQ(wire::encode_frame(wire::decode_frame(frame)), frame);
    }
}

TEST(Codec, MutatedFramesAreRejected) {
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const auto mut = wiregen::mutate(wiregen::random_message(rng), rng);
        EXPECT_THROW(wire::decode_frame(mut.bytes), wire::MalformedFrame) << mut.kind;
    }
}

TEST(Codec, EncoderRejectsUnrepresentableValues) {
    EXPECT_THROW(wire::encode_payload(wire::Vertex{0, 2}), DomainError);
    EXPECT_THROW(wire::encode_payload(wire::Edge{0, 1, 7}), DomainError);
    EXPECT_THROW(wire::encode_payload(wire::Result{3, 0}), DomainError);
    EXPECT_THROW(wire::encode_payload(wire::Error{wire::ErrorCode::Malformed, "\xFF"}), DomainError);
    EXPECT_THROW(wire::encode_payload(wire::Error{wire::ErrorCode::Malformed, std::string(70000, 'a')}),
                 DomainError);
}

TEST(Codec, Utf8Validation) {
    const auto ok = [](std::string s) {
        return wire::valid_utf8({reinterpret_cast<const uint8_t *>(s.data()), s.size()});
    };
    EXPECT_TRUE(ok(""));
    EXPECT_TRUE(ok("plain"));
    EXPECT_TRUE(ok("\xE2\x82\xAC"));
    EXPECT_TRUE(ok("\xF0\x9F\x98\x80"));
    EXPECT_FALSE(ok("\xC0\xAF"));          // overlong
    EXPECT_FALSE(ok("\xED\xA0\x80"));      // surrogate
    EXPECT_FALSE(ok("\xE2\x82"));          // truncated
    EXPECT_FALSE(ok("\xF4\x90\x80\x80"));  // above U+10FFFF
}

TEST(Updates, ConversionBothWays) {
    for (const auto &u : {StreamUpdate::vertex(5, 1), StreamUpdate::edge(2, 3, 0), StreamUpdate::end()}) {
        EXPECT_EQ(wire::to_update(wire::from_update(u)), u);
    }
    EXPECT_THROW(wire::to_update(wire::Next{}), ProtocolError);
}

TEST(FrameReader, SplitsArbitraryChunking) {
    Rng rng(3);
    std::vector<Message> sent;
    std::vector<uint8_t> stream;
    for (int i = 0; i < 500; ++i) {
        sent.push_back(wiregen::random_message(rng));
        const auto f = wire::encode_frame(sent.back());
        stream.insert(stream.end(), f.begin(), f.end());
    }
    wire::FrameReader reader;
    std::vector<Message> got;
    std::size_t pos = 0;
    while (pos < stream.size()) {
        const std::size_t chunk = std::min<std::size_t>(1 + rng.below(40), stream.size() - pos);
        reader.feed(std::span(stream).subspan(pos, chunk));
        pos += chunk;
        while (auto p = reader.next_payload()) {
            got.push_back(wire::decode_payload(*p));
        }
    }
    EXPECT_EQ(got, sent);
    EXPECT_EQ(reader.pending(), 0U);
}

TEST(FrameReader, RejectsBadLengthsEagerly) {
    wire::FrameReader zero;
    zero.feed(std::vector<uint8_t>{0, 0, 0, 0});
    EXPECT_THROW(zero.next_payload(), wire::MalformedFrame);
    wire::FrameReader big;
    big.feed(std::vector<uint8_t>{0, 0, 1, 0});
    EXPECT_THROW(big.next_payload(), wire::MalformedFrame);
    wire::FrameReader partial;
    partial.feed(std::vector<uint8_t>{5, 0, 0});
    EXPECT_FALSE(partial.next_payload().has_value());
}

}  // namespace
}  // namespace hmstream
