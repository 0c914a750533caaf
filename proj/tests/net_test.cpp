#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pirmax/construct.hpp"
#include "pirmax/net/client.hpp"
#include "pirmax/net/frame.hpp"
#include "pirmax/net/server.hpp"
#include "pirmax/net/transcript.hpp"
#include "support.hpp"

namespace pirmax::net {
namespace {

using pirmax::testing::random_bits;

const Endpoint kAnyPort{"127.0.0.1", 0};

struct Cluster {
  PirScheme scheme;
  MessageBlock messages;
  std::vector<std::unique_ptr<DatabaseServer>> servers;
  std::vector<Endpoint> endpoints;

  Cluster(std::uint32_t n, std::uint32_t k, std::uint64_t seed) : scheme(scheme_from_sldc(build_sldc(n, k))) {
    std::mt19937_64 rng(seed);
    messages = random_bits(rng, scheme.code.message_bits());
    for (std::uint32_t db = 0; db < scheme.servers(); ++db) {
      servers.push_back(serve_database(scheme, db, messages, kAnyPort));
      endpoints.push_back(servers.back()->endpoint());
    }
  }
};

Socket greeted(const Cluster& c, std::uint32_t db) {
  Socket s = Socket::connect_to(c.endpoints[db]);
  s.send_frame(hello_frame(content_hash(c.scheme.code)));
  const auto ack = s.recv_frame();
  EXPECT_TRUE(ack && ack->type == FrameType::kHelloAck);
  return s;
}

TEST(Frame, QueryBytesAreBitExact) {
  const auto bytes = encode_frame(query_frame(5));
  EXPECT_EQ(bytes, (std::vector<std::uint8_t>{0, 0, 0, 5, 0x20, 0, 0, 0, 5}));
  EXPECT_EQ(encode_frame(error_frame(ErrorCode::kMalformed)), (std::vector<std::uint8_t>{0, 0, 0, 2, 0x7F, 0x02}));
  EXPECT_EQ(encode_frame({FrameType::kHelloAck, {}}), (std::vector<std::uint8_t>{0, 0, 0, 1, 0x11}));
}

TEST(Frame, DecodeRoundTripAndPartialInput) {
  const Frame f{FrameType::kAnswer, {0xAB, 0xCD, 0xEF}};
  auto bytes = encode_frame(f);
  const auto tail = encode_frame(query_frame(0x01020304));
  bytes.insert(bytes.end(), tail.begin(), tail.end());
  std::size_t used = 0;
  EXPECT_EQ(decode_frame(bytes, used), f);
  EXPECT_EQ(used, 8U);
  EXPECT_EQ(decode_frame(std::span(bytes).subspan(used), used), query_frame(0x01020304));
  EXPECT_EQ(used, 9U);
  EXPECT_FALSE(decode_frame(std::span(bytes).first(6), used));
  EXPECT_FALSE(decode_frame(std::span(bytes).first(2), used));
}

TEST(Frame, BadLengthsThrow) {
  std::size_t used = 0;
  const std::vector<std::uint8_t> zero = {0, 0, 0, 0, 0x20};
  EXPECT_THROW(decode_frame(zero, used), FrameError);
  const std::vector<std::uint8_t> huge = {0x00, 0x10, 0x00, 0x01, 0x21};
  EXPECT_THROW(decode_frame(huge, used), FrameError);
}

TEST(Frame, Be32) {
  std::uint8_t buf[4];
  write_be32(buf, 0xDEADBEEF);
  EXPECT_EQ(buf[0], 0xDE);
  EXPECT_EQ(buf[3], 0xEF);
  EXPECT_EQ(read_be32(buf), 0xDEADBEEFU);
}

TEST(Endpoint, Parse) {
  const auto e = parse_endpoint("127.0.0.1:8080");
  EXPECT_EQ(e.host, "127.0.0.1");
  EXPECT_EQ(e.port, 8080);
  EXPECT_EQ(e.str(), "127.0.0.1:8080");
  EXPECT_THROW(parse_endpoint("localhost"), std::invalid_argument);
  EXPECT_THROW(parse_endpoint("h:99999"), std::invalid_argument);
  EXPECT_THROW(parse_endpoint("h:x1"), std::invalid_argument);
}

TEST(Server, AnswersOneByteForSevenBitSymbols) {
  Cluster c(2, 3, 1);
  Socket s = greeted(c, 0);
  for (std::uint32_t q = 0; q < 4; ++q) {
    s.send_frame(query_frame(q));
    const auto a = s.recv_frame();
    ASSERT_TRUE(a);
    EXPECT_EQ(a->type, FrameType::kAnswer);
    EXPECT_EQ(a->payload.size(), 1U);
    EXPECT_EQ(a->payload, answer(c.scheme, 0, q, c.messages).to_bytes());
  }
}

TEST(Server, OutOfRangeQueryKeepsTheConnection) {
  Cluster c(2, 3, 2);
  Socket s = greeted(c, 1);
  s.send_frame(query_frame(4));
  const auto e = s.recv_frame();
  ASSERT_TRUE(e);
  EXPECT_EQ(e->type, FrameType::kError);
  EXPECT_EQ(e->payload, (std::vector<std::uint8_t>{0x01}));
  s.send_frame(query_frame(3));
  const auto a = s.recv_frame();
  ASSERT_TRUE(a);
  EXPECT_EQ(a->type, FrameType::kAnswer);
}

TEST(Server, HashMismatchServesNothing) {
  Cluster c(2, 2, 3);
  Socket s = Socket::connect_to(c.endpoints[0]);
  s.send_frame(hello_frame(content_hash(build_sldc(2, 3))));
  const auto r = s.recv_frame();
  ASSERT_TRUE(r);
  EXPECT_EQ(r->type, FrameType::kHashMismatch);
  EXPECT_FALSE(s.recv_frame());
  EXPECT_EQ(c.servers[0]->queries_answered(), 0U);
}

TEST(Server, QueryBeforeHelloIsMalformed) {
  Cluster c(2, 2, 4);
  Socket s = Socket::connect_to(c.endpoints[0]);
  s.send_frame(query_frame(0));
  const auto r = s.recv_frame();
  ASSERT_TRUE(r);
  EXPECT_EQ(r->type, FrameType::kError);
  EXPECT_EQ(r->payload, (std::vector<std::uint8_t>{0x02}));
  EXPECT_FALSE(s.recv_frame());
}

TEST(Server, UnknownTypeAndShortPayloadAreMalformed) {
  Cluster c(2, 2, 5);
  {
    Socket s = greeted(c, 0);
    s.send_frame({static_cast<FrameType>(0x55), {1, 2}});
    const auto r = s.recv_frame();
    ASSERT_TRUE(r);
    EXPECT_EQ(r->payload, (std::vector<std::uint8_t>{0x02}));
    EXPECT_FALSE(s.recv_frame());
  }
  {
    Socket s = greeted(c, 0);
    s.send_frame({FrameType::kQuery, {0, 1}});
    const auto r = s.recv_frame();
    ASSERT_TRUE(r);
    EXPECT_EQ(r->payload, (std::vector<std::uint8_t>{0x02}));
  }
}

TEST(Server, AnswersArePureFunctionsOfInputs) {
  Cluster a(3, 2, 6);
  Cluster b(3, 2, 6);
  for (std::uint32_t db = 0; db < 3; ++db) {
    for (std::uint32_t q = 0; q < 3; ++q) EXPECT_EQ(a.servers[db]->answer_bytes(q), b.servers[db]->answer_bytes(q));
  }
}

TEST(Retrieve, LoopbackAllThetas) {
  Cluster c(2, 3, 7);
  PirClient client(c.scheme, c.endpoints);
  std::mt19937_64 rng(8);
  std::set<std::uint32_t> seen_q1;
  for (int i = 0; i < 60; ++i) {
    const auto theta = static_cast<std::uint32_t>(i % 3);
    const auto r = client.retrieve(theta, rng);
    EXPECT_EQ(r.message, source_slice(c.scheme.code, c.messages, theta));
    const auto& t = r.transcript;
    EXPECT_EQ(t.download_bits, (std::vector<std::size_t>{7, 7}));
    EXPECT_EQ(t.upload_wire_bytes, (std::vector<std::size_t>{9, 9}));
    EXPECT_EQ(t.upload_bits, (std::vector<std::size_t>{2, 2}));
    EXPECT_DOUBLE_EQ(t.upload_info_bits[0], 2.0);
    seen_q1.insert(t.queries[0]);
  }
  EXPECT_EQ(seen_q1.size(), 4U);
}

TEST(Retrieve, DatabaseDownNamesIt) {
  Cluster c(2, 2, 9);
  c.servers[1]->stop();
  std::mt19937_64 rng(10);
  try {
    retrieve(c.scheme, 0, c.endpoints, rng);
    FAIL() << "expected RetrievalError";
  } catch (const RetrievalError& e) {
    EXPECT_NE(std::string(e.what()).find("database 2"), std::string::npos) << e.what();
  }
}

TEST(Retrieve, WrongCodeOnServerFails) {
  Cluster c(2, 2, 11);
  const auto other = scheme_from_sldc(build_sldc(2, 2).with_groups({1, 0, 0, 1}));
  std::mt19937_64 rng(12);
  EXPECT_THROW(retrieve(other, 0, c.endpoints, rng), RetrievalError);
}

TEST(Retrieve, EndpointCountMustMatch) {
  Cluster c(2, 2, 13);
  EXPECT_THROW(PirClient(c.scheme, {c.endpoints[0]}), std::invalid_argument);
}

TEST(TranscriptAudit, HonestClientLooksTheSameForEveryMessage) {
  Cluster c(2, 2, 14);
  PirClient client(c.scheme, c.endpoints);
  std::mt19937_64 rng(15);
  std::vector<Transcript> ts;
  for (int i = 0; i < 20000; ++i) {
    const auto r = client.retrieve(static_cast<std::uint32_t>(i % 2), rng);
    ASSERT_EQ(r.message, source_slice(c.scheme.code, c.messages, static_cast<std::uint32_t>(i % 2)));
    ts.push_back(r.transcript);
  }
  const auto a = transcript_audit(ts, 2, {2, 2});
  EXPECT_EQ(a.samples, (std::vector<std::size_t>{10000, 10000}));
  EXPECT_FALSE(a.low_power);
  EXPECT_LT(a.worst_tv, 0.05);
  EXPECT_TRUE(a.constant_upload);
  EXPECT_EQ(a.nonuniform_marginal, (std::vector<bool>{false, false}));
}

TEST(TranscriptAudit, SingleMessageHasZeroDistance) {
  Cluster c(2, 1, 16);
  PirClient client(c.scheme, c.endpoints);
  std::mt19937_64 rng(17);
  std::vector<Transcript> ts;
  for (int i = 0; i < 50; ++i) ts.push_back(client.retrieve(0, rng).transcript);
  const auto a = transcript_audit(ts, 1, {1, 1}, 100);
  EXPECT_EQ(a.worst_tv, 0.0);
  EXPECT_TRUE(a.low_power);
}

// Always using decoding set 0: database 1 sees query 0 whatever the message,
// so its distance is 0, but its marginal is far from uniform.
TEST(TranscriptAudit, BiasedClientIsFlagged) {
  Cluster c(2, 2, 18);
  PirClient client(c.scheme, c.endpoints);
  std::vector<Transcript> ts;
  for (int i = 0; i < 2000; ++i) {
    const auto theta = static_cast<std::uint32_t>(i % 2);
    QueryBundle b{theta, 0, c.scheme.sets[theta][0].queries};
    ts.push_back(client.retrieve(b).transcript);
  }
  const auto a = transcript_audit(ts, 2, {2, 2});
  EXPECT_EQ(a.max_tv[0], 0.0);
  EXPECT_TRUE(a.nonuniform_marginal[0]);
  EXPECT_NEAR(a.marginal_tv[0], 0.5, 1e-12);
}

}  // namespace
}  // namespace pirmax::net
