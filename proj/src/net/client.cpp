#include "pirmax/net/client.hpp"

#include <cmath>
#include <exception>
#include <future>

#include "pirmax/construct.hpp"

namespace pirmax::net {

PirClient::PirClient(const PirScheme& scheme, std::vector<Endpoint> endpoints)
    : scheme_(scheme), endpoints_(std::move(endpoints)), sockets_(endpoints_.size()), hash_(content_hash(scheme.code)) {
  if (endpoints_.size() != scheme.servers()) {
    throw std::invalid_argument("scheme has " + std::to_string(scheme.servers()) + " databases but " +
                                std::to_string(endpoints_.size()) + " endpoints were given");
  }
}

void PirClient::connect(std::uint32_t n) {
  Socket s = Socket::connect_to(endpoints_[n]);
  s.send_frame(hello_frame(hash_));
  const auto reply = s.recv_frame();
  if (!reply) throw NetError("closed during handshake");
  if (reply->type == FrameType::kHashMismatch) throw NetError("server holds a different code (HASH-MISMATCH)");
  if (reply->type != FrameType::kHelloAck) throw NetError("unexpected handshake reply");
  sockets_[n] = std::move(s);
}

BitVector PirClient::ask(std::uint32_t n, std::uint32_t q) {
  const std::string who = "database " + std::to_string(n + 1) + " (" + endpoints_[n].str() + ")";
  try {
    if (!sockets_[n].valid()) connect(n);
    sockets_[n].send_frame(query_frame(q));
    const auto reply = sockets_[n].recv_frame();
    if (!reply) throw NetError("connection closed before the answer");
    if (reply->type == FrameType::kError) {
      const int code = reply->payload.empty() ? -1 : reply->payload[0];
      if (code != static_cast<int>(ErrorCode::kQueryOutOfRange)) sockets_[n].close();
      throw RetrievalError(who + ": ERROR frame, code " + std::to_string(code));
    }
    const std::size_t bits = scheme_.code.symbol_bits();
    if (reply->type != FrameType::kAnswer || reply->payload.size() != (bits + 7) / 8) {
      throw NetError("malformed answer");
    }
    return BitVector::from_bytes(reply->payload, bits);
  } catch (const RetrievalError&) {
    throw;
  } catch (const std::exception& e) {
    sockets_[n].close();
    throw RetrievalError(who + ": " + e.what());
  }
}

Retrieval PirClient::retrieve(std::uint32_t theta, std::mt19937_64& rng) {
  return retrieve(gen_query(scheme_, theta, rng));
}

Retrieval PirClient::retrieve(const QueryBundle& bundle) {
  const std::uint32_t servers = scheme_.servers();
  std::vector<std::future<BitVector>> pending;
  pending.reserve(servers);
  for (std::uint32_t n = 0; n < servers; ++n) {
    pending.push_back(std::async(std::launch::async, [this, n, q = bundle.queries.at(n)] { return ask(n, q); }));
  }
  std::vector<BitVector> answers(servers);
  std::exception_ptr failure;
  for (std::uint32_t n = 0; n < servers; ++n) {
    try {
      answers[n] = pending[n].get();
    } catch (...) {
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  Retrieval r;
  r.message = reconstruct(scheme_, bundle, answers);
  Transcript& t = r.transcript;
  t.theta = bundle.theta;
  t.set_id = bundle.set_id;
  t.queries = bundle.queries;
  const std::size_t lx = scheme_.code.symbol_bits();
  for (std::uint32_t n = 0; n < servers; ++n) {
    const auto count = static_cast<double>(scheme_.queries(n));
    t.upload_wire_bytes.push_back(encode_frame(query_frame(bundle.queries[n])).size());
    t.upload_info_bits.push_back(std::log2(count));
    t.upload_bits.push_back(static_cast<std::size_t>(std::ceil(std::log2(count))));
    t.download_bits.push_back(lx);
    t.download_wire_bytes.push_back(4 + 1 + (lx + 7) / 8);
  }
  return r;
}

Retrieval retrieve(const PirScheme& scheme, std::uint32_t theta, const std::vector<Endpoint>& endpoints,
                   std::mt19937_64& rng) {
  PirClient client(scheme, endpoints);
  return client.retrieve(theta, rng);
}

}  // namespace pirmax::net
