#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pirmax/net/frame.hpp"
#include "pirmax/pir.hpp"

namespace pirmax::net {

/// A retrieval could not complete; the message names the database.
class RetrievalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// What one retrieval sent and received.
struct Transcript {
  std::uint32_t theta = 0;  ///< client side only
  std::size_t set_id = 0;
  std::vector<std::uint32_t> queries;          ///< per database
  std::vector<std::size_t> upload_wire_bytes;  ///< QUERY frame bytes per database
  std::vector<std::size_t> upload_bits;        ///< ceil(log2 M_n) per database
  std::vector<double> upload_info_bits;        ///< log2 M_n per database
  std::vector<std::size_t> download_bits;      ///< L_x per database
  std::vector<std::size_t> download_wire_bytes;
};

struct Retrieval {
  BitVector message;
  Transcript transcript;
};

/**
 * Client holding one connection per database, opened and greeted with HELLO
 * on first use. The N queries of a retrieval go out concurrently; answers are
 * only decoded once every database has replied.
 */
class PirClient {
 public:
  PirClient(const PirScheme& scheme, std::vector<Endpoint> endpoints);

  Retrieval retrieve(std::uint32_t theta, std::mt19937_64& rng);
  /// Sends an explicit bundle (used for tests of misbehaving clients).
  Retrieval retrieve(const QueryBundle& bundle);

 private:
  BitVector ask(std::uint32_t n, std::uint32_t q);
  void connect(std::uint32_t n);

  const PirScheme& scheme_;
  std::vector<Endpoint> endpoints_;
  std::vector<Socket> sockets_;
  Digest hash_;
};

/// One-shot retrieval over fresh connections.
Retrieval retrieve(const PirScheme& scheme, std::uint32_t theta, const std::vector<Endpoint>& endpoints,
                   std::mt19937_64& rng);

}  // namespace pirmax::net
