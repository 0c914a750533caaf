#pragma once

#include <atomic>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "pirmax/net/frame.hpp"
#include "pirmax/pir.hpp"

namespace pirmax::net {

/**
 * Database n of a scheme on a TCP endpoint. Answers are computed once at
 * construction; each connection runs on its own thread:
 *
 *   HELLO{hash}  -> HELLO-ACK, or HASH-MISMATCH and close
 *   QUERY{q}     -> ANSWER{bytes}, or ERROR 0x01 when q is out of range
 *   anything else, or QUERY before a successful HELLO -> ERROR 0x02 and close
 */
class DatabaseServer {
 public:
  DatabaseServer(const PirScheme& scheme, std::uint32_t n, const MessageBlock& messages);
  ~DatabaseServer();
  DatabaseServer(const DatabaseServer&) = delete;
  DatabaseServer& operator=(const DatabaseServer&) = delete;

  /// Binds and starts accepting; port 0 picks a free port.
  void start(const Endpoint& listen);
  void stop();
  /// Blocks until stop() is called from another thread.
  void wait();

  Endpoint endpoint() const { return bound_; }
  std::uint64_t queries_answered() const { return answered_.load(); }
  std::uint64_t connections() const { return connections_.load(); }

  /// Wire bytes of the ANSWER payload for query q.
  const std::vector<std::uint8_t>& answer_bytes(std::uint32_t q) const { return answers_.at(q); }

 private:
  void accept_loop();
  void serve(int fd);

  Digest hash_;
  std::vector<std::vector<std::uint8_t>> answers_;
  Socket listener_;
  Endpoint bound_;
  std::thread acceptor_;
  std::mutex mu_;
  std::list<std::thread> workers_;
  std::vector<int> open_fds_;
  std::atomic<bool> running_{false};
  std::atomic<std::uint64_t> answered_{0};
  std::atomic<std::uint64_t> connections_{0};
};

/// Builds and starts a server for database n (0-based).
std::unique_ptr<DatabaseServer> serve_database(const PirScheme& scheme, std::uint32_t n, const MessageBlock& messages,
                                               const Endpoint& listen);

}  // namespace pirmax::net
