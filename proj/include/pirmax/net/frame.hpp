#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pirmax/codec.hpp"

namespace pirmax::net {

// Wire protocol v1: len (4 bytes, big-endian, = payload size + 1) | type (1 byte) | payload.
enum class FrameType : std::uint8_t {
  kHello = 0x10,         // 32-byte content hash
  kHelloAck = 0x11,
  kHashMismatch = 0x12,  // server closes afterwards
  kQuery = 0x20,         // 4-byte big-endian query index
  kAnswer = 0x21,        // ceil(L_x / 8) bytes, MSB-first
  kError = 0x7F,         // 1-byte code
};

enum class ErrorCode : std::uint8_t {
  kQueryOutOfRange = 0x01,  // connection stays open
  kMalformed = 0x02,        // connection is closed
};

inline constexpr std::size_t kMaxFrameLength = std::size_t{1} << 20;

class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Transport failure (connect, read, write, peer closed).
class NetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Frame {
  FrameType type;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const Frame&, const Frame&) = default;
};

std::vector<std::uint8_t> encode_frame(const Frame& frame);

/// Decodes one frame from the front of `buf`. Returns nullopt when more bytes
/// are needed; throws FrameError on a zero or oversized length field.
std::optional<Frame> decode_frame(std::span<const std::uint8_t> buf, std::size_t& consumed);

Frame hello_frame(const Digest& hash);
Frame query_frame(std::uint32_t q);
Frame error_frame(ErrorCode code);
std::uint32_t read_be32(const std::uint8_t* p);
void write_be32(std::uint8_t* p, std::uint32_t v);

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;
  std::string str() const { return host + ":" + std::to_string(port); }
};

/// "host:port"; throws std::invalid_argument.
Endpoint parse_endpoint(const std::string& text);

/// Owning socket descriptor.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(Socket&& o) noexcept : fd_(o.release()) {}
  Socket& operator=(Socket&& o) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket();

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  int release();
  void close();
  /// Wakes any thread blocked on this socket.
  void shutdown();

  static Socket connect_to(const Endpoint& ep);
  static Socket listen_on(const Endpoint& ep, int backlog = 64);
  /// Port actually bound (useful after listening on port 0).
  std::uint16_t local_port() const;

  void write_all(std::span<const std::uint8_t> bytes);
  /// False on clean EOF before the first byte.
  bool read_exact(std::span<std::uint8_t> bytes);

  void send_frame(const Frame& frame);
  /// nullopt on clean EOF at a frame boundary. Oversized or zero lengths throw FrameError.
  std::optional<Frame> recv_frame();

 private:
  int fd_ = -1;
};

}  // namespace pirmax::net
