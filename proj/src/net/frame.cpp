#include "pirmax/net/frame.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>

namespace pirmax::net {

std::uint32_t read_be32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

void write_be32(std::uint8_t* p, std::uint32_t v) {
  p[0] = static_cast<std::uint8_t>(v >> 24);
  p[1] = static_cast<std::uint8_t>(v >> 16);
  p[2] = static_cast<std::uint8_t>(v >> 8);
  p[3] = static_cast<std::uint8_t>(v);
}

std::vector<std::uint8_t> encode_frame(const Frame& frame) {
  const std::size_t len = frame.payload.size() + 1;
  if (len > kMaxFrameLength) throw FrameError("frame of " + std::to_string(len) + " bytes exceeds the 1 MiB limit");
  std::vector<std::uint8_t> out(4 + len);
  write_be32(out.data(), static_cast<std::uint32_t>(len));
  out[4] = static_cast<std::uint8_t>(frame.type);
  std::copy(frame.payload.begin(), frame.payload.end(), out.begin() + 5);
  return out;
}

std::optional<Frame> decode_frame(std::span<const std::uint8_t> buf, std::size_t& consumed) {
  consumed = 0;
  if (buf.size() < 4) return std::nullopt;
  const std::uint32_t len = read_be32(buf.data());
  if (len == 0) throw FrameError("frame length 0");
  if (len > kMaxFrameLength) throw FrameError("frame length " + std::to_string(len) + " exceeds the 1 MiB limit");
  if (buf.size() < 4 + std::size_t{len}) return std::nullopt;
  Frame f{static_cast<FrameType>(buf[4]), std::vector<std::uint8_t>(buf.begin() + 5, buf.begin() + 4 + len)};
  consumed = 4 + len;
  return f;
}

Frame hello_frame(const Digest& hash) { return {FrameType::kHello, {hash.begin(), hash.end()}}; }

Frame query_frame(std::uint32_t q) {
  Frame f{FrameType::kQuery, std::vector<std::uint8_t>(4)};
  write_be32(f.payload.data(), q);
  return f;
}

Frame error_frame(ErrorCode code) { return {FrameType::kError, {static_cast<std::uint8_t>(code)}}; }

Endpoint parse_endpoint(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw std::invalid_argument("endpoint '" + text + "' is not host:port");
  }
  std::string host = text.substr(0, colon);
  if (host.size() > 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
  unsigned port = 0;
  const char* first = text.data() + colon + 1;
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, port);
  if (ec != std::errc() || ptr != last || port > 65535) {
    throw std::invalid_argument("endpoint '" + text + "' has an invalid port");
  }
  return {host, static_cast<std::uint16_t>(port)};
}

Socket& Socket::operator=(Socket&& o) noexcept {
  if (this != &o) {
    close();
    fd_ = o.release();
  }
  return *this;
}

Socket::~Socket() { close(); }

int Socket::release() {
  const int fd = fd_;
  fd_ = -1;
  return fd;
}

void Socket::close() {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
}

void Socket::shutdown() {
  if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

namespace {

std::string errno_text() { return std::strerror(errno); }

struct AddrInfo {
  addrinfo* head = nullptr;
  ~AddrInfo() {
    if (head) freeaddrinfo(head);
  }
};

AddrInfo resolve(const Endpoint& ep, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  AddrInfo ai;
  const int rc = getaddrinfo(ep.host.c_str(), std::to_string(ep.port).c_str(), &hints, &ai.head);
  if (rc != 0) throw NetError("cannot resolve " + ep.str() + ": " + gai_strerror(rc));
  return ai;
}

}  // namespace

Socket Socket::connect_to(const Endpoint& ep) {
  const AddrInfo ai = resolve(ep, false);
  std::string last = "no addresses";
  for (addrinfo* a = ai.head; a; a = a->ai_next) {
    Socket s(::socket(a->ai_family, a->ai_socktype, a->ai_protocol));
    if (!s.valid()) {
      last = errno_text();
      continue;
    }
    if (::connect(s.fd(), a->ai_addr, a->ai_addrlen) == 0) {
      const int one = 1;
      ::setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return s;
    }
    last = errno_text();
  }
  throw NetError("cannot connect to " + ep.str() + ": " + last);
}

Socket Socket::listen_on(const Endpoint& ep, int backlog) {
  const AddrInfo ai = resolve(ep, true);
  std::string last = "no addresses";
  for (addrinfo* a = ai.head; a; a = a->ai_next) {
    Socket s(::socket(a->ai_family, a->ai_socktype, a->ai_protocol));
    if (!s.valid()) {
      last = errno_text();
      continue;
    }
    const int one = 1;
    ::setsockopt(s.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(s.fd(), a->ai_addr, a->ai_addrlen) == 0 && ::listen(s.fd(), backlog) == 0) return s;
    last = errno_text();
  }
  throw NetError("cannot listen on " + ep.str() + ": " + last);
}

std::uint16_t Socket::local_port() const {
  sockaddr_storage addr{};
  socklen_t len = sizeof addr;
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len) != 0) throw NetError("getsockname: " + errno_text());
  if (addr.ss_family == AF_INET6) return ntohs(reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port);
  return ntohs(reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
}

void Socket::write_all(std::span<const std::uint8_t> bytes) {
  std::size_t done = 0;
  while (done < bytes.size()) {
    const ssize_t n = ::send(fd_, bytes.data() + done, bytes.size() - done, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw NetError("send failed: " + errno_text());
    }
    done += static_cast<std::size_t>(n);
  }
}

bool Socket::read_exact(std::span<std::uint8_t> bytes) {
  std::size_t done = 0;
  while (done < bytes.size()) {
    const ssize_t n = ::recv(fd_, bytes.data() + done, bytes.size() - done, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw NetError("recv failed: " + errno_text());
    }
    if (n == 0) {
      if (done == 0) return false;
      throw NetError("peer closed the connection mid-frame");
    }
    done += static_cast<std::size_t>(n);
  }
  return true;
}

void Socket::send_frame(const Frame& frame) { write_all(encode_frame(frame)); }

std::optional<Frame> Socket::recv_frame() {
  std::uint8_t head[4];
  if (!read_exact(head)) return std::nullopt;
  const std::uint32_t len = read_be32(head);
  if (len == 0) throw FrameError("frame length 0");
  if (len > kMaxFrameLength) throw FrameError("frame length " + std::to_string(len) + " exceeds the 1 MiB limit");
  std::vector<std::uint8_t> body(len);
  if (!read_exact(body)) throw NetError("peer closed the connection mid-frame");
  return Frame{static_cast<FrameType>(body[0]), std::vector<std::uint8_t>(body.begin() + 1, body.end())};
}

}  // namespace pirmax::net
