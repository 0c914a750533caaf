#include "pirmax/net/server.hpp"

#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>

namespace pirmax::net {

DatabaseServer::DatabaseServer(const PirScheme& scheme, std::uint32_t n, const MessageBlock& messages)
    : hash_(content_hash(scheme.code)) {
  if (n >= scheme.servers()) throw std::out_of_range("database index out of range: " + std::to_string(n));
  if (messages.size() != scheme.code.message_bits()) {
    throw std::invalid_argument("message block has " + std::to_string(messages.size()) + " bits, expected " +
                                std::to_string(scheme.code.message_bits()));
  }
  for (const auto& bits : answer_table(scheme, n, messages)) answers_.push_back(bits.to_bytes());
}

DatabaseServer::~DatabaseServer() { stop(); }

void DatabaseServer::start(const Endpoint& listen) {
  if (running_.exchange(true)) return;
  listener_ = Socket::listen_on(listen);
  bound_ = {listen.host, listener_.local_port()};
  acceptor_ = std::thread([this] { accept_loop(); });
}

void DatabaseServer::stop() {
  if (!running_.exchange(false)) return;
  listener_.shutdown();
  if (acceptor_.joinable()) acceptor_.join();
  listener_.close();
  std::list<std::thread> workers;
  {
    std::lock_guard lock(mu_);
    for (int fd : open_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (auto& t : workers) t.join();
}

void DatabaseServer::wait() {
  while (running_.load()) std::this_thread::sleep_for(std::chrono::milliseconds(200));
}

void DatabaseServer::accept_loop() {
  while (running_.load()) {
    const int fd = ::accept(listener_.fd(), nullptr, nullptr);
    if (fd < 0) {
      if (!running_.load()) break;
      if (errno == EINTR || errno == ECONNABORTED) continue;
      break;
    }
    std::lock_guard lock(mu_);
    if (!running_.load()) {
      ::close(fd);
      break;
    }
    ++connections_;
    open_fds_.push_back(fd);
    workers_.emplace_back([this, fd] { serve(fd); });
  }
}

void DatabaseServer::serve(int fd) {
  Socket sock(fd);
  bool greeted = false;
  try {
    for (;;) {
      std::optional<Frame> f;
      try {
        f = sock.recv_frame();
      } catch (const FrameError&) {
        sock.send_frame(error_frame(ErrorCode::kMalformed));
        break;
      }
      if (!f) break;
      if (f->type == FrameType::kHello && f->payload.size() == hash_.size()) {
        if (!std::equal(hash_.begin(), hash_.end(), f->payload.begin())) {
          sock.send_frame({FrameType::kHashMismatch, {}});
          break;
        }
        greeted = true;
        sock.send_frame({FrameType::kHelloAck, {}});
      } else if (f->type == FrameType::kQuery && f->payload.size() == 4 && greeted) {
        const std::uint32_t q = read_be32(f->payload.data());
        if (q >= answers_.size()) {
          sock.send_frame(error_frame(ErrorCode::kQueryOutOfRange));
          continue;
        }
        sock.send_frame({FrameType::kAnswer, answers_[q]});
        ++answered_;
      } else {
        sock.send_frame(error_frame(ErrorCode::kMalformed));
        break;
      }
    }
  } catch (const NetError&) {
    // Peer went away; nothing to report.
  }
  std::lock_guard lock(mu_);
  open_fds_.erase(std::remove(open_fds_.begin(), open_fds_.end(), fd), open_fds_.end());
  sock.close();
}

std::unique_ptr<DatabaseServer> serve_database(const PirScheme& scheme, std::uint32_t n, const MessageBlock& messages,
                                               const Endpoint& listen) {
  auto server = std::make_unique<DatabaseServer>(scheme, n, messages);
  server->start(listen);
  return server;
}

}  // namespace pirmax::net
