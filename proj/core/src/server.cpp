#include "aip/server.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace aip {
namespace {

constexpr int kPollMs = 100;

void SendAll(int fd, const std::string& bytes) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t n =
        ::send(fd, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError(std::string("send failed: ") + std::strerror(errno));
    }
    sent += static_cast<std::size_t>(n);
  }
}

void SendMessage(int fd, const Message& m) { SendAll(fd, EncodeFrame(m)); }

bool Readable(int fd, int timeout_ms) {
  pollfd p{fd, POLLIN, 0};
  const int r = ::poll(&p, 1, timeout_ms);
  return r > 0 && (p.revents & (POLLIN | POLLHUP | POLLERR));
}

// Appends whatever is immediately available; false when the peer closed.
bool Drain(int fd, FrameDecoder& decoder) {
  char buf[65536];
  bool any = false;
  for (;;) {
    const ssize_t n = ::recv(fd, buf, sizeof buf, MSG_DONTWAIT);
    if (n > 0) {
      decoder.Feed(std::string_view(buf, static_cast<std::size_t>(n)));
      any = true;
      continue;
    }
    if (n == 0) return false;
    if (errno == EINTR) continue;
    if (errno == EAGAIN || errno == EWOULDBLOCK) return true;
    return any;
  }
}

}  // namespace

Server::Server(Scene scene, ServerConfig config)
    : scene_(std::move(scene)), renderer_(scene_), config_(std::move(config)) {}

Server::~Server() {
  Stop();
  if (session_thread_.joinable()) session_thread_.join();
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void Server::Start() {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw IoError("socket() failed");
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(config_.port));
  if (::inet_pton(AF_INET, config_.host.c_str(), &addr.sin_addr) != 1) {
    throw IoError("invalid bind address '" + config_.host + "'");
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    throw IoError("cannot bind " + config_.host + ":" +
                  std::to_string(config_.port) + ": " + std::strerror(errno));
  }
  if (::listen(listen_fd_, 4) != 0) throw IoError("listen() failed");
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

void Server::Stop() { stop_ = true; }

void Server::Run() {
  if (listen_fd_ < 0) Start();
  while (!stop_) {
    if (!Readable(listen_fd_, kPollMs)) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    if (busy_) {
      try {
        SendMessage(fd, ErrorMessage("busy: a session is already active", true));
      } catch (const IoError&) {
      }
      ::close(fd);
      continue;
    }
    if (session_thread_.joinable()) session_thread_.join();
    busy_ = true;
    session_thread_ = std::thread([this, fd] {
      Serve(fd);
      // Release the slot before the peer can observe the close.
      ++sessions_served_;
      busy_ = false;
      ::close(fd);
    });
  }
  if (session_thread_.joinable()) session_thread_.join();
}

void Server::Serve(int fd) {
  Session session(scene_, renderer_, config_.session);
  FrameDecoder decoder;
  bool frame_due = false;
  try {
    while (!stop_) {
      if (!Readable(fd, kPollMs)) continue;
      const bool open = Drain(fd, decoder);
      bool done = false;
      while (!done) {
        std::optional<Message> message = decoder.Next();
        if (!message) break;
        try {
          Session::Outcome out = session.Handle(*message);
          for (const Message& reply : out.replies) SendMessage(fd, reply);
          frame_due = frame_due || out.needs_frame;
          done = out.close;
        } catch (const ProtocolError&) {
          throw;
        } catch (const Error& e) {
          SendMessage(fd, ErrorMessage(e.what(), false));
        }
      }
      if (done || !open) return;
      if (frame_due) {
        if (decoder.has_pending() || Readable(fd, 0)) {
          ++frames_dropped_;
          continue;
        }
        try {
          SendMessage(fd, session.RenderFrame());
        } catch (const IoError&) {
          throw;
        } catch (const Error& e) {
          SendMessage(fd, ErrorMessage(e.what(), false));
        }
        frame_due = false;
      }
    }
  } catch (const ProtocolError& e) {
    try {
      SendMessage(fd, ErrorMessage(e.what(), true));
    } catch (const IoError&) {
    }
  } catch (const IoError&) {
    // Peer vanished mid-write.
  }
}

ProtocolClient::~ProtocolClient() { Close(); }

void ProtocolClient::Connect(const std::string& host, int port) {
  Close();
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* result = nullptr;
  if (::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints,
                    &result) != 0 || !result) {
    throw IoError("cannot resolve " + host);
  }
  fd_ = ::socket(result->ai_family, result->ai_socktype, result->ai_protocol);
  const int rc = fd_ < 0 ? -1 : ::connect(fd_, result->ai_addr, result->ai_addrlen);
  ::freeaddrinfo(result);
  if (rc != 0) {
    Close();
    throw IoError("cannot connect to " + host + ":" + std::to_string(port));
  }
  const int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  decoder_ = FrameDecoder();
}

void ProtocolClient::Send(const Message& message) {
  if (fd_ < 0) throw IoError("not connected");
  SendMessage(fd_, message);
}

std::optional<Message> ProtocolClient::Receive(std::chrono::milliseconds timeout) {
  if (fd_ < 0) throw IoError("not connected");
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    if (auto m = decoder_.Next()) return m;
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) return std::nullopt;
    if (!Readable(fd_, static_cast<int>(left.count()))) continue;
    if (!Drain(fd_, decoder_)) {
      if (auto m = decoder_.Next()) return m;
      throw IoError("connection closed by peer");
    }
  }
}

Message ProtocolClient::ReceiveType(const std::string& type,
                                    std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    std::optional<Message> m = Receive(std::max(left, std::chrono::milliseconds(0)));
    if (!m) throw IoError("timed out waiting for '" + type + "'");
    if (m->type() == type) return *m;
    if (m->type() == "error" && m->Get("fatal") == "1") {
      throw ProtocolError(m->Get("message").value_or("fatal error"));
    }
  }
}

void ProtocolClient::Close() {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
}

}  // namespace aip
