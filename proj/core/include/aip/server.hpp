#pragma once

#include <atomic>
#include <chrono>
#include <optional>
#include <string>
#include <thread>

#include "aip/protocol.hpp"
#include "aip/render.hpp"
#include "aip/scene.hpp"
#include "aip/session.hpp"

namespace aip {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = kDefaultPort;  // 0 picks an ephemeral port
  SessionConfig session;
};

// TCP front end for Session. One session at a time; a second connection
// receives a fatal "busy" error and is closed. Within a session, messages
// are handled in arrival order and a frame is rendered only once no further
// input is waiting, so stale frames are dropped rather than queued.
class Server {
 public:
  Server(Scene scene, ServerConfig config);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and listens. Throws IoError.
  void Start();
  int port() const { return port_; }
  // Accept loop; returns after Stop().
  void Run();
  void Stop();

  std::size_t sessions_served() const { return sessions_served_; }
  std::size_t frames_dropped() const { return frames_dropped_; }

 private:
  void Serve(int fd);

  Scene scene_;
  Renderer renderer_;
  ServerConfig config_;
  int listen_fd_ = -1;
  int port_ = 0;
  std::atomic<bool> stop_{false};
  std::atomic<bool> busy_{false};
  std::atomic<std::size_t> sessions_served_{0};
  std::atomic<std::size_t> frames_dropped_{0};
  std::thread session_thread_;
};

// Blocking client used by tests and scripts.
class ProtocolClient {
 public:
  ProtocolClient() = default;
  ~ProtocolClient();
  ProtocolClient(const ProtocolClient&) = delete;
  ProtocolClient& operator=(const ProtocolClient&) = delete;

  void Connect(const std::string& host, int port);
  void Send(const Message& message);
  // Next message, or nullopt on timeout. Throws IoError when the peer closes.
  std::optional<Message> Receive(std::chrono::milliseconds timeout);
  // Receives until a message of `type` arrives; earlier messages are dropped.
  Message ReceiveType(const std::string& type, std::chrono::milliseconds timeout);
  void Close();

 private:
  int fd_ = -1;
  FrameDecoder decoder_;
};

}  // namespace aip
