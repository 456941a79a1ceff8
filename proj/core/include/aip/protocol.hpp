#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aip/error.hpp"

namespace aip {

inline constexpr int kProtocolVersion = 1;
inline constexpr std::size_t kMaxMessageBytes = 64u << 20;
inline constexpr int kDefaultPort = 7878;
inline constexpr const char* kPortEnvVar = "AIP_PORT";

class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A message is an ordered list of key=value fields whose first key is
// `type`. Keys are [a-z0-9_]+; values are single-line UTF-8.
//
// Client to server:
//   hello             version=1
//   input             seq=<n> move=<x>,<y>,<z> yaw=<deg> pitch=<deg>
//                     (move is camera-relative: x right, z forward; y is
//                     ignored because motion is planar)
//   set               key=overlay|lighting|render_scale|mip_bias|
//                         shadow_samples|reflection_depth|aa_samples|
//                         lod_index|shading  value=<v>
//   waypoint
//   export_trajectory
//   capture
// Server to client:
//   ack               for=<request type> plus request-specific fields
//   frame             seq, input_seq, overlay, lighting, pose, rejected,
//                     width, height, png=<base64 RGB PNG>
//   trajectory        poses, sha256, path (server-side copy),
//                     data=<base64 file bytes>
//   error             message=<text> fatal=0|1
class Message {
 public:
  Message() = default;
  explicit Message(std::string type) : type_(std::move(type)) {}

  const std::string& type() const { return type_; }
  const std::vector<std::pair<std::string, std::string>>& fields() const {
    return fields_;
  }

  Message& Set(const std::string& key, std::string value);
  Message& Set(const std::string& key, long long value);
  bool Has(std::string_view key) const;
  std::optional<std::string> Get(std::string_view key) const;
  // Throws ProtocolError when the field is absent.
  const std::string& Require(std::string_view key) const;

  bool operator==(const Message&) const = default;

 private:
  std::string type_;
  std::vector<std::pair<std::string, std::string>> fields_;
};

// Body: `type=<t>\n` followed by one `key=value\n` line per field.
std::string EncodeBody(const Message& message);
Message DecodeBody(std::string_view body);

// Wire framing: `<decimal byte length>\n<body>`.
std::string EncodeFrame(const Message& message);

// Incremental decoder for a byte stream of framed messages.
class FrameDecoder {
 public:
  void Feed(std::string_view bytes);
  // Next complete message, if any. Throws ProtocolError on malformed input.
  std::optional<Message> Next();
  bool has_pending() const { return !buffer_.empty(); }

 private:
  std::string buffer_;
};

Message ErrorMessage(const std::string& text, bool fatal);

// Port from AIP_PORT when set and valid, else kDefaultPort.
int DefaultPort();

}  // namespace aip
