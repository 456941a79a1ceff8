#include "aip/protocol.hpp"

#include <algorithm>
#include <cstdlib>

#include "aip/text.hpp"

namespace aip {
namespace {

bool ValidKey(std::string_view key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

bool ValidValue(std::string_view value) {
  return value.find('\n') == std::string_view::npos &&
         value.find('\r') == std::string_view::npos;
}

}  // namespace

Message& Message::Set(const std::string& key, std::string value) {
  if (!ValidKey(key) || key == "type") {
    throw ProtocolError("invalid field key '" + key + "'");
  }
  if (!ValidValue(value)) {
    throw ProtocolError("field '" + key + "' contains a line break");
  }
  for (auto& [k, v] : fields_) {
    if (k == key) {
      v = std::move(value);
      return *this;
    }
  }
  fields_.emplace_back(key, std::move(value));
  return *this;
}

Message& Message::Set(const std::string& key, long long value) {
  return Set(key, std::to_string(value));
}

bool Message::Has(std::string_view key) const { return Get(key).has_value(); }

std::optional<std::string> Message::Get(std::string_view key) const {
  for (const auto& [k, v] : fields_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

const std::string& Message::Require(std::string_view key) const {
  for (const auto& [k, v] : fields_) {
    if (k == key) return v;
  }
  throw ProtocolError("'" + type_ + "' message lacks field '" +
                      std::string(key) + "'");
}

std::string EncodeBody(const Message& message) {
  if (!ValidKey(message.type())) {
    throw ProtocolError("invalid message type '" + message.type() + "'");
  }
  std::string out = "type=" + message.type() + "\n";
  for (const auto& [k, v] : message.fields()) out += k + "=" + v + "\n";
  return out;
}

Message DecodeBody(std::string_view body) {
  Message message;
  bool first = true;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const std::size_t nl = body.find('\n', pos);
    if (nl == std::string_view::npos) {
      throw ProtocolError("message body does not end with a newline");
    }
    const std::string_view line = body.substr(pos, nl - pos);
    pos = nl + 1;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ProtocolError("message line without '='");
    }
    const std::string key(line.substr(0, eq));
    std::string value(line.substr(eq + 1));
    if (first) {
      if (key != "type" || !ValidKey(value)) {
        throw ProtocolError("message must start with a valid type field");
      }
      message = Message(std::move(value));
      first = false;
      continue;
    }
    if (!ValidKey(key) || key == "type") {
      throw ProtocolError("invalid field key '" + key + "'");
    }
    if (message.Has(key)) throw ProtocolError("duplicate field '" + key + "'");
    message.Set(key, std::move(value));
  }
  if (first) throw ProtocolError("empty message");
  return message;
}

std::string EncodeFrame(const Message& message) {
  const std::string body = EncodeBody(message);
  return std::to_string(body.size()) + "\n" + body;
}

void FrameDecoder::Feed(std::string_view bytes) { buffer_.append(bytes); }

std::optional<Message> FrameDecoder::Next() {
  const std::size_t nl = buffer_.find('\n');
  if (nl == std::string::npos) {
    if (buffer_.size() > 20) throw ProtocolError("frame length line too long");
    if (!std::all_of(buffer_.begin(), buffer_.end(),
                     [](char c) { return c >= '0' && c <= '9'; })) {
      throw ProtocolError("frame length is not a decimal number");
    }
    return std::nullopt;
  }
  const std::string_view digits(buffer_.data(), nl);
  const auto length = text::ParseUInt64(digits);
  if (digits.empty() || !length ||
      !std::all_of(digits.begin(), digits.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw ProtocolError("frame length is not a decimal number");
  }
  if (*length > kMaxMessageBytes) throw ProtocolError("frame too large");
  if (buffer_.size() - nl - 1 < *length) return std::nullopt;
  Message message = DecodeBody(std::string_view(buffer_).substr(nl + 1, *length));
  buffer_.erase(0, nl + 1 + *length);
  return message;
}

Message ErrorMessage(const std::string& text, bool fatal) {
  std::string flat = text;
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  std::replace(flat.begin(), flat.end(), '\r', ' ');
  Message m("error");
  m.Set("message", flat);
  m.Set("fatal", fatal ? 1 : 0);
  return m;
}

int DefaultPort() {
  if (const char* env = std::getenv(kPortEnvVar)) {
    const auto v = text::ParseInt(env);
    if (v && *v > 0 && *v < 65536) return static_cast<int>(*v);
  }
  return kDefaultPort;
}

}  // namespace aip
