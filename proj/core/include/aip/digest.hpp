#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aip {

// Lowercase hex SHA-256.
std::string Sha256Hex(std::span<const std::uint8_t> bytes);
std::string Sha256Hex(std::string_view text);
std::string Sha256File(const std::filesystem::path& path);

std::string Base64Encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> Base64Decode(std::string_view text);

}  // namespace aip
