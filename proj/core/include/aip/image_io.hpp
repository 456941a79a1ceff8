#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "aip/image.hpp"

namespace aip {

// Lossless PNG encode/decode (libpng). Encoding is deterministic: fixed
// compression settings and no time or text chunks, so identical buffers give
// identical bytes.

std::vector<std::uint8_t> EncodePng(const ImageRgb8& image);
std::vector<std::uint8_t> EncodePng(const ImageGray8& image);
std::vector<std::uint8_t> EncodePng(const ImageGray16& image);

void WritePng(const std::filesystem::path& path, const ImageRgb8& image);
void WritePng(const std::filesystem::path& path, const ImageGray8& image);
void WritePng(const std::filesystem::path& path, const ImageGray16& image);

// Readers require the exact stored format (color type and bit depth) and throw
// aip::IoError otherwise. Gray+alpha or palette files are rejected rather than
// silently converted.
ImageRgb8 ReadPngRgb8(const std::filesystem::path& path);
ImageGray8 ReadPngGray8(const std::filesystem::path& path);
ImageGray16 ReadPngGray16(const std::filesystem::path& path);

ImageRgb8 DecodePngRgb8(const std::vector<std::uint8_t>& bytes);
ImageGray16 DecodePngGray16(const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    const std::vector<std::uint8_t>& bytes);
std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace aip
