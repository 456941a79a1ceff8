#include "aip/image_io.hpp"

#include <png.h>

#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "aip/error.hpp"

namespace aip {
namespace {

constexpr int kCompressionLevel = 6;

void OnPngError(png_structp png, png_const_charp message) {
  auto* error = static_cast<std::string*>(png_get_error_ptr(png));
  if (error) *error = message;
  std::longjmp(png_jmpbuf(png), 1);
}

void OnPngWarning(png_structp, png_const_charp) {}

void AppendToVector(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void NoFlush(png_structp) {}

struct MemoryReader {
  const std::vector<std::uint8_t>* bytes;
  std::size_t offset = 0;
};

void ReadFromMemory(png_structp png, png_bytep data, png_size_t length) {
  auto* reader = static_cast<MemoryReader*>(png_get_io_ptr(png));
  if (reader->offset + length > reader->bytes->size()) {
    png_error(png, "unexpected end of data");
  }
  std::memcpy(data, reader->bytes->data() + reader->offset, length);
  reader->offset += length;
}

// Rows are passed as big-endian samples for 16-bit images, as the format
// requires.
std::vector<std::uint8_t> Encode(int width, int height, int color_type,
                                 int bit_depth,
                                 const std::vector<png_bytep>& rows) {
  std::vector<std::uint8_t> out;
  std::string error;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error,
                                            OnPngError, OnPngWarning);
  if (!png) throw IoError("png: cannot create write struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("png: cannot create info struct");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("png encode: " + error);
  }
  png_set_write_fn(png, &out, AppendToVector, NoFlush);
  png_set_compression_level(png, kCompressionLevel);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

template <typename ImageT>
std::vector<std::uint8_t> Encode8(const ImageT& image, int color_type) {
  if (image.width <= 0 || image.height <= 0) {
    throw IoError("png encode: empty image");
  }
  std::vector<png_bytep> rows(image.height);
  for (int y = 0; y < image.height; ++y) {
    rows[y] = const_cast<png_bytep>(image.row(y).data());
  }
  return Encode(image.width, image.height, color_type, 8, rows);
}

struct Decoded {
  int width = 0;
  int height = 0;
  int color_type = 0;
  int bit_depth = 0;
  std::vector<std::uint8_t> pixels;  // raw rows, big-endian for 16 bit
};

Decoded Decode(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw IoError("png decode: not a PNG file");
  }
  Decoded out;
  std::string error;
  MemoryReader reader{&bytes, 0};
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error,
                                           OnPngError, OnPngWarning);
  if (!png) throw IoError("png: cannot create read struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("png: cannot create info struct");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("png decode: " + error);
  }
  png_set_read_fn(png, &reader, ReadFromMemory);
  png_read_info(png, info);
  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.color_type = png_get_color_type(png, info);
  out.bit_depth = png_get_bit_depth(png, info);
  if (png_get_interlace_type(png, info) != PNG_INTERLACE_NONE) {
    png_set_interlace_handling(png);
  }
  png_read_update_info(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  out.pixels.resize(stride * out.height);
  std::vector<png_bytep> rows(out.height);
  for (int y = 0; y < out.height; ++y) rows[y] = out.pixels.data() + y * stride;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

void Require(const Decoded& d, int color_type, int bit_depth,
             const char* what) {
  if (d.color_type != color_type || d.bit_depth != bit_depth) {
    std::ostringstream msg;
    msg << "png decode: expected " << what << ", got color type "
        << d.color_type << " bit depth " << d.bit_depth;
    throw IoError(msg.str());
  }
}

template <typename ImageT>
ImageT From8(Decoded&& d) {
  ImageT image;
  image.width = d.width;
  image.height = d.height;
  image.data = std::move(d.pixels);
  return image;
}

}  // namespace

std::vector<std::uint8_t> EncodePng(const ImageRgb8& image) {
  return Encode8(image, PNG_COLOR_TYPE_RGB);
}

std::vector<std::uint8_t> EncodePng(const ImageGray8& image) {
  return Encode8(image, PNG_COLOR_TYPE_GRAY);
}

std::vector<std::uint8_t> EncodePng(const ImageGray16& image) {
  if (image.width <= 0 || image.height <= 0) {
    throw IoError("png encode: empty image");
  }
  std::vector<std::uint8_t> big_endian(image.data.size() * 2);
  for (std::size_t i = 0; i < image.data.size(); ++i) {
    big_endian[2 * i] = static_cast<std::uint8_t>(image.data[i] >> 8);
    big_endian[2 * i + 1] = static_cast<std::uint8_t>(image.data[i] & 0xff);
  }
  std::vector<png_bytep> rows(image.height);
  for (int y = 0; y < image.height; ++y) {
    rows[y] = big_endian.data() + static_cast<std::size_t>(y) * image.width * 2;
  }
  return Encode(image.width, image.height, PNG_COLOR_TYPE_GRAY, 16, rows);
}

void WritePng(const std::filesystem::path& path, const ImageRgb8& image) {
  WriteFileBytes(path, EncodePng(image));
}
void WritePng(const std::filesystem::path& path, const ImageGray8& image) {
  WriteFileBytes(path, EncodePng(image));
}
void WritePng(const std::filesystem::path& path, const ImageGray16& image) {
  WriteFileBytes(path, EncodePng(image));
}

ImageRgb8 DecodePngRgb8(const std::vector<std::uint8_t>& bytes) {
  Decoded d = Decode(bytes);
  Require(d, PNG_COLOR_TYPE_RGB, 8, "8-bit RGB");
  return From8<ImageRgb8>(std::move(d));
}

ImageGray16 DecodePngGray16(const std::vector<std::uint8_t>& bytes) {
  Decoded d = Decode(bytes);
  Require(d, PNG_COLOR_TYPE_GRAY, 16, "16-bit grayscale");
  ImageGray16 image(d.width, d.height);
  for (std::size_t i = 0; i < image.data.size(); ++i) {
    image.data[i] = static_cast<std::uint16_t>((d.pixels[2 * i] << 8) |
                                               d.pixels[2 * i + 1]);
  }
  return image;
}

ImageRgb8 ReadPngRgb8(const std::filesystem::path& path) {
  try {
    return DecodePngRgb8(ReadFileBytes(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

ImageGray8 ReadPngGray8(const std::filesystem::path& path) {
  try {
    Decoded d = Decode(ReadFileBytes(path));
    Require(d, PNG_COLOR_TYPE_GRAY, 8, "8-bit grayscale");
    return From8<ImageGray8>(std::move(d));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

ImageGray16 ReadPngGray16(const std::filesystem::path& path) {
  try {
    return DecodePngGray16(ReadFileBytes(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFileBytes(const std::filesystem::path& path,
                    const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace aip
