#include "e2ecd/core/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "e2ecd/core/error.hpp"

namespace e2ecd {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.string().c_str(), mode));
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  return f;
}

[[noreturn]] void png_fail(png_structp png, png_const_charp message) {
  auto* text = static_cast<std::string*>(png_get_error_ptr(png));
  if (text) *text = message;
  png_longjmp(png, 1);
}

void png_warn(png_structp, png_const_charp) {}

// Decodes into 8-bit gray or RGB rows. Returns channel count.
int decode_png(const std::filesystem::path& path, int& height, int& width,
               std::vector<std::uint8_t>& pixels) {
  auto file = open_file(path, "rb");
  std::uint8_t signature[8];
  if (std::fread(signature, 1, 8, file.get()) != 8 || png_sig_cmp(signature, 0, 8) != 0) {
    throw FormatError("'" + path.string() + "' is not a PNG file", 0);
  }

  std::string message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, png_fail, png_warn);
  if (!png) throw IoError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> rows;
  int channels = 0;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("decoding '" + path.string() + "' failed: " + message);
  }

  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const auto color = png_get_color_type(png, info);
  if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));
  channels = png_get_channels(png, info);
  const auto stride = png_get_rowbytes(png, info);
  pixels.resize(stride * static_cast<std::size_t>(height));
  rows.resize(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) rows[static_cast<std::size_t>(y)] = pixels.data() + stride * y;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return channels;
}

void encode_png(const std::filesystem::path& path, int height, int width, int channels,
                const std::vector<std::uint8_t>& pixels) {
  auto file = open_file(path, "wb");
  std::string message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, png_fail, png_warn);
  if (!png) throw IoError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("encoding '" + path.string() + "' failed: " + message);
  }

  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t stride = static_cast<std::size_t>(width) * static_cast<std::size_t>(channels);
  for (int y = 0; y < height; ++y) {
    rows[static_cast<std::size_t>(y)] = const_cast<png_bytep>(pixels.data() + stride * y);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

RasterImage read_png(const std::filesystem::path& path) {
  int height = 0, width = 0;
  std::vector<std::uint8_t> pixels;
  const int channels = decode_png(path, height, width, pixels);
  std::vector<float> values(pixels.size());
  std::transform(pixels.begin(), pixels.end(), values.begin(),
                 [](std::uint8_t v) { return static_cast<float>(v) / 255.0f; });
  return {height, width, channels, std::move(values)};
}

void write_png(const std::filesystem::path& path, const RasterImage& image) {
  if (image.channels() != 1 && image.channels() != 3) {
    throw InvalidShape("PNG output needs 1 or 3 channels, got " +
                       std::to_string(image.channels()));
  }
  std::vector<std::uint8_t> pixels(image.data().size());
  std::transform(image.data().begin(), image.data().end(), pixels.begin(), [](float v) {
    const float clamped = std::clamp(std::isnan(v) ? 0.0f : v, 0.0f, 1.0f);
    return static_cast<std::uint8_t>(std::lround(clamped * 255.0f));
  });
  encode_png(path, image.height(), image.width(), image.channels(), pixels);
}

BinaryMask read_mask_png(const std::filesystem::path& path) {
  int height = 0, width = 0;
  std::vector<std::uint8_t> pixels;
  const int channels = decode_png(path, height, width, pixels);
  BinaryMask mask(height, width);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const auto i = (static_cast<std::size_t>(y) * width + x) * static_cast<std::size_t>(channels);
      mask.set(y, x, pixels[i] >= 128);
    }
  }
  return mask;
}

void write_mask_png(const std::filesystem::path& path, const BinaryMask& mask) {
  std::vector<std::uint8_t> pixels(mask.data().size());
  std::transform(mask.data().begin(), mask.data().end(), pixels.begin(),
                 [](std::uint8_t v) { return static_cast<std::uint8_t>(v ? 255 : 0); });
  encode_png(path, mask.height(), mask.width(), 1, pixels);
}

}  // namespace e2ecd
