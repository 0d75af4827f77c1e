#include "cepspec/image_io.hpp"

#include <png.h>

#include <stdexcept>

#include "cepspec/error.hpp"

namespace cepspec {

namespace {

void append_bytes(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<unsigned char>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void no_flush(png_structp) {}

std::vector<unsigned char> encode(const unsigned char* data, int width, int height, int color_type, int bit_depth,
                                  int bytes_per_pixel) {
  if (width <= 0 || height <= 0) throw DataError("PNG dimensions must be positive");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  std::vector<unsigned char> out;
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, info ? &info : nullptr);
    throw std::runtime_error("PNG encoding failed");
  }
  png_set_write_fn(png, &out, append_bytes, no_flush);
  png_set_IHDR(png, info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (bit_depth == 16) png_set_swap(png);  // rows are host-order uint16
  const std::size_t stride = static_cast<std::size_t>(width) * bytes_per_pixel;
  for (int y = 0; y < height; ++y) {
    png_write_row(png, const_cast<png_bytep>(data + stride * y));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

}  // namespace

std::vector<unsigned char> encode_png_gray8(const std::vector<std::uint8_t>& pixels, int width, int height) {
  if (pixels.size() != static_cast<std::size_t>(width) * height) throw DataError("gray8 buffer size mismatch");
  return encode(pixels.data(), width, height, PNG_COLOR_TYPE_GRAY, 8, 1);
}

std::vector<unsigned char> encode_png_rgb8(const std::vector<std::uint8_t>& pixels, int width, int height) {
  if (pixels.size() != static_cast<std::size_t>(width) * height * 3) throw DataError("rgb8 buffer size mismatch");
  return encode(pixels.data(), width, height, PNG_COLOR_TYPE_RGB, 8, 3);
}

std::vector<unsigned char> encode_png_gray16(const std::vector<std::uint16_t>& pixels, int width, int height) {
  if (pixels.size() != static_cast<std::size_t>(width) * height) throw DataError("gray16 buffer size mismatch");
  return encode(reinterpret_cast<const unsigned char*>(pixels.data()), width, height, PNG_COLOR_TYPE_GRAY, 16, 2);
}

}  // namespace cepspec
