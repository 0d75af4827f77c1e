#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace cepspec {

// PNG encoders (no timestamps or text chunks, so identical pixels give identical bytes).
std::vector<unsigned char> encode_png_gray8(const std::vector<std::uint8_t>& pixels, int width, int height);
std::vector<unsigned char> encode_png_rgb8(const std::vector<std::uint8_t>& pixels, int width, int height);
std::vector<unsigned char> encode_png_gray16(const std::vector<std::uint16_t>& pixels, int width, int height);

}  // namespace cepspec
