#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cepspec/spectral.hpp"

namespace cepspec {

struct RgbImage {
  int width = 0;
  int height = 0;
  Matrix linear;                     // P x 3 linear sRGB before clipping
  std::vector<std::uint8_t> encoded; // P * 3 gamma-encoded, interleaved RGB
};

struct RenderResult {
  RgbImage image;
  double clip_fraction = 0.0;  // fraction of linear channel values outside [0, 1]
};

enum class Illuminant { kEqualEnergy, kD65 };

// Illuminant sampled at the cube's channel wavelengths.
Vector illuminant_samples(Illuminant illuminant, const WavelengthGrid& grid);

// Tristimulus values per pixel (P x 3), normalized so a perfect reflector has Y = 1.
Matrix cube_to_xyz(const HyperCube& cube, const Vector& illuminant);

// XYZ -> linear sRGB, scaled per channel so a perfect reflector maps to (1, 1, 1), then clipped
// and gamma encoded.
RenderResult cube_to_srgb(const HyperCube& cube, Illuminant illuminant = Illuminant::kEqualEnergy);
RenderResult cube_to_srgb(const HyperCube& cube, const Vector& illuminant);

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

struct ChannelStripOptions {
  bool per_channel_normalize = true;  // else one global maximum for all panels
  int columns = 8;
  int gap = 2;
};

// Grid of grayscale channel panels, each followed by a strip carrying its wavelength label.
GrayImage channel_strip(const HyperCube& cube, const ChannelStripOptions& options = {});

// Height in pixels of the label strip under each panel.
inline constexpr int kLabelStripHeight = 11;

}  // namespace cepspec
