#include "cepspec/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "cepspec/tables.hpp"

namespace cepspec {

namespace {

// IEC 61966-2-1 XYZ -> linear sRGB.
const Eigen::Matrix3d kXyzToSrgb{{3.2404542, -1.5371385, -0.4985314},
                                 {-0.9692660, 1.8760108, 0.0415560},
                                 {0.0556434, -0.2040259, 1.0572252}};

double table_lerp(double nm, auto&& value_at) {
  const double u = (nm - tables::kTableStartNm) / tables::kTableStepNm;
  const int last = static_cast<int>(tables::kTableCount) - 1;
  const int i = std::clamp(static_cast<int>(std::floor(u)), 0, last);
  const double f = u - i;
  if (i == last || f == 0.0) return value_at(i);
  return (1.0 - f) * value_at(i) + f * value_at(i + 1);
}

void require_cmf_coverage(const WavelengthGrid& grid) {
  const double lo = tables::kTableStartNm;
  const double hi = tables::kTableStartNm + tables::kTableStepNm * (tables::kTableCount - 1);
  if (grid.wavelength(0) < lo - 1e-9 || grid.end_nm() > hi + 1e-9) {
    throw DataError("cube grid (" + grid.describe() + ") extends beyond the 380-780 nm color matching table");
  }
}

Eigen::Matrix<double, Eigen::Dynamic, 3> cmf_samples(const WavelengthGrid& grid) {
  require_cmf_coverage(grid);
  Eigen::Matrix<double, Eigen::Dynamic, 3> cmf(grid.count(), 3);
  for (int k = 0; k < grid.count(); ++k) {
    for (int c = 0; c < 3; ++c) {
      cmf(k, c) = table_lerp(grid.wavelength(k), [c](int i) { return tables::kCie1931Xyz[i][c]; });
    }
  }
  return cmf;
}

// Rounding slack before a linear value counts as clipped.
constexpr double kClipSlack = 1e-9;

std::uint8_t encode_srgb(double linear) {
  const double v = linear <= 0.0031308 ? 12.92 * linear : 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

// 5x7 digit glyphs, one byte per row, low 5 bits used (MSB = leftmost column).
constexpr std::array<std::array<std::uint8_t, 7>, 10> kDigits{{
    {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E},
    {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E},
    {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F},
    {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E},
    {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02},
    {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E},
    {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E},
    {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08},
    {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E},
    {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C},
}};

void draw_label(GrayImage& img, int x0, int y0, int max_width, const std::string& text) {
  int x = x0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') continue;
    const auto& glyph = kDigits[ch - '0'];
    for (int r = 0; r < 7; ++r) {
      for (int c = 0; c < 5; ++c) {
        if (!(glyph[r] & (0x10 >> c))) continue;
        const int px = x + c;
        const int py = y0 + r;
        if (px < x0 + max_width && px < img.width && py < img.height) {
          img.pixels[static_cast<std::size_t>(py) * img.width + px] = 255;
        }
      }
    }
    x += 6;
  }
}

}  // namespace

Vector illuminant_samples(Illuminant illuminant, const WavelengthGrid& grid) {
  if (illuminant == Illuminant::kEqualEnergy) return Vector::Ones(grid.count());
  require_cmf_coverage(grid);
  Vector v(grid.count());
  for (int k = 0; k < grid.count(); ++k) {
    v[k] = table_lerp(grid.wavelength(k), [](int i) { return tables::kD65[i]; });
  }
  return v;
}

Matrix cube_to_xyz(const HyperCube& cube, const Vector& illuminant) {
  if (illuminant.size() != cube.channels()) throw DataError("illuminant length differs from cube channels");
  const auto cmf = cmf_samples(cube.grid());
  const Eigen::Matrix<double, Eigen::Dynamic, 3> weighted = cmf.array().colwise() * illuminant.array() * cube.grid().step_nm();
  const double white_y = weighted.col(1).sum();
  if (!(white_y > 0.0)) throw DataError("illuminant has no luminance on the cube grid");
  return cube.data() * (weighted / white_y);
}

RenderResult cube_to_srgb(const HyperCube& cube, Illuminant illuminant) {
  return cube_to_srgb(cube, illuminant_samples(illuminant, cube.grid()));
}

RenderResult cube_to_srgb(const HyperCube& cube, const Vector& illuminant) {
  const Matrix xyz = cube_to_xyz(cube, illuminant);
  const HyperCube white(1, 1, cube.grid(), Matrix::Ones(1, cube.channels()));
  const Eigen::RowVector3d white_rgb = (kXyzToSrgb * cube_to_xyz(white, illuminant).row(0).transpose()).transpose();

  RenderResult r;
  r.image.width = cube.width();
  r.image.height = cube.height();
  r.image.linear = (xyz * kXyzToSrgb.transpose()).array().rowwise() / white_rgb.array();
  r.image.encoded.resize(static_cast<std::size_t>(cube.pixels()) * 3);
  Eigen::Index clipped = 0;
  for (Eigen::Index p = 0; p < cube.pixels(); ++p) {
    for (int c = 0; c < 3; ++c) {
      const double v = r.image.linear(p, c);
      if (v < -kClipSlack || v > 1.0 + kClipSlack) ++clipped;
      r.image.encoded[static_cast<std::size_t>(p) * 3 + c] = encode_srgb(v);
    }
  }
  r.clip_fraction = static_cast<double>(clipped) / static_cast<double>(std::max<Eigen::Index>(1, cube.pixels() * 3));
  return r;
}

GrayImage channel_strip(const HyperCube& cube, const ChannelStripOptions& options) {
  const int panels = cube.channels();
  const int cols = std::max(1, std::min(options.columns, panels));
  const int rows = (panels + cols - 1) / cols;
  const int cell_w = cube.width() + options.gap;
  const int cell_h = cube.height() + kLabelStripHeight + options.gap;
  GrayImage img;
  img.width = cols * cell_w - options.gap;
  img.height = rows * cell_h - options.gap;
  img.pixels.assign(static_cast<std::size_t>(img.width) * img.height, 0);

  const double global_max = std::max(cube.data().maxCoeff(), 0.0);
  for (int c = 0; c < panels; ++c) {
    const double peak = options.per_channel_normalize ? std::max(cube.data().col(c).maxCoeff(), 0.0) : global_max;
    const double scale = peak > 0.0 ? 255.0 / peak : 0.0;
    const int x0 = (c % cols) * cell_w;
    const int y0 = (c / cols) * cell_h;
    for (int y = 0; y < cube.height(); ++y) {
      for (int x = 0; x < cube.width(); ++x) {
        const double v = std::clamp(cube(y, x, c) * scale, 0.0, 255.0);
        img.pixels[static_cast<std::size_t>(y0 + y) * img.width + x0 + x] = static_cast<std::uint8_t>(std::lround(v));
      }
    }
    const std::string label = std::to_string(static_cast<int>(std::lround(cube.grid().wavelength(c))));
    draw_label(img, x0 + 1, y0 + cube.height() + 2, cube.width() - 1, label);
  }
  return img;
}

}  // namespace cepspec
