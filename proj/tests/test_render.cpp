#include <doctest.h>

#include "cepspec/eval.hpp"
#include "cepspec/image_io.hpp"
#include "cepspec/io.hpp"
#include "cepspec/render.hpp"
#include "cepspec/tables.hpp"
#include "support.hpp"

using namespace cepspec;

namespace {

const WavelengthGrid kGrid = WavelengthGrid::reconstruction();

HyperCube constant_cube(int w, int h, double v) {
  HyperCube c(w, h, kGrid);
  c.data().setConstant(v);
  return c;
}

}  // namespace

TEST_CASE("perfect reflector renders white, zero renders black") {
  for (Illuminant ill : {Illuminant::kEqualEnergy, Illuminant::kD65}) {
    const RenderResult white = cube_to_srgb(constant_cube(3, 2, 1.0), ill);
    for (std::uint8_t v : white.image.encoded) CHECK(v >= 254);
    CHECK((white.image.linear.array() - 1.0).abs().maxCoeff() < 1e-12);
    CHECK(white.clip_fraction == 0.0);
    const RenderResult black = cube_to_srgb(constant_cube(3, 2, 0.0), ill);
    for (std::uint8_t v : black.image.encoded) CHECK(v == 0);
  }
  // Mid gray is neutral.
  const RenderResult gray = cube_to_srgb(constant_cube(1, 1, 0.18));
  CHECK(std::abs(gray.image.encoded[0] - gray.image.encoded[1]) <= 1);
  CHECK(std::abs(gray.image.encoded[1] - gray.image.encoded[2]) <= 1);
}

TEST_CASE("narrowband green is green-dominant") {
  HyperCube c(1, 1, kGrid);
  c.spectrum(0, 0) = binned_gaussian_mixture({550.0}, {20.0}, {1.0}).values().transpose();
  const RenderResult r = cube_to_srgb(c);
  CHECK(r.image.linear(0, 1) > r.image.linear(0, 0));
  CHECK(r.image.linear(0, 1) > r.image.linear(0, 2));
  CHECK(r.image.encoded[1] > r.image.encoded[0]);
  CHECK(r.image.encoded[1] > r.image.encoded[2]);
}

TEST_CASE("tristimulus values are linear in the cube") {
  test::Gen gen(91);
  const Vector ill = illuminant_samples(Illuminant::kD65, kGrid);
  for (int i = 0; i < test::kCases; ++i) {
    const HyperCube a = gen.cube(4, 3, kGrid), b = gen.cube(4, 3, kGrid);
    const double s = gen.uniform(-2, 2), t = gen.uniform(-2, 2);
    const HyperCube mix(4, 3, kGrid, s * a.data() + t * b.data());
    const Matrix want = s * cube_to_xyz(a, ill) + t * cube_to_xyz(b, ill);
    CHECK((cube_to_xyz(mix, ill) - want).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(cube_to_xyz(constant_cube(1, 1, 1.0), Vector::Ones(5)), DataError);
  CHECK_THROWS_AS(cube_to_srgb(HyperCube(1, 1, WavelengthGrid(300.0, 10.0, 10))), DataError);
}

TEST_CASE("out-of-gamut values are counted") {
  HyperCube c = constant_cube(2, 1, 1.0);
  c.data().row(1).setConstant(2.0);
  const RenderResult r = cube_to_srgb(c);
  CHECK(r.clip_fraction == doctest::Approx(0.5));
}

TEST_CASE("PNG output is deterministic") {
  test::Gen gen(92);
  const RenderResult r = cube_to_srgb(gen.cube(7, 5, kGrid));
  const std::vector<unsigned char> a = encode_png_rgb8(r.image.encoded, 7, 5);
  const std::vector<unsigned char> b = encode_png_rgb8(r.image.encoded, 7, 5);
  CHECK(a == b);
  REQUIRE(a.size() > 8);
  CHECK(a[0] == 0x89);
  CHECK(a[1] == 'P');
  std::vector<std::uint16_t> gray16(35, 40000);
  CHECK(encode_png_gray16(gray16, 7, 5) == encode_png_gray16(gray16, 7, 5));
  CHECK_THROWS_AS(encode_png_rgb8(r.image.encoded, 8, 5), DataError);
}

TEST_CASE("channel strip layout") {
  const int w = 10, h = 6;
  const HyperCube c = constant_cube(w, h, 0.3);
  const GrayImage strip = channel_strip(c);
  CHECK(strip.width == 8 * (w + 2) - 2);
  CHECK(strip.height == 4 * (h + kLabelStripHeight + 2) - 2);
  for (int panel = 0; panel < 31; ++panel) {
    const int x0 = (panel % 8) * (w + 2), y0 = (panel / 8) * (h + kLabelStripHeight + 2);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) CHECK(strip.pixels[static_cast<std::size_t>(y0 + y) * strip.width + x0 + x] == 255);
  }
  // Global normalization keeps relative brightness between channels.
  HyperCube ramp(2, 2, kGrid);
  for (int k = 0; k < 31; ++k) ramp.data().col(k).setConstant(k + 1.0);
  ChannelStripOptions global;
  global.per_channel_normalize = false;
  const GrayImage g = channel_strip(ramp, global);
  CHECK(g.pixels[0] == static_cast<std::uint8_t>(std::lround(255.0 / 31.0)));
  const GrayImage dark = channel_strip(constant_cube(w, h, 0.0));
  CHECK(dark.pixels[0] == 0);
}

TEST_CASE("embedded color matching table matches the shipped CSV") {
  const CsvTable csv = load_csv(CEPSPEC_SOURCE_DIR "/assets/cie1931_2deg_10nm.csv", true);
  REQUIRE(csv.rows.size() == tables::kTableCount);
  for (std::size_t k = 0; k < tables::kTableCount; ++k) {
    CHECK(csv.rows[k][0] == tables::kTableStartNm + 10.0 * static_cast<double>(k));
    for (int c = 0; c < 3; ++c) CHECK(csv.rows[k][c + 1] == doctest::Approx(tables::kCie1931Xyz[k][c]).epsilon(1e-12));
  }
}
