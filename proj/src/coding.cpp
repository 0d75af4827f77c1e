#include "cepspec/coding.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cepspec {

TileLayout::TileLayout(int rows, int cols, std::vector<int> led_of_tile)
    : rows_(rows), cols_(cols), led_of_tile_(std::move(led_of_tile)) {
  if (rows <= 0 || cols <= 0) throw DataError("tile layout needs positive rows and cols");
  if (static_cast<int>(led_of_tile_.size()) != rows * cols) {
    throw DataError("tile layout " + std::to_string(rows) + "x" + std::to_string(cols) + " needs " +
                    std::to_string(rows * cols) + " LED entries, got " +
                    std::to_string(led_of_tile_.size()));
  }
}

std::pair<int, int> TileLayout::position_of(int led) const {
  for (int t = 0; t < tiles(); ++t) {
    if (led_of_tile_[t] == led) return {t / cols_, t % cols_};
  }
  return {-1, -1};
}

int CodingSchedule::led_index(const std::string& name) const {
  const auto it = std::find(led_names.begin(), led_names.end(), name);
  if (it == led_names.end()) throw DataError("unknown LED '" + name + "'");
  return static_cast<int>(it - led_names.begin());
}

bool CodingSchedule::illuminated(int tile, int subframe, int led) const {
  if (!exposed(tile, subframe)) return false;
  const auto& on = lit_leds[subframe];
  return std::find(on.begin(), on.end(), led) != on.end();
}

CodingSchedule make_contiguous_schedule(TileLayout layout, std::vector<std::string> led_names,
                                        std::vector<int> subframes_per_led, std::vector<int> led_order,
                                        double subframe_us, double readout_us) {
  const int leds = static_cast<int>(led_names.size());
  if (static_cast<int>(subframes_per_led.size()) != leds || static_cast<int>(led_order.size()) != leds) {
    throw DataError("schedule needs one sub-frame count and one firing slot per LED");
  }
  std::vector<int> sorted = led_order;
  std::sort(sorted.begin(), sorted.end());
  for (int l = 0; l < leds; ++l) {
    if (sorted[l] != l) throw DataError("led_order must be a permutation of the LEDs");
    if (subframes_per_led[l] <= 0) {
      throw DataError("LED '" + led_names[l] + "' needs a positive sub-frame count");
    }
  }
  for (int led : layout.led_of_tile()) {
    if (led < 0 || led >= leds) throw DataError("tile layout references LED " + std::to_string(led));
  }
  if (!(subframe_us > 0.0) || readout_us < 0.0) {
    throw DataError("sub-frame duration must be positive and readout non-negative");
  }

  CodingSchedule s{std::move(layout), std::move(led_names), subframe_us, readout_us,
                   std::move(subframes_per_led), std::move(led_order), {}, {}};
  for (int led : s.led_order) {
    for (int k = 0; k < s.subframes_per_led[led]; ++k) s.lit_leds.push_back({led});
  }
  const int total = s.subframe_count();
  s.exposure.assign(s.layout.tiles(), std::vector<unsigned char>(total, 0));
  for (int t = 0; t < s.layout.tiles(); ++t) {
    for (int sf = 0; sf < total; ++sf) s.exposure[t][sf] = s.lit_leds[sf].front() == s.layout.led_at(t);
  }
  return s;
}

TileLayout serpentine_layout(int rows, int cols) {
  std::vector<int> leds(rows * cols);
  int next = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int col = (r % 2 == 0) ? c : cols - 1 - c;
      leds[r * cols + col] = next++;
    }
  }
  return {rows, cols, std::move(leds)};
}

namespace {

// Time per frame follows the deployed allocation table; centers and widths are nominal models.
constexpr LedModelParams kCanonicalLeds[] = {
    {"UV", 400.0, 20.0, 1350.0},       {"Violet", 425.0, 20.0, 750.0},
    {"Royal Blue", 450.0, 22.0, 750.0}, {"Blue", 475.0, 25.0, 750.0},
    {"Cyan", 505.0, 30.0, 1350.0},     {"Green", 530.0, 30.0, 1650.0},
    {"Lime", 560.0, 30.0, 1200.0},     {"Amber", 590.0, 20.0, 6000.0},
    {"Red Orange", 615.0, 20.0, 1950.0}, {"Red", 630.0, 20.0, 1800.0},
    {"Deep Red", 660.0, 22.0, 1650.0}, {"Far Red", 730.0, 30.0, 4500.0},
};

constexpr double kCanonicalSubframeUs = 150.0;
constexpr double kCanonicalReadoutUs = 6000.0;

const WavelengthGrid kModelGrid{360.0, 1.0, 441};

}  // namespace

std::span<const LedModelParams> canonical_led_params() { return kCanonicalLeds; }

CodingSchedule canonical_schedule() {
  std::vector<std::string> names;
  std::vector<int> counts;
  std::vector<int> order;
  for (const auto& led : kCanonicalLeds) {
    order.push_back(static_cast<int>(names.size()));
    names.emplace_back(led.name);
    counts.push_back(static_cast<int>(std::lround(led.time_per_frame_us / kCanonicalSubframeUs)));
  }
  return make_contiguous_schedule(serpentine_layout(3, 4), std::move(names), std::move(counts),
                                  std::move(order), kCanonicalSubframeUs, kCanonicalReadoutUs);
}

SpectralCurve gaussian_curve(const WavelengthGrid& grid, double center_nm, double fwhm_nm, double peak) {
  const double sigma = fwhm_nm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  Vector v(grid.count());
  for (int k = 0; k < grid.count(); ++k) {
    const double d = (grid.wavelength(k) - center_nm) / sigma;
    v[k] = peak * std::exp(-0.5 * d * d);
  }
  return {grid, std::move(v)};
}

std::vector<LedChannel> canonical_leds() {
  std::vector<LedChannel> leds;
  for (const auto& led : kCanonicalLeds) {
    leds.push_back({led.name, gaussian_curve(kModelGrid, led.center_nm, led.fwhm_nm), 1.0});
  }
  return leds;
}

SpectralCurve canonical_sensitivity() {
  Vector v(kModelGrid.count());
  for (int k = 0; k < kModelGrid.count(); ++k) {
    const double d = (kModelGrid.wavelength(k) - 560.0) / 180.0;
    v[k] = std::exp(-d * d);
  }
  return {kModelGrid, std::move(v)};
}

Eigen::ArrayXXi pixel_tile_map(const TileLayout& layout, int width, int height) {
  if (width <= 0 || height <= 0) throw DataError("sensor dimensions must be positive");
  Eigen::ArrayXXi map(height, width);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) map(y, x) = layout.tile_index(y, x);
  return map;
}

PixelCode pixel_code(const CodingSchedule& schedule, int y, int x) {
  PixelCode code;
  code.tile = schedule.layout.tile_index(y, x);
  for (int s = 0; s < schedule.subframe_count(); ++s) {
    if (!schedule.exposed(code.tile, s)) continue;
    code.active_subframes.push_back(s);
    const auto& on = schedule.lit_leds[s];
    code.active_led.push_back(on.size() == 1 ? on.front() : -1);
  }
  return code;
}

ExposureWindow led_exposure_window(const CodingSchedule& schedule, int led) {
  if (led < 0 || led >= schedule.led_count()) {
    throw DataError("unknown LED index " + std::to_string(led));
  }
  int before = 0;
  for (int l : schedule.led_order) {
    if (l == led) break;
    before += schedule.subframes_per_led[l];
  }
  return {before * schedule.subframe_us, (before + schedule.subframes_per_led[led]) * schedule.subframe_us};
}

Vector normalized_timestamps(const CodingSchedule& schedule) {
  const int leds = schedule.led_count();
  std::vector<ExposureWindow> windows;
  double active = 0.0;
  for (int l = 0; l < leds; ++l) {
    windows.push_back(led_exposure_window(schedule, l));
    active += windows.back().end_us - windows.back().start_us;
  }
  const double frame = active + schedule.readout_us;
  Vector t(leds);
  for (int l = 0; l < leds; ++l) t[l] = windows[l].midpoint_us() / frame;
  return t;
}

std::vector<std::string> validate_schedule(const CodingSchedule& s) {
  std::vector<std::string> out;
  const int leds = s.led_count();
  const int total = s.subframe_count();
  auto led_name = [&](int l) { return (l >= 0 && l < leds) ? s.led_names[l] : std::to_string(l); };

  if (static_cast<int>(s.subframes_per_led.size()) != leds) out.push_back("sub-frame count list length != LED count");
  if (static_cast<int>(s.led_order.size()) != leds) out.push_back("firing order length != LED count");
  if (!(s.subframe_us > 0.0)) out.push_back("sub-frame duration must be positive");
  if (s.readout_us < 0.0) out.push_back("readout time must be non-negative");
  for (int t = 0; t < s.layout.tiles(); ++t) {
    const int l = s.layout.led_at(t);
    if (l < 0 || l >= leds) out.push_back("tile " + std::to_string(t) + " references unknown LED " + std::to_string(l));
  }
  if (!out.empty()) return out;

  std::vector<int> sorted = s.led_order;
  std::sort(sorted.begin(), sorted.end());
  for (int l = 0; l < leds; ++l) {
    if (sorted[l] != l) {
      out.push_back("firing order is not a permutation of the LEDs");
      break;
    }
  }
  const int expected = std::accumulate(s.subframes_per_led.begin(), s.subframes_per_led.end(), 0);
  if (expected != total) {
    out.push_back("sub-frame counts sum to " + std::to_string(expected) + " but the frame has " +
                  std::to_string(total) + " sub-frames");
  }

  std::vector<int> first(leds, -1), last(leds, -1), lit_count(leds, 0);
  std::vector<int> firing;
  for (int sf = 0; sf < total; ++sf) {
    const auto& on = s.lit_leds[sf];
    if (on.size() > 1) out.push_back("simultaneous LEDs in sub-frame " + std::to_string(sf));
    for (int l : on) {
      if (l < 0 || l >= leds) {
        out.push_back("sub-frame " + std::to_string(sf) + " lights unknown LED " + std::to_string(l));
        continue;
      }
      if (first[l] < 0) {
        first[l] = sf;
        firing.push_back(l);
      }
      last[l] = sf;
      ++lit_count[l];
    }
  }
  for (int l = 0; l < leds; ++l) {
    if (lit_count[l] == 0) continue;
    if (last[l] - first[l] + 1 != lit_count[l]) out.push_back("LED '" + led_name(l) + "' sub-frames are not contiguous");
    if (l < static_cast<int>(s.subframes_per_led.size()) && lit_count[l] != s.subframes_per_led[l]) {
      out.push_back("LED '" + led_name(l) + "' is lit for " + std::to_string(lit_count[l]) +
                    " sub-frames, schedule says " + std::to_string(s.subframes_per_led[l]));
    }
  }
  if (firing.size() == s.led_order.size() && firing != s.led_order) {
    out.push_back("LEDs fire in a different order than led_order");
  }

  if (static_cast<int>(s.exposure.size()) != s.layout.tiles()) {
    out.push_back("exposure code has " + std::to_string(s.exposure.size()) + " tiles, layout has " +
                  std::to_string(s.layout.tiles()));
    return out;
  }
  for (int t = 0; t < s.layout.tiles(); ++t) {
    if (static_cast<int>(s.exposure[t].size()) != total) {
      out.push_back("exposure code for tile " + std::to_string(t) + " has wrong length");
      continue;
    }
    const int own = s.layout.led_at(t);
    for (int sf = 0; sf < total; ++sf) {
      if (!s.exposure[t][sf]) continue;
      const auto& on = s.lit_leds[sf];
      if (std::find(on.begin(), on.end(), own) == on.end()) {
        out.push_back("tile " + std::to_string(t) + " integrates in sub-frame " + std::to_string(sf) +
                      " outside the window of LED '" + led_name(own) + "'");
        break;
      }
    }
  }
  return out;
}

}  // namespace cepspec
