#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cepspec/spectral.hpp"

namespace cepspec {

// One narrowband source. alpha scales the SPD (E'_l = alpha * E_l) and is set by calibration.
struct LedChannel {
  std::string name;
  SpectralCurve spd;
  double alpha = 1.0;
};

// Repeating spatial tile. LED indices are zero-based.
class TileLayout {
 public:
  TileLayout(int rows, int cols, std::vector<int> led_of_tile);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int tiles() const { return rows_ * cols_; }
  int led_at(int tile) const { return led_of_tile_.at(tile); }
  const std::vector<int>& led_of_tile() const { return led_of_tile_; }

  // Tile index of sensor pixel (y, x); the tile's top-left corner sits at (0, 0).
  int tile_index(int y, int x) const { return (y % rows_) * cols_ + (x % cols_); }
  int led_at_pixel(int y, int x) const { return led_of_tile_[tile_index(y, x)]; }
  // Tile position (row, col) holding the given LED, or (-1, -1).
  std::pair<int, int> position_of(int led) const;

 private:
  int rows_;
  int cols_;
  std::vector<int> led_of_tile_;
};

// The joint illumination/exposure code of one video frame.
//
// The explicit per-sub-frame tables are the source of truth for simulation: lit_leds[s] lists
// the LEDs on during sub-frame s and exposure[t][s] is C_tile. Schedules built by
// make_contiguous_schedule satisfy every invariant; hand-edited ones should go through
// validate_schedule.
struct CodingSchedule {
  TileLayout layout;
  std::vector<std::string> led_names;
  double subframe_us = 150.0;
  double readout_us = 6000.0;
  std::vector<int> subframes_per_led;  // indexed by LED
  std::vector<int> led_order;          // firing order
  std::vector<std::vector<int>> lit_leds;
  std::vector<std::vector<unsigned char>> exposure;

  int led_count() const { return static_cast<int>(led_names.size()); }
  int subframe_count() const { return static_cast<int>(lit_leds.size()); }
  int led_index(const std::string& name) const;  // throws DataError if unknown

  // C_{tile,s}
  bool exposed(int tile, int subframe) const { return exposure[tile][subframe] != 0; }
  // I_{tile,s,l}
  bool illuminated(int tile, int subframe, int led) const;
};

// Each LED fires for subframes_per_led[l] consecutive sub-frames, in led_order; every tile
// integrates exactly during its LED's window.
CodingSchedule make_contiguous_schedule(TileLayout layout, std::vector<std::string> led_names,
                                        std::vector<int> subframes_per_led, std::vector<int> led_order,
                                        double subframe_us, double readout_us);

// 12 LEDs on a 3x4 tile, 150 us sub-frames, 158 sub-frames (23,700 us), 6 ms readout.
CodingSchedule canonical_schedule();

// 3x4 layout with LEDs 0..11 placed in wavelength order along a serpentine path.
TileLayout serpentine_layout(int rows, int cols);

struct LedModelParams {
  const char* name;
  double center_nm;
  double fwhm_nm;
  double time_per_frame_us;
};

// Nominal centers and widths of the canonical LEDs with their per-frame exposure times.
std::span<const LedModelParams> canonical_led_params();

// Gaussian SPD models for the 12 canonical LEDs, 1 nm sampling over 360-800 nm.
std::vector<LedChannel> canonical_leds();
// Smooth silicon-like camera sensitivity, 1 nm sampling over 360-800 nm.
SpectralCurve canonical_sensitivity();
SpectralCurve gaussian_curve(const WavelengthGrid& grid, double center_nm, double fwhm_nm,
                             double peak = 1.0);

// Tile index per sensor pixel (height x width).
Eigen::ArrayXXi pixel_tile_map(const TileLayout& layout, int width, int height);

struct PixelCode {
  int tile = 0;
  std::vector<int> active_subframes;
  std::vector<int> active_led;  // LED lit in each active sub-frame, -1 if dark
};
PixelCode pixel_code(const CodingSchedule& schedule, int y, int x);

struct ExposureWindow {
  double start_us = 0.0;
  double end_us = 0.0;
  double midpoint_us() const { return 0.5 * (start_us + end_us); }
};

// Window of one LED from cumulative sub-frame counts in firing order.
ExposureWindow led_exposure_window(const CodingSchedule& schedule, int led);

// t'_l = midpoint_l / (sum of LED windows + readout), indexed by LED.
Vector normalized_timestamps(const CodingSchedule& schedule);

// Human-readable descriptions of every violated invariant; empty when valid.
std::vector<std::string> validate_schedule(const CodingSchedule& schedule);

}  // namespace cepspec
