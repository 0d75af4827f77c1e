#pragma once

#include <Eigen/Sparse>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cepspec/coding.hpp"
#include "cepspec/spectral.hpp"

namespace cepspec {

// Single-channel coded measurement of one video frame.
struct CodedFrame {
  Image values;  // height x width, linear sensor counts
  double noise_sigma_frac = 0.0;
  std::uint64_t seed = 0;
  int frame_index = 0;

  int width() const { return static_cast<int>(values.cols()); }
  int height() const { return static_cast<int>(values.rows()); }
};

// Per-sub-frame spectral weights of each LED on one wavelength grid:
// row l is the bin-averaged alpha_l * S * E_l.
struct SensingModel {
  WavelengthGrid grid;
  Matrix led_weights;  // L x Lambda
};

// Products S * E_l are formed on each LED's native sampling and then bin-averaged onto grid.
SensingModel build_sensing_model(std::span<const LedChannel> leds, const SpectralCurve& sensitivity,
                                 const WavelengthGrid& grid);

// Same, on the 33-channel extended grid: bins on the calibration grid, then the edge bins are
// summed into the aggregate channels.
SensingModel build_extended_sensing_model(std::span<const LedChannel> leds,
                                          const SpectralCurve& sensitivity);

// a_p = sum_s C_{p,s} sum_l I_{p,s,l} w_l for sensor pixel (y, x).
Vector effective_sensing_vector(const CodingSchedule& schedule, const SensingModel& model, int y, int x);

// Effective sensing vector per tile (T x Lambda).
Matrix tile_sensing_vectors(const CodingSchedule& schedule, const SensingModel& model);

// Y_p = a_p . r_p + eta_p with eta_p ~ N(0, (noise_sigma_frac * max_p |a_p . r_p|)^2). Noise is
// drawn from a counter-based stream keyed by (seed, frame_index, p).
CodedFrame simulate_frame(const HyperCube& scene, const CodingSchedule& schedule,
                          const SensingModel& model, double noise_sigma_frac, std::uint64_t seed,
                          int frame_index = 0);

// Motion at sub-image granularity: pixels of LED l observe led_scenes[l].
CodedFrame simulate_frame(std::span<const HyperCube> led_scenes, const CodingSchedule& schedule,
                          const SensingModel& model, double noise_sigma_frac, std::uint64_t seed,
                          int frame_index = 0);

std::vector<CodedFrame> simulate_video(std::span<const HyperCube> scenes, const CodingSchedule& schedule,
                                       const SensingModel& model, double noise_sigma_frac,
                                       std::uint64_t seed);

inline constexpr Eigen::Index kMaxSensingMatrixPixels = 1 << 16;

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Explicit P x (P * Lambda) operator of the frame model; refuses sensors above
// kMaxSensingMatrixPixels pixels.
SparseRowMatrix build_sensing_matrix(const CodingSchedule& schedule, const SensingModel& model,
                                     int width, int height);

// vec(R) in the column order used by build_sensing_matrix (pixel-major, channel fastest).
Vector vectorize(const HyperCube& cube);

}  // namespace cepspec
