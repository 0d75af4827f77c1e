#pragma once

#include <span>
#include <vector>

#include "cepspec/coding.hpp"
#include "cepspec/forward.hpp"
#include "cepspec/spectral.hpp"

namespace cepspec {

// Floor below which an illuminant sample is treated as zero.
inline constexpr double kIlluminantFloor = 1e-12;

// C_p = measured / B, clamped to [0, 1]. Throws listing the wavelengths where B is at or
// below kIlluminantFloor while measured is nonzero.
SpectralCurve reflectance_from_radiance(const SpectralCurve& measured, const SpectralCurve& illuminant);

// L x N response: entry (l, p) = alpha_l * sum_k E_{l,k} C_{p,k} S_k. All curves must already
// share one grid.
Matrix simulate_response(std::span<const SpectralCurve> led_spds, std::span<const SpectralCurve> patches,
                         const SpectralCurve& sensitivity, const Vector& alpha);

struct CalibrationResult {
  Vector alpha;                    // non-negative
  double residual = 0.0;           // sum of squared errors at alpha
  Vector per_led_residual;         // row-wise sum of squared errors
  std::vector<bool> indeterminate; // LEDs whose simulated row is identically zero
};

// Per-LED closed-form projection: alpha_l = max(0, <m_l, meas_l> / <m_l, m_l>) where m is the
// response at alpha = 1.
CalibrationResult fit_alpha(const Matrix& measured, std::span<const SpectralCurve> led_spds,
                            std::span<const SpectralCurve> patches, const SpectralCurve& sensitivity);

// Same fit from a precomputed unit-alpha response matrix.
CalibrationResult fit_alpha_from_unit_response(const Matrix& measured, const Matrix& unit_response);

struct NnlsOptions {
  double tolerance = 1e-10;
  int max_iterations = 10000;
};

struct NnlsResult {
  Vector x;
  int iterations = 0;
  bool converged = false;
};

// argmin_{x >= 0} ||A x - b||^2 by projected gradient with step 1 / ||A^T A||_2. Stops when the
// projected-gradient infinity norm falls below tolerance * max(1, ||A^T b||_inf).
NnlsResult solve_nnls(const Matrix& a, const Vector& b, const NnlsOptions& options = {});

struct PixelRect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

// L x regions matrix of mean frame values per LED's pixels inside each rect, optionally divided by
// the LED's active sub-frame count. Throws if a rect leaves the frame or misses an LED.
Matrix average_patch_response(const CodedFrame& frame, const CodingSchedule& schedule,
                              std::span<const PixelRect> regions, bool normalize_by_subframes = true);

// The bundled ColorChecker reflectances on the 41-channel calibration grid.
std::vector<SpectralCurve> colorchecker_patches();

}  // namespace cepspec
