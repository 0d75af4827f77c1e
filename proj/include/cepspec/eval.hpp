#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cepspec/coding.hpp"
#include "cepspec/forward.hpp"
#include "cepspec/metrics.hpp"
#include "cepspec/reconstruct.hpp"
#include "cepspec/spectral.hpp"

namespace cepspec {

// Sum of Gaussians sampled at 1 nm over 380-790 nm, bin-averaged onto grid and scaled so the
// largest binned value is 1.
SpectralCurve binned_gaussian_mixture(const std::vector<double>& centers_nm, const std::vector<double>& fwhms_nm,
                                      const std::vector<double>& amplitudes,
                                      const WavelengthGrid& grid = WavelengthGrid::reconstruction());

struct BenchScene {
  HyperCube cube;
  std::vector<double> row_center_nm;  // nominal Gaussian center per row
};

// Row y carries a Gaussian centered at 400 + 300 * (H - 1 - y) / (H - 1) nm, so the bottom row is
// 400 nm and the top row 700 nm.
BenchScene rainbow_scene(int width = 512, int height = 512, double fwhm_nm = 20.0,
                         const WavelengthGrid& grid = WavelengthGrid::reconstruction());

// Smooth test scene: every pixel carries up to three broad Gaussians (FWHM 60-120 nm) whose
// centers, amplitudes and overall brightness drift slowly across the image. Fully determined by
// seed.
HyperCube mixture_scene(int width, int height, int components, std::uint64_t seed,
                        const WavelengthGrid& grid = WavelengthGrid::reconstruction());

// Band-limited texture (periods of 14 px and more, four orientations) over two smooth basis spectra, shifted by
// offset_x pixels: translating_scene(w, h, d, s)(y, x) equals the unshifted pattern at x - d.
HyperCube translating_scene(int width, int height, double offset_x, std::uint64_t seed,
                            const WavelengthGrid& grid = WavelengthGrid::reconstruction());

enum class SynthKind { kSingle, kDouble };

struct SynthParams {
  std::vector<double> fwhms_nm{10, 20, 30, 40, 50};
  std::vector<double> separations_nm{10, 20, 30, 40, 60, 80};
  double center_step_nm = 10.0;
};

// Single: one Gaussian per (center, FWHM) for centers 400..700 at center_step_nm.
// Double: two equal Gaussians per (midpoint, separation, FWHM) with both peaks in 400..700.
std::vector<SpectralCurve> synth_spectra(SynthKind kind, const SynthParams& params = {});

// Everything the simulate -> demosaic -> reconstruct chain needs.
struct Pipeline {
  CodingSchedule schedule;
  SensingModel sensing;  // on the extended grid
  LinearReconstructor solver;
  PatchSpec patches;
  WeightKernel kernel;
};

Pipeline make_pipeline(const CodingSchedule& schedule, const std::vector<LedChannel>& leds,
                       const SpectralCurve& sensitivity, double lambda_reg = 1e-5, double mu = 1e-2,
                       double kernel_floor = 0.01);

// Static-scene reconstruction of a 31-channel reflectance scene at the given noise level.
HyperCube run_pipeline(const HyperCube& scene, const Pipeline& pipeline, double noise_sigma_frac,
                       std::uint64_t seed, ReconStats* stats = nullptr);

struct SweepRow {
  double sigma_pct = 0.0;
  std::uint64_t seed = 0;
  MetricReport metrics;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;  // soft monotonicity violations
};

inline const std::vector<double> kDefaultSweepSigmasPct{0.0, 5.0, 10.0, 15.0, 20.0};

SweepResult noise_sweep(const HyperCube& scene, const Pipeline& pipeline,
                        const std::vector<double>& sigmas_pct, const std::vector<std::uint64_t>& seeds);

// Header `sigma_pct,seed,psnr_db,ssim,mae,sam_deg`.
std::string sweep_csv(const SweepResult& sweep);

struct PeakReport {
  std::vector<double> row_error_nm;     // estimated peak minus reference peak, per row
  std::vector<double> reference_peak_nm;
  std::vector<double> estimated_peak_nm;
  double median_abs_error_nm = 0.0;     // over rows whose nominal center lies in the window
};

// Per row, the row-mean spectrum is linearly interpolated at 1 nm between bin midpoints and its
// argmax taken. The reference peak of a row is the same estimate applied to the ground-truth cube,
// so a perfect reconstruction scores exactly zero.
PeakReport peak_localization(const HyperCube& recon, const BenchScene& truth, double window_lo_nm = 430.0,
                             double window_hi_nm = 670.0);

// Argmax of the 1 nm linear interpolation of a binned spectrum.
double interpolated_peak_nm(const WavelengthGrid& grid, const Eigen::Ref<const Eigen::RowVectorXd>& spectrum);

}  // namespace cepspec
