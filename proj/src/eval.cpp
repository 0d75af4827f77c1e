#include "cepspec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "cepspec/demosaic.hpp"
#include "cepspec/random.hpp"

namespace cepspec {

namespace {

const WavelengthGrid kFineGrid{380.0, 1.0, 411};

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<long>(mid), v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double upper = v[mid];
  std::nth_element(v.begin(), v.begin() + static_cast<long>(mid) - 1, v.end());
  return 0.5 * (upper + v[mid - 1]);
}

}  // namespace

SpectralCurve binned_gaussian_mixture(const std::vector<double>& centers_nm, const std::vector<double>& fwhms_nm,
                                      const std::vector<double>& amplitudes, const WavelengthGrid& grid) {
  if (centers_nm.size() != fwhms_nm.size() || centers_nm.size() != amplitudes.size() || centers_nm.empty()) {
    throw DataError("mixture needs matching, non-empty center/FWHM/amplitude lists");
  }
  Vector fine = Vector::Zero(kFineGrid.count());
  for (std::size_t i = 0; i < centers_nm.size(); ++i) {
    fine += gaussian_curve(kFineGrid, centers_nm[i], fwhms_nm[i], amplitudes[i]).values();
  }
  Vector binned = resample_curve(SpectralCurve(kFineGrid, std::move(fine)), grid).values();
  const double peak = binned.maxCoeff();
  if (!(peak > 0.0)) throw DataError("mixture has no energy on the target grid");
  return {grid, binned / peak};
}

BenchScene rainbow_scene(int width, int height, double fwhm_nm, const WavelengthGrid& grid) {
  if (height < 2 || width < 1) throw DataError("rainbow scene needs at least 2 rows");
  BenchScene scene{HyperCube(width, height, grid), {}};
  scene.row_center_nm.resize(height);
  for (int y = 0; y < height; ++y) {
    const double center = 400.0 + 300.0 * (height - 1 - y) / (height - 1);
    scene.row_center_nm[y] = center;
    const Vector spectrum = binned_gaussian_mixture({center}, {fwhm_nm}, {1.0}, grid).values();
    for (int x = 0; x < width; ++x) scene.cube.spectrum(y, x) = spectrum.transpose();
  }
  return scene;
}

HyperCube mixture_scene(int width, int height, int components, std::uint64_t seed, const WavelengthGrid& grid) {
  if (width <= 0 || height <= 0) throw DataError("scene dimensions must be positive");
  if (components < 1 || components > 3) throw DataError("mixture scenes take 1 to 3 components");
  auto u = [seed](std::uint64_t i) { return counter_uniform(seed, 0x5ce9e, i); };
  struct Component {
    double center, fwhm, amplitude, drift_nm, phase_y, phase_x;
  };
  std::vector<Component> comps;
  for (int i = 0; i < components; ++i) {
    const std::uint64_t b = 8 * static_cast<std::uint64_t>(i);
    comps.push_back({440.0 + 220.0 * u(b), 60.0 + 60.0 * u(b + 1), 0.4 + 0.6 * u(b + 2), 10.0 + 20.0 * u(b + 3),
                     2.0 * std::numbers::pi * u(b + 4), 2.0 * std::numbers::pi * u(b + 5)});
  }
  const double bright_phase = 2.0 * std::numbers::pi * u(100);
  HyperCube cube(width, height, grid);
  std::vector<double> centers(components), fwhms(components), amps(components);
  for (int y = 0; y < height; ++y) {
    const double fy = static_cast<double>(y) / height;
    for (int x = 0; x < width; ++x) {
      const double fx = static_cast<double>(x) / width;
      for (int i = 0; i < components; ++i) {
        const Component& c = comps[i];
        centers[i] = c.center + c.drift_nm * std::sin(2.0 * std::numbers::pi * fy + c.phase_y);
        fwhms[i] = c.fwhm;
        amps[i] = c.amplitude * (0.75 + 0.25 * std::cos(2.0 * std::numbers::pi * fx + c.phase_x));
      }
      const double brightness = 0.55 + 0.3 * std::sin(std::numbers::pi * (fx + fy) + bright_phase);
      cube.spectrum(y, x) = brightness * binned_gaussian_mixture(centers, fwhms, amps, grid).values().transpose();
    }
  }
  return cube;
}

HyperCube translating_scene(int width, int height, double offset_x, std::uint64_t seed, const WavelengthGrid& grid) {
  if (width <= 0 || height <= 0) throw DataError("scene dimensions must be positive");
  auto u = [seed](std::uint64_t i) { return counter_uniform(seed, 0x7a11, i); };
  const Vector a = binned_gaussian_mixture({460.0 + 40.0 * u(0)}, {90.0}, {1.0}, grid).values();
  const Vector b = binned_gaussian_mixture({600.0 + 50.0 * u(1)}, {100.0}, {1.0}, grid).values();
  constexpr int kWaves = 4;
  double period[kWaves], angle[kWaves], phase_a[kWaves], phase_b[kWaves];
  for (int i = 0; i < kWaves; ++i) {
    period[i] = 14.0 + 18.0 * u(10 + i);
    angle[i] = std::numbers::pi * (i + u(20 + i)) / kWaves;
    phase_a[i] = 2.0 * std::numbers::pi * u(30 + i);
    phase_b[i] = 2.0 * std::numbers::pi * u(40 + i);
  }
  HyperCube cube(width, height, grid);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double px = x - offset_x;
      double t = 0.0, s = 0.0;
      for (int i = 0; i < kWaves; ++i) {
        const double arg = 2.0 * std::numbers::pi * (px * std::cos(angle[i]) + y * std::sin(angle[i])) / period[i];
        t += 0.35 * std::sin(arg + phase_a[i]);
        s += 0.35 * std::sin(arg + phase_b[i]);
      }
      const double wa = 0.45 + 0.4 * std::tanh(t);
      const double wb = 0.45 + 0.4 * std::tanh(s);
      cube.spectrum(y, x) = (wa * a + wb * b).transpose() * 0.55;
    }
  }
  return cube;
}

std::vector<SpectralCurve> synth_spectra(SynthKind kind, const SynthParams& params) {
  std::vector<SpectralCurve> out;
  const int steps = static_cast<int>(std::floor(300.0 / params.center_step_nm + 1e-9));
  for (double fwhm : params.fwhms_nm) {
    if (kind == SynthKind::kSingle) {
      for (int i = 0; i <= steps; ++i) {
        out.push_back(binned_gaussian_mixture({400.0 + i * params.center_step_nm}, {fwhm}, {1.0}));
      }
      continue;
    }
    for (double sep : params.separations_nm) {
      for (int i = 0; i <= steps; ++i) {
        const double mid = 400.0 + i * params.center_step_nm;
        const double lo = mid - 0.5 * sep;
        const double hi = mid + 0.5 * sep;
        if (lo < 400.0 || hi > 700.0) continue;
        out.push_back(binned_gaussian_mixture({lo, hi}, {fwhm, fwhm}, {1.0, 1.0}));
      }
    }
  }
  return out;
}

Pipeline make_pipeline(const CodingSchedule& schedule, const std::vector<LedChannel>& leds,
                       const SpectralCurve& sensitivity, double lambda_reg, double mu, double kernel_floor) {
  SensingModel sensing = build_extended_sensing_model(leds, sensitivity);
  LinearReconstructor solver(make_recon_model(schedule, sensing, lambda_reg, mu));
  PatchSpec spec;
  spec.tile_rows = schedule.layout.rows();
  spec.tile_cols = schedule.layout.cols();
  WeightKernel kernel = default_kernel(spec, kernel_floor);
  return {schedule, std::move(sensing), std::move(solver), spec, std::move(kernel)};
}

HyperCube run_pipeline(const HyperCube& scene, const Pipeline& pipeline, double noise_sigma_frac,
                       std::uint64_t seed, ReconStats* stats) {
  const CodedFrame frame =
      simulate_frame(mirror_extend_cube(scene), pipeline.schedule, pipeline.sensing, noise_sigma_frac, seed);
  const SubImageSet sub = demosaic(frame, pipeline.schedule);
  return reconstruct_frame(sub, pipeline.solver, pipeline.patches, pipeline.kernel, stats);
}

SweepResult noise_sweep(const HyperCube& scene, const Pipeline& pipeline, const std::vector<double>& sigmas_pct,
                        const std::vector<std::uint64_t>& seeds) {
  SweepResult result;
  std::vector<double> mean_psnr;
  for (double sigma : sigmas_pct) {
    double total = 0.0;
    for (std::uint64_t seed : seeds) {
      const HyperCube recon = run_pipeline(scene, pipeline, sigma / 100.0, seed);
      result.rows.push_back({sigma, seed, evaluate(scene, recon)});
      total += result.rows.back().metrics.psnr_db;
    }
    mean_psnr.push_back(seeds.empty() ? 0.0 : total / static_cast<double>(seeds.size()));
  }
  for (std::size_t i = 1; i < mean_psnr.size(); ++i) {
    if (sigmas_pct[i] > sigmas_pct[i - 1] && mean_psnr[i] > mean_psnr[i - 1]) {
      std::ostringstream os;
      os << "mean PSNR rises from " << mean_psnr[i - 1] << " dB at sigma " << sigmas_pct[i - 1] << "% to "
         << mean_psnr[i] << " dB at " << sigmas_pct[i] << "%";
      result.warnings.push_back(os.str());
    }
  }
  return result;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::ostringstream os;
  os << "sigma_pct,seed,psnr_db,ssim,mae,sam_deg\n" << std::setprecision(10);
  for (const SweepRow& r : sweep.rows) {
    os << r.sigma_pct << ',' << r.seed << ',' << r.metrics.psnr_db << ',' << r.metrics.ssim << ',' << r.metrics.mae
       << ',' << r.metrics.sam_deg << '\n';
  }
  return os.str();
}

double interpolated_peak_nm(const WavelengthGrid& grid, const Eigen::Ref<const Eigen::RowVectorXd>& spectrum) {
  if (spectrum.size() != grid.count()) throw DataError("spectrum length differs from grid");
  const double first = grid.bin_midpoint(0);
  const double last = grid.bin_midpoint(grid.count() - 1);
  double best_nm = first;
  double best = -std::numeric_limits<double>::infinity();
  const int steps = static_cast<int>(std::floor(last - first + 1e-9));
  for (int i = 0; i <= steps; ++i) {
    const double nm = first + i;
    const double u = (nm - first) / grid.step_nm();
    const int k = std::min(static_cast<int>(std::floor(u)), grid.count() - 1);
    const double f = u - k;
    const double v = k + 1 < grid.count() ? (1.0 - f) * spectrum[k] + f * spectrum[k + 1] : spectrum[k];
    if (v > best) {
      best = v;
      best_nm = nm;
    }
  }
  return best_nm;
}

PeakReport peak_localization(const HyperCube& recon, const BenchScene& truth, double window_lo_nm,
                             double window_hi_nm) {
  if (!recon.same_shape(truth.cube)) throw DataError("reconstruction and benchmark scene differ in shape");
  if (static_cast<int>(truth.row_center_nm.size()) != recon.height()) throw DataError("missing row centers");
  PeakReport r;
  std::vector<double> window_errors;
  const double inv_w = 1.0 / recon.width();
  for (int y = 0; y < recon.height(); ++y) {
    const auto rows = recon.data().middleRows(recon.index(y, 0), recon.width());
    const auto truth_rows = truth.cube.data().middleRows(truth.cube.index(y, 0), recon.width());
    const Eigen::RowVectorXd est_spec = rows.colwise().sum() * inv_w;
    const Eigen::RowVectorXd ref_spec = truth_rows.colwise().sum() * inv_w;
    const double est = interpolated_peak_nm(recon.grid(), est_spec);
    const double ref = interpolated_peak_nm(truth.cube.grid(), ref_spec);
    r.estimated_peak_nm.push_back(est);
    r.reference_peak_nm.push_back(ref);
    r.row_error_nm.push_back(est - ref);
    const double c = truth.row_center_nm[y];
    if (c >= window_lo_nm && c <= window_hi_nm) window_errors.push_back(std::abs(est - ref));
  }
  r.median_abs_error_nm = median(std::move(window_errors));
  return r;
}

}  // namespace cepspec
