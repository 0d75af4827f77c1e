// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cepspec/calibration.hpp"
#include "cepspec/demosaic.hpp"
#include "cepspec/eval.hpp"
#include "cepspec/io.hpp"

using namespace cepspec;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_rel(const Eigen::ArrayXXd& got, const Eigen::ArrayXXd& want) {
  return (got - want).abs().maxCoeff() / std::max(want.abs().maxCoeff(), 1e-300);
}

// Per-LED weights built without the library's resampler: trapezoid integral of alpha * E * S over
// each 10 nm calibration bin from the 1 nm model samples, then the edge bins summed.
Matrix oracle_extended_weights(const std::vector<LedChannel>& leds, const SpectralCurve& s) {
  Matrix w(static_cast<Eigen::Index>(leds.size()), 33);
  for (std::size_t l = 0; l < leds.size(); ++l) {
    const SpectralCurve& e = leds[l].spd;
    Vector bins(41);
    for (int k = 0; k < 41; ++k) {
      const int i0 = 380 + 10 * k - 360;
      double sum = 0.0;
      for (int i = i0; i < i0 + 10; ++i) sum += 0.5 * (e[i] * s[i] + e[i + 1] * s[i + 1]);
      bins[k] = leds[l].alpha * sum / 10.0;
    }
    Vector ext(33);
    ext[0] = bins[0] + bins[1];
    for (int k = 1; k <= 31; ++k) ext[k] = bins[k + 1];
    ext[32] = bins.tail(8).sum();
    w.row(static_cast<Eigen::Index>(l)) = ext.transpose();
  }
  return w;
}

Outcome forward_oracle() {
  const CodingSchedule sched = canonical_schedule();
  const std::vector<LedChannel> leds = canonical_leds();
  const SpectralCurve sens = canonical_sensitivity();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  HyperCube scene(8, 6, WavelengthGrid::reconstruction());
  for (Eigen::Index i = 0; i < scene.data().size(); ++i) scene.data().data()[i] = u(rng);

  const Matrix w = oracle_extended_weights(leds, sens);
  Image want(6, 8);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 8; ++x) {
      Vector r(33);
      r[0] = 0.5 * (scene(y, x, 1) + scene(y, x, 2));
      for (int k = 0; k < 31; ++k) r[k + 1] = scene(y, x, k);
      r[32] = scene(y, x, 30);
      const int tile = (y % 3) * 4 + x % 4;
      double v = 0.0;
      for (int s = 0; s < sched.subframe_count(); ++s) {
        if (!sched.exposure[tile][s]) continue;
        for (int l : sched.lit_leds[s]) v += w.row(l).dot(r);
      }
      want(y, x) = v;
    }

  const SensingModel model = build_extended_sensing_model(leds, sens);
  const HyperCube ext = mirror_extend_cube(scene);
  const CodedFrame frame = simulate_frame(ext, sched, model, 0.0, 1);
  const Vector viaA = build_sensing_matrix(sched, model, 8, 6) * vectorize(ext);
  const Image viaA_img = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      viaA.data(), 6, 8).array();
  const double e1 = max_rel(frame.values, want), e2 = max_rel(viaA_img, want);
  return {e1 <= 1e-9 && e2 <= 1e-9, fmt("frame vs loop %.2e, matrix vs loop %.2e", e1, e2)};
}

Outcome schedule_facts() {
  const CodingSchedule s = canonical_schedule();
  int active = 0;
  for (int n : s.subframes_per_led) active += n;
  const double denominator = active * s.subframe_us + s.readout_us;
  const int amber = s.subframes_per_led[s.led_index("Amber")];
  const Vector t = normalized_timestamps(s);
  const ExposureWindow wa = led_exposure_window(s, s.led_index("Amber"));
  const bool ts = t[s.led_index("Amber")] == wa.midpoint_us() / 29700.0;
  const bool ok = s.subframe_count() == 158 && active == 158 && active * 150 == 23700 && s.subframe_us == 150.0 &&
                  amber == 40 && denominator == 29700.0 && ts;
  return {ok, fmt("S=%d, active=%g us, Amber=%d, denominator=%g us", s.subframe_count(), active * s.subframe_us, amber,
                  denominator)};
}

Outcome calibration_round_trip() {
  std::vector<SpectralCurve> e;
  for (const LedChannel& led : canonical_leds()) e.push_back(resample_curve(led.spd, WavelengthGrid::calibration()));
  const std::vector<SpectralCurve> patches = colorchecker_patches();
  const SpectralCurve s = resample_curve(canonical_sensitivity(), WavelengthGrid::calibration());
  const Matrix unit = simulate_response(e, patches, s, Vector::Ones(12));

  double worst_clean = 0.0;
  std::vector<double> noisy;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    std::normal_distribution<double> n(0.0, 1.0);
    Vector truth(12);
    for (int l = 0; l < 12; ++l) truth[l] = u(rng);
    const Matrix clean = simulate_response(e, patches, s, truth);
    const Vector a = fit_alpha(clean, e, patches, s).alpha;
    worst_clean = std::max(worst_clean, ((a - truth).array() / truth.array()).abs().maxCoeff());
    // 1% noise relative to each response value.
    Matrix m = clean;
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] *= 1.0 + 0.01 * n(rng);
    const Vector b = fit_alpha_from_unit_response(m, unit).alpha;
    noisy.push_back(((b - truth).array() / truth.array()).abs().maxCoeff());
  }
  std::nth_element(noisy.begin(), noisy.begin() + 50, noisy.end());
  const double median = noisy[50];
  return {worst_clean <= 1e-9 && median <= 0.03,
          fmt("noiseless max rel %.2e, 1%% noise median max rel %.3f%%", worst_clean, 100.0 * median)};
}

Outcome demosaic_checks() {
  const CodingSchedule s = canonical_schedule();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CodedFrame f{Image(480, 640), 0.0, 0, 0};
  for (Eigen::Index i = 0; i < f.values.size(); ++i) f.values.data()[i] = u(rng);
  const SubImageSet sub = demosaic(f, s);
  bool native = true, counts = true;
  for (int l = 0; l < 12; ++l) {
    const LatticeSamples lat = gather_led_samples(f, s.layout, l);
    counts = counts && lat.samples.size() == 640 * 480 / 12;
    for (int y = lat.row_phase; y < 480; y += 3)
      for (int x = lat.col_phase; x < 640; x += 4) native = native && sub.images[l](y, x) == f.values(y, x);
  }
  CodedFrame affine{Image(480, 640), 0.0, 0, 0};
  for (int y = 0; y < 480; ++y)
    for (int x = 0; x < 640; ++x) affine.values(y, x) = 0.37 * y - 0.21 * x + 5.0;
  const SubImageSet aff = demosaic(affine, s);
  double err = 0.0;
  for (int l = 0; l < 12; ++l) {
    const auto [r0, c0] = s.layout.position_of(l);
    const int y1 = r0 + 3 * ((480 - 1 - r0) / 3), x1 = c0 + 4 * ((640 - 1 - c0) / 4);
    err = std::max(err, (aff.images[l] - affine.values).block(r0, c0, y1 - r0 + 1, x1 - c0 + 1).abs().maxCoeff());
  }
  return {native && counts && err <= 1e-9,
          fmt("native samples %s, 25600 samples per LED %s, affine error %.2e", native ? "exact" : "CHANGED",
              counts ? "yes" : "NO", err)};
}

Outcome alignment_checks() {
  const CodingSchedule s = canonical_schedule();
  const SensingModel m = build_extended_sensing_model(canonical_leds(), canonical_sensitivity());
  const Vector t = normalized_timestamps(s);
  const int ref = s.led_index("Lime");
  const int w = 128, h = 96;
  std::vector<SubImageSet> frames;
  for (int f = 0; f < 3; ++f) {
    std::vector<HyperCube> states;
    for (int l = 0; l < 12; ++l) states.push_back(mirror_extend_cube(translating_scene(w, h, 2.0 * (f + t[l]), 7)));
    frames.push_back(demosaic(simulate_frame(states, s, m, 0.0, 1, f), s));
  }
  AlignmentDiagnostics diag;
  const SubImageSet out = warp_to_reference(&frames[0], frames[1], &frames[2], s, {}, &diag);
  double worst = 0.0;
  const int margin = 16;
  for (int l = 0; l < 12; ++l) {
    if (l == ref) continue;
    const double ideal = 2.0 * (t[ref] - t[l]);
    double err = 0.0;
    for (int y = margin; y < h - margin; ++y)
      for (int x = margin; x < w - margin; ++x) err += std::hypot(diag.applied[l].dx(y, x) - ideal, diag.applied[l].dy(y, x));
    worst = std::max(worst, err / ((h - 2 * margin) * (w - 2 * margin)));
  }
  const HyperCube still = mirror_extend_cube(mixture_scene(w, h, 3, 2));
  std::vector<SubImageSet> stat;
  for (int f = 0; f < 3; ++f) stat.push_back(demosaic(simulate_frame(still, s, m, 0.0, 1, f), s));
  const SubImageSet passed = warp_to_reference(&stat[0], stat[1], &stat[2], s);
  bool identical = true;
  for (int l = 0; l < 12; ++l) identical = identical && (passed.images[l] == stat[1].images[l]).all();
  const bool all_aligned = std::all_of(out.aligned.begin(), out.aligned.end(), [](bool b) { return b; });
  return {worst < 0.5 && identical && all_aligned,
          fmt("worst mean displacement error %.3f px, static pass-through %s", worst, identical ? "bit-identical" : "CHANGED")};
}

Outcome aggregation_checks() {
  const PatchSpec spec;
  const WeightKernel k = default_kernel(spec);
  const Eigen::Index n = 66 * 64;
  std::vector<Patch> constant;
  for (const PatchPosition& p : patch_positions(160, 156)) constant.push_back({p, Matrix::Constant(n, 33, 0.42)});
  const double e_const = (fold_aggregate(constant, k, 160, 156).data().array() - 0.42).abs().maxCoeff();

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix a(n, 33), b(n, 33);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a.data()[i] = u(rng);
    b.data()[i] = u(rng);
  }
  const HyperCube apart = fold_aggregate({{{0, 0}, a}, {{0, 64}, b}}, k, 128, 66);
  double e_single = 0.0;
  for (int y = 0; y < 66; ++y)
    for (int x = 0; x < 64; ++x) {
      e_single = std::max(e_single, (apart.spectrum(y, x) - a.row(y * 64 + x)).cwiseAbs().maxCoeff());
      e_single = std::max(e_single, (apart.spectrum(y, x + 64) - b.row(y * 64 + x)).cwiseAbs().maxCoeff());
    }

  const HyperCube overlap = fold_aggregate({{{0, 0}, a}, {{0, 32}, b}}, k, 96, 66);
  double e_formula = 0.0;
  for (const auto& [y, x] : std::vector<std::pair<int, int>>{{10, 32}, {33, 47}, {65, 63}}) {
    const double ka = k.values()(y, x), kb = k.values()(y, x - 32);
    for (int c = 0; c < 33; ++c) {
      const double want = (ka * a(y * 64 + x, c) + kb * b(y * 64 + (x - 32), c)) / (ka + kb);
      e_formula = std::max(e_formula, std::abs(overlap(y, x, c) - want));
    }
  }
  return {e_const <= 1e-12 && e_single <= 1e-12 && e_formula <= 1e-12,
          fmt("constant %.1e, single %.1e, overlap formula %.1e", e_const, e_single, e_formula)};
}

Outcome solver_contract() {
  const CodingSchedule s = canonical_schedule();
  const SensingModel m = build_extended_sensing_model(canonical_leds(), canonical_sensitivity());
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vector> pixels;
  for (int i = 0; i < 100; ++i) {
    Vector r(33);
    for (int k = 0; k < 33; ++k) r[k] = u(rng);
    pixels.push_back((m.led_weights * r).cwiseProduct(Eigen::Map<const Eigen::VectorXi>(s.subframes_per_led.data(), 12).cast<double>()));
  }
  const LinearReconstructor base(make_recon_model(s, m));
  double worst_residual = 0.0;
  for (const Vector& y : pixels) worst_residual = std::max(worst_residual, base.normal_equation_residual(y, base.solve_pixel(y)));
  int violations = 0;
  std::vector<LinearReconstructor> ladder;
  for (double lambda : {1e-4, 1e-3, 1e-2, 1e-1}) ladder.emplace_back(make_recon_model(s, m, lambda, 0.0));
  for (const Vector& y : pixels)
    for (std::size_t i = 1; i < ladder.size(); ++i)
      if (ladder[i].solve_pixel(y).norm() > ladder[i - 1].solve_pixel(y).norm()) ++violations;
  return {worst_residual <= 1e-8 && violations == 0,
          fmt("max normal-equation residual %.2e, ridge monotonicity violations %d/300", worst_residual, violations)};
}

Outcome smooth_fidelity() {
  const Pipeline p = make_pipeline(canonical_schedule(), canonical_leds(), canonical_sensitivity());
  double worst_sam = 0.0, worst_psnr = 1e9;
  int scenes = 0;
  for (int comps = 1; comps <= 3; ++comps)
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const HyperCube scene = mixture_scene(96, 96, comps, seed);
      const HyperCube recon = run_pipeline(scene, p, 0.0, 1);
      worst_sam = std::max(worst_sam, sam(scene, recon).mean_deg);
      worst_psnr = std::min(worst_psnr, psnr(scene, recon));
      ++scenes;
    }
  return {worst_sam <= 5.0 && worst_psnr >= 30.0,
          fmt("%d scenes, worst mean SAM %.2f deg, worst PSNR %.1f dB", scenes, worst_sam, worst_psnr)};
}

Outcome sweep_shape() {
  const Pipeline p = make_pipeline(canonical_schedule(), canonical_leds(), canonical_sensitivity());
  const HyperCube scene = mixture_scene(96, 96, 3, 11);
  const SweepResult r = noise_sweep(scene, p, kDefaultSweepSigmasPct, {1, 2, 3});
  std::vector<double> mean(5, 0.0);
  for (const SweepRow& row : r.rows) {
    const auto i = std::find(kDefaultSweepSigmasPct.begin(), kDefaultSweepSigmasPct.end(), row.sigma_pct) -
                   kDefaultSweepSigmasPct.begin();
    mean[i] += row.metrics.psnr_db / 3.0;
  }
  bool ok = r.rows.size() == 15;
  for (const SweepRow& row : r.rows) ok = ok && row.metrics.psnr_db <= mean[0];
  for (int i = 1; i < 5; ++i) ok = ok && mean[i] <= mean[i - 1] + 0.3;
  return {ok, fmt("mean PSNR %.1f / %.1f / %.1f / %.1f / %.1f dB", mean[0], mean[1], mean[2], mean[3], mean[4])};
}

Outcome rainbow_benchmark() {
  const BenchScene scene = rainbow_scene(512, 512);
  bool gradient = true;
  for (int y = 0; y + 1 < 512; ++y) {
    gradient = gradient && std::abs((scene.row_center_nm[y] - scene.row_center_nm[y + 1]) - 300.0 / 511.0) < 1e-9;
  }
  const Pipeline p = make_pipeline(canonical_schedule(), canonical_leds(), canonical_sensitivity());
  const PeakReport r = peak_localization(run_pipeline(scene.cube, p, 0.0, 1), scene);
  return {gradient && r.median_abs_error_nm <= 15.0,
          fmt("%.4f nm per row, median |peak error| %.2f nm", 300.0 / 511.0, r.median_abs_error_nm)};
}

Outcome metric_sanity() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  HyperCube x(16, 16, WavelengthGrid::reconstruction());
  for (Eigen::Index i = 0; i < x.data().size(); ++i) x.data().data()[i] = u(rng) + 0.01;
  const HyperCube scaled(16, 16, x.grid(), 3.7 * x.data());
  const double angle = sam(x, scaled).mean_deg;
  const bool cap = psnr(x, x) == kPsnrCapDb;
  const double self = ssim(x, x);

  std::ifstream in(CEPSPEC_TEST_DATA "/ssim_oracle.json");
  const nlohmann::json oracle = nlohmann::json::parse(in);
  double worst = 0.0;
  int pairs = 0;
  for (const auto& pair : oracle.at("pairs")) {
    const int h = pair.at("height"), w = pair.at("width");
    Image a(h, w), b(h, w);
    for (int yy = 0; yy < h; ++yy)
      for (int xx = 0; xx < w; ++xx) {
        a(yy, xx) = pair.at("a").at(static_cast<std::size_t>(yy) * w + xx).get<double>();
        b(yy, xx) = pair.at("b").at(static_cast<std::size_t>(yy) * w + xx).get<double>();
      }
    worst = std::max(worst, std::abs(ssim(a, b) - pair.at("ssim").get<double>()));
    ++pairs;
  }
  return {angle < 1e-6 && cap && std::abs(self - 1.0) < 1e-12 && pairs == 20 && worst <= 1e-4,
          fmt("sam(x, cx) %.1e deg, psnr cap %s, ssim(x, x) %.12f, oracle max diff %.1e over %d pairs", angle,
              cap ? "ok" : "WRONG", self, worst, pairs)};
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / ("cepspec_accept_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  const CodingSchedule s = canonical_schedule();
  const SensingModel m = build_extended_sensing_model(canonical_leds(), canonical_sensitivity());
  const Pipeline p = make_pipeline(s, canonical_leds(), canonical_sensitivity());
  const Vector t = normalized_timestamps(s);

  auto run = [&](int pass) {
    std::vector<std::vector<unsigned char>> blobs;
    std::vector<SubImageSet> frames;
    for (int f = 0; f < 3; ++f) {
      std::vector<HyperCube> states;
      for (int l = 0; l < 12; ++l) states.push_back(mirror_extend_cube(translating_scene(96, 96, 2.0 * (f + t[l]), 3)));
      const CodedFrame frame = simulate_frame(states, s, m, 0.05, 17, f);
      const fs::path path = dir / ("frame_" + std::to_string(pass) + "_" + std::to_string(f) + ".lmcf");
      save_frame(path, frame);
      blobs.push_back(read_file(path));
      frames.push_back(demosaic(frame, s));
    }
    for (const SubImageSet& sub : align_video(frames, s)) {
      blobs.push_back(encode_cube(reconstruct_frame(sub, p.solver, p.patches, p.kernel)));
    }
    const std::string csv = sweep_csv(noise_sweep(mixture_scene(64, 66, 2, 5), p, {0.0, 10.0}, {1, 2}));
    blobs.emplace_back(csv.begin(), csv.end());
    return blobs;
  };
  const auto first = run(0);
  // A different worker count must not change a single byte.
  setenv("CEPSPEC_THREADS", "1", 1);
  const auto second = run(1);
  unsetenv("CEPSPEC_THREADS");
  fs::remove_all(dir);
  return {first == second, fmt("%zu artifacts (frames, cubes, CSV) compared across runs and thread counts", first.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"forward model matches explicit loops and sensing matrix", forward_oracle},
      {"canonical schedule facts", schedule_facts},
      {"calibration round trip", calibration_round_trip},
      {"demosaic and bilinear upsampling", demosaic_checks},
      {"temporal alignment", alignment_checks},
      {"patch aggregation", aggregation_checks},
      {"solver contract", solver_contract},
      {"smooth-spectrum fidelity", smooth_fidelity},
      {"noise sweep shape", sweep_shape},
      {"rainbow benchmark", rainbow_benchmark},
      {"metric sanity", metric_sanity},
      {"determinism", determinism},
  };
  // Runtime ceilings in seconds, where one applies.
  const std::vector<double> limits{1.0, 0.0, 5.0, 0.0, 0.0, 0.0, 0.0, 30.0, 0.0, 0.0, 0.0, 0.0};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limits[i] > 0.0 && secs >= limits[i]) {
      o.pass = false;
      o.detail += fmt(" (over the %.0f s limit)", limits[i]);
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
