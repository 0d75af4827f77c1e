// Command-line front end: config-driven stages chained through JSON manifests.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cepspec/calibration.hpp"
#include "cepspec/config.hpp"
#include "cepspec/demosaic.hpp"
#include "cepspec/eval.hpp"
#include "cepspec/image_io.hpp"
#include "cepspec/io.hpp"
#include "cepspec/parallel.hpp"
#include "cepspec/render.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cepspec;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

std::string text_of(const std::vector<unsigned char>& bytes) { return {bytes.begin(), bytes.end()}; }
std::vector<unsigned char> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

void write_text(const fs::path& path, const std::string& text) { write_file(path, bytes_of(text)); }

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json read_json(const fs::path& path) {
  try {
    return json::parse(text_of(read_file(path)));
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string file_digest(const fs::path& path) { return sha256_hex(read_file(path)); }

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string run_tag(double sigma_pct, std::uint64_t seed) {
  return "sigma" + format_number(sigma_pct) + "_seed" + std::to_string(seed);
}

std::string frame_name(int f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%03d", f);
  return buf;
}

template <typename T>
T field(const json& j, const char* key, const fs::path& where) {
  if (!j.contains(key)) throw DataError(where.string() + ": manifest field '" + key + "' missing");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw DataError(where.string() + ": manifest field '" + key + "' has the wrong type");
  }
}

// Reloads the experiment a manifest was produced from and refuses stale inputs.
struct Stage {
  json manifest;
  fs::path manifest_path;
  fs::path root;  // directory holding the manifest; artifact paths are relative to it
  ExperimentConfig config;
};

Stage open_stage(const fs::path& manifest_path, const std::string& expected_stage) {
  Stage s;
  s.manifest_path = manifest_path;
  s.manifest = read_json(manifest_path);
  s.root = fs::absolute(manifest_path).parent_path();
  const std::string stage = field<std::string>(s.manifest, "stage", manifest_path);
  if (stage != expected_stage) {
    throw DataError(manifest_path.string() + ": expected a '" + expected_stage + "' manifest, got '" + stage + "'");
  }
  s.config = load_experiment_config(field<std::string>(s.manifest, "config", manifest_path));
  const std::string digest = field<std::string>(s.manifest, "config_digest", manifest_path);
  if (digest != s.config.digest) {
    throw DataError(manifest_path.string() + ": stale manifest, config digest " + digest + " but " +
                    s.config.path.string() + " now hashes to " + s.config.digest);
  }
  return s;
}

json manifest_head(const std::string& stage, const ExperimentConfig& cfg) {
  return {{"stage", stage}, {"config", fs::absolute(cfg.path).lexically_normal().string()},
          {"config_digest", cfg.digest}};
}

// Artifact entry: path relative to the manifest directory plus content hash.
json artifact(const fs::path& root, const fs::path& path) {
  return {{"path", fs::relative(path, root).generic_string()}, {"sha256", file_digest(path)}};
}

fs::path resolve(const Stage& s, const json& entry) {
  return s.root / field<std::string>(entry, "path", s.manifest_path);
}

void save_png(const fs::path& path, const std::vector<unsigned char>& png) { write_file(path, png); }

std::vector<unsigned char> preview_png16(const Image& img) {
  const double peak = std::max(img.maxCoeff(), 1e-300);
  std::vector<std::uint16_t> px(static_cast<std::size_t>(img.size()));
  for (Eigen::Index y = 0; y < img.rows(); ++y)
    for (Eigen::Index x = 0; x < img.cols(); ++x)
      px[y * img.cols() + x] =
          static_cast<std::uint16_t>(std::lround(std::clamp(img(y, x) / peak, 0.0, 1.0) * 65535.0));
  return encode_png_gray16(px, static_cast<int>(img.cols()), static_cast<int>(img.rows()));
}

Pipeline pipeline_for(const ExperimentConfig& cfg) {
  return make_pipeline(cfg.schedule.schedule, cfg.schedule.leds, cfg.sensitivity, cfg.solver.lambda_reg,
                       cfg.solver.mu, cfg.solver.kernel_floor);
}

AlignOptions align_options(const ExperimentConfig& cfg) {
  AlignOptions o;
  o.reference = cfg.reference_led;
  o.flow.block = cfg.flow_block;
  o.flow.search_radius = cfg.flow_search_radius;
  return o;
}

HyperCube require_reconstruction_grid(HyperCube cube, const fs::path& path) {
  if (!(cube.grid() == WavelengthGrid::reconstruction())) {
    throw DataError(path.string() + ": scene cube must use the " + WavelengthGrid::reconstruction().describe() +
                    " grid, got " + cube.grid().describe());
  }
  return cube;
}

// Ground truth of frame f as seen by every LED, and at the reference timestamp.
struct SceneFrame {
  std::vector<HyperCube> per_led;  // 31-channel
  HyperCube truth;
};

SceneFrame scene_frame(const ExperimentConfig& cfg, int f) {
  const SceneSource& s = cfg.scene;
  const CodingSchedule& schedule = cfg.schedule.schedule;
  const int leds = schedule.led_count();
  auto constant = [&](HyperCube cube) {
    SceneFrame out{std::vector<HyperCube>(leds, cube), cube};
    return out;
  };
  switch (s.kind) {
    case SceneSource::Kind::kCubes:
      return constant(require_reconstruction_grid(load_cube(s.cubes[f]), s.cubes[f]));
    case SceneSource::Kind::kFlat: {
      HyperCube cube(s.width, s.height, WavelengthGrid::reconstruction());
      cube.data().setConstant(s.value);
      return constant(std::move(cube));
    }
    case SceneSource::Kind::kMixture:
      return constant(mixture_scene(s.width, s.height, s.components, s.scene_seed));
    case SceneSource::Kind::kRainbow:
      return constant(rainbow_scene(s.width, s.height, s.fwhm_nm).cube);
    case SceneSource::Kind::kTranslating: {
      const Vector t = normalized_timestamps(schedule);
      const int ref = schedule.led_index(cfg.reference_led);
      SceneFrame out{{}, translating_scene(s.width, s.height, s.velocity_px * (f + t[ref]), s.scene_seed)};
      for (int l = 0; l < leds; ++l) {
        out.per_led.push_back(translating_scene(s.width, s.height, s.velocity_px * (f + t[l]), s.scene_seed));
      }
      return out;
    }
  }
  throw DataError("unknown scene kind");
}

// ---------------------------------------------------------------------------------------------
// simulate

int cmd_simulate(const fs::path& config_path) {
  const ExperimentConfig cfg = load_experiment_config(config_path);
  const fs::path out = cfg.output_dir;
  const SensingModel sensing = build_extended_sensing_model(cfg.schedule.leds, cfg.sensitivity);
  const CodingSchedule& schedule = cfg.schedule.schedule;

  std::vector<SceneFrame> frames;
  json truth = json::array();
  for (int f = 0; f < cfg.scene.frames; ++f) {
    frames.push_back(scene_frame(cfg, f));
    const fs::path p = out / "truth" / (frame_name(f) + ".lmsc");
    save_cube(p, frames.back().truth);
    truth.push_back(artifact(out, p));
  }

  json runs = json::array();
  for (double sigma : cfg.sigmas_pct) {
    for (std::uint64_t seed : cfg.seeds) {
      json entries = json::array();
      for (int f = 0; f < cfg.scene.frames; ++f) {
        std::vector<HyperCube> extended;
        for (const HyperCube& c : frames[f].per_led) extended.push_back(mirror_extend_cube(c));
        const CodedFrame frame = simulate_frame(extended, schedule, sensing, sigma / 100.0, seed, f);
        const fs::path p = out / "frames" / run_tag(sigma, seed) / (frame_name(f) + ".lmcf");
        save_frame(p, frame);
        save_png(p.parent_path() / (frame_name(f) + ".png"), preview_png16(frame.values));
        json e = artifact(out, p);
        e["frame_index"] = f;
        entries.push_back(e);
      }
      runs.push_back({{"sigma_pct", sigma}, {"seed", seed}, {"frames", entries}});
    }
  }
  json m = manifest_head("simulate", cfg);
  m["truth"] = truth;
  m["runs"] = runs;
  write_json(out / "simulate.json", m);
  std::cout << "wrote " << (out / "simulate.json").string() << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------------------------
// decode

json write_subimages(const fs::path& root, const fs::path& dir, const SubImageSet& set, const CodingSchedule& s) {
  json leds = json::array();
  for (int l = 0; l < set.led_count(); ++l) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "led_%02d", l);
    CodedFrame img{set.images[l], 0.0, 0, set.frame_index};
    const fs::path p = dir / (std::string(buf) + ".lmcf");
    save_frame(p, img);
    save_png(dir / (std::string(buf) + ".png"), preview_png16(set.images[l]));
    json e = artifact(root, p);
    e["name"] = s.led_names[l];
    e["timestamp"] = set.timestamps[l];
    e["aligned"] = static_cast<bool>(set.aligned[l]);
    leds.push_back(e);
  }
  json sidecar = {{"frame_index", set.frame_index}, {"leds", leds}};
  write_json(dir / "subimages.json", sidecar);
  return sidecar;
}

SubImageSet read_subimages(const fs::path& dir, const fs::path& sidecar_path) {
  const json sidecar = read_json(sidecar_path);
  SubImageSet set;
  set.frame_index = field<int>(sidecar, "frame_index", sidecar_path);
  const json leds = field<json>(sidecar, "leds", sidecar_path);
  set.timestamps.resize(static_cast<Eigen::Index>(leds.size()));
  for (std::size_t l = 0; l < leds.size(); ++l) {
    const fs::path p = dir / field<std::string>(leds[l], "path", sidecar_path);
    set.images.push_back(load_frame(p).values);
    set.timestamps[static_cast<Eigen::Index>(l)] = field<double>(leds[l], "timestamp", sidecar_path);
    set.aligned.push_back(field<bool>(leds[l], "aligned", sidecar_path));
  }
  return set;
}

std::vector<SubImageSet> decode_frames(const std::vector<CodedFrame>& frames, const CodingSchedule& schedule,
                                       const AlignOptions& options) {
  std::vector<SubImageSet> sets;
  for (const CodedFrame& f : frames) sets.push_back(demosaic(f, schedule));
  return align_video(sets, schedule, options);
}

int cmd_decode_manifest(const fs::path& manifest_path) {
  const Stage st = open_stage(manifest_path, "simulate");
  const fs::path out = st.root;
  const CodingSchedule& schedule = st.config.schedule.schedule;
  json runs = json::array();
  for (const json& run : field<json>(st.manifest, "runs", manifest_path)) {
    const double sigma = field<double>(run, "sigma_pct", manifest_path);
    const std::uint64_t seed = field<std::uint64_t>(run, "seed", manifest_path);
    std::vector<CodedFrame> frames;
    for (const json& e : field<json>(run, "frames", manifest_path)) frames.push_back(load_frame(resolve(st, e)));
    const std::vector<SubImageSet> sets = decode_frames(frames, schedule, align_options(st.config));
    json entries = json::array();
    for (std::size_t f = 0; f < sets.size(); ++f) {
      const fs::path dir = out / "decoded" / run_tag(sigma, seed) / frame_name(static_cast<int>(f));
      write_subimages(dir, dir, sets[f], schedule);
      json e = artifact(out, dir / "subimages.json");
      e["frame_index"] = sets[f].frame_index;
      entries.push_back(e);
    }
    runs.push_back({{"sigma_pct", sigma}, {"seed", seed}, {"frames", entries}});
  }
  json m = manifest_head("decode", st.config);
  m["upstream"] = artifact(out, manifest_path);
  m["truth"] = st.manifest.value("truth", json::array());
  m["runs"] = runs;
  write_json(out / "decode.json", m);
  std::cout << "wrote " << (out / "decode.json").string() << "\n";
  return kOk;
}

int cmd_decode_direct(const std::vector<fs::path>& frame_paths, const fs::path& schedule_path, const fs::path& out,
                      const std::string& reference) {
  const ScheduleConfig sc = schedule_path.empty() ? ScheduleConfig{} : load_schedule_config(schedule_path);
  std::vector<CodedFrame> frames;
  for (const fs::path& p : frame_paths) frames.push_back(load_frame(p));
  AlignOptions options;
  options.reference = reference;
  const std::vector<SubImageSet> sets = decode_frames(frames, sc.schedule, options);
  for (std::size_t f = 0; f < sets.size(); ++f) {
    const fs::path dir = out / frame_name(static_cast<int>(f));
    write_subimages(dir, dir, sets[f], sc.schedule);
  }
  std::cout << "decoded " << sets.size() << " frame(s) into " << out.string() << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------------------------
// reconstruct

json write_reconstruction(const fs::path& root, const fs::path& cube_path, const HyperCube& cube,
                          const ReconStats& stats, bool with_png) {
  save_cube(cube_path, cube);
  json e = artifact(root, cube_path);
  e["clipped_negative"] = stats.clipped_negative;
  e["patches"] = stats.patches;
  if (with_png) {
    const RenderResult rgb = cube_to_srgb(cube);
    fs::path png = cube_path;
    png.replace_extension(".png");
    save_png(png, encode_png_rgb8(rgb.image.encoded, rgb.image.width, rgb.image.height));
    e["srgb"] = artifact(root, png);
    e["clip_fraction"] = rgb.clip_fraction;
  }
  return e;
}

int cmd_reconstruct_manifest(const fs::path& manifest_path) {
  const Stage st = open_stage(manifest_path, "decode");
  const fs::path out = st.root;
  const Pipeline p = pipeline_for(st.config);
  json runs = json::array();
  for (const json& run : field<json>(st.manifest, "runs", manifest_path)) {
    const double sigma = field<double>(run, "sigma_pct", manifest_path);
    const std::uint64_t seed = field<std::uint64_t>(run, "seed", manifest_path);
    json entries = json::array();
    for (const json& e : field<json>(run, "frames", manifest_path)) {
      const fs::path sidecar = resolve(st, e);
      const SubImageSet set = read_subimages(sidecar.parent_path(), sidecar);
      ReconStats stats;
      const HyperCube cube = reconstruct_frame(set, p.solver, p.patches, p.kernel, &stats);
      const fs::path cube_path = out / "recon" / run_tag(sigma, seed) / (frame_name(set.frame_index) + ".lmsc");
      json r = write_reconstruction(out, cube_path, cube, stats, true);
      r["frame_index"] = set.frame_index;
      entries.push_back(r);
    }
    runs.push_back({{"sigma_pct", sigma}, {"seed", seed}, {"frames", entries}});
  }
  json m = manifest_head("reconstruct", st.config);
  m["upstream"] = artifact(out, manifest_path);
  m["truth"] = st.manifest.value("truth", json::array());
  m["runs"] = runs;
  write_json(out / "reconstruct.json", m);
  std::cout << "wrote " << (out / "reconstruct.json").string() << "\n";
  return kOk;
}

struct DirectReconOptions {
  std::vector<fs::path> frames;
  fs::path schedule;
  fs::path sensitivity;
  SolverConfig solver;
  std::string reference = "Lime";
  fs::path out;
  fs::path srgb;
};

int cmd_reconstruct_direct(const DirectReconOptions& o) {
  const ScheduleConfig sc = o.schedule.empty() ? ScheduleConfig{} : load_schedule_config(o.schedule);
  const SpectralCurve sensitivity = o.sensitivity.empty() ? canonical_sensitivity() : load_curve_csv(o.sensitivity);
  const Pipeline p = make_pipeline(sc.schedule, sc.leds, sensitivity, o.solver.lambda_reg, o.solver.mu,
                                   o.solver.kernel_floor);
  std::vector<CodedFrame> frames;
  for (const fs::path& f : o.frames) frames.push_back(load_frame(f));
  AlignOptions options;
  options.reference = o.reference;
  const std::vector<SubImageSet> sets = decode_frames(frames, sc.schedule, options);
  for (std::size_t f = 0; f < sets.size(); ++f) {
    fs::path cube_path = o.out;
    fs::path png = o.srgb;
    if (sets.size() > 1) {
      const std::string suffix = "_" + frame_name(static_cast<int>(f));
      cube_path = o.out.parent_path() / (o.out.stem().string() + suffix + o.out.extension().string());
      if (!png.empty()) png = o.srgb.parent_path() / (o.srgb.stem().string() + suffix + o.srgb.extension().string());
    }
    ReconStats stats;
    const HyperCube cube = reconstruct_frame(sets[f], p.solver, p.patches, p.kernel, &stats);
    save_cube(cube_path, cube);
    std::cout << "wrote " << cube_path.string() << " (" << stats.clipped_negative << " negative values clipped)\n";
    if (!png.empty()) {
      const RenderResult rgb = cube_to_srgb(cube);
      save_png(png, encode_png_rgb8(rgb.image.encoded, rgb.image.width, rgb.image.height));
      std::cout << "wrote " << png.string() << " (clip fraction " << rgb.clip_fraction << ")\n";
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------------------------
// eval

json metrics_json(const MetricReport& r) {
  return {{"psnr_db", r.psnr_db}, {"ssim", r.ssim}, {"mae", r.mae}, {"sam_deg", r.sam_deg},
          {"sam_skipped", r.sam_skipped}};
}

int cmd_eval_manifest(const fs::path& manifest_path) {
  const Stage st = open_stage(manifest_path, "reconstruct");
  const fs::path out = st.root;
  std::vector<HyperCube> truth;
  for (const json& e : field<json>(st.manifest, "truth", manifest_path)) truth.push_back(load_cube(resolve(st, e)));

  SweepResult sweep;
  for (const json& run : field<json>(st.manifest, "runs", manifest_path)) {
    MetricReport mean;
    const json frames = field<json>(run, "frames", manifest_path);
    if (frames.empty()) throw DataError(manifest_path.string() + ": run without frames");
    for (const json& e : frames) {
      const int f = field<int>(e, "frame_index", manifest_path);
      if (f < 0 || f >= static_cast<int>(truth.size())) {
        throw DataError(manifest_path.string() + ": no ground truth for frame " + std::to_string(f));
      }
      const MetricReport r = evaluate(truth[f], load_cube(resolve(st, e)));
      mean.psnr_db += r.psnr_db;
      mean.ssim += r.ssim;
      mean.mae += r.mae;
      mean.sam_deg += r.sam_deg;
      mean.sam_skipped += r.sam_skipped;
    }
    const double n = static_cast<double>(frames.size());
    mean.psnr_db /= n;
    mean.ssim /= n;
    mean.mae /= n;
    mean.sam_deg /= n;
    sweep.rows.push_back({field<double>(run, "sigma_pct", manifest_path), field<std::uint64_t>(run, "seed", manifest_path),
                          mean});
  }

  // Mean PSNR per sigma must not rise as noise grows.
  std::vector<double> sigmas;
  for (const SweepRow& r : sweep.rows)
    if (std::find(sigmas.begin(), sigmas.end(), r.sigma_pct) == sigmas.end()) sigmas.push_back(r.sigma_pct);
  std::sort(sigmas.begin(), sigmas.end());
  std::vector<double> mean_psnr;
  for (double s : sigmas) {
    double total = 0.0;
    int count = 0;
    for (const SweepRow& r : sweep.rows)
      if (r.sigma_pct == s) total += r.metrics.psnr_db, ++count;
    mean_psnr.push_back(total / count);
  }
  for (std::size_t i = 1; i < sigmas.size(); ++i) {
    if (mean_psnr[i] > mean_psnr[i - 1]) {
      sweep.warnings.push_back("mean PSNR rises from " + format_number(mean_psnr[i - 1]) + " dB at sigma " +
                               format_number(sigmas[i - 1]) + "% to " + format_number(mean_psnr[i]) + " dB at " +
                               format_number(sigmas[i]) + "%");
    }
  }

  const fs::path csv = out / "metrics.csv";
  write_text(csv, sweep_csv(sweep));
  json m = manifest_head("eval", st.config);
  m["upstream"] = artifact(out, manifest_path);
  m["metrics_csv"] = artifact(out, csv);
  m["warnings"] = sweep.warnings;
  json summary = json::array();
  for (std::size_t i = 0; i < sigmas.size(); ++i) summary.push_back({{"sigma_pct", sigmas[i]}, {"mean_psnr_db", mean_psnr[i]}});
  m["summary"] = summary;
  write_json(out / "eval.json", m);
  for (const std::string& w : sweep.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "wrote " << csv.string() << "\n";
  return kOk;
}

int cmd_eval_direct(const fs::path& reference, const fs::path& test, double peak) {
  const HyperCube ref = load_cube(reference);
  const HyperCube tst = load_cube(test);
  if (!ref.same_shape(tst)) {
    json err = {{"error", "shape_mismatch"},
                {"reference", {{"path", reference.string()}, {"width", ref.width()}, {"height", ref.height()},
                               {"channels", ref.channels()}}},
                {"test", {{"path", test.string()}, {"width", tst.width()}, {"height", tst.height()},
                          {"channels", tst.channels()}}}};
    throw DataError(err.dump());
  }
  std::cout << metrics_json(evaluate(ref, tst, peak)).dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------------------------
// bench

int cmd_bench(const fs::path& config_path, int rainbow_size, bool synthetic) {
  const ExperimentConfig cfg = load_experiment_config(config_path);
  const fs::path out = cfg.output_dir / "bench";
  const Pipeline p = pipeline_for(cfg);
  const std::uint64_t seed = cfg.seeds.front();

  const BenchScene rainbow = rainbow_scene(rainbow_size, rainbow_size, cfg.scene.fwhm_nm);
  const HyperCube recon = run_pipeline(rainbow.cube, p, 0.0, seed);
  save_cube(out / "rainbow_truth.lmsc", rainbow.cube);
  save_cube(out / "rainbow_recon.lmsc", recon);
  const PeakReport peaks = peak_localization(recon, rainbow);
  std::ostringstream rows;
  rows << "row,center_nm,reference_peak_nm,estimated_peak_nm,error_nm\n" << std::setprecision(10);
  for (int y = 0; y < rainbow.cube.height(); ++y) {
    rows << y << ',' << rainbow.row_center_nm[y] << ',' << peaks.reference_peak_nm[y] << ','
         << peaks.estimated_peak_nm[y] << ',' << peaks.row_error_nm[y] << '\n';
  }
  write_text(out / "rainbow_peaks.csv", rows.str());

  json m = manifest_head("bench", cfg);
  m["rainbow"] = {{"size", rainbow_size},
                  {"nm_per_row", 300.0 / (rainbow_size - 1)},
                  {"median_abs_error_nm", peaks.median_abs_error_nm},
                  {"metrics", metrics_json(evaluate(rainbow.cube, recon))},
                  {"truth", artifact(out, out / "rainbow_truth.lmsc")},
                  {"recon", artifact(out, out / "rainbow_recon.lmsc")},
                  {"peaks_csv", artifact(out, out / "rainbow_peaks.csv")}};

  if (synthetic) {
    std::ostringstream csv;
    csv << "kind,index,psnr_db,sam_deg,mae\n" << std::setprecision(10);
    json summary = json::object();
    for (SynthKind kind : {SynthKind::kSingle, SynthKind::kDouble}) {
      const std::vector<SpectralCurve> spectra = synth_spectra(kind);
      std::vector<MetricReport> reports(spectra.size());
      parallel_for(0, static_cast<int>(spectra.size()), [&](int i) {
        HyperCube scene(p.patches.width, p.patches.height, WavelengthGrid::reconstruction());
        scene.data().rowwise() = spectra[i].values().transpose();
        reports[i] = evaluate(scene, run_pipeline(scene, p, 0.0, seed));
      });
      const char* name = kind == SynthKind::kSingle ? "single" : "double";
      double sam = 0.0;
      for (std::size_t i = 0; i < reports.size(); ++i) {
        csv << name << ',' << i << ',' << reports[i].psnr_db << ',' << reports[i].sam_deg << ',' << reports[i].mae << '\n';
        sam += reports[i].sam_deg;
      }
      summary[name] = {{"count", reports.size()}, {"mean_sam_deg", sam / static_cast<double>(reports.size())}};
    }
    write_text(out / "synthetic.csv", csv.str());
    m["synthetic"] = summary;
    m["synthetic"]["csv"] = artifact(out, out / "synthetic.csv");
  }
  write_json(out / "bench.json", m);
  std::cout << "rainbow median |error| " << peaks.median_abs_error_nm << " nm; wrote " << (out / "bench.json").string()
            << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------------------------
// render

int cmd_render(const fs::path& cube_path, const fs::path& out, const std::string& illuminant, const fs::path& strip,
               bool global_normalize) {
  const HyperCube cube = load_cube(cube_path);
  const Illuminant il = illuminant == "d65" ? Illuminant::kD65 : Illuminant::kEqualEnergy;
  if (!out.empty()) {
    const RenderResult r = cube_to_srgb(cube, il);
    save_png(out, encode_png_rgb8(r.image.encoded, r.image.width, r.image.height));
    std::cout << "wrote " << out.string() << " (clip fraction " << r.clip_fraction << ")\n";
  }
  if (!strip.empty()) {
    ChannelStripOptions o;
    o.per_channel_normalize = !global_normalize;
    const GrayImage g = channel_strip(cube, o);
    save_png(strip, encode_png_gray8(g.pixels, g.width, g.height));
    std::cout << "wrote " << strip.string() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------------------------
// calibrate

// Reflectance table: header `wavelength_nm,<name>...`, one row per wavelength.
std::vector<SpectralCurve> load_reflectance_table(const fs::path& path) {
  const CsvTable t = load_csv(path, true);
  if (t.header.size() < 2 || t.header[0] != "wavelength_nm") {
    throw DataError(path.string() + ": expected header 'wavelength_nm,<patch>...'");
  }
  if (t.rows.size() < 2) throw DataError(path.string() + ": need at least two wavelengths");
  const double start = t.rows[0][0];
  const double step = t.rows[1][0] - start;
  const WavelengthGrid grid(start, step, static_cast<int>(t.rows.size()));
  std::vector<SpectralCurve> out;
  for (std::size_t c = 1; c < t.header.size(); ++c) {
    Vector v(static_cast<Eigen::Index>(t.rows.size()));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      if (std::abs(t.rows[r][0] - (start + step * static_cast<double>(r))) > 1e-6) {
        throw DataError(path.string() + ": wavelengths are not uniformly spaced");
      }
      v[static_cast<Eigen::Index>(r)] = t.rows[r][c];
    }
    out.push_back(checked_reflectance(resample_curve({grid, std::move(v)}, WavelengthGrid::calibration())));
  }
  return out;
}

int cmd_calibrate(const fs::path& response_path, const std::vector<fs::path>& led_spds, const fs::path& schedule,
                  const fs::path& sensitivity_path, const fs::path& patches_path, const fs::path& out,
                  const fs::path& report) {
  const WavelengthGrid grid = WavelengthGrid::calibration();
  std::vector<std::string> names;
  std::vector<SpectralCurve> spds;
  if (!led_spds.empty()) {
    for (const fs::path& p : led_spds) {
      names.push_back(p.stem().string());
      spds.push_back(resample_curve(load_curve_csv(p), grid));
    }
  } else {
    const ScheduleConfig sc = schedule.empty() ? ScheduleConfig{} : load_schedule_config(schedule);
    for (const LedChannel& led : sc.leds) {
      names.push_back(led.name);
      spds.push_back(resample_curve(led.spd, grid));
    }
  }
  const SpectralCurve sensitivity =
      resample_curve(sensitivity_path.empty() ? canonical_sensitivity() : load_curve_csv(sensitivity_path), grid);
  const std::vector<SpectralCurve> patches =
      patches_path.empty() ? colorchecker_patches() : load_reflectance_table(patches_path);

  const CsvTable table = load_csv(response_path, false);
  if (table.rows.size() != spds.size()) {
    throw DataError(response_path.string() + ": " + std::to_string(table.rows.size()) + " response rows for " +
                    std::to_string(spds.size()) + " LEDs");
  }
  Matrix measured(static_cast<Eigen::Index>(table.rows.size()), static_cast<Eigen::Index>(patches.size()));
  for (std::size_t l = 0; l < table.rows.size(); ++l) {
    if (table.rows[l].size() != patches.size()) {
      throw DataError(response_path.string() + ": row " + std::to_string(l + 1) + " has " +
                      std::to_string(table.rows[l].size()) + " patches, expected " + std::to_string(patches.size()));
    }
    for (std::size_t p = 0; p < patches.size(); ++p) measured(l, p) = table.rows[l][p];
  }
  if ((measured.array() < 0.0).any()) throw DataError(response_path.string() + ": responses must be non-negative");

  const CalibrationResult r = fit_alpha(measured, spds, patches, sensitivity);
  std::ostringstream csv;
  csv << "led,alpha,residual,indeterminate\n" << std::setprecision(17);
  json leds = json::array();
  for (std::size_t l = 0; l < names.size(); ++l) {
    const auto i = static_cast<Eigen::Index>(l);
    csv << names[l] << ',' << r.alpha[i] << ',' << r.per_led_residual[i] << ',' << (r.indeterminate[l] ? 1 : 0) << '\n';
    leds.push_back({{"name", names[l]}, {"alpha", r.alpha[i]}, {"residual", r.per_led_residual[i]},
                    {"indeterminate", static_cast<bool>(r.indeterminate[l])}});
  }
  write_text(out, csv.str());
  const json rep = {{"residual", r.residual}, {"leds", leds}};
  if (!report.empty()) write_json(report, rep);
  std::cout << "wrote " << out.string() << " (total residual " << r.residual << ")\n";
  for (std::size_t l = 0; l < names.size(); ++l) {
    if (r.indeterminate[l]) std::cerr << "warning: alpha for LED '" << names[l] << "' is indeterminate\n";
  }
  return kOk;
}

int cmd_schedule(const fs::path& out) {
  const std::string yaml = canonical_schedule_yaml();
  if (out.empty()) {
    std::cout << yaml;
  } else {
    write_text(out, yaml);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coded-exposure multispectral simulation and reconstruction toolkit"};
  app.require_subcommand(1);
  int code = kOk;

  auto* simulate = app.add_subcommand("simulate", "Simulate coded frames from an experiment config");
  fs::path sim_config;
  simulate->add_option("config", sim_config, "Experiment YAML")->required();

  auto* decode = app.add_subcommand("decode", "Demosaic and align coded frames into per-LED sub-images");
  fs::path dec_manifest, dec_schedule, dec_out;
  std::vector<fs::path> dec_frames;
  std::string dec_ref = "Lime";
  auto* dec_m = decode->add_option("--manifest", dec_manifest, "simulate.json from a previous stage");
  auto* dec_f = decode->add_option("--frame", dec_frames, "Coded frame file(s), in video order");
  decode->add_option("--schedule", dec_schedule, "Schedule YAML (default: canonical)");
  decode->add_option("--out", dec_out, "Output directory for --frame mode");
  decode->add_option("--reference", dec_ref, "Reference LED for alignment");
  dec_m->excludes(dec_f);

  auto* reconstruct = app.add_subcommand("reconstruct", "Reconstruct hyperspectral cubes");
  fs::path rec_manifest;
  DirectReconOptions rec;
  auto* rec_m = reconstruct->add_option("--manifest", rec_manifest, "decode.json from a previous stage");
  auto* rec_f = reconstruct->add_option("--frame", rec.frames, "Coded frame file(s), in video order");
  reconstruct->add_option("--schedule", rec.schedule, "Schedule YAML (default: canonical)");
  reconstruct->add_option("--sensitivity", rec.sensitivity, "Sensitivity curve CSV (default: built-in model)");
  reconstruct->add_option("--lambda", rec.solver.lambda_reg, "Ridge weight")->capture_default_str();
  reconstruct->add_option("--mu", rec.solver.mu, "Smoothness weight")->capture_default_str();
  reconstruct->add_option("--kernel-floor", rec.solver.kernel_floor, "Minimum patch weight")->capture_default_str();
  reconstruct->add_option("--reference", rec.reference, "Reference LED for alignment");
  reconstruct->add_option("--out", rec.out, "Output cube path for --frame mode");
  reconstruct->add_option("--srgb", rec.srgb, "Optional sRGB PNG path for --frame mode");
  rec_m->excludes(rec_f);

  auto* calibrate = app.add_subcommand("calibrate", "Fit LED scaling factors to measured patch responses");
  fs::path cal_response, cal_schedule, cal_sens, cal_patches, cal_out, cal_report;
  std::vector<fs::path> cal_leds;
  calibrate->add_option("--response", cal_response, "Response CSV, one row per LED, one column per patch")
      ->required();
  calibrate->add_option("--led-spd", cal_leds, "LED SPD curve CSV(s), in response row order");
  calibrate->add_option("--schedule", cal_schedule, "Schedule YAML supplying the LED SPDs");
  calibrate->add_option("--sensitivity", cal_sens, "Sensitivity curve CSV (default: built-in model)");
  calibrate->add_option("--patches", cal_patches, "Reflectance table CSV (default: bundled ColorChecker)");
  calibrate->add_option("--out", cal_out, "Alpha CSV")->required();
  calibrate->add_option("--report", cal_report, "Residual report JSON");

  auto* eval = app.add_subcommand("eval", "Score reconstructions against ground truth");
  fs::path ev_manifest, ev_ref, ev_test;
  double ev_peak = 1.0;
  auto* ev_m = eval->add_option("--manifest", ev_manifest, "reconstruct.json from a previous stage");
  auto* ev_r = eval->add_option("--reference", ev_ref, "Reference cube");
  eval->add_option("--test", ev_test, "Cube under test");
  eval->add_option("--peak", ev_peak, "PSNR peak value")->capture_default_str();
  ev_m->excludes(ev_r);

  auto* bench = app.add_subcommand("bench", "Rainbow and synthetic-spectrum benchmarks");
  fs::path bench_config;
  int bench_size = 512;
  bool bench_no_synth = false;
  bench->add_option("config", bench_config, "Experiment YAML (schedule, sensitivity, solver, seeds)")->required();
  bench->add_option("--rainbow-size", bench_size, "Rainbow scene width and height")->capture_default_str();
  bench->add_flag("--no-synthetic", bench_no_synth, "Skip the synthetic single/double Gaussian sets");

  auto* render = app.add_subcommand("render", "Render a cube to sRGB and channel panels");
  fs::path ren_cube, ren_out, ren_strip;
  std::string ren_illum = "equal";
  bool ren_global = false;
  render->add_option("cube", ren_cube, "Cube file")->required();
  render->add_option("--out", ren_out, "sRGB PNG path");
  render->add_option("--strip", ren_strip, "Channel panel PNG path");
  render->add_option("--illuminant", ren_illum, "equal or d65")
      ->check(CLI::IsMember({"equal", "d65"}))
      ->capture_default_str();
  render->add_flag("--global-normalize", ren_global, "Scale every panel by the cube maximum");

  auto* schedule = app.add_subcommand("schedule", "Print the canonical schedule YAML");
  fs::path sch_out;
  schedule->add_option("--out", sch_out, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  auto usage = [&](const std::string& message) {
    std::cerr << "usage error: " << message << "\n";
    return kUsage;
  };

  try {
    if (simulate->parsed()) {
      code = cmd_simulate(sim_config);
    } else if (decode->parsed()) {
      if (!dec_manifest.empty()) {
        code = cmd_decode_manifest(dec_manifest);
      } else if (!dec_frames.empty() && !dec_out.empty()) {
        code = cmd_decode_direct(dec_frames, dec_schedule, dec_out, dec_ref);
      } else {
        code = usage("decode needs --manifest, or --frame with --out");
      }
    } else if (reconstruct->parsed()) {
      if (!rec_manifest.empty()) {
        code = cmd_reconstruct_manifest(rec_manifest);
      } else if (!rec.frames.empty() && !rec.out.empty()) {
        code = cmd_reconstruct_direct(rec);
      } else {
        code = usage("reconstruct needs --manifest, or --frame with --out");
      }
    } else if (calibrate->parsed()) {
      code = cmd_calibrate(cal_response, cal_leds, cal_schedule, cal_sens, cal_patches, cal_out, cal_report);
    } else if (eval->parsed()) {
      if (!ev_manifest.empty()) {
        code = cmd_eval_manifest(ev_manifest);
      } else if (!ev_ref.empty() && !ev_test.empty()) {
        code = cmd_eval_direct(ev_ref, ev_test, ev_peak);
      } else {
        code = usage("eval needs --manifest, or --reference with --test");
      }
    } else if (bench->parsed()) {
      if (bench_size < 2) return usage("--rainbow-size must be at least 2");
      code = cmd_bench(bench_config, bench_size, !bench_no_synth);
    } else if (render->parsed()) {
      if (ren_out.empty() && ren_strip.empty()) return usage("render needs --out and/or --strip");
      code = cmd_render(ren_cube, ren_out, ren_illum, ren_strip, ren_global);
    } else if (schedule->parsed()) {
      code = cmd_schedule(sch_out);
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  }
  return code;
}
