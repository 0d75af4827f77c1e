#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cepspec/coding.hpp"
#include "cepspec/spectral.hpp"

namespace cepspec {

// A schedule plus the LED bank it drives.
//
// YAML layout (paths are relative to the file that names them):
//
//   include: [bank.yaml]          # optional; keys here override included ones
//   subframe_us: 150
//   readout_us: 6000
//   leds:
//     - name: UV
//       subframes: 9
//       alpha: 1.0                # optional
//       spd: {csv: leds/uv.csv}   # or {gaussian: {center_nm: 400, fwhm_nm: 20}}
//   firing_order: [UV, ...]       # optional, defaults to the listed order
//   tile:                         # rows x cols grid of LED names
//     - [UV, Violet, Royal Blue, Blue]
struct ScheduleConfig {
  CodingSchedule schedule = canonical_schedule();
  std::vector<LedChannel> leds = canonical_leds();
};

ScheduleConfig load_schedule_config(const std::filesystem::path& path);
ScheduleConfig parse_schedule_config(const std::string& yaml, const std::filesystem::path& base_dir);

// Canonical schedule and Gaussian LED models as YAML.
std::string canonical_schedule_yaml();

struct SceneSource {
  enum class Kind { kCubes, kFlat, kMixture, kRainbow, kTranslating };
  Kind kind = Kind::kFlat;
  std::vector<std::filesystem::path> cubes;  // kCubes: one cube per video frame
  int width = 96;
  int height = 96;
  int frames = 1;
  double value = 0.5;        // kFlat reflectance
  int components = 3;        // kMixture Gaussians per basis spectrum
  double fwhm_nm = 20.0;     // kRainbow
  double velocity_px = 2.0;  // kTranslating, pixels per frame along x
  std::uint64_t scene_seed = 0;
};

struct SolverConfig {
  double lambda_reg = 1e-5;
  double mu = 1e-2;
  double kernel_floor = 0.01;
};

struct ExperimentConfig {
  std::filesystem::path path;
  std::string digest;  // SHA-256 of the config and every file it includes
  ScheduleConfig schedule;
  SpectralCurve sensitivity = canonical_sensitivity();  // {csv: path} or {model: silicon}
  SceneSource scene;
  std::vector<double> sigmas_pct;
  std::vector<std::uint64_t> seeds;
  SolverConfig solver;
  int flow_block = 16;
  int flow_search_radius = 12;
  std::string reference_led = "Lime";
  std::filesystem::path output_dir;
};

ExperimentConfig load_experiment_config(const std::filesystem::path& path);

std::string sha256_hex(const std::vector<unsigned char>& bytes);

}  // namespace cepspec
