#include "cepspec/forward.hpp"

#include <cmath>

#include "cepspec/parallel.hpp"
#include "cepspec/random.hpp"

namespace cepspec {

namespace {

SpectralCurve led_response_curve(const LedChannel& led, const SpectralCurve& sensitivity) {
  const WavelengthGrid& g = led.spd.grid();
  Vector v(g.count());
  for (int k = 0; k < g.count(); ++k) {
    const double e = led.spd[k];
    if (e < 0.0) throw DataError("LED '" + led.name + "' has a negative SPD sample");
    v[k] = led.alpha * e * sample_curve(sensitivity, g.wavelength(k));
  }
  return {g, std::move(v)};
}

double dot(const double* a, const double* r, int n) {
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += a[k] * r[k];
  return sum;
}

void check_scene(const HyperCube& scene, const SensingModel& model) {
  if (!(scene.grid() == model.grid)) {
    throw DataError("scene grid (" + scene.grid().describe() + ") differs from sensing grid (" +
                    model.grid.describe() + ")");
  }
}

void add_noise(CodedFrame& frame, std::uint64_t seed) {
  if (frame.noise_sigma_frac < 0.0 || frame.noise_sigma_frac > 1.0) {
    throw DataError("noise_sigma_frac must lie in [0, 1]");
  }
  if (frame.noise_sigma_frac == 0.0) return;
  const double sigma = frame.noise_sigma_frac * frame.values.abs().maxCoeff();
  const int width = frame.width();
  parallel_for(0, frame.height(), [&](int y) {
    for (int x = 0; x < width; ++x) {
      const auto p = static_cast<std::uint64_t>(y) * width + x;
      frame.values(y, x) += sigma * counter_normal(seed, static_cast<std::uint64_t>(frame.frame_index), p);
    }
  });
}

}  // namespace

SensingModel build_sensing_model(std::span<const LedChannel> leds, const SpectralCurve& sensitivity,
                                 const WavelengthGrid& grid) {
  Matrix w(static_cast<Eigen::Index>(leds.size()), grid.count());
  for (std::size_t l = 0; l < leds.size(); ++l) {
    w.row(static_cast<Eigen::Index>(l)) =
        resample_curve(led_response_curve(leds[l], sensitivity), grid).values().transpose();
  }
  return {grid, std::move(w)};
}

SensingModel build_extended_sensing_model(std::span<const LedChannel> leds,
                                          const SpectralCurve& sensitivity) {
  const SensingModel cal = build_sensing_model(leds, sensitivity, WavelengthGrid::calibration());
  Matrix w(cal.led_weights.rows(), 33);
  for (Eigen::Index l = 0; l < w.rows(); ++l) {
    w.row(l) = collapse_to_extended(cal.led_weights.row(l).transpose()).transpose();
  }
  return {WavelengthGrid::extended(), std::move(w)};
}

Matrix tile_sensing_vectors(const CodingSchedule& schedule, const SensingModel& model) {
  if (model.led_weights.rows() != schedule.led_count()) {
    throw DataError("sensing model has " + std::to_string(model.led_weights.rows()) +
                    " LEDs, schedule has " + std::to_string(schedule.led_count()));
  }
  Matrix a = Matrix::Zero(schedule.layout.tiles(), model.grid.count());
  for (int t = 0; t < schedule.layout.tiles(); ++t) {
    for (int s = 0; s < schedule.subframe_count(); ++s) {
      if (!schedule.exposed(t, s)) continue;
      for (int l : schedule.lit_leds[s]) a.row(t) += model.led_weights.row(l);
    }
  }
  return a;
}

Vector effective_sensing_vector(const CodingSchedule& schedule, const SensingModel& model, int y, int x) {
  return tile_sensing_vectors(schedule, model).row(schedule.layout.tile_index(y, x)).transpose();
}

CodedFrame simulate_frame(const HyperCube& scene, const CodingSchedule& schedule,
                          const SensingModel& model, double noise_sigma_frac, std::uint64_t seed,
                          int frame_index) {
  check_scene(scene, model);
  const Matrix a = tile_sensing_vectors(schedule, model);
  CodedFrame frame{Image(scene.height(), scene.width()), noise_sigma_frac, seed, frame_index};
  const int channels = scene.channels();
  const int width = scene.width();
  parallel_for(0, scene.height(), [&](int y) {
    for (int x = 0; x < width; ++x) {
      const int t = schedule.layout.tile_index(y, x);
      frame.values(y, x) = dot(a.row(t).data(), scene.data().row(scene.index(y, x)).data(), channels);
    }
  });
  add_noise(frame, seed);
  return frame;
}

CodedFrame simulate_frame(std::span<const HyperCube> led_scenes, const CodingSchedule& schedule,
                          const SensingModel& model, double noise_sigma_frac, std::uint64_t seed,
                          int frame_index) {
  if (static_cast<int>(led_scenes.size()) != schedule.led_count()) {
    throw DataError("need one scene state per LED");
  }
  for (const auto& scene : led_scenes) {
    check_scene(scene, model);
    if (!scene.same_shape(led_scenes.front())) throw DataError("per-LED scenes differ in shape");
  }
  const HyperCube& ref = led_scenes.front();
  const Matrix a = tile_sensing_vectors(schedule, model);
  CodedFrame frame{Image(ref.height(), ref.width()), noise_sigma_frac, seed, frame_index};
  const int channels = ref.channels();
  const int width = ref.width();
  parallel_for(0, ref.height(), [&](int y) {
    for (int x = 0; x < width; ++x) {
      const int t = schedule.layout.tile_index(y, x);
      const HyperCube& scene = led_scenes[schedule.layout.led_at(t)];
      frame.values(y, x) = dot(a.row(t).data(), scene.data().row(scene.index(y, x)).data(), channels);
    }
  });
  add_noise(frame, seed);
  return frame;
}

std::vector<CodedFrame> simulate_video(std::span<const HyperCube> scenes, const CodingSchedule& schedule,
                                       const SensingModel& model, double noise_sigma_frac,
                                       std::uint64_t seed) {
  std::vector<CodedFrame> frames;
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    if (!scenes[i].same_shape(scenes.front())) {
      throw DataError("video frame " + std::to_string(i) + " differs in shape from frame 0");
    }
    frames.push_back(simulate_frame(scenes[i], schedule, model, noise_sigma_frac, seed, static_cast<int>(i)));
  }
  return frames;
}

SparseRowMatrix build_sensing_matrix(const CodingSchedule& schedule, const SensingModel& model,
                                     int width, int height) {
  if (width <= 0 || height <= 0) throw DataError("sensor dimensions must be positive");
  const Eigen::Index pixels = static_cast<Eigen::Index>(width) * height;
  if (pixels > kMaxSensingMatrixPixels) {
    throw DataError("sensing matrix for " + std::to_string(pixels) + " pixels exceeds the guard of " +
                    std::to_string(kMaxSensingMatrixPixels));
  }
  const Matrix a = tile_sensing_vectors(schedule, model);
  const int channels = model.grid.count();
  SparseRowMatrix m(pixels, pixels * channels);
  m.reserve(Eigen::VectorXi::Constant(pixels, channels));
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Eigen::Index p = static_cast<Eigen::Index>(y) * width + x;
      const int t = schedule.layout.tile_index(y, x);
      for (int k = 0; k < channels; ++k) m.insert(p, p * channels + k) = a(t, k);
    }
  }
  m.makeCompressed();
  return m;
}

Vector vectorize(const HyperCube& cube) {
  Vector x(cube.pixels() * cube.channels());
  for (Eigen::Index p = 0; p < cube.pixels(); ++p) x.segment(p * cube.channels(), cube.channels()) = cube.data().row(p).transpose();
  return x;
}

}  // namespace cepspec
