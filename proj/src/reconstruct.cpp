#include "cepspec/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cepspec/parallel.hpp"

namespace cepspec {

namespace {

std::vector<int> axis_anchors(int dim, int size, int stride, int period) {
  std::vector<int> anchors;
  for (int a = 0; a + size <= dim; a += stride) anchors.push_back(a);
  if (anchors.back() + size < dim) {
    const int flush = dim - size;
    const int snapped = flush - flush % period;
    if (snapped > anchors.back()) anchors.push_back(snapped);
    if (snapped + size < dim) anchors.push_back(flush);
  }
  return anchors;
}

std::vector<double> hann_axis(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    const double s = std::sin(std::numbers::pi * (i + 0.5) / n);
    w[i] = s * s;
  }
  const double peak = *std::max_element(w.begin(), w.end());
  for (double& v : w) v /= peak;
  return w;
}

}  // namespace

std::vector<PatchPosition> patch_positions(int width, int height, const PatchSpec& spec) {
  if (spec.stride_y % spec.tile_rows != 0 || spec.stride_x % spec.tile_cols != 0) {
    throw DataError("patch stride must be a multiple of the tile periods");
  }
  if (width < spec.width || height < spec.height) {
    throw DataError("image " + std::to_string(width) + "x" + std::to_string(height) + " is smaller than one " +
                    std::to_string(spec.width) + "x" + std::to_string(spec.height) + " patch");
  }
  std::vector<PatchPosition> out;
  for (int y : axis_anchors(height, spec.height, spec.stride_y, spec.tile_rows))
    for (int x : axis_anchors(width, spec.width, spec.stride_x, spec.tile_cols)) out.push_back({y, x});
  return out;
}

std::vector<Patch> extract_patches(const SubImageSet& images, const PatchSpec& spec) {
  const std::vector<PatchPosition> positions = patch_positions(images.width(), images.height(), spec);
  const int channels = images.led_count();
  std::vector<Patch> out(positions.size());
  parallel_for(0, static_cast<int>(positions.size()), [&](int i) {
    Patch& p = out[i];
    p.position = positions[i];
    p.values.resize(static_cast<Eigen::Index>(spec.height) * spec.width, channels);
    for (int c = 0; c < channels; ++c) {
      const Image& img = images.images[c];
      for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x)
          p.values(static_cast<Eigen::Index>(y) * spec.width + x, c) = img(p.position.y + y, p.position.x + x);
    }
  });
  return out;
}

WeightKernel::WeightKernel(Image values) : values_(std::move(values)) {
  if (values_.size() == 0) throw DataError("empty weight kernel");
  if (!(values_.minCoeff() > 0.0) || !values_.allFinite()) {
    throw DataError("weight kernel must be strictly positive and finite");
  }
}

WeightKernel default_kernel(const PatchSpec& spec, double floor) {
  if (!(floor > 0.0) || floor > 1.0) throw DataError("kernel floor must lie in (0, 1]");
  const std::vector<double> wy = hann_axis(spec.height);
  const std::vector<double> wx = hann_axis(spec.width);
  Image k(spec.height, spec.width);
  for (int y = 0; y < spec.height; ++y)
    for (int x = 0; x < spec.width; ++x) k(y, x) = std::max(floor, wy[y] * wx[x]);
  return WeightKernel(std::move(k));
}

ReconModel make_recon_model(const CodingSchedule& schedule, const SensingModel& extended, double lambda_reg,
                            double mu) {
  if (extended.grid.count() != 33) throw DataError("reconstruction needs sensing weights on the 33-channel grid");
  if (extended.led_weights.rows() != schedule.led_count()) throw DataError("sensing model and schedule disagree on LED count");
  ReconModel m;
  m.sensing = extended.led_weights;
  m.subframes = Eigen::Map<const Eigen::VectorXi>(schedule.subframes_per_led.data(), schedule.led_count());
  m.lambda_reg = lambda_reg;
  m.mu = mu;
  return m;
}

Matrix second_difference(int n) {
  Matrix d = Matrix::Zero(std::max(0, n - 2), n);
  for (int i = 0; i + 2 < n; ++i) {
    d(i, i) = 1.0;
    d(i, i + 1) = -2.0;
    d(i, i + 2) = 1.0;
  }
  return d;
}

LinearReconstructor::LinearReconstructor(ReconModel model) : model_(std::move(model)) {
  const Matrix& w = model_.sensing;
  if (model_.subframes.size() != w.rows()) throw DataError("need one sub-frame count per LED");
  if ((model_.subframes.array() <= 0).any()) throw DataError("sub-frame counts must be positive");
  if (model_.lambda_reg < 0.0 || model_.mu < 0.0) throw DataError("regularization weights must be non-negative");
  if (model_.lambda_reg == 0.0 && model_.mu == 0.0 && w.rows() < w.cols()) {
    throw NumericalError("reconstruction system is rank-deficient with " + std::to_string(w.rows()) +
                         " measurements for " + std::to_string(w.cols()) +
                         " channels; use a positive lambda_reg or mu");
  }
  const int n = static_cast<int>(w.cols());
  const Matrix wtw = w.transpose() * w;
  const double scale = wtw.trace() / n;
  const Matrix d = second_difference(n);
  system_ = wtw + (model_.lambda_reg * scale) * Matrix::Identity(n, n) + (model_.mu * scale) * (d.transpose() * d);
  Eigen::LLT<Matrix> llt(system_);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("reconstruction system is not positive definite; increase regularization");
  }
  solution_map_ = llt.solve(w.transpose());
  if (!solution_map_.allFinite()) throw NumericalError("reconstruction solve produced non-finite values");
}

Vector LinearReconstructor::normalize(const Vector& measurements) const {
  if (measurements.size() != model_.subframes.size()) throw DataError("measurement count differs from LED count");
  return measurements.cwiseQuotient(model_.subframes.cast<double>());
}

Matrix LinearReconstructor::solve(const Matrix& measurements) const {
  if (measurements.cols() != model_.subframes.size()) throw DataError("measurement count differs from LED count");
  const Eigen::RowVectorXd inv_n = model_.subframes.cast<double>().cwiseInverse().transpose();
  const Matrix normalized = measurements.array().rowwise() * inv_n.array();
  return normalized * solution_map_.transpose();
}

Vector LinearReconstructor::solve_pixel(const Vector& measurements) const {
  return solution_map_ * normalize(measurements);
}

double LinearReconstructor::normal_equation_residual(const Vector& measurements, const Vector& solution) const {
  const Vector rhs = model_.sensing.transpose() * normalize(measurements);
  const double denom = rhs.norm();
  const double num = (system_ * solution - rhs).norm();
  return denom > 0.0 ? num / denom : num;
}

Patch reconstruct_patch(const Patch& patch, const LinearReconstructor& solver) {
  return {patch.position, solver.solve(patch.values)};
}

HyperCube fold_aggregate(const std::vector<Patch>& patches, const WeightKernel& kernel, int width, int height,
                         const WavelengthGrid& grid) {
  const int ph = kernel.height();
  const int pw = kernel.width();
  const int channels = grid.count();
  Matrix num = Matrix::Zero(static_cast<Eigen::Index>(width) * height, channels);
  Image den = Image::Zero(height, width);
  for (const Patch& p : patches) {
    if (p.values.rows() != static_cast<Eigen::Index>(ph) * pw || p.values.cols() != channels) {
      throw DataError("patch shape does not match kernel and grid");
    }
    if (p.position.y < 0 || p.position.x < 0 || p.position.y + ph > height || p.position.x + pw > width) {
      throw DataError("patch at (" + std::to_string(p.position.y) + ", " + std::to_string(p.position.x) +
                      ") extends past the output");
    }
    for (int y = 0; y < ph; ++y) {
      for (int x = 0; x < pw; ++x) {
        const double k = kernel.values()(y, x);
        const Eigen::Index out = static_cast<Eigen::Index>(p.position.y + y) * width + p.position.x + x;
        num.row(out) += k * p.values.row(static_cast<Eigen::Index>(y) * pw + x);
        den(p.position.y + y, p.position.x + x) += k;
      }
    }
  }
  std::vector<std::pair<int, int>> uncovered;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (den(y, x) == 0.0) uncovered.emplace_back(y, x);
  if (!uncovered.empty()) {
    std::ostringstream os;
    os << uncovered.size() << " output pixels are not covered by any patch, e.g. (y, x):";
    for (std::size_t i = 0; i < std::min<std::size_t>(uncovered.size(), 8); ++i) {
      os << " (" << uncovered[i].first << ", " << uncovered[i].second << ")";
    }
    throw DataError(os.str());
  }
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) num.row(static_cast<Eigen::Index>(y) * width + x) /= den(y, x);
  return HyperCube(width, height, grid, std::move(num));
}

HyperCube reconstruct_frame(const SubImageSet& images, const LinearReconstructor& solver, const PatchSpec& spec,
                            const WeightKernel& kernel, ReconStats* stats) {
  if (kernel.height() != spec.height || kernel.width() != spec.width) {
    throw DataError("kernel size differs from patch size");
  }
  std::vector<Patch> patches = extract_patches(images, spec);
  parallel_for(0, static_cast<int>(patches.size()), [&](int i) { patches[i] = reconstruct_patch(patches[i], solver); });
  HyperCube cube = strip_edge_channels(fold_aggregate(patches, kernel, images.width(), images.height()));
  long long clipped = 0;
  for (Eigen::Index i = 0; i < cube.data().size(); ++i) {
    double& v = cube.data().data()[i];
    if (!std::isfinite(v)) throw NumericalError("reconstruction produced a non-finite value");
    if (v < 0.0) {
      v = 0.0;
      ++clipped;
    }
  }
  if (stats) {
    stats->clipped_negative = clipped;
    stats->patches = static_cast<int>(patches.size());
  }
  return cube;
}

}  // namespace cepspec
