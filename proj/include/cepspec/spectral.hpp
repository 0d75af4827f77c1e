#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>

#include "cepspec/error.hpp"

namespace cepspec {

template <typename Scalar>
using VectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
// Single-channel image, rows = height, cols = width.
template <typename Scalar>
using ImageT = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Vector = VectorT<double>;
using Matrix = MatrixT<double>;
using Image = ImageT<double>;

// Uniform wavelength sampling. Channel k carries the label start + k*step and
// represents the bin [label, label + step).
class WavelengthGrid {
 public:
  WavelengthGrid(double start_nm, double step_nm, int count);

  // 380-780 nm, 41 channels.
  static WavelengthGrid calibration();
  // 400-700 nm, 31 channels.
  static WavelengthGrid reconstruction();
  // 33 channels: 380-390 aggregate, 400-700, 710-780 aggregate. Labels run 390..710.
  static WavelengthGrid extended();

  double start_nm() const { return start_nm_; }
  double step_nm() const { return step_nm_; }
  int count() const { return count_; }

  double wavelength(int k) const { return start_nm_ + k * step_nm_; }
  double bin_lower(int k) const { return wavelength(k); }
  double bin_upper(int k) const { return wavelength(k) + step_nm_; }
  double bin_midpoint(int k) const { return wavelength(k) + 0.5 * step_nm_; }
  double end_nm() const { return wavelength(count_ - 1); }

  // Equality up to 1e-9 nm on start and step.
  bool operator==(const WavelengthGrid& other) const;

  std::string describe() const;

 private:
  double start_nm_;
  double step_nm_;
  int count_;
};

// Values above 1 + kReflectanceTolerance are rejected for reflectance curves.
inline constexpr double kReflectanceTolerance = 1e-6;

template <typename Scalar>
class BasicSpectralCurve {
 public:
  BasicSpectralCurve(WavelengthGrid grid, VectorT<Scalar> values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.count()) {
      throw DataError("spectral curve has " + std::to_string(values_.size()) +
                      " values for a grid of " + std::to_string(grid_.count()));
    }
  }

  // Constant curve.
  BasicSpectralCurve(WavelengthGrid grid, Scalar value)
      : grid_(grid), values_(VectorT<Scalar>::Constant(grid.count(), value)) {}

  const WavelengthGrid& grid() const { return grid_; }
  const VectorT<Scalar>& values() const { return values_; }
  Scalar operator[](int k) const { return values_[k]; }
  int size() const { return grid_.count(); }

 private:
  WavelengthGrid grid_;
  VectorT<Scalar> values_;
};

using SpectralCurve = BasicSpectralCurve<double>;

// Hyperspectral cube stored pixel-major: data() is P x Lambda with pixel index y*width + x,
// so each row is one pixel spectrum.
template <typename Scalar>
class BasicHyperCube {
 public:
  using Data = MatrixT<Scalar>;

  BasicHyperCube(int width, int height, WavelengthGrid grid)
      : width_(width), height_(height), grid_(grid) {
    check_dims();
    data_ = Data::Zero(static_cast<Eigen::Index>(width) * height, grid.count());
  }

  BasicHyperCube(int width, int height, WavelengthGrid grid, Data data)
      : width_(width), height_(height), grid_(grid), data_(std::move(data)) {
    check_dims();
    if (data_.rows() != static_cast<Eigen::Index>(width) * height || data_.cols() != grid.count()) {
      throw DataError("cube data is " + std::to_string(data_.rows()) + "x" +
                      std::to_string(data_.cols()) + ", expected " +
                      std::to_string(static_cast<long long>(width) * height) + "x" +
                      std::to_string(grid.count()));
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  Eigen::Index pixels() const { return data_.rows(); }
  int channels() const { return grid_.count(); }
  const WavelengthGrid& grid() const { return grid_; }

  const Data& data() const { return data_; }
  Data& data() { return data_; }

  Eigen::Index index(int y, int x) const { return static_cast<Eigen::Index>(y) * width_ + x; }
  Scalar& operator()(int y, int x, int c) { return data_(index(y, x), c); }
  Scalar operator()(int y, int x, int c) const { return data_(index(y, x), c); }

  auto spectrum(int y, int x) const { return data_.row(index(y, x)); }
  auto spectrum(int y, int x) { return data_.row(index(y, x)); }

  ImageT<Scalar> channel(int c) const {
    ImageT<Scalar> img(height_, width_);
    for (int y = 0; y < height_; ++y)
      for (int x = 0; x < width_; ++x) img(y, x) = data_(index(y, x), c);
    return img;
  }

  void set_channel(int c, const ImageT<Scalar>& img) {
    if (img.rows() != height_ || img.cols() != width_) throw DataError("channel image size mismatch");
    for (int y = 0; y < height_; ++y)
      for (int x = 0; x < width_; ++x) data_(index(y, x), c) = img(y, x);
  }

  bool same_shape(const BasicHyperCube& other) const {
    return width_ == other.width_ && height_ == other.height_ && grid_ == other.grid_;
  }

  template <typename Other>
  BasicHyperCube<Other> cast() const {
    return BasicHyperCube<Other>(width_, height_, grid_, data_.template cast<Other>());
  }

 private:
  void check_dims() const {
    if (width_ <= 0 || height_ <= 0) {
      throw DataError("cube dimensions must be positive, got " + std::to_string(width_) + "x" +
                      std::to_string(height_));
    }
  }

  int width_;
  int height_;
  WavelengthGrid grid_;
  Data data_;
};

using HyperCube = BasicHyperCube<double>;

enum class ResampleMode { kBinIntegrate, kLinear };

// Piecewise-linear value of the curve at wavelength, clamped to the edge samples outside its span.
double sample_curve(const SpectralCurve& curve, double wavelength_nm);

// Integral of the piecewise-linear (edge-clamped) curve over [lower_nm, upper_nm].
double integrate_curve(const SpectralCurve& curve, double lower_nm, double upper_nm);

// kBinIntegrate: mean of the curve over each target bin (trapezoidal integral divided by
// the bin width), so constants map to themselves and sum(value * step) preserves the
// integral. Throws if a target bin holds no source sample.
// kLinear: linear interpolation at each target bin midpoint.
// A curve already on the target grid is returned unchanged in either mode.
SpectralCurve resample_curve(const SpectralCurve& curve, const WavelengthGrid& target,
                             ResampleMode mode = ResampleMode::kBinIntegrate);

// Throws if any value is negative or exceeds 1 + kReflectanceTolerance. Values inside the
// tolerance band are clamped to 1.
SpectralCurve checked_reflectance(const SpectralCurve& curve);

// 31-channel (400-700 nm) cube to the 33-channel extended grid: channel 0 is the mean of the
// 410 and 420 nm channels, channel 32 repeats 700 nm.
HyperCube mirror_extend_cube(const HyperCube& cube);

// Inverse of mirror_extend_cube on the 31 interior channels.
HyperCube strip_edge_channels(const HyperCube& cube);

// Collapses a curve on the 41-channel calibration grid to the extended grid by summing the
// edge bins (380+390 and 710..780) into the aggregate channels.
Vector collapse_to_extended(const Vector& calibration_values);

}  // namespace cepspec
