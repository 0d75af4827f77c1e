#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "cepspec/error.hpp"
#include "cepspec/spectral.hpp"

namespace cepspec {

// PSNR reported for identical inputs.
inline constexpr double kPsnrCapDb = 100.0;

struct SsimOptions {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double data_range = 1.0;
};

template <typename DerivedA, typename DerivedB>
void require_same_size(const Eigen::DenseBase<DerivedA>& a, const Eigen::DenseBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DataError("metric inputs differ in size: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

// 10 log10(peak^2 / MSE) over all elements, capped at kPsnrCapDb.
template <typename DerivedA, typename DerivedB>
double psnr(const Eigen::DenseBase<DerivedA>& a, const Eigen::DenseBase<DerivedB>& b, double peak = 1.0) {
  require_same_size(a, b);
  const double mse = (a.derived().template cast<double>().array() - b.derived().template cast<double>().array())
                         .square()
                         .mean();
  if (mse == 0.0) return kPsnrCapDb;
  return std::min(kPsnrCapDb, 10.0 * std::log10(peak * peak / mse));
}

template <typename DerivedA, typename DerivedB>
double mae(const Eigen::DenseBase<DerivedA>& a, const Eigen::DenseBase<DerivedB>& b) {
  require_same_size(a, b);
  return (a.derived().template cast<double>().array() - b.derived().template cast<double>().array()).abs().mean();
}

struct SamResult {
  double mean_deg = 0.0;
  Eigen::Index skipped = 0;  // pixels where either spectrum has zero norm
};

// Spectral angle between corresponding rows (one spectrum per row).
template <typename DerivedA, typename DerivedB>
SamResult spectral_angle(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  require_same_size(a, b);
  SamResult r;
  double total = 0.0;
  Eigen::Index used = 0;
  for (Eigen::Index p = 0; p < a.rows(); ++p) {
    const double na = a.row(p).template cast<double>().norm();
    const double nb = b.row(p).template cast<double>().norm();
    if (na == 0.0 || nb == 0.0) {
      ++r.skipped;
      continue;
    }
    const double c = std::clamp(a.row(p).template cast<double>().dot(b.row(p).template cast<double>()) / (na * nb),
                                -1.0, 1.0);
    total += std::acos(c);
    ++used;
  }
  r.mean_deg = used > 0 ? total / used * 180.0 / std::numbers::pi : 0.0;
  return r;
}

// Windowed SSIM with a normalized Gaussian window, averaged over the positions where the window
// fits entirely inside the image. Population (1/N) statistics.
template <typename DerivedA, typename DerivedB>
double ssim(const Eigen::DenseBase<DerivedA>& a_in, const Eigen::DenseBase<DerivedB>& b_in,
            const SsimOptions& options = {}) {
  require_same_size(a_in, b_in);
  const Eigen::ArrayXXd a = a_in.derived().template cast<double>().array();
  const Eigen::ArrayXXd b = b_in.derived().template cast<double>().array();
  const int w = options.window;
  const int half = w / 2;
  if (w < 1 || w % 2 == 0) throw DataError("SSIM window must be odd and positive");
  if (a.rows() < w || a.cols() < w) throw DataError("image smaller than the SSIM window");

  Eigen::ArrayXd g(w);
  for (int i = 0; i < w; ++i) g[i] = std::exp(-0.5 * std::pow((i - half) / options.sigma, 2));
  g /= g.sum();

  // Separable valid-mode filtering.
  auto filter = [&](const Eigen::ArrayXXd& img) {
    const Eigen::Index rows = img.rows() - w + 1;
    const Eigen::Index cols = img.cols() - w + 1;
    Eigen::ArrayXXd tmp = Eigen::ArrayXXd::Zero(img.rows(), cols);
    for (int i = 0; i < w; ++i) tmp += g[i] * img.middleCols(i, cols);
    Eigen::ArrayXXd out = Eigen::ArrayXXd::Zero(rows, cols);
    for (int i = 0; i < w; ++i) out += g[i] * tmp.middleRows(i, rows);
    return out;
  };

  const Eigen::ArrayXXd mu_a = filter(a);
  const Eigen::ArrayXXd mu_b = filter(b);
  const Eigen::ArrayXXd var_a = filter(a * a) - mu_a * mu_a;
  const Eigen::ArrayXXd var_b = filter(b * b) - mu_b * mu_b;
  const Eigen::ArrayXXd cov = filter(a * b) - mu_a * mu_b;
  const double c1 = std::pow(options.k1 * options.data_range, 2);
  const double c2 = std::pow(options.k2 * options.data_range, 2);
  const Eigen::ArrayXXd map = ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
                              ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
  return map.mean();
}

struct MetricReport {
  double psnr_db = 0.0;
  double ssim = 0.0;
  double mae = 0.0;
  double sam_deg = 0.0;
  Eigen::Index sam_skipped = 0;
};

template <typename Scalar>
void require_same_shape(const BasicHyperCube<Scalar>& a, const BasicHyperCube<Scalar>& b) {
  if (!a.same_shape(b)) {
    throw DataError("cubes differ: " + std::to_string(a.width()) + "x" + std::to_string(a.height()) + "x" +
                    std::to_string(a.channels()) + " vs " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()) + "x" + std::to_string(b.channels()));
  }
}

// Volumetric PSNR over every voxel; reference first.
template <typename Scalar>
double psnr(const BasicHyperCube<Scalar>& reference, const BasicHyperCube<Scalar>& test, double peak = 1.0) {
  require_same_shape(reference, test);
  return psnr(reference.data(), test.data(), peak);
}

template <typename Scalar>
double mae(const BasicHyperCube<Scalar>& a, const BasicHyperCube<Scalar>& b) {
  require_same_shape(a, b);
  return mae(a.data(), b.data());
}

template <typename Scalar>
SamResult sam(const BasicHyperCube<Scalar>& a, const BasicHyperCube<Scalar>& b) {
  require_same_shape(a, b);
  return spectral_angle(a.data(), b.data());
}

// Mean of per-channel SSIM; reference first.
template <typename Scalar>
double ssim(const BasicHyperCube<Scalar>& reference, const BasicHyperCube<Scalar>& test,
            const SsimOptions& options = {}) {
  require_same_shape(reference, test);
  double total = 0.0;
  for (int c = 0; c < reference.channels(); ++c) total += ssim(reference.channel(c), test.channel(c), options);
  return total / reference.channels();
}

template <typename Scalar>
MetricReport evaluate(const BasicHyperCube<Scalar>& reference, const BasicHyperCube<Scalar>& test, double peak = 1.0) {
  MetricReport r;
  r.psnr_db = psnr(reference, test, peak);
  SsimOptions opts;
  opts.data_range = peak;
  r.ssim = ssim(reference, test, opts);
  r.mae = mae(reference, test);
  const SamResult s = sam(reference, test);
  r.sam_deg = s.mean_deg;
  r.sam_skipped = s.skipped;
  return r;
}

}  // namespace cepspec
