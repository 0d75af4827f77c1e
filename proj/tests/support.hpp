#pragma once

#include <cstdint>
#include <random>

#include "cepspec/spectral.hpp"

namespace cepspec::test {

// Number of random cases per property check.
inline constexpr int kCases = 40;

// Seeded generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>()(engine_); }

  Vector vector(Eigen::Index n, double lo = 0.0, double hi = 1.0) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  Image image(int height, int width, double lo = 0.0, double hi = 1.0) {
    Image img(height, width);
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) img(y, x) = uniform(lo, hi);
    return img;
  }

  HyperCube cube(int width, int height, const WavelengthGrid& grid, double lo = 0.0, double hi = 1.0) {
    HyperCube c(width, height, grid);
    for (Eigen::Index i = 0; i < c.data().size(); ++i) c.data().data()[i] = uniform(lo, hi);
    return c;
  }

  SpectralCurve curve(const WavelengthGrid& grid, double lo = 0.0, double hi = 1.0) {
    return {grid, vector(grid.count(), lo, hi)};
  }

 private:
  std::mt19937_64 engine_;
};

inline double max_relative_error(const Eigen::Ref<const Eigen::ArrayXXd>& got,
                                 const Eigen::Ref<const Eigen::ArrayXXd>& want) {
  const double scale = std::max(want.abs().maxCoeff(), 1e-300);
  return (got - want).abs().maxCoeff() / scale;
}

}  // namespace cepspec::test
