#pragma once

#include <Eigen/Cholesky>

#include <vector>

#include "cepspec/coding.hpp"
#include "cepspec/demosaic.hpp"
#include "cepspec/forward.hpp"
#include "cepspec/spectral.hpp"

namespace cepspec {

// Sliding-window geometry. Strides are multiples of the tile periods so every regular anchor
// sits on a tile corner.
struct PatchSpec {
  int height = 66;
  int width = 64;
  int stride_y = 30;
  int stride_x = 32;
  int tile_rows = 3;
  int tile_cols = 4;
};

struct PatchPosition {
  int y = 0;
  int x = 0;
  bool operator==(const PatchPosition&) const = default;
  auto operator<=>(const PatchPosition&) const = default;
};

// Regular anchors at the stride plus a boundary row/column when the windows fall short of the
// right or bottom edge. Boundary anchors snap back to a tile corner; if the snapped window still
// misses the edge, the exact flush anchor is appended as well.
std::vector<PatchPosition> patch_positions(int width, int height, const PatchSpec& spec = {});

// One window: (height * width) x channels, pixel-major like HyperCube::data().
struct Patch {
  PatchPosition position;
  Matrix values;
};

std::vector<Patch> extract_patches(const SubImageSet& images, const PatchSpec& spec = {});

class WeightKernel {
 public:
  explicit WeightKernel(Image values);
  const Image& values() const { return values_; }
  int height() const { return static_cast<int>(values_.rows()); }
  int width() const { return static_cast<int>(values_.cols()); }

 private:
  Image values_;
};

// Separable Hann window normalized to 1 at the center samples, floored at floor.
WeightKernel default_kernel(const PatchSpec& spec = {}, double floor = 0.01);

struct ReconModel {
  Matrix sensing;               // L x 33 per-sub-frame weights on the extended grid
  Eigen::VectorXi subframes;    // n_l, used to normalize measurements
  double lambda_reg = 1e-5;     // ridge weight, relative to trace(W^T W) / 33
  double mu = 1e-2;             // second-difference weight, same normalization
};

ReconModel make_recon_model(const CodingSchedule& schedule, const SensingModel& extended,
                            double lambda_reg = 1e-5, double mu = 1e-2);

// Per-pixel Tikhonov inversion min ||W r - y/n||^2 + lambda ||r||^2 + mu ||D r||^2 with one
// factorization shared by every pixel.
class LinearReconstructor {
 public:
  explicit LinearReconstructor(ReconModel model);

  const ReconModel& model() const { return model_; }
  // Left-hand side W^T W + lambda I + mu D^T D (absolute weights).
  const Matrix& system_matrix() const { return system_; }
  // 33 x L map from normalized measurements to spectra.
  const Matrix& solution_map() const { return solution_map_; }

  // measurements: pixels x L raw sub-image values. Returns pixels x 33.
  Matrix solve(const Matrix& measurements) const;
  Vector solve_pixel(const Vector& measurements) const;

  // ||G r - W^T y|| / ||W^T y|| for one pixel's raw measurements and solution.
  double normal_equation_residual(const Vector& measurements, const Vector& solution) const;

 private:
  Vector normalize(const Vector& measurements) const;

  ReconModel model_;
  Matrix system_;
  Matrix solution_map_;
};

// Second-difference operator over n channels ((n - 2) x n).
Matrix second_difference(int n);

Patch reconstruct_patch(const Patch& patch, const LinearReconstructor& solver);

// Fold(K * patches) / Fold(K) with K broadcast across channels. Throws listing uncovered pixels.
HyperCube fold_aggregate(const std::vector<Patch>& patches, const WeightKernel& kernel, int width, int height,
                         const WavelengthGrid& grid = WavelengthGrid::extended());

struct ReconStats {
  long long clipped_negative = 0;
  int patches = 0;
};

// extract -> per-patch solve -> fold -> strip edge channels -> clamp at zero. Output on the
// 400-700 nm grid.
HyperCube reconstruct_frame(const SubImageSet& images, const LinearReconstructor& solver,
                            const PatchSpec& spec, const WeightKernel& kernel, ReconStats* stats = nullptr);

}  // namespace cepspec
