#include "cepspec/calibration.hpp"

#include <algorithm>
#include <sstream>

#include "cepspec/tables.hpp"

namespace cepspec {

SpectralCurve reflectance_from_radiance(const SpectralCurve& measured, const SpectralCurve& illuminant) {
  if (!(measured.grid() == illuminant.grid())) {
    throw DataError("radiance and illuminant must share a grid");
  }
  Vector out(measured.size());
  std::vector<double> bad;
  for (int k = 0; k < measured.size(); ++k) {
    if (illuminant[k] <= kIlluminantFloor) {
      if (measured[k] != 0.0) bad.push_back(measured.grid().wavelength(k));
      out[k] = 0.0;
      continue;
    }
    out[k] = std::clamp(measured[k] / illuminant[k], 0.0, 1.0);
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "illuminant is zero where radiance is not, at nm:";
    for (double w : bad) os << ' ' << w;
    throw DataError(os.str());
  }
  return {measured.grid(), std::move(out)};
}

Matrix simulate_response(std::span<const SpectralCurve> led_spds, std::span<const SpectralCurve> patches,
                         const SpectralCurve& sensitivity, const Vector& alpha) {
  const auto leds = static_cast<Eigen::Index>(led_spds.size());
  if (alpha.size() != leds) throw DataError("alpha length differs from LED count");
  const WavelengthGrid& grid = sensitivity.grid();
  for (const auto& c : led_spds) {
    if (!(c.grid() == grid)) throw DataError("LED SPD grid differs from sensitivity grid");
  }
  Matrix c(static_cast<Eigen::Index>(patches.size()), grid.count());
  for (std::size_t p = 0; p < patches.size(); ++p) {
    if (!(patches[p].grid() == grid)) throw DataError("patch reflectance grid differs from sensitivity grid");
    c.row(static_cast<Eigen::Index>(p)) = patches[p].values().transpose();
  }
  Matrix e(leds, grid.count());
  for (Eigen::Index l = 0; l < leds; ++l) {
    e.row(l) = alpha[l] * led_spds[l].values().cwiseProduct(sensitivity.values()).transpose();
  }
  return e * c.transpose();
}

CalibrationResult fit_alpha_from_unit_response(const Matrix& measured, const Matrix& unit) {
  if (measured.rows() != unit.rows() || measured.cols() != unit.cols()) {
    throw DataError("measured response is " + std::to_string(measured.rows()) + "x" +
                    std::to_string(measured.cols()) + ", model response is " +
                    std::to_string(unit.rows()) + "x" + std::to_string(unit.cols()));
  }
  if (measured.cols() < 1) throw DataError("calibration needs at least one patch");
  CalibrationResult r;
  r.alpha = Vector::Zero(unit.rows());
  r.per_led_residual = Vector::Zero(unit.rows());
  r.indeterminate.assign(unit.rows(), false);
  for (Eigen::Index l = 0; l < unit.rows(); ++l) {
    const double mm = unit.row(l).squaredNorm();
    if (mm == 0.0) {
      r.indeterminate[l] = true;
    } else {
      r.alpha[l] = std::max(0.0, unit.row(l).dot(measured.row(l)) / mm);
    }
    r.per_led_residual[l] = (r.alpha[l] * unit.row(l) - measured.row(l)).squaredNorm();
  }
  r.residual = r.per_led_residual.sum();
  return r;
}

CalibrationResult fit_alpha(const Matrix& measured, std::span<const SpectralCurve> led_spds,
                            std::span<const SpectralCurve> patches, const SpectralCurve& sensitivity) {
  const Matrix unit = simulate_response(led_spds, patches, sensitivity,
                                        Vector::Ones(static_cast<Eigen::Index>(led_spds.size())));
  return fit_alpha_from_unit_response(measured, unit);
}

NnlsResult solve_nnls(const Matrix& a, const Vector& b, const NnlsOptions& options) {
  if (a.rows() != b.size()) throw DataError("NNLS dimension mismatch");
  const Matrix ata = a.transpose() * a;
  const Vector atb = a.transpose() * b;
  const double lipschitz = Eigen::SelfAdjointEigenSolver<Matrix>(ata, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  NnlsResult r;
  r.x = Vector::Zero(a.cols());
  if (lipschitz <= 0.0) {
    r.converged = true;
    return r;
  }
  const double step = 1.0 / lipschitz;
  const double scale = std::max(1.0, atb.cwiseAbs().maxCoeff());
  for (r.iterations = 0; r.iterations < options.max_iterations; ++r.iterations) {
    const Vector grad = ata * r.x - atb;
    // Projected gradient: components at the bound only count when pushing inward.
    double pg = 0.0;
    for (Eigen::Index i = 0; i < grad.size(); ++i) {
      pg = std::max(pg, r.x[i] > 0.0 ? std::abs(grad[i]) : std::max(0.0, -grad[i]));
    }
    if (pg <= options.tolerance * scale) {
      r.converged = true;
      break;
    }
    r.x = (r.x - step * grad).cwiseMax(0.0);
  }
  return r;
}

Matrix average_patch_response(const CodedFrame& frame, const CodingSchedule& schedule,
                              std::span<const PixelRect> regions, bool normalize_by_subframes) {
  const int leds = schedule.led_count();
  Matrix out(leds, static_cast<Eigen::Index>(regions.size()));
  for (std::size_t p = 0; p < regions.size(); ++p) {
    const PixelRect& r = regions[p];
    if (r.x < 0 || r.y < 0 || r.width <= 0 || r.height <= 0 || r.x + r.width > frame.width() ||
        r.y + r.height > frame.height()) {
      throw DataError("patch region " + std::to_string(p) + " lies outside the frame");
    }
    Vector sum = Vector::Zero(leds);
    Eigen::VectorXi count = Eigen::VectorXi::Zero(leds);
    for (int y = r.y; y < r.y + r.height; ++y) {
      for (int x = r.x; x < r.x + r.width; ++x) {
        const int l = schedule.layout.led_at_pixel(y, x);
        sum[l] += frame.values(y, x);
        ++count[l];
      }
    }
    for (int l = 0; l < leds; ++l) {
      if (count[l] == 0) {
        throw DataError("patch region " + std::to_string(p) + " contains no pixels of LED '" +
                        schedule.led_names[l] + "'");
      }
      double mean = sum[l] / count[l];
      if (normalize_by_subframes) mean /= schedule.subframes_per_led[l];
      out(l, static_cast<Eigen::Index>(p)) = mean;
    }
  }
  return out;
}

std::vector<SpectralCurve> colorchecker_patches() {
  const WavelengthGrid grid(tables::kTableStartNm, tables::kTableStepNm, static_cast<int>(tables::kTableCount));
  std::vector<SpectralCurve> out;
  for (const auto& row : tables::kColorChecker) {
    out.emplace_back(grid, Eigen::Map<const Vector>(row.data(), static_cast<Eigen::Index>(row.size())));
  }
  return out;
}

}  // namespace cepspec
