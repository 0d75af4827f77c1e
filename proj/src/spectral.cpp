#include "cepspec/spectral.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace cepspec {

namespace {

constexpr double kGridTolerance = 1e-9;

}  // namespace

WavelengthGrid::WavelengthGrid(double start_nm, double step_nm, int count)
    : start_nm_(start_nm), step_nm_(step_nm), count_(count) {
  if (!(step_nm > 0.0) || !std::isfinite(step_nm) || !std::isfinite(start_nm)) {
    throw DataError("wavelength grid step must be positive and finite");
  }
  if (count < 1) throw DataError("wavelength grid needs at least one channel");
}

WavelengthGrid WavelengthGrid::calibration() { return {380.0, 10.0, 41}; }
WavelengthGrid WavelengthGrid::reconstruction() { return {400.0, 10.0, 31}; }
WavelengthGrid WavelengthGrid::extended() { return {390.0, 10.0, 33}; }

bool WavelengthGrid::operator==(const WavelengthGrid& other) const {
  return count_ == other.count_ && std::abs(start_nm_ - other.start_nm_) < kGridTolerance &&
         std::abs(step_nm_ - other.step_nm_) < kGridTolerance;
}

std::string WavelengthGrid::describe() const {
  std::ostringstream os;
  os << count_ << " channels from " << start_nm_ << " nm step " << step_nm_ << " nm";
  return os.str();
}

double sample_curve(const SpectralCurve& curve, double wavelength_nm) {
  const WavelengthGrid& g = curve.grid();
  const double u = (wavelength_nm - g.start_nm()) / g.step_nm();
  if (u <= 0.0) return curve[0];
  if (u >= g.count() - 1) return curve[g.count() - 1];
  const int i = static_cast<int>(std::floor(u));
  const double f = u - i;
  return (1.0 - f) * curve[i] + f * curve[i + 1];
}

double integrate_curve(const SpectralCurve& curve, double lower_nm, double upper_nm) {
  if (upper_nm < lower_nm) return -integrate_curve(curve, upper_nm, lower_nm);
  const WavelengthGrid& g = curve.grid();
  // Breakpoints: interval ends plus every source sample strictly inside.
  std::vector<double> xs{lower_nm};
  const int first = std::max(0, static_cast<int>(std::ceil((lower_nm - g.start_nm()) / g.step_nm())));
  for (int i = first; i < g.count(); ++i) {
    const double x = g.wavelength(i);
    if (x >= upper_nm) break;
    if (x > lower_nm) xs.push_back(x);
  }
  xs.push_back(upper_nm);
  double total = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    total += 0.5 * (sample_curve(curve, xs[i - 1]) + sample_curve(curve, xs[i])) * (xs[i] - xs[i - 1]);
  }
  return total;
}

SpectralCurve resample_curve(const SpectralCurve& curve, const WavelengthGrid& target,
                             ResampleMode mode) {
  const WavelengthGrid& src = curve.grid();
  // Samples on the target grid already are bin values.
  if (src == target) return curve;
  Vector out(target.count());
  for (int k = 0; k < target.count(); ++k) {
    if (mode == ResampleMode::kLinear) {
      out[k] = sample_curve(curve, target.bin_midpoint(k));
      continue;
    }
    const double lo = target.bin_lower(k);
    const double hi = target.bin_upper(k);
    const double first = std::ceil((lo - src.start_nm()) / src.step_nm() - kGridTolerance);
    const double last = std::floor((hi - src.start_nm()) / src.step_nm() + kGridTolerance);
    if (last < first || last < 0.0 || first > src.count() - 1) {
      std::ostringstream os;
      os << "resample: bin [" << lo << ", " << hi << ") nm contains no source samples";
      throw DataError(os.str());
    }
    out[k] = integrate_curve(curve, lo, hi) / (hi - lo);
  }
  return {target, std::move(out)};
}

SpectralCurve checked_reflectance(const SpectralCurve& curve) {
  Vector v = curve.values();
  for (int k = 0; k < v.size(); ++k) {
    if (!(v[k] >= 0.0) || v[k] > 1.0 + kReflectanceTolerance) {
      std::ostringstream os;
      os << "reflectance " << v[k] << " at " << curve.grid().wavelength(k) << " nm is outside [0, 1]";
      throw DataError(os.str());
    }
    v[k] = std::min(v[k], 1.0);
  }
  return {curve.grid(), std::move(v)};
}

HyperCube mirror_extend_cube(const HyperCube& cube) {
  if (!(cube.grid() == WavelengthGrid::reconstruction())) {
    throw DataError("mirror_extend_cube expects the 400-700 nm 31-channel grid, got " +
                    cube.grid().describe());
  }
  HyperCube out(cube.width(), cube.height(), WavelengthGrid::extended());
  auto& d = out.data();
  const auto& s = cube.data();
  d.middleCols(1, 31) = s;
  d.col(0) = 0.5 * (s.col(1) + s.col(2));
  d.col(32) = s.col(30);
  return out;
}

HyperCube strip_edge_channels(const HyperCube& cube) {
  if (cube.channels() != 33) {
    throw DataError("strip_edge_channels expects 33 channels, got " + std::to_string(cube.channels()));
  }
  return HyperCube(cube.width(), cube.height(), WavelengthGrid::reconstruction(),
                   cube.data().middleCols(1, 31));
}

Vector collapse_to_extended(const Vector& calibration_values) {
  if (calibration_values.size() != 41) {
    throw DataError("collapse_to_extended expects 41 calibration-grid values");
  }
  Vector out(33);
  out[0] = calibration_values[0] + calibration_values[1];
  out.segment(1, 31) = calibration_values.segment(2, 31);
  out[32] = calibration_values.segment(33, 8).sum();
  return out;
}

}  // namespace cepspec
