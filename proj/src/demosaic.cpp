#include "cepspec/demosaic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cepspec/parallel.hpp"

namespace cepspec {

namespace {

// Linear interpolation position along one axis: index of the left sample and the weight of the
// right one, clamped to the sample range.
struct AxisTap {
  int lo = 0;
  int hi = 0;
  double frac = 0.0;
};

AxisTap lattice_tap(int pixel, int phase, int period, int count) {
  const double u = static_cast<double>(pixel - phase) / period;
  if (u <= 0.0) return {0, 0, 0.0};
  if (u >= count - 1) return {count - 1, count - 1, 0.0};
  const int lo = static_cast<int>(std::floor(u));
  const double frac = u - lo;
  return {lo, frac == 0.0 ? lo : lo + 1, frac};
}

AxisTap position_tap(double pos, int count) {
  if (pos <= 0.0) return {0, 0, 0.0};
  if (pos >= count - 1) return {count - 1, count - 1, 0.0};
  const int lo = static_cast<int>(std::floor(pos));
  const double frac = pos - lo;
  return {lo, frac == 0.0 ? lo : lo + 1, frac};
}

double bilinear(const Image& img, const AxisTap& ty, const AxisTap& tx) {
  const double top = tx.frac == 0.0 ? img(ty.lo, tx.lo) : (1.0 - tx.frac) * img(ty.lo, tx.lo) + tx.frac * img(ty.lo, tx.hi);
  if (ty.frac == 0.0) return top;
  const double bottom =
      tx.frac == 0.0 ? img(ty.hi, tx.lo) : (1.0 - tx.frac) * img(ty.hi, tx.lo) + tx.frac * img(ty.hi, tx.hi);
  return (1.0 - ty.frac) * top + ty.frac * bottom;
}

std::vector<int> block_starts(int dim, int block) {
  std::vector<int> starts;
  for (int s = 0; s + block <= dim; s += block) starts.push_back(s);
  if (starts.back() + block < dim) starts.push_back(dim - block);
  return starts;
}

// Interpolation tap over sorted, possibly non-uniform node positions.
AxisTap node_tap(double pos, const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size());
  if (pos <= nodes.front()) return {0, 0, 0.0};
  if (pos >= nodes.back()) return {n - 1, n - 1, 0.0};
  const int hi = static_cast<int>(std::upper_bound(nodes.begin(), nodes.end(), pos) - nodes.begin());
  const int lo = hi - 1;
  return {lo, hi, (pos - nodes[lo]) / (nodes[hi] - nodes[lo])};
}

double parabolic_offset(double minus, double center, double plus) {
  const double denom = minus - 2.0 * center + plus;
  if (!(denom > 0.0)) return 0.0;
  return std::clamp(0.5 * (minus - plus) / denom, -0.5, 0.5);
}

}  // namespace

LatticeSamples gather_led_samples(const CodedFrame& frame, const TileLayout& layout, int led) {
  const auto [row, col] = layout.position_of(led);
  if (row < 0) throw DataError("LED " + std::to_string(led) + " has no tile position");
  const int ny = (frame.height() - row + layout.rows() - 1) / layout.rows();
  const int nx = (frame.width() - col + layout.cols() - 1) / layout.cols();
  if (ny <= 0 || nx <= 0) throw DataError("frame is smaller than one tile");
  LatticeSamples out{Image(ny, nx), row, col, layout.rows(), layout.cols()};
  for (int i = 0; i < ny; ++i)
    for (int j = 0; j < nx; ++j) out.samples(i, j) = frame.values(row + i * layout.rows(), col + j * layout.cols());
  return out;
}

Image upsample_bilinear(const LatticeSamples& lattice, int width, int height) {
  if (lattice.row_period < 1 || lattice.col_period < 1) throw DataError("degenerate sample lattice");
  if (lattice.samples.size() == 0) throw DataError("empty sample lattice");
  const int ny = static_cast<int>(lattice.samples.rows());
  const int nx = static_cast<int>(lattice.samples.cols());
  std::vector<AxisTap> tx(width);
  for (int x = 0; x < width; ++x) tx[x] = lattice_tap(x, lattice.col_phase, lattice.col_period, nx);
  Image out(height, width);
  for (int y = 0; y < height; ++y) {
    const AxisTap ty = lattice_tap(y, lattice.row_phase, lattice.row_period, ny);
    for (int x = 0; x < width; ++x) out(y, x) = bilinear(lattice.samples, ty, tx[x]);
  }
  return out;
}

SubImageSet demosaic(const CodedFrame& frame, const CodingSchedule& schedule) {
  if (frame.width() < schedule.layout.cols() || frame.height() < schedule.layout.rows()) {
    throw DataError("frame is smaller than one tile");
  }
  SubImageSet out;
  out.frame_index = frame.frame_index;
  out.timestamps = normalized_timestamps(schedule);
  out.images.resize(schedule.led_count());
  out.aligned.assign(schedule.led_count(), true);
  parallel_for(0, schedule.led_count(), [&](int l) {
    out.images[l] = upsample_bilinear(gather_led_samples(frame, schedule.layout, l), frame.width(), frame.height());
  });
  return out;
}

Image remosaic(const SubImageSet& images, const TileLayout& layout) {
  Image out(images.height(), images.width());
  for (int y = 0; y < out.rows(); ++y)
    for (int x = 0; x < out.cols(); ++x) out(y, x) = images.images.at(layout.led_at_pixel(y, x))(y, x);
  return out;
}

FlowField estimate_flow(const Image& src, const Image& dst, const FlowOptions& options) {
  if (src.rows() != dst.rows() || src.cols() != dst.cols()) throw DataError("flow images differ in size");
  const int height = static_cast<int>(src.rows());
  const int width = static_cast<int>(src.cols());
  const int b = options.block;
  const int radius = options.search_radius;
  if (b < 1 || b > width || b > height) throw DataError("flow block larger than the image");
  if (radius < 0) throw DataError("negative flow search radius");

  const std::vector<int> ys = block_starts(height, b);
  const std::vector<int> xs = block_starts(width, b);
  const int by = static_cast<int>(ys.size());
  const int bx = static_cast<int>(xs.size());
  Image block_dx(by, bx), block_dy(by, bx);

  const int side = 2 * radius + 1;
  parallel_for(0, by * bx, [&](int index) {
    const int y0 = ys[index / bx];
    const int x0 = xs[index % bx];
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(static_cast<std::size_t>(side) * side, inf);
    auto at = [&](int dy, int dx) -> double& { return cost[(dy + radius) * side + (dx + radius)]; };
    int best_dy = 0, best_dx = 0;
    double best = inf;
    for (int dy = -radius; dy <= radius; ++dy) {
      for (int dx = -radius; dx <= radius; ++dx) {
        if (dy * dy + dx * dx > radius * radius) continue;
        if (y0 + dy < 0 || x0 + dx < 0 || y0 + dy + b > height || x0 + dx + b > width) continue;
        const double ssd = (src.block(y0, x0, b, b) - dst.block(y0 + dy, x0 + dx, b, b)).square().sum();
        at(dy, dx) = ssd;
        const int r2 = dy * dy + dx * dx;
        if (ssd < best || (ssd == best && r2 < best_dy * best_dy + best_dx * best_dx)) {
          best = ssd;
          best_dy = dy;
          best_dx = dx;
        }
      }
    }
    double fx = best_dx, fy = best_dy;
    if (best > 0.0) {
      auto cost_or_inf = [&](int dy, int dx) {
        return (std::abs(dy) > radius || std::abs(dx) > radius) ? inf : at(dy, dx);
      };
      const double xm = cost_or_inf(best_dy, best_dx - 1), xp = cost_or_inf(best_dy, best_dx + 1);
      const double ym = cost_or_inf(best_dy - 1, best_dx), yp = cost_or_inf(best_dy + 1, best_dx);
      if (std::isfinite(xm) && std::isfinite(xp)) fx += parabolic_offset(xm, best, xp);
      if (std::isfinite(ym) && std::isfinite(yp)) fy += parabolic_offset(ym, best, yp);
      const double norm = std::hypot(fx, fy);
      if (norm > radius) {
        fx *= radius / norm;
        fy *= radius / norm;
      }
    }
    block_dx(index / bx, index % bx) = fx;
    block_dy(index / bx, index % bx) = fy;
  });

  std::vector<double> cy(by), cx(bx);
  for (int i = 0; i < by; ++i) cy[i] = ys[i] + 0.5 * (b - 1);
  for (int j = 0; j < bx; ++j) cx[j] = xs[j] + 0.5 * (b - 1);
  std::vector<AxisTap> tx(width);
  for (int x = 0; x < width; ++x) tx[x] = node_tap(x, cx);
  FlowField flow{Image(height, width), Image(height, width)};
  for (int y = 0; y < height; ++y) {
    const AxisTap ty = node_tap(y, cy);
    for (int x = 0; x < width; ++x) {
      flow.dx(y, x) = bilinear(block_dx, ty, tx[x]);
      flow.dy(y, x) = bilinear(block_dy, ty, tx[x]);
    }
  }
  return flow;
}

Image warp_image(const Image& image, const FlowField& flow, double scale) {
  if (flow.dx.rows() != image.rows() || flow.dx.cols() != image.cols()) throw DataError("flow size differs from image");
  const int height = static_cast<int>(image.rows());
  const int width = static_cast<int>(image.cols());
  Image out(height, width);
  parallel_for(0, height, [&](int y) {
    for (int x = 0; x < width; ++x) {
      const double dx = scale * flow.dx(y, x);
      const double dy = scale * flow.dy(y, x);
      if (dx == 0.0 && dy == 0.0) {
        out(y, x) = image(y, x);
        continue;
      }
      out(y, x) = bilinear(image, position_tap(y - dy, height), position_tap(x - dx, width));
    }
  });
  return out;
}

std::vector<WarpPlan> plan_alignment(const CodingSchedule& schedule, int reference_led) {
  const Vector t = normalized_timestamps(schedule);
  if (reference_led < 0 || reference_led >= t.size()) throw DataError("unknown reference LED");
  const double ref = t[reference_led];
  std::vector<WarpPlan> plan(t.size());
  for (int l = 0; l < t.size(); ++l) {
    if (l == reference_led) continue;
    if (t[l] < ref) {
      plan[l] = {Pairing::kNextFrame, ref - t[l], ref - t[l]};
    } else {
      const double step = (1.0 - t[l]) + ref;
      // The interpolator runs from the previous frame; relative to the current sub-image the
      // same instant lies (step - 1) frames away.
      plan[l] = {Pairing::kPreviousFrame, step, step - 1.0};
    }
  }
  return plan;
}

SubImageSet warp_to_reference(const SubImageSet* prev, const SubImageSet& current, const SubImageSet* next,
                              const CodingSchedule& schedule, const AlignOptions& options,
                              AlignmentDiagnostics* diagnostics) {
  const int leds = current.led_count();
  if (leds != schedule.led_count()) throw DataError("sub-image set does not match the schedule");
  for (const SubImageSet* other : {prev, next}) {
    if (other && (other->led_count() != leds || other->width() != current.width() ||
                  other->height() != current.height())) {
      throw DataError("neighboring frame sub-images differ in shape");
    }
  }
  const int reference = schedule.led_index(options.reference);
  const std::vector<WarpPlan> plan = plan_alignment(schedule, reference);

  SubImageSet out = current;
  out.aligned.assign(leds, true);
  std::vector<FlowField> applied(leds);
  const Image zero = Image::Zero(current.height(), current.width());
  for (int l = 0; l < leds; ++l) {
    applied[l] = {zero, zero};
    if (plan[l].pairing == Pairing::kReference) continue;
    const SubImageSet* partner = plan[l].pairing == Pairing::kNextFrame ? next : prev;
    if (!partner) {
      out.aligned[l] = false;
      continue;
    }
    const FlowField flow = plan[l].pairing == Pairing::kNextFrame
                               ? estimate_flow(current.images[l], partner->images[l], options.flow)
                               : estimate_flow(partner->images[l], current.images[l], options.flow);
    out.images[l] = warp_image(current.images[l], flow, plan[l].flow_scale);
    applied[l] = {plan[l].flow_scale * flow.dx, plan[l].flow_scale * flow.dy};
  }
  if (diagnostics) {
    diagnostics->plan = plan;
    diagnostics->applied = std::move(applied);
  }
  return out;
}

std::vector<SubImageSet> align_video(const std::vector<SubImageSet>& frames, const CodingSchedule& schedule,
                                     const AlignOptions& options) {
  std::vector<SubImageSet> out;
  out.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const SubImageSet* prev = i > 0 ? &frames[i - 1] : nullptr;
    const SubImageSet* next = i + 1 < frames.size() ? &frames[i + 1] : nullptr;
    out.push_back(warp_to_reference(prev, frames[i], next, schedule, options));
  }
  return out;
}

}  // namespace cepspec
