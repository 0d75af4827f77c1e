#pragma once

#include <string>
#include <vector>

#include "cepspec/coding.hpp"
#include "cepspec/forward.hpp"
#include "cepspec/spectral.hpp"

namespace cepspec {

// Full-resolution images indexed by LED, with normalized timestamps t'_l.
struct SubImageSet {
  std::vector<Image> images;
  Vector timestamps;
  std::vector<bool> aligned;  // per LED; false when alignment fell back to copy-through
  int frame_index = 0;

  int led_count() const { return static_cast<int>(images.size()); }
  int width() const { return images.empty() ? 0 : static_cast<int>(images.front().cols()); }
  int height() const { return images.empty() ? 0 : static_cast<int>(images.front().rows()); }
};

// Samples of one LED on its regular lattice: sample (i, j) sits at sensor pixel
// (row_phase + i * row_period, col_phase + j * col_period).
struct LatticeSamples {
  Image samples;
  int row_phase = 0;
  int col_phase = 0;
  int row_period = 1;
  int col_period = 1;
};

LatticeSamples gather_led_samples(const CodedFrame& frame, const TileLayout& layout, int led);

// Separable bilinear interpolation of lattice samples to width x height. Positions outside the
// lattice hull take the nearest edge sample; native sample sites are copied exactly.
Image upsample_bilinear(const LatticeSamples& lattice, int width, int height);

SubImageSet demosaic(const CodedFrame& frame, const CodingSchedule& schedule);

// Rebuilds a coded frame by reading each pixel from its own LED's sub-image.
Image remosaic(const SubImageSet& images, const TileLayout& layout);

// Per-pixel displacement (pixels) from a source image to a destination image: content at p in
// the source appears near p + (dx, dy) in the destination.
struct FlowField {
  Image dx;
  Image dy;
};

struct FlowOptions {
  int search_radius = 12;
  int block = 16;
};

// Block matching on sum of squared differences over a circular search window, parabolic
// sub-pixel refinement, then bilinear interpolation of block vectors to every pixel. Vector
// magnitudes never exceed search_radius.
FlowField estimate_flow(const Image& src, const Image& dst, const FlowOptions& options = {});

// out(p) = image(p - scale * flow(p)), bilinear, clamped to the border. Pixels with zero
// displacement are copied.
Image warp_image(const Image& image, const FlowField& flow, double scale);

enum class Pairing { kReference, kNextFrame, kPreviousFrame };

struct WarpPlan {
  Pairing pairing = Pairing::kReference;
  // Fractional timestep handed to the interpolator: t'_ref - t'_l for LEDs before the reference,
  // (1 - t'_l) + t'_ref for LEDs after it.
  double timestep = 0.0;
  // Multiplier of the estimated flow applied to the current sub-image.
  double flow_scale = 0.0;
};

std::vector<WarpPlan> plan_alignment(const CodingSchedule& schedule, int reference_led);

struct AlignOptions {
  std::string reference = "Lime";
  FlowOptions flow;
};

// Displacements actually applied per LED (zero for the reference and copy-through LEDs).
struct AlignmentDiagnostics {
  std::vector<WarpPlan> plan;
  std::vector<FlowField> applied;
};

// Warps every sub-image of current to the reference LED's timestamp. prev or next may be null at
// video boundaries; LEDs that need the missing neighbor are copied through with aligned = false.
SubImageSet warp_to_reference(const SubImageSet* prev, const SubImageSet& current, const SubImageSet* next,
                              const CodingSchedule& schedule, const AlignOptions& options = {},
                              AlignmentDiagnostics* diagnostics = nullptr);

// Aligns every frame of a decoded video.
std::vector<SubImageSet> align_video(const std::vector<SubImageSet>& frames, const CodingSchedule& schedule,
                                     const AlignOptions& options = {});

}  // namespace cepspec
