#include <doctest.h>

#include "cepspec/demosaic.hpp"
#include "cepspec/eval.hpp"
#include "support.hpp"

using namespace cepspec;

namespace {

struct Video {
  CodingSchedule schedule = canonical_schedule();
  SensingModel model = build_extended_sensing_model(canonical_leds(), canonical_sensitivity());
  std::vector<SubImageSet> frames;
  std::vector<HyperCube> reference_truth;
};

// Translating scene observed with each LED's pixels sampled at that LED's timestamp.
Video translating_video(int frames, double velocity, int width = 128, int height = 96) {
  Video v;
  const Vector t = normalized_timestamps(v.schedule);
  const int ref = v.schedule.led_index("Lime");
  for (int f = 0; f < frames; ++f) {
    std::vector<HyperCube> states;
    for (int l = 0; l < v.schedule.led_count(); ++l) {
      states.push_back(mirror_extend_cube(translating_scene(width, height, velocity * (f + t[l]), 7)));
    }
    v.reference_truth.push_back(states[ref]);
    v.frames.push_back(demosaic(simulate_frame(states, v.schedule, v.model, 0.0, 1, f), v.schedule));
  }
  return v;
}

}  // namespace

TEST_CASE("alignment plan") {
  const CodingSchedule s = canonical_schedule();
  const int ref = s.led_index("Lime");
  const Vector t = normalized_timestamps(s);
  const std::vector<WarpPlan> plan = plan_alignment(s, ref);
  REQUIRE(plan.size() == 12);
  CHECK(plan[ref].pairing == Pairing::kReference);
  for (int l = 0; l < 12; ++l) {
    if (l == ref) continue;
    CHECK(plan[l].timestep > 0.0);
    CHECK(plan[l].timestep < 1.0);
    if (t[l] < t[ref]) {
      CHECK(plan[l].pairing == Pairing::kNextFrame);
      CHECK(plan[l].timestep == doctest::Approx(t[ref] - t[l]));
      CHECK(plan[l].flow_scale == doctest::Approx(plan[l].timestep));
    } else {
      CHECK(plan[l].pairing == Pairing::kPreviousFrame);
      CHECK(plan[l].timestep == doctest::Approx(1.0 - t[l] + t[ref]));
      CHECK(plan[l].flow_scale == doctest::Approx(plan[l].timestep - 1.0));
    }
  }
  CHECK_THROWS_AS(plan_alignment(s, 12), DataError);
}

TEST_CASE("static scenes pass through alignment unchanged") {
  const CodingSchedule s = canonical_schedule();
  const SensingModel m = build_extended_sensing_model(canonical_leds(), canonical_sensitivity());
  const HyperCube scene = mirror_extend_cube(mixture_scene(64, 48, 2, 3));
  std::vector<SubImageSet> frames;
  for (int f = 0; f < 3; ++f) frames.push_back(demosaic(simulate_frame(scene, s, m, 0.0, 1, f), s));
  const std::vector<SubImageSet> aligned = align_video(frames, s);
  for (int l = 0; l < 12; ++l) CHECK((aligned[1].images[l] == frames[1].images[l]).all());
}

TEST_CASE("translation is compensated") {
  const Video v = translating_video(3, 2.0);
  AlignmentDiagnostics diag;
  const SubImageSet out = warp_to_reference(&v.frames[0], v.frames[1], &v.frames[2], v.schedule, {}, &diag);
  const int ref = v.schedule.led_index("Lime");
  CHECK((out.images[ref] == v.frames[1].images[ref]).all());
  CHECK(diag.applied[ref].dx.abs().maxCoeff() == 0.0);

  // The ideal displacement moves each sub-image by velocity * (t_ref - t_l) frames along x.
  const Vector t = normalized_timestamps(v.schedule);
  for (int l = 0; l < 12; ++l) {
    CHECK(out.aligned[l]);
    if (l == ref) continue;
    const double ideal = 2.0 * (t[ref] - t[l]);
    const int margin = 16;
    double err = 0.0;
    int n = 0;
    for (int y = margin; y < out.height() - margin; ++y)
      for (int x = margin; x < out.width() - margin; ++x) {
        err += std::hypot(diag.applied[l].dx(y, x) - ideal, diag.applied[l].dy(y, x));
        ++n;
      }
    CHECK(err / n < 0.5);
  }
}

TEST_CASE("boundary frames copy through LEDs without a partner") {
  const Video v = translating_video(2, 2.0, 96, 72);
  const CodingSchedule& s = v.schedule;
  const std::vector<WarpPlan> plan = plan_alignment(s, s.led_index("Lime"));
  const SubImageSet first = warp_to_reference(nullptr, v.frames[0], &v.frames[1], s);
  const SubImageSet last = warp_to_reference(&v.frames[0], v.frames[1], nullptr, s);
  for (int l = 0; l < 12; ++l) {
    if (plan[l].pairing == Pairing::kPreviousFrame) {
      CHECK_FALSE(first.aligned[l]);
      CHECK((first.images[l] == v.frames[0].images[l]).all());
      CHECK(last.aligned[l]);
    } else if (plan[l].pairing == Pairing::kNextFrame) {
      CHECK_FALSE(last.aligned[l]);
      CHECK((last.images[l] == v.frames[1].images[l]).all());
      CHECK(first.aligned[l]);
    }
  }
  SubImageSet wrong = v.frames[0];
  wrong.images.pop_back();
  CHECK_THROWS_AS(warp_to_reference(nullptr, wrong, nullptr, s), DataError);
}
