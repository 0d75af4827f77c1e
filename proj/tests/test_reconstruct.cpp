#include <doctest.h>

#include <set>

#include "cepspec/eval.hpp"
#include "cepspec/reconstruct.hpp"
#include "support.hpp"

using namespace cepspec;

namespace {

LinearReconstructor canonical_solver(double lambda_reg, double mu) {
  const CodingSchedule s = canonical_schedule();
  return LinearReconstructor(make_recon_model(s, build_extended_sensing_model(canonical_leds(), canonical_sensitivity()),
                                              lambda_reg, mu));
}

}  // namespace

TEST_CASE("patch anchors") {
  CHECK(patch_positions(64, 66) == std::vector<PatchPosition>{{0, 0}});
  CHECK(patch_positions(96, 96) == std::vector<PatchPosition>{{0, 0}, {0, 32}, {30, 0}, {30, 32}});
  const std::vector<PatchPosition> big = patch_positions(640, 480);
  std::set<int> ys, xs;
  for (const PatchPosition& p : big) {
    ys.insert(p.y);
    xs.insert(p.x);
    CHECK(p.y + 66 <= 480);
    CHECK(p.x + 64 <= 640);
  }
  for (int y : ys) CHECK((y % 3 == 0 || y == 480 - 66));
  for (int x : xs) CHECK((x % 4 == 0 || x == 640 - 64));
  CHECK(*ys.rbegin() + 66 == 480);
  CHECK(*xs.rbegin() + 64 == 640);
  CHECK(big.size() == ys.size() * xs.size());

  test::Gen gen(71);
  for (int i = 0; i < test::kCases; ++i) {
    const int w = gen.integer(64, 300), h = gen.integer(66, 300);
    const std::vector<PatchPosition> pos = patch_positions(w, h);
    Eigen::ArrayXXi cover = Eigen::ArrayXXi::Zero(h, w);
    for (const PatchPosition& p : pos) cover.block(p.y, p.x, 66, 64) += 1;
    CHECK(cover.minCoeff() >= 1);
  }
  CHECK_THROWS_AS(patch_positions(63, 100), DataError);
  PatchSpec bad;
  bad.stride_x = 30;
  CHECK_THROWS_AS(patch_positions(100, 100, bad), DataError);
}

TEST_CASE("default kernel") {
  const WeightKernel k = default_kernel();
  REQUIRE(k.height() == 66);
  REQUIRE(k.width() == 64);
  CHECK(k.values().maxCoeff() == doctest::Approx(1.0));
  CHECK(k.values()(32, 31) > 0.999);
  CHECK(k.values()(0, 0) == 0.01);
  CHECK(k.values()(65, 63) == 0.01);
  CHECK((k.values() - k.values().colwise().reverse()).abs().maxCoeff() < 1e-15);
  CHECK((k.values() - k.values().rowwise().reverse()).abs().maxCoeff() < 1e-15);
  CHECK(k.values().minCoeff() == 0.01);
  CHECK_THROWS_AS(default_kernel({}, 0.0), DataError);
  CHECK_THROWS_AS(WeightKernel(Image::Zero(2, 2)), DataError);
}

TEST_CASE("fold aggregation") {
  const PatchSpec spec;
  const WeightKernel k = default_kernel(spec);
  const WavelengthGrid g = WavelengthGrid::extended();
  const Eigen::Index n = 66 * 64;

  SUBCASE("constant patches fold to the constant") {
    std::vector<Patch> patches;
    for (const PatchPosition& p : patch_positions(96, 96)) patches.push_back({p, Matrix::Constant(n, 33, 0.37)});
    const HyperCube c = fold_aggregate(patches, k, 96, 96, g);
    CHECK((c.data().array() - 0.37).abs().maxCoeff() < 1e-14);
  }
  SUBCASE("a single patch is returned unchanged") {
    test::Gen gen(72);
    const Matrix v = gen.image(static_cast<int>(n), 33).matrix();
    const HyperCube c = fold_aggregate({{{0, 0}, v}}, k, 64, 66, g);
    CHECK((c.data() - v).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("two overlapping patches blend by kernel weight") {
    const std::vector<Patch> patches{{{0, 0}, Matrix::Constant(n, 33, 1.0)}, {{0, 32}, Matrix::Constant(n, 33, 3.0)}};
    const HyperCube c = fold_aggregate(patches, k, 96, 66, g);
    for (const auto& [y, x] : std::vector<std::pair<int, int>>{{10, 40}, {33, 50}, {60, 63}}) {
      const double k1 = k.values()(y, x), k2 = k.values()(y, x - 32);
      CHECK(c(y, x, 5) == doctest::Approx((k1 * 1.0 + k2 * 3.0) / (k1 + k2)).epsilon(1e-14));
    }
    CHECK(c(10, 5, 0) == 1.0);
    CHECK(c(10, 90, 0) == doctest::Approx(3.0));
  }
  SUBCASE("uncovered pixels are reported") {
    CHECK_THROWS_WITH_AS(fold_aggregate({{{0, 0}, Matrix::Zero(n, 33)}}, k, 70, 66, g), doctest::Contains("(0, 64)"),
                         DataError);
  }
}

TEST_CASE("linear solver") {
  test::Gen gen(73);
  SUBCASE("vanishing ridge tends to the minimum-norm solution") {
    const LinearReconstructor solver = canonical_solver(1e-9, 0.0);
    const Matrix& w = solver.model().sensing;
    const Matrix pinv = w.transpose() * (w * w.transpose()).inverse();
    for (int i = 0; i < 10; ++i) {
      const Vector r0 = gen.vector(33);
      const Vector y = (w * r0).cwiseProduct(solver.model().subframes.cast<double>());
      const Vector want = pinv * (w * r0);
      const Vector got = solver.solve_pixel(y);
      CHECK((got - want).norm() <= 1e-3 * want.norm());
      CHECK((w * got - w * r0).norm() <= 1e-3 * (w * r0).norm());
    }
  }
  SUBCASE("zero measurements give zero spectra") {
    const LinearReconstructor solver = canonical_solver(1e-5, 1e-2);
    CHECK(solver.solve_pixel(Vector::Zero(12)).isZero(0.0));
  }
  SUBCASE("normal equations are satisfied") {
    const LinearReconstructor solver = canonical_solver(1e-5, 1e-2);
    for (int i = 0; i < test::kCases; ++i) {
      const Vector y = gen.vector(12, 0.0, 50.0);
      CHECK(solver.normal_equation_residual(y, solver.solve_pixel(y)) <= 1e-8);
    }
    const Matrix many = gen.image(20, 12, 0.0, 50.0).matrix();
    const Matrix sol = solver.solve(many);
    for (int p = 0; p < 20; ++p) {
      CHECK((sol.row(p).transpose() - solver.solve_pixel(many.row(p).transpose())).norm() < 1e-12);
    }
  }
  SUBCASE("more ridge never grows the solution") {
    const Vector y = gen.vector(12, 1.0, 50.0);
    double previous = std::numeric_limits<double>::infinity();
    for (double lambda : {1e-6, 1e-4, 1e-2, 1.0, 100.0}) {
      const double norm = canonical_solver(lambda, 0.0).solve_pixel(y).norm();
      CHECK(norm <= previous * (1.0 + 1e-12));
      previous = norm;
    }
  }
  SUBCASE("unregularized underdetermined systems are rejected") {
    CHECK_THROWS_AS(canonical_solver(0.0, 0.0), NumericalError);
    CHECK_THROWS_AS(canonical_solver(-1.0, 0.0), DataError);
  }
  CHECK(second_difference(4) == (Matrix(2, 4) << 1, -2, 1, 0, 0, 1, -2, 1).finished());
}

TEST_CASE("flat gray reconstruction") {
  const Pipeline p = make_pipeline(canonical_schedule(), canonical_leds(), canonical_sensitivity());
  HyperCube gray(96, 96, WavelengthGrid::reconstruction());
  gray.data().setConstant(0.5);
  ReconStats stats;
  const HyperCube a = run_pipeline(gray, p, 0.0, 1, &stats);
  CHECK(stats.patches == 4);
  CHECK((a.data().array() - 0.5).abs().maxCoeff() <= 0.02 * 0.5);
  const HyperCube b = run_pipeline(gray, p, 0.0, 1);
  CHECK((a.data().array() == b.data().array()).all());
}

TEST_CASE("full-resolution frame is finite and non-negative") {
  const Pipeline p = make_pipeline(canonical_schedule(), canonical_leds(), canonical_sensitivity());
  const HyperCube scene = mixture_scene(640, 480, 3, 5);
  const HyperCube out = run_pipeline(scene, p, 0.05, 2);
  CHECK(out.width() == 640);
  CHECK(out.height() == 480);
  CHECK(out.channels() == 31);
  CHECK(out.data().allFinite());
  CHECK(out.data().minCoeff() >= 0.0);
}
