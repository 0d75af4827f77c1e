#include <doctest.h>

#include <fstream>
#include <random>

#include "cepspec/config.hpp"
#include "support.hpp"

using namespace cepspec;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("cepspec_config_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

bool same_schedule(const CodingSchedule& a, const CodingSchedule& b) {
  return a.led_names == b.led_names && a.subframes_per_led == b.subframes_per_led && a.led_order == b.led_order &&
         a.lit_leds == b.lit_leds && a.exposure == b.exposure && a.subframe_us == b.subframe_us &&
         a.readout_us == b.readout_us && a.layout.led_of_tile() == b.layout.led_of_tile();
}

}  // namespace

TEST_CASE("canonical schedule YAML round trip") {
  const ScheduleConfig cfg = parse_schedule_config(canonical_schedule_yaml(), ".");
  CHECK(same_schedule(cfg.schedule, canonical_schedule()));
  const std::vector<LedChannel> want = canonical_leds();
  REQUIRE(cfg.leds.size() == want.size());
  for (std::size_t l = 0; l < want.size(); ++l) {
    CHECK(cfg.leds[l].name == want[l].name);
    CHECK(cfg.leds[l].spd.grid() == want[l].spd.grid());
    CHECK((cfg.leds[l].spd.values() - want[l].spd.values()).cwiseAbs().maxCoeff() < 1e-12);
  }
  const ScheduleConfig shipped = load_schedule_config(CEPSPEC_SOURCE_DIR "/configs/canonical_schedule.yaml");
  CHECK(same_schedule(shipped.schedule, canonical_schedule()));
}

TEST_CASE("schedule variants") {
  TempDir dir;
  dir.write("bank.yaml", R"(subframe_us: 100
readout_us: 500
leds:
  - {name: A, subframes: 2, spd: {gaussian: {center_nm: 450, fwhm_nm: 20}}}
  - {name: B, subframes: 3, alpha: 0.5, spd: {csv: b.csv}}
tile:
  - [A, B]
)");
  dir.write("b.csv", "wavelength_nm,value\n400,0\n500,1\n600,0\n");
  const fs::path top = dir.write("top.yaml", "include: [bank.yaml]\nfiring_order: [B, A]\nreadout_us: 700\n");
  const ScheduleConfig cfg = load_schedule_config(top);
  CHECK(cfg.schedule.led_names == std::vector<std::string>{"A", "B"});
  CHECK(cfg.schedule.led_order == std::vector<int>{1, 0});
  CHECK(cfg.schedule.subframe_count() == 5);
  CHECK(cfg.schedule.subframe_us == 100.0);
  CHECK(cfg.schedule.readout_us == 700.0);
  CHECK(cfg.leds[1].alpha == 0.5);
  CHECK(cfg.leds[1].spd.size() == 3);
  CHECK(validate_schedule(cfg.schedule).empty());
}

TEST_CASE("schedule errors name the field") {
  TempDir dir;
  CHECK_THROWS_WITH_AS(parse_schedule_config("leds:\n  - {name: A, subframes: x}\ntile: [[A]]\n", dir.path),
                       doctest::Contains("subframes"), DataError);
  CHECK_THROWS_WITH_AS(parse_schedule_config("leds:\n  - {name: A, subframes: 2, spd: {csv: nope.csv}}\ntile: [[A]]\n",
                                             dir.path),
                       doctest::Contains("nope.csv"), DataError);
  CHECK_THROWS_WITH_AS(parse_schedule_config("leds:\n  - {name: A, subframes: 2}\ntile: [[A]]\n", dir.path),
                       doctest::Contains("leds[0].spd"), DataError);
  CHECK_THROWS_WITH_AS(
      parse_schedule_config("leds:\n  - {name: A, subframes: 2, spd: {model: silicon}}\ntile: [[Z]]\n", dir.path),
      doctest::Contains("Z"), DataError);
  CHECK_THROWS_WITH_AS(parse_schedule_config("leds: [\n", dir.path), doctest::Contains("line"), DataError);
  dir.write("a.yaml", "include: [b.yaml]\n");
  dir.write("b.yaml", "include: [a.yaml]\n");
  CHECK_THROWS_AS(load_schedule_config(dir.path / "a.yaml"), DataError);
  CHECK_THROWS_WITH_AS(load_schedule_config(dir.path / "missing.yaml"), doctest::Contains("missing.yaml"), DataError);
}

TEST_CASE("experiment configs") {
  TempDir dir;
  dir.write("sched.yaml", canonical_schedule_yaml());
  const std::string base = "schedule: sched.yaml\nscene: {kind: mixture, width: 70, height: 66, components: 2, seed: 4}\n"
                           "noise_sigmas_pct: [0, 5]\nseeds: [1, 2]\noutput_dir: out\n";
  const fs::path p = dir.write("exp.yaml", base);
  const ExperimentConfig cfg = load_experiment_config(p);
  CHECK(cfg.scene.kind == SceneSource::Kind::kMixture);
  CHECK(cfg.scene.width == 70);
  CHECK(cfg.scene.components == 2);
  CHECK(cfg.scene.scene_seed == 4);
  CHECK(cfg.sigmas_pct == std::vector<double>{0, 5});
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2});
  CHECK(cfg.output_dir == (dir.path / "out").lexically_normal());
  CHECK(cfg.solver.lambda_reg == 1e-5);
  CHECK(cfg.reference_led == "Lime");
  CHECK(cfg.digest.size() == 64);

  SUBCASE("digest is stable and tracks included files") {
    CHECK(load_experiment_config(p).digest == cfg.digest);
    dir.write("sched.yaml", canonical_schedule_yaml() + "# edited\n");
    CHECK(load_experiment_config(p).digest != cfg.digest);
  }
  SUBCASE("includes supply defaults") {
    dir.write("solver.yaml", "solver: {lambda_reg: 0.001, mu: 0.5}\nflow: {block: 8, search_radius: 4}\n");
    const ExperimentConfig inc = load_experiment_config(dir.write("inc.yaml", "include: solver.yaml\n" + base));
    CHECK(inc.solver.lambda_reg == 0.001);
    CHECK(inc.solver.mu == 0.5);
    CHECK(inc.flow_block == 8);
    CHECK(inc.flow_search_radius == 4);
  }
  SUBCASE("seeds are required") {
    CHECK_THROWS_WITH_AS(load_experiment_config(dir.write("bad.yaml", "schedule: sched.yaml\nseeds: []\n")),
                         doctest::Contains("seeds"), DataError);
  }
  SUBCASE("noise levels are validated") {
    CHECK_THROWS_WITH_AS(
        load_experiment_config(dir.write("bad.yaml", "schedule: sched.yaml\nseeds: [1]\nnoise_sigmas_pct: [150]\n")),
        doctest::Contains("noise_sigmas_pct"), DataError);
  }
  SUBCASE("unknown reference LED") {
    CHECK_THROWS_WITH_AS(
        load_experiment_config(dir.write("bad.yaml", "schedule: sched.yaml\nseeds: [1]\nreference_led: Teal\n")),
        doctest::Contains("Teal"), DataError);
  }
  SUBCASE("schema errors carry the line") {
    CHECK_THROWS_WITH_AS(
        load_experiment_config(dir.write("bad.yaml", "schedule: sched.yaml\nseeds: [1]\nscene: {kind: plaid}\n")),
        doctest::Contains("line 3"), DataError);
  }
}

TEST_CASE("sha256") {
  CHECK(sha256_hex({}) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  const std::string abc = "abc";
  CHECK(sha256_hex({abc.begin(), abc.end()}) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
