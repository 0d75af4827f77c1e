#include "cepspec/config.hpp"

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include <iomanip>
#include <set>
#include <sstream>

#include "cepspec/io.hpp"

namespace cepspec {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void schema_error(const YAML::Node& node, const std::string& field, const std::string& message) {
  std::ostringstream os;
  os << "config";
  if (node && node.Mark().line >= 0) os << " line " << node.Mark().line + 1;
  os << ", field '" << field << "': " << message;
  throw DataError(os.str());
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& field) {
  if (!node || !node.IsScalar()) schema_error(node, field, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    schema_error(node, field, "cannot convert '" + node.Scalar() + "'");
  }
}

template <typename T>
T scalar_or(const YAML::Node& map, const std::string& field, T fallback) {
  const YAML::Node n = map[field];
  return n ? scalar<T>(n, field) : fallback;
}

// Rewrites relative file references to absolute paths so merged documents keep working.
void resolve_paths(YAML::Node node, const fs::path& base) {
  if (node.IsMap()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      const std::string key = it->first.as<std::string>();
      YAML::Node value = it->second;
      const bool is_path_key = key == "csv" || key == "schedule" || key == "cubes" || key == "include";
      if (is_path_key && value.IsScalar()) {
        value = (base / value.as<std::string>()).lexically_normal().string();
      } else if (is_path_key && value.IsSequence()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (value[i].IsScalar()) value[i] = (base / value[i].as<std::string>()).lexically_normal().string();
        }
      } else {
        resolve_paths(value, base);
      }
    }
  } else if (node.IsSequence()) {
    for (std::size_t i = 0; i < node.size(); ++i) resolve_paths(node[i], base);
  }
}

struct LoadedDocument {
  YAML::Node root;
  std::vector<unsigned char> digest_input;
};

YAML::Node parse_yaml(const std::string& text, const std::string& origin) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw DataError(origin + ": line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
}

void merge_into(YAML::Node& base, const YAML::Node& overlay) {
  for (auto it = overlay.begin(); it != overlay.end(); ++it) base[it->first.as<std::string>()] = it->second;
}

YAML::Node with_includes(YAML::Node root, const fs::path& base, std::vector<unsigned char>& digest_input,
                         std::set<fs::path>& active) {
  if (!root || root.IsNull()) return YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) schema_error(root, "<document>", "expected a mapping");
  resolve_paths(root, base);
  const YAML::Node includes = root["include"];
  if (!includes) return root;
  YAML::Node merged(YAML::NodeType::Map);
  std::vector<std::string> files;
  if (includes.IsScalar()) {
    files.push_back(includes.as<std::string>());
  } else if (includes.IsSequence()) {
    for (const auto& f : includes) files.push_back(scalar<std::string>(f, "include"));
  } else {
    schema_error(includes, "include", "expected a path or list of paths");
  }
  for (const std::string& f : files) {
    const fs::path path = fs::weakly_canonical(f);
    if (!fs::exists(path)) schema_error(includes, "include", "file not found: " + f);
    if (!active.insert(path).second) schema_error(includes, "include", "include cycle through " + f);
    const std::vector<unsigned char> bytes = read_file(path);
    digest_input.insert(digest_input.end(), bytes.begin(), bytes.end());
    YAML::Node child = with_includes(parse_yaml(std::string(bytes.begin(), bytes.end()), path.string()),
                                     path.parent_path(), digest_input, active);
    active.erase(path);
    merge_into(merged, child);
  }
  YAML::Node own = YAML::Clone(root);
  own.remove("include");
  merge_into(merged, own);
  return merged;
}

LoadedDocument load_document(const fs::path& path) {
  if (!fs::exists(path)) throw DataError("config file not found: " + path.string());
  LoadedDocument doc;
  doc.digest_input = read_file(path);
  std::set<fs::path> active{fs::weakly_canonical(path)};
  doc.root = with_includes(parse_yaml(std::string(doc.digest_input.begin(), doc.digest_input.end()), path.string()),
                           fs::absolute(path).parent_path(), doc.digest_input, active);
  return doc;
}

SpectralCurve curve_from_node(const YAML::Node& node, const std::string& field) {
  if (!node || !node.IsMap()) schema_error(node, field, "expected {csv: path} or {gaussian: {...}}");
  if (const YAML::Node csv = node["csv"]) {
    const fs::path p = scalar<std::string>(csv, field + ".csv");
    if (!fs::exists(p)) schema_error(csv, field + ".csv", "file not found: " + p.string());
    return load_curve_csv(p);
  }
  if (const YAML::Node g = node["gaussian"]) {
    const double center = scalar<double>(g["center_nm"], field + ".gaussian.center_nm");
    const double fwhm = scalar<double>(g["fwhm_nm"], field + ".gaussian.fwhm_nm");
    if (!(fwhm > 0.0)) schema_error(g, field + ".gaussian.fwhm_nm", "must be positive");
    return gaussian_curve(WavelengthGrid(360.0, 1.0, 441), center, fwhm);
  }
  if (const YAML::Node m = node["model"]) {
    if (scalar<std::string>(m, field + ".model") != "silicon") schema_error(m, field + ".model", "unknown model");
    return canonical_sensitivity();
  }
  schema_error(node, field, "expected one of csv, gaussian, model");
}

ScheduleConfig schedule_from_node(const YAML::Node& root) {
  const YAML::Node leds_node = root["leds"];
  if (!leds_node || !leds_node.IsSequence() || leds_node.size() == 0) {
    schema_error(root, "leds", "expected a non-empty list");
  }
  std::vector<LedChannel> leds;
  std::vector<std::string> names;
  std::vector<int> counts;
  for (std::size_t i = 0; i < leds_node.size(); ++i) {
    const YAML::Node n = leds_node[i];
    const std::string field = "leds[" + std::to_string(i) + "]";
    const std::string name = scalar<std::string>(n["name"], field + ".name");
    if (std::find(names.begin(), names.end(), name) != names.end()) schema_error(n, field + ".name", "duplicate LED");
    const int sub = scalar<int>(n["subframes"], field + ".subframes");
    if (sub <= 0) schema_error(n["subframes"], field + ".subframes", "must be positive");
    const double alpha = scalar_or<double>(n, "alpha", 1.0);
    if (alpha < 0.0) schema_error(n["alpha"], field + ".alpha", "must be non-negative");
    names.push_back(name);
    counts.push_back(sub);
    leds.push_back({name, curve_from_node(n["spd"], field + ".spd"), alpha});
  }
  auto index_of = [&](const YAML::Node& n, const std::string& field) {
    const std::string name = scalar<std::string>(n, field);
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) schema_error(n, field, "unknown LED '" + name + "'");
    return static_cast<int>(it - names.begin());
  };

  std::vector<int> order;
  if (const YAML::Node fo = root["firing_order"]) {
    if (!fo.IsSequence()) schema_error(fo, "firing_order", "expected a list of LED names");
    for (std::size_t i = 0; i < fo.size(); ++i) order.push_back(index_of(fo[i], "firing_order[" + std::to_string(i) + "]"));
  } else {
    for (std::size_t i = 0; i < names.size(); ++i) order.push_back(static_cast<int>(i));
  }

  const YAML::Node tile = root["tile"];
  if (!tile || !tile.IsSequence() || tile.size() == 0) schema_error(root, "tile", "expected a list of rows");
  std::vector<int> led_of_tile;
  std::size_t cols = 0;
  for (std::size_t r = 0; r < tile.size(); ++r) {
    const YAML::Node row = tile[r];
    const std::string field = "tile[" + std::to_string(r) + "]";
    if (!row.IsSequence() || row.size() == 0) schema_error(row, field, "expected a list of LED names");
    if (r == 0) cols = row.size();
    if (row.size() != cols) schema_error(row, field, "rows differ in length");
    for (std::size_t c = 0; c < row.size(); ++c) led_of_tile.push_back(index_of(row[c], field + "[" + std::to_string(c) + "]"));
  }

  const double subframe_us = scalar_or<double>(root, "subframe_us", 150.0);
  const double readout_us = scalar_or<double>(root, "readout_us", 6000.0);
  try {
    CodingSchedule schedule = make_contiguous_schedule(
        TileLayout(static_cast<int>(tile.size()), static_cast<int>(cols), std::move(led_of_tile)), names, counts,
        std::move(order), subframe_us, readout_us);
    return {std::move(schedule), std::move(leds)};
  } catch (const DataError& e) {
    schema_error(root, "schedule", e.what());
  }
}

std::vector<double> number_list(const YAML::Node& node, const std::string& field) {
  if (!node || !node.IsSequence()) schema_error(node, field, "expected a list");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) out.push_back(scalar<double>(node[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

SceneSource scene_from_node(const YAML::Node& node) {
  if (!node || !node.IsMap()) schema_error(node, "scene", "expected a mapping");
  SceneSource s;
  const std::string kind = scalar<std::string>(node["kind"], "scene.kind");
  if (kind == "cubes") {
    s.kind = SceneSource::Kind::kCubes;
    const YAML::Node cubes = node["cubes"];
    if (!cubes || !cubes.IsSequence() || cubes.size() == 0) schema_error(node, "scene.cubes", "expected a list of paths");
    for (std::size_t i = 0; i < cubes.size(); ++i) {
      const fs::path p = scalar<std::string>(cubes[i], "scene.cubes");
      if (!fs::exists(p)) schema_error(cubes[i], "scene.cubes[" + std::to_string(i) + "]", "file not found: " + p.string());
      s.cubes.push_back(p);
    }
    s.frames = static_cast<int>(s.cubes.size());
    return s;
  }
  if (kind == "flat") s.kind = SceneSource::Kind::kFlat;
  else if (kind == "mixture") s.kind = SceneSource::Kind::kMixture;
  else if (kind == "rainbow") s.kind = SceneSource::Kind::kRainbow;
  else if (kind == "translating") s.kind = SceneSource::Kind::kTranslating;
  else schema_error(node["kind"], "scene.kind", "unknown kind '" + kind + "'");
  s.width = scalar_or<int>(node, "width", s.kind == SceneSource::Kind::kRainbow ? 512 : 96);
  s.height = scalar_or<int>(node, "height", s.kind == SceneSource::Kind::kRainbow ? 512 : 96);
  s.frames = scalar_or<int>(node, "frames", 1);
  s.value = scalar_or<double>(node, "value", 0.5);
  s.components = scalar_or<int>(node, "components", 3);
  s.fwhm_nm = scalar_or<double>(node, "fwhm_nm", 20.0);
  s.velocity_px = scalar_or<double>(node, "velocity_px", 2.0);
  s.scene_seed = scalar_or<std::uint64_t>(node, "seed", 0);
  if (s.width <= 0 || s.height <= 0 || s.frames <= 0) schema_error(node, "scene", "sizes must be positive");
  if (s.components < 1 || s.components > 3) schema_error(node, "scene.components", "must be 1..3");
  return s;
}

}  // namespace

std::string sha256_hex(const std::vector<unsigned char>& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

ScheduleConfig parse_schedule_config(const std::string& yaml, const fs::path& base_dir) {
  std::vector<unsigned char> unused;
  std::set<fs::path> active;
  return schedule_from_node(with_includes(parse_yaml(yaml, "schedule"), fs::absolute(base_dir), unused, active));
}

ScheduleConfig load_schedule_config(const fs::path& path) {
  try {
    return schedule_from_node(load_document(path).root);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string canonical_schedule_yaml() {
  const CodingSchedule s = canonical_schedule();
  std::ostringstream os;
  os << "subframe_us: " << s.subframe_us << "\nreadout_us: " << s.readout_us << "\nleds:\n";
  for (const LedModelParams& p : canonical_led_params()) {
    const int l = s.led_index(p.name);
    os << "  - name: " << p.name << "\n    subframes: " << s.subframes_per_led[l]
       << "\n    spd: {gaussian: {center_nm: " << p.center_nm << ", fwhm_nm: " << p.fwhm_nm << "}}\n";
  }
  os << "firing_order: [";
  for (std::size_t i = 0; i < s.led_order.size(); ++i) os << (i ? ", " : "") << s.led_names[s.led_order[i]];
  os << "]\ntile:\n";
  for (int r = 0; r < s.layout.rows(); ++r) {
    os << "  - [";
    for (int c = 0; c < s.layout.cols(); ++c) os << (c ? ", " : "") << s.led_names[s.layout.led_at(r * s.layout.cols() + c)];
    os << "]\n";
  }
  return os.str();
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  try {
    LoadedDocument doc = load_document(path);
    const YAML::Node& root = doc.root;
    ExperimentConfig cfg;
    cfg.path = path;
    if (const YAML::Node sched = root["schedule"]) {
      if (sched.IsScalar()) {
        const fs::path p = sched.as<std::string>();
        if (!fs::exists(p)) schema_error(sched, "schedule", "file not found: " + p.string());
        const std::vector<unsigned char> bytes = read_file(p);
        doc.digest_input.insert(doc.digest_input.end(), bytes.begin(), bytes.end());
        cfg.schedule = load_schedule_config(p);
      } else if (sched.IsMap()) {
        cfg.schedule = schedule_from_node(sched);
      } else {
        schema_error(sched, "schedule", "expected a path or an inline schedule");
      }
    }
    if (const YAML::Node sens = root["sensitivity"]) cfg.sensitivity = curve_from_node(sens, "sensitivity");
    if (const YAML::Node scene = root["scene"]) cfg.scene = scene_from_node(scene);
    cfg.sigmas_pct = root["noise_sigmas_pct"] ? number_list(root["noise_sigmas_pct"], "noise_sigmas_pct")
                                              : std::vector<double>{0.0};
    for (double s : cfg.sigmas_pct) {
      if (s < 0.0 || s > 100.0) schema_error(root["noise_sigmas_pct"], "noise_sigmas_pct", "values must lie in [0, 100]");
    }
    const YAML::Node seeds = root["seeds"];
    if (!seeds || !seeds.IsSequence() || seeds.size() == 0) {
      schema_error(root, "seeds", "an explicit, non-empty list of seeds is required");
    }
    for (std::size_t i = 0; i < seeds.size(); ++i) cfg.seeds.push_back(scalar<std::uint64_t>(seeds[i], "seeds"));
    if (const YAML::Node solver = root["solver"]) {
      cfg.solver.lambda_reg = scalar_or<double>(solver, "lambda_reg", cfg.solver.lambda_reg);
      cfg.solver.mu = scalar_or<double>(solver, "mu", cfg.solver.mu);
      cfg.solver.kernel_floor = scalar_or<double>(solver, "kernel_floor", cfg.solver.kernel_floor);
    }
    if (const YAML::Node flow = root["flow"]) {
      cfg.flow_block = scalar_or<int>(flow, "block", cfg.flow_block);
      cfg.flow_search_radius = scalar_or<int>(flow, "search_radius", cfg.flow_search_radius);
    }
    cfg.reference_led = scalar_or<std::string>(root, "reference_led", cfg.reference_led);
    cfg.schedule.schedule.led_index(cfg.reference_led);
    const std::string out = scalar_or<std::string>(root, "output_dir", "out");
    cfg.output_dir = (fs::path(out).is_absolute() ? fs::path(out) : fs::absolute(path).parent_path() / out).lexically_normal();
    cfg.digest = sha256_hex(doc.digest_input);
    return cfg;
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace cepspec
