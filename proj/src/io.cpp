#include "cepspec/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "cepspec/forward.hpp"

namespace cepspec {

namespace {

constexpr std::uint32_t kFormatVersion = 1;
// Upper bound on stored elements; keeps size arithmetic in range.
constexpr std::uint64_t kMaxElements = 1ULL << 32;

class Writer {
 public:
  void bytes(const char* s, std::size_t n) { out_.insert(out_.end(), s, s + n); }
  void u32(std::uint32_t v) { put(v); }
  void u64(std::uint64_t v) { put(v); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v)); }
  void f32(float v) { put(std::bit_cast<std::uint32_t>(v)); }
  std::vector<unsigned char> take() { return std::move(out_); }

 private:
  template <typename U>
  void put(U v) {
    for (std::size_t i = 0; i < sizeof(U); ++i) out_.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
  std::vector<unsigned char> out_;
};

class Reader {
 public:
  Reader(const std::vector<unsigned char>& in, std::string what) : in_(in), what_(std::move(what)) {}
  void magic(const char* expected) {
    need(4);
    if (std::memcmp(in_.data() + pos_, expected, 4) != 0) {
      throw DataError(what_ + ": bad magic, expected \"" + expected + "\"");
    }
    pos_ += 4;
  }
  std::uint32_t u32() { return get<std::uint32_t>(); }
  std::uint64_t u64() { return get<std::uint64_t>(); }
  double f64() { return std::bit_cast<double>(get<std::uint64_t>()); }
  float f32() { return std::bit_cast<float>(get<std::uint32_t>()); }
  std::size_t remaining() const { return in_.size() - pos_; }
  void need(std::size_t n) const {
    if (remaining() < n) throw DataError(what_ + ": truncated payload");
  }

 private:
  template <typename U>
  U get() {
    need(sizeof(U));
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(in_[pos_ + i]) << (8 * i);
    pos_ += sizeof(U);
    return v;
  }
  const std::vector<unsigned char>& in_;
  std::string what_;
  std::size_t pos_ = 0;
};

void check_version(std::uint32_t version, const std::string& what) {
  if (version != kFormatVersion) {
    throw DataError(what + ": unsupported version " + std::to_string(version));
  }
}

std::uint64_t checked_elements(std::initializer_list<std::uint32_t> dims, const std::string& what) {
  std::uint64_t n = 1;
  for (std::uint32_t d : dims) {
    if (d == 0) throw DataError(what + ": zero dimension");
    if (d > std::numeric_limits<int>::max()) throw DataError(what + ": dimension overflow");
    n *= d;
    if (n > kMaxElements) throw DataError(what + ": dimension overflow");
  }
  return n;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& text, const std::filesystem::path& path, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw DataError(path.string() + ":" + std::to_string(line) + ": not a number: '" + text + "'");
  }
}

}  // namespace

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed for " + path.string());
}

std::vector<unsigned char> encode_cube(const HyperCube& cube) {
  Writer w;
  w.bytes("LMSC", 4);
  w.u32(kFormatVersion);
  w.u32(static_cast<std::uint32_t>(cube.width()));
  w.u32(static_cast<std::uint32_t>(cube.height()));
  w.u32(static_cast<std::uint32_t>(cube.channels()));
  w.f64(cube.grid().start_nm());
  w.f64(cube.grid().step_nm());
  const double* d = cube.data().data();
  for (Eigen::Index i = 0; i < cube.data().size(); ++i) w.f32(static_cast<float>(d[i]));
  return w.take();
}

HyperCube decode_cube(const std::vector<unsigned char>& bytes) {
  Reader r(bytes, "cube");
  r.magic("LMSC");
  check_version(r.u32(), "cube");
  const std::uint32_t width = r.u32();
  const std::uint32_t height = r.u32();
  const std::uint32_t channels = r.u32();
  const double start = r.f64();
  const double step = r.f64();
  const std::uint64_t n = checked_elements({width, height, channels}, "cube");
  r.need(n * 4);
  HyperCube cube(static_cast<int>(width), static_cast<int>(height),
                 WavelengthGrid(start, step, static_cast<int>(channels)));
  double* d = cube.data().data();
  for (std::uint64_t i = 0; i < n; ++i) d[i] = r.f32();
  if (r.remaining() != 0) throw DataError("cube: trailing bytes after payload");
  return cube;
}

void save_cube(const std::filesystem::path& path, const HyperCube& cube) { write_file(path, encode_cube(cube)); }

HyperCube load_cube(const std::filesystem::path& path) {
  try {
    return decode_cube(read_file(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void save_frame(const std::filesystem::path& path, const CodedFrame& frame) {
  Writer w;
  w.bytes("LMCF", 4);
  w.u32(kFormatVersion);
  w.u32(static_cast<std::uint32_t>(frame.width()));
  w.u32(static_cast<std::uint32_t>(frame.height()));
  w.f64(frame.noise_sigma_frac);
  w.u64(frame.seed);
  w.u32(static_cast<std::uint32_t>(frame.frame_index));
  for (int y = 0; y < frame.height(); ++y)
    for (int x = 0; x < frame.width(); ++x) w.f32(static_cast<float>(frame.values(y, x)));
  write_file(path, w.take());
}

CodedFrame load_frame(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = read_file(path);
  const std::string what = path.string();
  Reader r(bytes, what);
  r.magic("LMCF");
  check_version(r.u32(), what);
  const std::uint32_t width = r.u32();
  const std::uint32_t height = r.u32();
  CodedFrame frame;
  frame.noise_sigma_frac = r.f64();
  frame.seed = r.u64();
  frame.frame_index = static_cast<int>(r.u32());
  const std::uint64_t n = checked_elements({width, height}, what);
  r.need(n * 4);
  frame.values.resize(height, width);
  for (std::uint32_t y = 0; y < height; ++y)
    for (std::uint32_t x = 0; x < width; ++x) frame.values(y, x) = r.f32();
  if (r.remaining() != 0) throw DataError(what + ": trailing bytes after payload");
  return frame;
}

CsvTable load_csv(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (has_header && table.header.empty()) {
      table.header = split(line, ',');
      continue;
    }
    std::vector<double> row;
    for (const std::string& f : split(line, ',')) row.push_back(parse_number(f, path, number));
    if (!table.rows.empty() && row.size() != table.rows.front().size()) {
      throw DataError(path.string() + ":" + std::to_string(number) + ": expected " +
                      std::to_string(table.rows.front().size()) + " fields, got " + std::to_string(row.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void save_curve_csv(const std::filesystem::path& path, const SpectralCurve& curve) {
  std::ostringstream os;
  os.precision(17);
  os << "wavelength_nm,value\n";
  for (int k = 0; k < curve.size(); ++k) os << curve.grid().wavelength(k) << ',' << curve[k] << '\n';
  const std::string s = os.str();
  write_file(path, std::vector<unsigned char>(s.begin(), s.end()));
}

SpectralCurve load_curve_csv(const std::filesystem::path& path) {
  const CsvTable t = load_csv(path, true);
  if (t.header.size() != 2 || t.header[0] != "wavelength_nm" || t.header[1] != "value") {
    throw DataError(path.string() + ": expected header 'wavelength_nm,value'");
  }
  if (t.rows.empty() || t.rows.front().size() != 2) throw DataError(path.string() + ": no curve samples");
  const double start = t.rows.front()[0];
  const double step = t.rows.size() > 1 ? t.rows[1][0] - t.rows[0][0] : 1.0;
  Vector v(static_cast<Eigen::Index>(t.rows.size()));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (std::abs(t.rows[i][0] - (start + step * static_cast<double>(i))) > 1e-6 * std::max(1.0, step)) {
      throw DataError(path.string() + ": wavelengths are not uniformly spaced at row " + std::to_string(i + 2));
    }
    v[static_cast<Eigen::Index>(i)] = t.rows[i][1];
  }
  return {WavelengthGrid(start, step, static_cast<int>(v.size())), std::move(v)};
}

}  // namespace cepspec
