#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cepspec/spectral.hpp"

namespace cepspec {

struct CodedFrame;

// Cube file layout, little-endian:
//   "LMSC" | u32 version = 1 | u32 width | u32 height | u32 channels | f64 start_nm | f64 step_nm
//   | float32 values in (y, x, channel) order.
void save_cube(const std::filesystem::path& path, const HyperCube& cube);
HyperCube load_cube(const std::filesystem::path& path);

std::vector<unsigned char> encode_cube(const HyperCube& cube);
HyperCube decode_cube(const std::vector<unsigned char>& bytes);

// Coded frame layout, little-endian:
//   "LMCF" | u32 version = 1 | u32 width | u32 height | f64 noise_sigma_frac | u64 seed
//   | u32 frame_index | float32 values in row-major (y, x) order.
void save_frame(const std::filesystem::path& path, const CodedFrame& frame);
CodedFrame load_frame(const std::filesystem::path& path);

// Curve CSV with header `wavelength_nm,value`. Wavelengths must be uniformly spaced.
void save_curve_csv(const std::filesystem::path& path, const SpectralCurve& curve);
SpectralCurve load_curve_csv(const std::filesystem::path& path);

// Reads a whole file; throws DataError naming the path if it cannot be opened.
std::vector<unsigned char> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::vector<unsigned char>& bytes);

// Generic numeric CSV: optional header line, comma-separated rows.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable load_csv(const std::filesystem::path& path, bool has_header);

}  // namespace cepspec
