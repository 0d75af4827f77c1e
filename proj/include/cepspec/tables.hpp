#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace cepspec::tables {

// All tables are sampled at 10 nm from 380 nm to 780 nm.
inline constexpr std::size_t kTableCount = 41;
inline constexpr double kTableStartNm = 380.0;
inline constexpr double kTableStepNm = 10.0;
inline constexpr std::size_t kColorCheckerPatches = 24;

extern const std::array<std::array<double, 3>, kTableCount> kCie1931Xyz;
extern const std::array<double, kTableCount> kD65;
extern const std::array<std::string_view, kColorCheckerPatches> kColorCheckerNames;
extern const std::array<std::array<double, kTableCount>, kColorCheckerPatches> kColorChecker;

}  // namespace cepspec::tables
