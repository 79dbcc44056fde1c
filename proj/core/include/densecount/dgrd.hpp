#ifndef DENSECOUNT_DGRD_HPP
#define DENSECOUNT_DGRD_HPP

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "densecount/density_map.hpp"

namespace densecount::dgrd {

// Density-grid exchange file:
//   bytes 0..3   "DGRD"
//   u32 LE       rows
//   u32 LE       cols
//   f32 LE x rows*cols, row-major
//   f64 LE       scale
//
// Cell values are stored as 32-bit floats, so encoding rounds each value to
// the nearest float. Maps whose values are already float-representable
// round-trip exactly.

inline constexpr std::string_view kMagic = "DGRD";

std::vector<std::byte> encode(const DensityMap& map);

/// Throws ParseError on bad magic, truncated or oversized payloads, negative
/// or non-finite cells, or a non-positive scale.
DensityMap decode(std::span<const std::byte> bytes, std::string_view source = "<memory>");

void write_file(const std::filesystem::path& path, const DensityMap& map);
DensityMap read_file(const std::filesystem::path& path);

/// The map as it will read back from disk (every cell rounded to float).
DensityMap quantize(const DensityMap& map);

}  // namespace densecount::dgrd

#endif  // DENSECOUNT_DGRD_HPP
