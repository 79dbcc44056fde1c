#include "densecount/dgrd.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include <fmt/format.h>

#include "densecount/errors.hpp"

namespace densecount::dgrd {
namespace {

constexpr std::size_t kHeaderBytes = 12;
constexpr std::size_t kTrailerBytes = 8;

template <typename UInt>
void put_le(std::vector<std::byte>& out, UInt v) {
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xffu));
  }
}

template <typename UInt>
UInt get_le(std::span<const std::byte> in, std::size_t offset) {
  UInt v = 0;
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    v |= static_cast<UInt>(std::to_integer<unsigned>(in[offset + i])) << (8 * i);
  }
  return v;
}

}  // namespace

std::vector<std::byte> encode(const DensityMap& map) {
  if (map.rows() > std::numeric_limits<std::uint32_t>::max() ||
      map.cols() > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError("density map too large for DGRD");
  }
  std::vector<std::byte> out;
  out.reserve(kHeaderBytes + 4 * map.size() + kTrailerBytes);
  for (char ch : kMagic) out.push_back(static_cast<std::byte>(ch));
  put_le(out, static_cast<std::uint32_t>(map.rows()));
  put_le(out, static_cast<std::uint32_t>(map.cols()));
  for (double v : map.values()) {
    const auto f = static_cast<float>(v);
    if (!std::isfinite(f)) throw ConfigError(fmt::format("density value {} overflows float", v));
    put_le(out, std::bit_cast<std::uint32_t>(f));
  }
  put_le(out, std::bit_cast<std::uint64_t>(map.scale()));
  return out;
}

DensityMap decode(std::span<const std::byte> bytes, std::string_view source) {
  const std::string src(source);
  if (bytes.size() < kHeaderBytes + kTrailerBytes) {
    throw ParseError(src, 0, "header", fmt::format("truncated file ({} bytes)", bytes.size()));
  }
  if (std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
    throw ParseError(src, 0, "magic", "expected 'DGRD'");
  }
  const auto rows = get_le<std::uint32_t>(bytes, 4);
  const auto cols = get_le<std::uint32_t>(bytes, 8);
  const std::uint64_t cells = std::uint64_t{rows} * cols;
  const std::uint64_t expected = kHeaderBytes + 4 * cells + kTrailerBytes;
  if (bytes.size() != expected) {
    throw ParseError(src, 0, "payload",
                     fmt::format("{}x{} grid needs {} bytes, file has {}", rows, cols,
                                 expected, bytes.size()));
  }
  std::vector<double> values(static_cast<std::size_t>(cells));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const float f = std::bit_cast<float>(get_le<std::uint32_t>(bytes, kHeaderBytes + 4 * i));
    if (!(std::isfinite(f) && f >= 0.0f)) {
      throw ParseError(src, 0, fmt::format("cell {}", i),
                       fmt::format("density value {} is not a finite non-negative number", f));
    }
    values[i] = f;
  }
  const double scale =
      std::bit_cast<double>(get_le<std::uint64_t>(bytes, kHeaderBytes + 4 * cells));
  if (!(std::isfinite(scale) && scale > 0.0)) {
    throw ParseError(src, 0, "scale", fmt::format("scale must be positive, got {}", scale));
  }
  return DensityMap(rows, cols, std::move(values), scale);
}

void write_file(const std::filesystem::path& path, const DensityMap& map) {
  const auto bytes = encode(map);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

DensityMap read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode(std::as_bytes(std::span(raw)), path.string());
}

DensityMap quantize(const DensityMap& map) {
  std::vector<double> values(map.values().begin(), map.values().end());
  for (double& v : values) v = static_cast<float>(v);
  return DensityMap(map.rows(), map.cols(), std::move(values), map.scale());
}

}  // namespace densecount::dgrd
