#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <fstream>

#include "densecount/dgrd.hpp"
#include "densecount/errors.hpp"
#include "densecount/rng.hpp"
#include "fixtures.hpp"

namespace densecount {
namespace {

DensityMap float_map(std::size_t rows, std::size_t cols, double scale, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> v(rows * cols);
  for (double& x : v) x = static_cast<float>(rng.uniform() * 0.05);
  return DensityMap(rows, cols, std::move(v), scale);
}

std::vector<std::byte> bytes_of(std::initializer_list<int> xs) {
  std::vector<std::byte> out;
  for (int x : xs) out.push_back(static_cast<std::byte>(x));
  return out;
}

TEST(Dgrd, HeaderLayout) {
  DensityMap map(2, 3, {0, 1, 2, 3, 4, 0.5}, 0.125);
  const auto bytes = dgrd::encode(map);
  ASSERT_EQ(bytes.size(), 4u + 4 + 4 + 6 * 4 + 8);
  EXPECT_EQ(std::memcmp(bytes.data(), "DGRD", 4), 0);
  EXPECT_EQ(bytes[4], std::byte{2});
  EXPECT_EQ(bytes[5], std::byte{0});
  EXPECT_EQ(bytes[8], std::byte{3});
  // Cell (0,1) = 1.0f = 0x3f800000, little-endian.
  EXPECT_EQ(bytes[16], std::byte{0x00});
  EXPECT_EQ(bytes[19], std::byte{0x3f});
  // Trailing scale 0.125 = 0x3fc0000000000000.
  EXPECT_EQ(bytes[bytes.size() - 1], std::byte{0x3f});
  EXPECT_EQ(bytes[bytes.size() - 2], std::byte{0xc0});
}

TEST(Dgrd, RoundTripIsExactForFloatValues) {
  const auto map = float_map(37, 51, 0.125, 9);
  const auto back = dgrd::decode(dgrd::encode(map));
  EXPECT_EQ(back, map);
  EXPECT_EQ(integrate(back), integrate(map));
}

TEST(Dgrd, QuantizeMatchesReadBack) {
  SplitMix64 rng(4);
  std::vector<double> v(100);
  for (double& x : v) x = rng.uniform();
  const DensityMap map(10, 10, v);
  EXPECT_EQ(dgrd::decode(dgrd::encode(map)), dgrd::quantize(map));
  EXPECT_EQ(dgrd::quantize(dgrd::quantize(map)), dgrd::quantize(map));
}

TEST(Dgrd, EmptyMapRoundTrips) {
  const DensityMap map(0, 0);
  EXPECT_EQ(dgrd::decode(dgrd::encode(map)), map);
}

TEST(Dgrd, FileRoundTrip) {
  const auto dir = fixtures::temp_dir("dgrd_file");
  const auto map = float_map(5, 7, 1.0, 2);
  dgrd::write_file(dir / "m.dgrd", map);
  EXPECT_EQ(dgrd::read_file(dir / "m.dgrd"), map);
  EXPECT_THROW(dgrd::read_file(dir / "missing.dgrd"), IoError);
}

TEST(Dgrd, RejectsBadMagic) {
  auto bytes = dgrd::encode(float_map(2, 2, 1.0, 1));
  bytes[0] = std::byte{'X'};
  EXPECT_THROW(dgrd::decode(bytes), ParseError);
}

TEST(Dgrd, RejectsTruncatedAndOversized) {
  auto bytes = dgrd::encode(float_map(2, 2, 1.0, 1));
  auto shorter = bytes;
  shorter.pop_back();
  EXPECT_THROW(dgrd::decode(shorter), ParseError);
  auto longer = bytes;
  longer.push_back(std::byte{0});
  EXPECT_THROW(dgrd::decode(longer), ParseError);
  EXPECT_THROW(dgrd::decode(bytes_of({'D', 'G', 'R'})), ParseError);
}

TEST(Dgrd, RejectsHugeDimensionsWithoutAllocating) {
  const auto bytes = bytes_of({'D', 'G', 'R', 'D', 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff});
  EXPECT_THROW(dgrd::decode(bytes), ParseError);
}

TEST(Dgrd, RejectsNegativeCellAndBadScale) {
  auto bytes = dgrd::encode(DensityMap(1, 1, std::vector<double>{1.0}));
  bytes[12 + 3] = std::byte{0xbf};  // -1.0f
  EXPECT_THROW(dgrd::decode(bytes), ParseError);

  auto zero_scale = dgrd::encode(DensityMap(1, 1, std::vector<double>{1.0}));
  for (std::size_t i = zero_scale.size() - 8; i < zero_scale.size(); ++i) zero_scale[i] = std::byte{0};
  EXPECT_THROW(dgrd::decode(zero_scale), ParseError);
}

TEST(Dgrd, ParseErrorNamesSource) {
  try {
    dgrd::decode(bytes_of({'n', 'o', 'p', 'e'}), "pred/a.dgrd");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.source(), "pred/a.dgrd");
  }
}

TEST(Dgrd, RejectsValuesThatOverflowFloat) {
  EXPECT_THROW(dgrd::encode(DensityMap(1, 1, std::vector<double>{1e300})), ConfigError);
}

}  // namespace
}  // namespace densecount
