#ifndef DENSECOUNT_IMAGE_HPP
#define DENSECOUNT_IMAGE_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

namespace densecount {

/// 8-bit interleaved raster with 1 (gray) or 3 (RGB) channels.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int width, int height, int channels, std::uint8_t fill = 0);

  std::uint8_t& at(int x, int y, int ch = 0) {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + ch];
  }
  std::uint8_t at(int x, int y, int ch = 0) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + ch];
  }

  friend bool operator==(const Image&, const Image&) = default;
};

/// Reads binary PGM (P5) or PPM (P6) with maxval <= 255.
Image read_pnm(const std::filesystem::path& path);

/// Writes P5 for one channel, P6 for three.
void write_pnm(const std::filesystem::path& path, const Image& image);

/// Rec. 601 luma for RGB input; gray input is returned unchanged.
Image to_gray(const Image& image);

/// Gray input replicated into three channels; RGB returned unchanged.
Image to_rgb(const Image& image);

}  // namespace densecount

#endif  // DENSECOUNT_IMAGE_HPP
