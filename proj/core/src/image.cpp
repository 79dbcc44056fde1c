#include "densecount/image.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include <fmt/format.h>

#include "densecount/errors.hpp"

namespace densecount {

Image::Image(int w, int h, int ch, std::uint8_t fill) : width(w), height(h), channels(ch) {
  if (w <= 0 || h <= 0 || (ch != 1 && ch != 3)) {
    throw ConfigError(fmt::format("invalid image shape {}x{}x{}", w, h, ch));
  }
  pixels.assign(static_cast<std::size_t>(w) * h * ch, fill);
}

namespace {

class HeaderReader {
 public:
  HeaderReader(const std::vector<unsigned char>& data, std::string source)
      : data_(data), source_(std::move(source)) {}

  int next_int(const char* field) {
    skip_space_and_comments();
    std::size_t start = pos_;
    long value = 0;
    while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
      value = value * 10 + (data_[pos_] - '0');
      if (value > 1'000'000'000) break;
      ++pos_;
    }
    if (pos_ == start || value > 1'000'000'000) {
      throw ParseError(source_, 0, field, "expected a positive integer in PNM header");
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_offset(const char* field) {
    if (pos_ >= data_.size() || !std::isspace(data_[pos_])) {
      throw ParseError(source_, 0, field, "missing whitespace after PNM header");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      if (std::isspace(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& data_;
  std::string source_;
  std::size_t pos_ = 2;
};

}  // namespace

Image read_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  const std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  const std::string source = path.string();
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '5' && data[1] != '6')) {
    throw ParseError(source, 0, "magic", "expected binary PGM (P5) or PPM (P6)");
  }
  const int channels = data[1] == '5' ? 1 : 3;
  HeaderReader header(data, source);
  const int width = header.next_int("width");
  const int height = header.next_int("height");
  const int maxval = header.next_int("maxval");
  if (width <= 0 || height <= 0) throw ParseError(source, 0, "size", "image has zero size");
  if (maxval <= 0 || maxval > 255) {
    throw ParseError(source, 0, "maxval", fmt::format("unsupported maxval {}", maxval));
  }
  const std::size_t offset = header.raster_offset("maxval");
  const std::size_t bytes = static_cast<std::size_t>(width) * height * channels;
  if (data.size() - offset < bytes) {
    throw ParseError(source, 0, "raster",
                     fmt::format("expected {} bytes of pixels, found {}", bytes,
                                 data.size() - offset));
  }
  Image image(width, height, channels);
  const auto first = data.begin() + static_cast<std::ptrdiff_t>(offset);
  if (maxval == 255) {
    std::copy(first, first + static_cast<std::ptrdiff_t>(bytes), image.pixels.begin());
  } else {
    for (std::size_t i = 0; i < bytes; ++i) {
      const int v = std::min<int>(first[static_cast<std::ptrdiff_t>(i)], maxval);
      image.pixels[i] = static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
    }
  }
  return image;
}

void write_pnm(const std::filesystem::path& path, const Image& image) {
  if (image.channels != 1 && image.channels != 3) {
    throw ConfigError(fmt::format("cannot write {}-channel image as PNM", image.channels));
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << (image.channels == 1 ? "P5" : "P6") << '\n'
      << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

Image to_gray(const Image& image) {
  if (image.channels == 1) return image;
  Image gray(image.width, image.height, 1);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const double luma = 0.299 * image.at(x, y, 0) + 0.587 * image.at(x, y, 1) +
                          0.114 * image.at(x, y, 2);
      gray.at(x, y) = static_cast<std::uint8_t>(std::lround(luma));
    }
  }
  return gray;
}

Image to_rgb(const Image& image) {
  if (image.channels == 3) return image;
  Image rgb(image.width, image.height, 3);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    rgb.pixels[3 * i] = rgb.pixels[3 * i + 1] = rgb.pixels[3 * i + 2] = image.pixels[i];
  }
  return rgb;
}

}  // namespace densecount
