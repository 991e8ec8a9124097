#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sbmp/error.hpp"

namespace sbmp {

/// 2D boolean obstacle field. Ground truth for every collision query.
/// Coordinates follow image convention: x = column, y = row, origin top-left.
class OccupancyGrid {
 public:
  OccupancyGrid(int width, int height, bool occupied = false)
      : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      throw ContractViolation("grid dimensions must be at least 1x1");
    }
    cells_.assign(static_cast<std::size_t>(width) * height, occupied ? 1 : 0);
  }

  int width() const { return width_; }
  int height() const { return height_; }

  /// Total function: anything outside the image is solid.
  bool is_occupied(int x, int y) const {
    if (x < 0 || y < 0 || x >= width_ || y >= height_) return true;
    return cells_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }

  void set(int x, int y, bool occupied) {
    if (x < 0 || y < 0 || x >= width_ || y >= height_) {
      throw ContractViolation("set: cell outside grid");
    }
    cells_[static_cast<std::size_t>(y) * width_ + x] = occupied ? 1 : 0;
  }

  std::size_t occupied_count() const {
    std::size_t n = 0;
    for (auto c : cells_) n += c;
    return n;
  }

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> cells_;  // row-major, 1 = occupied
};

namespace netpbm_detail {

struct Cursor {
  std::string_view bytes;
  std::size_t pos = 0;

  bool eof() const { return pos >= bytes.size(); }
  char peek() const { return bytes[pos]; }

  // Whitespace and '#' comments (to end of line) separate header tokens and
  // plain-format samples.
  void skip_separators() {
    while (!eof()) {
      const char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        break;
      }
    }
  }

  long parse_uint(const char* what) {
    skip_separators();
    if (eof()) {
      throw ParseError(std::string("malformed header: missing ") + what, pos);
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      throw ParseError(std::string("malformed header: expected digit for ") + what,
                       pos);
    }
    long value = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      if (value > 1'000'000'000L) {
        throw ParseError(std::string("malformed header: ") + what + " out of range",
                         pos);
      }
      ++pos;
    }
    return value;
  }
};

}  // namespace netpbm_detail

/// Parses a Netpbm image (PGM P2/P5, PPM P3/P6, maxval up to 65535) into an
/// occupancy grid. A pixel is an obstacle iff its luminance, rescaled to a
/// 0-255 range, is below 128 — dark ink is solid. PPM luminance uses the
/// Rec.601 weights round(0.299 R + 0.587 G + 0.114 B).
inline OccupancyGrid load_netpbm(std::string_view bytes) {
  using netpbm_detail::Cursor;
  Cursor cur{bytes};

  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw ParseError("unsupported magic number", 0);
  }
  const char kind = bytes[1];
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
    throw ParseError(std::string("unsupported magic number 'P") + kind + "'", 0);
  }
  cur.pos = 2;
  const bool color = (kind == '3' || kind == '6');
  const bool binary = (kind == '5' || kind == '6');

  const long width = cur.parse_uint("width");
  const long height = cur.parse_uint("height");
  const long maxval = cur.parse_uint("maxval");
  if (width < 1 || height < 1) {
    throw ParseError("malformed header: image dimensions must be positive", cur.pos);
  }
  if (maxval < 1 || maxval > 65535) {
    throw ParseError("malformed header: maxval must be in [1, 65535]", cur.pos);
  }

  const std::size_t samples_per_pixel = color ? 3 : 1;
  const std::size_t total_samples =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
      samples_per_pixel;
  std::vector<std::uint32_t> samples;
  samples.reserve(total_samples);

  if (binary) {
    // Exactly one whitespace byte after maxval, then raw samples.
    if (cur.eof() || !std::isspace(static_cast<unsigned char>(cur.peek()))) {
      throw ParseError("malformed header: expected whitespace before pixel data",
                       cur.pos);
    }
    ++cur.pos;
    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    for (std::size_t i = 0; i < total_samples; ++i) {
      if (cur.pos + bytes_per_sample > bytes.size()) {
        throw ParseError("truncated pixel data", cur.pos);
      }
      std::uint32_t v = static_cast<std::uint8_t>(bytes[cur.pos]);
      if (bytes_per_sample == 2) {
        v = (v << 8) | static_cast<std::uint8_t>(bytes[cur.pos + 1]);  // big-endian
      }
      cur.pos += bytes_per_sample;
      if (v > static_cast<std::uint32_t>(maxval)) {
        throw ParseError("sample value exceeds maxval", cur.pos - bytes_per_sample);
      }
      samples.push_back(v);
    }
  } else {
    for (std::size_t i = 0; i < total_samples; ++i) {
      cur.skip_separators();
      if (cur.eof()) {
        throw ParseError("truncated pixel data", cur.pos);
      }
      const std::size_t at = cur.pos;
      if (!std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        throw ParseError("malformed pixel data: expected digit", at);
      }
      long v = 0;
      while (!cur.eof() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        v = v * 10 + (cur.peek() - '0');
        if (v > maxval) {
          throw ParseError("sample value exceeds maxval", at);
        }
        ++cur.pos;
      }
      samples.push_back(static_cast<std::uint32_t>(v));
    }
  }

  OccupancyGrid grid(static_cast<int>(width), static_cast<int>(height));
  std::size_t s = 0;
  for (long y = 0; y < height; ++y) {
    for (long x = 0; x < width; ++x) {
      double weighted;
      if (color) {
        weighted = 0.299 * samples[s] + 0.587 * samples[s + 1] +
                   0.114 * samples[s + 2];
        s += 3;
      } else {
        weighted = samples[s];
        s += 1;
      }
      // Rescale to the 0-255 range before thresholding. Scaling the summed
      // value keeps exact half-way points (e.g. 50/100) exact.
      const double luminance =
          maxval == 255 ? weighted : weighted * 255.0 / static_cast<double>(maxval);
      grid.set(static_cast<int>(x), static_cast<int>(y),
               std::lround(luminance) < 128);
    }
  }
  return grid;
}

inline OccupancyGrid load_netpbm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open map file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_netpbm(buf.str());
}

}  // namespace sbmp
