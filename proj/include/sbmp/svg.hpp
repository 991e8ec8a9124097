#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <zlib.h>

#include <json.hpp>

#include "sbmp/cspace.hpp"
#include "sbmp/env.hpp"
#include "sbmp/error.hpp"
#include "sbmp/grid.hpp"

namespace sbmp {

/// Shortest-round-trip decimal text for a double, shared by every output
/// writer (JSON, CSV, SVG) so the same value always prints the same bytes.
inline std::string fmt_number(double v) { return nlohmann::json(v).dump(); }

/// Counts entries into the rendering code path. Benchmark mode must leave
/// this untouched — visualization off means off.
inline std::uint64_t& render_invocations() {
  static std::uint64_t count = 0;
  return count;
}

namespace svg_detail {

// Grids larger than this render as one embedded raster instead of per-pixel
// rects, keeping SVG sizes bounded.
constexpr std::size_t kMaxRectPixels = 65536;

inline void append_u32_be(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

inline void append_chunk(std::string& out, const char type[4],
                         const std::string& data) {
  append_u32_be(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t crc_from = out.size();
  out.append(type, 4);
  out.append(data);
  const auto* bytes = reinterpret_cast<const Bytef*>(out.data() + crc_from);
  const auto crc = crc32(0L, bytes, static_cast<uInt>(4 + data.size()));
  append_u32_be(out, static_cast<std::uint32_t>(crc));
}

/// 8-bit grayscale PNG: occupied pixels black, free pixels white.
inline std::string encode_grid_png(const OccupancyGrid& grid) {
  const int w = grid.width();
  const int h = grid.height();

  std::string raw;
  raw.reserve(static_cast<std::size_t>(h) * (w + 1));
  for (int y = 0; y < h; ++y) {
    raw.push_back('\0');  // scanline filter: none
    for (int x = 0; x < w; ++x) {
      raw.push_back(grid.is_occupied(x, y) ? '\0' : '\xff');
    }
  }

  uLongf compressed_size = compressBound(static_cast<uLong>(raw.size()));
  std::string compressed(compressed_size, '\0');
  if (compress2(reinterpret_cast<Bytef*>(compressed.data()), &compressed_size,
                reinterpret_cast<const Bytef*>(raw.data()),
                static_cast<uLong>(raw.size()), 6) != Z_OK) {
    throw IoError("PNG compression failed");
  }
  compressed.resize(compressed_size);

  std::string ihdr;
  append_u32_be(ihdr, static_cast<std::uint32_t>(w));
  append_u32_be(ihdr, static_cast<std::uint32_t>(h));
  ihdr.push_back(8);     // bit depth
  ihdr.push_back(0);     // grayscale
  ihdr.push_back(0);     // compression
  ihdr.push_back(0);     // filter
  ihdr.push_back(0);     // no interlace

  std::string png("\x89PNG\r\n\x1a\n", 8);
  append_chunk(png, "IHDR", ihdr);
  append_chunk(png, "IDAT", compressed);
  append_chunk(png, "IEND", "");
  return png;
}

inline std::string base64(const std::string& data) {
  static const char alphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= data.size(); i += 3) {
    const std::uint32_t v = (static_cast<std::uint8_t>(data[i]) << 16) |
                            (static_cast<std::uint8_t>(data[i + 1]) << 8) |
                            static_cast<std::uint8_t>(data[i + 2]);
    out.push_back(alphabet[(v >> 18) & 63]);
    out.push_back(alphabet[(v >> 12) & 63]);
    out.push_back(alphabet[(v >> 6) & 63]);
    out.push_back(alphabet[v & 63]);
  }
  const std::size_t rest = data.size() - i;
  if (rest == 1) {
    const std::uint32_t v = static_cast<std::uint8_t>(data[i]) << 16;
    out.push_back(alphabet[(v >> 18) & 63]);
    out.push_back(alphabet[(v >> 12) & 63]);
    out += "==";
  } else if (rest == 2) {
    const std::uint32_t v = (static_cast<std::uint8_t>(data[i]) << 16) |
                            (static_cast<std::uint8_t>(data[i + 1]) << 8);
    out.push_back(alphabet[(v >> 18) & 63]);
    out.push_back(alphabet[(v >> 12) & 63]);
    out.push_back(alphabet[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

}  // namespace svg_detail

/// Everything a finished run contributes to one picture. For arm scenes
/// tree edges and start/goal markers are drawn at end-effector positions
/// and the full arm skeleton is traced at every path waypoint.
struct RenderScene {
  const OccupancyGrid& grid;
  const PlanarArmEnv* arm = nullptr;  // null for the point-mass backend
  std::vector<std::pair<Configuration, Configuration>> edges;
  std::vector<Configuration> path;
  Configuration start;
  Configuration goal;
};

/// Writes a standalone SVG 1.1 document. Output is deterministic: fixed
/// element order (obstacles row-major, edges in node-id order, then path,
/// waypoint arms, start/goal markers) and shared number formatting.
inline void render_svg(const RenderScene& scene, std::ostream& out) {
  ++render_invocations();

  const OccupancyGrid& grid = scene.grid;
  const int w = grid.width();
  const int h = grid.height();
  const auto num = [](double v) { return fmt_number(v); };

  const auto workspace_point = [&scene](const Configuration& q) {
    if (scene.arm != nullptr) {
      return scene.arm->forward_kinematics(q).back();
    }
    return Vec2{q[0], q[1]};
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" "
         "xmlns:xlink=\"http://www.w3.org/1999/xlink\" version=\"1.1\" "
         "width=\""
      << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"#ffffff\"/>\n";

  if (static_cast<std::size_t>(w) * static_cast<std::size_t>(h) >
      svg_detail::kMaxRectPixels) {
    out << "<image x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
        << "\" xlink:href=\"data:image/png;base64,"
        << svg_detail::base64(svg_detail::encode_grid_png(grid)) << "\"/>\n";
  } else {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (grid.is_occupied(x, y)) {
          out << "<rect class=\"obstacle\" x=\"" << x << "\" y=\"" << y
              << "\" width=\"1\" height=\"1\" fill=\"#333333\"/>\n";
        }
      }
    }
  }

  for (const auto& [from, to] : scene.edges) {
    const Vec2 a = workspace_point(from);
    const Vec2 b = workspace_point(to);
    out << "<polyline class=\"tree\" points=\"" << num(a.x) << "," << num(a.y)
        << " " << num(b.x) << "," << num(b.y)
        << "\" stroke=\"#4a90d9\" stroke-width=\"1\" fill=\"none\"/>\n";
  }

  if (scene.path.size() >= 2) {
    out << "<polyline class=\"path\" points=\"";
    for (std::size_t i = 0; i < scene.path.size(); ++i) {
      const Vec2 p = workspace_point(scene.path[i]);
      if (i > 0) out << " ";
      out << num(p.x) << "," << num(p.y);
    }
    out << "\" stroke=\"#d64541\" stroke-width=\"3\" fill=\"none\"/>\n";
  }

  if (scene.arm != nullptr) {
    for (const Configuration& waypoint : scene.path) {
      const auto joints = scene.arm->forward_kinematics(waypoint);
      out << "<polyline class=\"arm\" points=\"";
      for (std::size_t i = 0; i < joints.size(); ++i) {
        if (i > 0) out << " ";
        out << num(joints[i].x) << "," << num(joints[i].y);
      }
      out << "\" stroke=\"#8e44ad\" stroke-width=\"2\" fill=\"none\"/>\n";
    }
  }

  const Vec2 s = workspace_point(scene.start);
  const Vec2 g = workspace_point(scene.goal);
  out << "<circle class=\"start\" cx=\"" << num(s.x) << "\" cy=\"" << num(s.y)
      << "\" r=\"3\" fill=\"#2ecc71\"/>\n";
  out << "<circle class=\"goal\" cx=\"" << num(g.x) << "\" cy=\"" << num(g.y)
      << "\" r=\"3\" fill=\"#f39c12\"/>\n";
  out << "</svg>\n";
}

}  // namespace sbmp
