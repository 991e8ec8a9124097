#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace sbmp {

/// Visits every grid cell the closed segment (x0,y0)-(x1,y1) passes through,
/// in traversal order. This is a supercover walk, not Bresenham: when the
/// segment crosses a lattice corner exactly, both corner-adjacent cells are
/// visited as well, so a diagonal squeeze between two occupied pixels still
/// reads as blocked.
///
/// The visitor receives (cell_x, cell_y) and returns false to stop early.
template <typename Visit>
bool walk_supercover(double x0, double y0, double x1, double y1, Visit&& visit) {
  long cx = static_cast<long>(std::floor(x0));
  long cy = static_cast<long>(std::floor(y0));
  const long ex = static_cast<long>(std::floor(x1));
  const long ey = static_cast<long>(std::floor(y1));

  if (!visit(cx, cy)) return false;

  const double dx = x1 - x0;
  const double dy = y1 - y0;
  const long step_x = dx > 0.0 ? 1 : -1;
  const long step_y = dy > 0.0 ? 1 : -1;

  const double inf = std::numeric_limits<double>::infinity();
  // Parameter t of the next vertical / horizontal boundary crossing, and the
  // parameter advance per cell in each axis.
  double t_max_x = inf, t_delta_x = inf;
  double t_max_y = inf, t_delta_y = inf;
  if (dx != 0.0) {
    const double next_x = dx > 0.0 ? static_cast<double>(cx + 1) : static_cast<double>(cx);
    t_max_x = (next_x - x0) / dx;
    t_delta_x = static_cast<double>(step_x) / dx;
  }
  if (dy != 0.0) {
    const double next_y = dy > 0.0 ? static_cast<double>(cy + 1) : static_cast<double>(cy);
    t_max_y = (next_y - y0) / dy;
    t_delta_y = static_cast<double>(step_y) / dy;
  }

  // Rounding safety net; the walk normally finishes in |Δcx|+|Δcy| steps.
  long budget = 2 * (std::labs(ex - cx) + std::labs(ey - cy)) + 4;

  while ((cx != ex || cy != ey) && budget-- > 0) {
    if (t_max_x < t_max_y) {
      cx += step_x;
      t_max_x += t_delta_x;
    } else if (t_max_y < t_max_x) {
      cy += step_y;
      t_max_y += t_delta_y;
    } else {
      // Exact corner crossing: the segment touches both side cells.
      if (!visit(cx + step_x, cy)) return false;
      if (!visit(cx, cy + step_y)) return false;
      cx += step_x;
      cy += step_y;
      t_max_x += t_delta_x;
      t_max_y += t_delta_y;
    }
    if (!visit(cx, cy)) return false;
  }
  if (cx != ex || cy != ey) {
    return visit(ex, ey);  // budget exhausted by fp drift; still check the end cell
  }
  return true;
}

}  // namespace sbmp
