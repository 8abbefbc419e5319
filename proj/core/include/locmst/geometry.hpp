#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace locmst {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator*(double a, Point p) { return {a * p.x, a * p.y}; }

/// Euclidean distance.
inline double dist(Point p, Point q) noexcept {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return std::sqrt(dx * dx + dy * dy);
}

bool in_unit_square(Point p) noexcept;

/// Closed axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const noexcept { return x1 - x0; }
  double height() const noexcept { return y1 - y0; }
  double area() const noexcept { return width() * height(); }
  Point center() const noexcept { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  bool contains(Point p) const noexcept {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
  /// True when the interiors overlap (touching edges do not count).
  bool overlaps(const Rect& o) const noexcept {
    return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1;
  }
  bool contains(const Rect& o) const noexcept {
    return o.x0 >= x0 && o.x1 <= x1 && o.y0 >= y0 && o.y1 <= y1;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Regular s x s grid over the unit square with cell side A_n / sqrt(n) = 1/s,
/// where A_n is the smallest value >= A_target making sqrt(n)/A_n an integer.
struct Tiling {
  std::int64_t n = 0;
  double a_target = 0.0;
  double a_n = 0.0;
  int s = 0;
  double cell_side = 0.0;

  std::int64_t cell_count() const noexcept {
    return static_cast<std::int64_t>(s) * static_cast<std::int64_t>(s);
  }
};

/// Column/row of a grid cell; row 0 is the bottom row, col 0 the left column.
struct CellCoord {
  int col = 0;
  int row = 0;

  friend bool operator==(const CellCoord&, const CellCoord&) = default;
};

/// 1-based position of a cell in snake order.
using CellIndex = std::int64_t;

/// Throws Error{NoAdmissibleA} when [A_target, A_target + 1/log n] contains no
/// admissible side parameter; the message names the nearest admissible n.
Tiling build_tiling(std::int64_t n, double a_target);

/// Whether build_tiling(n, a_target) would succeed.
bool tiling_admissible(std::int64_t n, double a_target) noexcept;

/// Snake order: column-major starting at the top-left cell, alternating
/// direction per column, so consecutive cells share an edge.
CellIndex snake_index(const Tiling& t, CellCoord c);
CellCoord snake_coord(const Tiling& t, CellIndex index);

/// Snake index of the cell containing p.  Points on shared cell boundaries go
/// to the candidate cell with the largest index.  Throws OutOfDomain.
CellIndex cell_of(Point p, const Tiling& t);

/// Grid coordinate of the cell containing p, using the same boundary rule.
CellCoord cell_coord_of(Point p, const Tiling& t);

Rect cell_rect(const Tiling& t, CellCoord c);

/// All s*s cells in snake order.
std::vector<CellCoord> snake_neighbors(const Tiling& t);

/// Edge adjacency: aligned on one axis at unit distance.
inline bool edge_adjacent(CellCoord a, CellCoord b) noexcept {
  const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  return dc + dr == 1;
}

}  // namespace locmst
