#include "locmst/geometry.hpp"

#include <cmath>
#include <string>

#include "locmst/error.hpp"

namespace locmst {

bool in_unit_square(Point p) noexcept {
  return std::isfinite(p.x) && std::isfinite(p.y) && p.x >= 0.0 && p.x <= 1.0 &&
         p.y >= 0.0 && p.y <= 1.0;
}

namespace {

// Largest s with s * a <= sqrt(n), then A_n = sqrt(n) / s.
bool try_tiling(std::int64_t n, double a_target, Tiling* out) noexcept {
  if (n < 3 || !(a_target > 0.0) || !std::isfinite(a_target)) return false;
  const double root = std::sqrt(static_cast<double>(n));
  double s_real = std::floor(root / a_target);
  if (s_real > 1e9) return false;
  auto s = static_cast<std::int64_t>(s_real);
  while (static_cast<double>(s + 1) * a_target <= root) ++s;
  while (s > 0 && static_cast<double>(s) * a_target > root) --s;
  if (s < 1) return false;
  const double a_n = root / static_cast<double>(s);
  if (a_n > a_target + 1.0 / std::log(static_cast<double>(n))) return false;
  if (out != nullptr) {
    out->n = n;
    out->a_target = a_target;
    out->a_n = a_n;
    out->s = static_cast<int>(s);
    out->cell_side = 1.0 / static_cast<double>(s);
  }
  return true;
}

}  // namespace

bool tiling_admissible(std::int64_t n, double a_target) noexcept {
  return try_tiling(n, a_target, nullptr);
}

Tiling build_tiling(std::int64_t n, double a_target) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "tiling needs n >= 3, got " + std::to_string(n));
  if (!(a_target > 0.0) || !std::isfinite(a_target)) {
    throw Error(ErrorCode::InvalidArgument, "A_target must be positive and finite");
  }
  Tiling t;
  if (try_tiling(n, a_target, &t)) return t;

  std::int64_t nearest = -1;
  for (std::int64_t d = 1; d <= 100000000 && nearest < 0; ++d) {
    if (try_tiling(n + d, a_target, nullptr)) {
      nearest = n + d;
    } else if (n - d >= 3 && try_tiling(n - d, a_target, nullptr)) {
      nearest = n - d;
    }
  }
  std::string msg = "no A in [" + std::to_string(a_target) + ", A + 1/log n] makes sqrt(" +
                    std::to_string(n) + ")/A an integer";
  if (nearest > 0) msg += "; nearest admissible n = " + std::to_string(nearest);
  throw Error(ErrorCode::NoAdmissibleA, msg);
}

CellIndex snake_index(const Tiling& t, CellCoord c) {
  if (c.col < 0 || c.col >= t.s || c.row < 0 || c.row >= t.s) {
    throw Error(ErrorCode::IndexOutOfRange, "cell coordinate outside the grid");
  }
  const std::int64_t s = t.s;
  const std::int64_t offset = (c.col % 2 == 0) ? (s - 1 - c.row) : c.row;
  return static_cast<std::int64_t>(c.col) * s + offset + 1;
}

CellCoord snake_coord(const Tiling& t, CellIndex index) {
  if (index < 1 || index > t.cell_count()) {
    throw Error(ErrorCode::IndexOutOfRange, "snake index " + std::to_string(index) + " outside grid");
  }
  const std::int64_t s = t.s;
  const auto col = static_cast<int>((index - 1) / s);
  const auto offset = static_cast<int>((index - 1) % s);
  const int row = (col % 2 == 0) ? t.s - 1 - offset : offset;
  return {col, row};
}

namespace {

// Bin range along one axis: one bin normally, two when v sits exactly on an
// interior grid line.
struct BinPair {
  int lo;
  int hi;
};

BinPair bins_for(double v, int s) {
  const double scaled = v * static_cast<double>(s);
  const double fl = std::floor(scaled);
  int k = static_cast<int>(fl);
  if (k >= s) return {s - 1, s - 1};
  if (scaled == fl && k > 0) return {k - 1, k};
  return {k, k};
}

}  // namespace

CellCoord cell_coord_of(Point p, const Tiling& t) {
  if (!in_unit_square(p)) {
    throw Error(ErrorCode::OutOfDomain, "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                                            ") outside the unit square");
  }
  const BinPair cols = bins_for(p.x, t.s);
  const BinPair rows = bins_for(p.y, t.s);
  CellCoord best{cols.lo, rows.lo};
  CellIndex best_index = snake_index(t, best);
  for (int c = cols.lo; c <= cols.hi; ++c) {
    for (int r = rows.lo; r <= rows.hi; ++r) {
      const CellIndex idx = snake_index(t, {c, r});
      if (idx > best_index) {
        best_index = idx;
        best = {c, r};
      }
    }
  }
  return best;
}

CellIndex cell_of(Point p, const Tiling& t) { return snake_index(t, cell_coord_of(p, t)); }

Rect cell_rect(const Tiling& t, CellCoord c) {
  const double s = t.s;
  return {c.col / s, c.row / s, (c.col + 1) / s, (c.row + 1) / s};
}

std::vector<CellCoord> snake_neighbors(const Tiling& t) {
  std::vector<CellCoord> order;
  order.reserve(static_cast<std::size_t>(t.cell_count()));
  for (int col = 0; col < t.s; ++col) {
    if (col % 2 == 0) {
      for (int row = t.s - 1; row >= 0; --row) order.push_back({col, row});
    } else {
      for (int row = 0; row < t.s; ++row) order.push_back({col, row});
    }
  }
  return order;
}

}  // namespace locmst
