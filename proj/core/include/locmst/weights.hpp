#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "locmst/geometry.hpp"

namespace locmst {

enum class WeightKind { Euclidean, Hotspot, Shifted };

std::string_view to_string(WeightKind kind) noexcept;
/// Accepts "euclidean", "hotspot", "shifted"; throws InvalidArgument otherwise.
WeightKind parse_weight_kind(std::string_view name);

/// One level i of the hotspot construction: n_i = D i^3 points, a 10q x 10q
/// square on the diagonal with the q x q square S_i at its centre, the
/// central cell S_i(0) and 4(K-1) boundary cells S_i(1..4K-4), every cell of
/// side 1/sqrt(n_i).
struct HotspotLevel {
  int index = 1;
  double n_i = 0.0;
  double q = 0.0;
  double unit = 0.0;
  Rect big;
  Rect inner;
  std::vector<Rect> cells;  // cells[0] is the central cell

  const Rect& central() const { return cells.front(); }
};

struct HotspotLayout {
  int K = 2;
  double D = 0.0;
  std::vector<HotspotLevel> levels;

  /// Closed-cell membership in any central cell S_j(0).
  bool in_central_cell(Point p) const noexcept;
  const HotspotLevel& level(int i) const;
};

/// zeta(3/2) by Euler-Maclaurin summation, accurate far below 1e-12.
double zeta_three_halves() noexcept;

/// D = ceil((10 (2K-1) zeta(3/2))^2), big squares packed corner to corner
/// along the diagonal from the origin.  All layout invariants are checked
/// before returning; a failed check throws InternalError.
HotspotLayout build_hotspot_layout(int K, int levels);

/// Throws InternalError naming the first broken invariant.
void verify_hotspot_layout(const HotspotLayout& layout);

std::string layout_to_json(const HotspotLayout& layout);

/// Location-dependent edge weight h with c1 d <= h <= c2 d and exponent alpha.
struct WeightSpec {
  WeightKind kind = WeightKind::Euclidean;
  double c1 = 1.0;
  double c2 = 1.0;
  double alpha = 1.0;
  bool homogeneous = true;
  std::optional<double> h0;
  double lambda = 0.0;
  std::shared_ptr<const HotspotLayout> layout;

  static WeightSpec euclidean(double alpha);
  /// h(u,v) = d(u,v) + lambda |d(u,0) - d(v,0)| with the origin at (0,0).
  static WeightSpec shifted(double alpha, double lambda = 0.5);
  /// c1 defaults to c2 / (16K); c1 < c2 / (8K) is required.
  static WeightSpec hotspot(double alpha, std::shared_ptr<const HotspotLayout> layout, double c2 = 1.0,
                            std::optional<double> c1 = std::nullopt);

  WeightSpec with_alpha(double a) const;
  std::string describe() const;
};

/// h(u, v); throws DegenerateEdge when u == v.
double weight(const WeightSpec& spec, Point u, Point v);

/// h^alpha for a base weight.
double power_weight(double base, double alpha) noexcept;

/// Weight function bound to a fixed point array, with per-point data
/// (central-cell membership, distance to the origin) computed once.
class BoundWeights {
 public:
  BoundWeights(const WeightSpec& spec, std::span<const Point> points);

  double operator()(std::size_t i, std::size_t j) const noexcept {
    switch (kind_) {
      case WeightKind::Euclidean:
        return at<WeightKind::Euclidean>(i, j);
      case WeightKind::Hotspot:
        return at<WeightKind::Hotspot>(i, j);
      case WeightKind::Shifted:
        return at<WeightKind::Shifted>(i, j);
    }
    return 0.0;
  }

  /// Same value as operator() with the kind fixed at compile time, for hot loops.
  template <WeightKind Kind>
  double at(std::size_t i, std::size_t j) const noexcept {
    const double d = dist(points_[i], points_[j]);
    if constexpr (Kind == WeightKind::Euclidean) {
      return d;
    } else if constexpr (Kind == WeightKind::Hotspot) {
      return (hot_[i] || hot_[j]) ? c1_ * d : c2_ * d;
    } else {
      const double gap = radius_[i] - radius_[j];
      return d + lambda_ * (gap < 0.0 ? -gap : gap);
    }
  }

  WeightKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool is_hot(std::size_t i) const noexcept { return !hot_.empty() && hot_[i] != 0; }

 private:
  WeightKind kind_;
  double c1_;
  double c2_;
  double lambda_;
  std::span<const Point> points_;
  std::vector<char> hot_;
  std::vector<double> radius_;
};

struct AuditResult {
  double c1_hat = 0.0;
  double c2_hat = 0.0;
  std::size_t samples = 0;
};

/// Min and max of h(u,v)/d(u,v) over random pairs.  For hotspot specs every
/// second pair has one endpoint drawn inside a central cell.  Throws
/// EquivalenceViolation with the witness pair when [c1, c2] is breached.
AuditResult equivalence_audit(const WeightSpec& spec, std::size_t samples, std::uint64_t seed);

}  // namespace locmst
