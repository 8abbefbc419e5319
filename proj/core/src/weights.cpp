#include "locmst/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "locmst/error.hpp"
#include "locmst/random.hpp"
#include "locmst/sampling.hpp"

namespace locmst {

std::string_view to_string(WeightKind kind) noexcept {
  switch (kind) {
    case WeightKind::Euclidean:
      return "euclidean";
    case WeightKind::Hotspot:
      return "hotspot";
    case WeightKind::Shifted:
      return "shifted";
  }
  return "euclidean";
}

WeightKind parse_weight_kind(std::string_view name) {
  if (name == "euclidean") return WeightKind::Euclidean;
  if (name == "hotspot") return WeightKind::Hotspot;
  if (name == "shifted") return WeightKind::Shifted;
  throw Error(ErrorCode::InvalidArgument, "unknown weight kind '" + std::string(name) + "'");
}

double zeta_three_halves() noexcept {
  // Direct sum to N-1, then the Euler-Maclaurin tail
  // N^{1-s}/(s-1) + N^{-s}/2 + s N^{-s-1}/12 - s(s+1)(s+2) N^{-s-3}/720.
  constexpr double s = 1.5;
  constexpr int N = 1000;
  double sum = 0.0;
  for (int k = N - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double n = N;
  sum += std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s) + s / 12.0 * std::pow(n, -s - 1.0) -
         s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(n, -s - 3.0);
  return sum;
}

bool HotspotLayout::in_central_cell(Point p) const noexcept {
  for (const auto& level : levels) {
    if (!level.big.contains(p)) continue;
    if (level.central().contains(p)) return true;
  }
  return false;
}

const HotspotLevel& HotspotLayout::level(int i) const {
  if (i < 1 || i > static_cast<int>(levels.size())) {
    throw Error(ErrorCode::IndexOutOfRange,
                "level " + std::to_string(i) + " not in 1.." + std::to_string(levels.size()));
  }
  return levels[static_cast<std::size_t>(i - 1)];
}

HotspotLayout build_hotspot_layout(int K, int levels) {
  if (K < 2) throw Error(ErrorCode::InvalidK, "hotspot layout needs K >= 2, got " + std::to_string(K));
  if (levels < 1) throw Error(ErrorCode::InvalidArgument, "hotspot layout needs at least one level");

  HotspotLayout layout;
  layout.K = K;
  const double root_d = 10.0 * (2.0 * K - 1.0) * zeta_three_halves();
  layout.D = std::ceil(root_d * root_d);

  double anchor = 0.0;
  for (int i = 1; i <= levels; ++i) {
    HotspotLevel level;
    level.index = i;
    level.n_i = layout.D * static_cast<double>(i) * i * i;
    level.unit = 1.0 / std::sqrt(level.n_i);
    level.q = (2.0 * K - 1.0) * level.unit;
    const double side = 10.0 * level.q;
    level.big = {anchor, anchor, anchor + side, anchor + side};
    anchor += side;

    const Point c = level.big.center();
    const double u = level.unit;
    const double x0 = c.x - 0.5 * level.q;
    const double y0 = c.y - 0.5 * level.q;
    level.inner = {x0, y0, x0 + level.q, y0 + level.q};

    auto cell_at = [&](int col, int row) {
      return Rect{x0 + col * u, y0 + row * u, x0 + (col + 1) * u, y0 + (row + 1) * u};
    };
    const int last = 2 * K - 2;  // the q-square is 2K-1 units wide
    level.cells.push_back(cell_at(K - 1, K - 1));
    // K cells per side at every second unit; corners shared, counted once.
    for (int t = 0; t <= last; t += 2) level.cells.push_back(cell_at(t, 0));
    for (int t = 2; t <= last; t += 2) level.cells.push_back(cell_at(last, t));
    for (int t = last - 2; t >= 0; t -= 2) level.cells.push_back(cell_at(t, last));
    for (int t = last - 2; t >= 2; t -= 2) level.cells.push_back(cell_at(0, t));
    layout.levels.push_back(std::move(level));
  }
  verify_hotspot_layout(layout);
  return layout;
}

void verify_hotspot_layout(const HotspotLayout& layout) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InternalError, "hotspot layout: " + what); };
  const Rect unit{0.0, 0.0, 1.0, 1.0};
  const int K = layout.K;
  double diag = 0.0;
  for (std::size_t a = 0; a < layout.levels.size(); ++a) {
    const auto& lv = layout.levels[a];
    diag += 10.0 * lv.q * std::sqrt(2.0);
    if (!unit.contains(lv.big)) fail("big square " + std::to_string(lv.index) + " leaves the unit square");
    for (std::size_t b = a + 1; b < layout.levels.size(); ++b) {
      if (lv.big.overlaps(layout.levels[b].big)) fail("big squares overlap");
    }
    if (!lv.big.contains(lv.inner)) fail("S_i outside its big square");
    if (lv.cells.size() != static_cast<std::size_t>(4 * K - 3)) fail("wrong cell count");
    // Band of width one unit along the boundary of S_i.
    const double u = lv.unit;
    const double tol = 1e-12 * lv.q;
    for (std::size_t l = 0; l < lv.cells.size(); ++l) {
      const Rect& cell = lv.cells[l];
      if (std::abs(cell.width() - u) > tol || std::abs(cell.height() - u) > tol) fail("cell side differs from 1/sqrt(n_i)");
      const Rect grown{lv.inner.x0 - tol, lv.inner.y0 - tol, lv.inner.x1 + tol, lv.inner.y1 + tol};
      if (!grown.contains(cell)) fail("cell outside S_i");
      if (l > 0) {
        const bool on_side = std::abs(cell.x0 - lv.inner.x0) <= tol || std::abs(cell.x1 - lv.inner.x1) <= tol ||
                             std::abs(cell.y0 - lv.inner.y0) <= tol || std::abs(cell.y1 - lv.inner.y1) <= tol;
        if (!on_side) fail("boundary cell not in the boundary band");
      }
      for (std::size_t m = l + 1; m < lv.cells.size(); ++m) {
        if (cell.overlaps(lv.cells[m])) fail("cells overlap");
      }
    }
  }
  if (diag > std::sqrt(2.0) * (1.0 + 1e-15)) fail("diagonal extent exceeds sqrt(2)");
}

namespace {

nlohmann::json rect_json(const Rect& r) { return nlohmann::json::array({r.x0, r.y0, r.x1, r.y1}); }

}  // namespace

std::string layout_to_json(const HotspotLayout& layout) {
  nlohmann::json j;
  j["K"] = layout.K;
  j["D"] = layout.D;
  j["levels"] = nlohmann::json::array();
  for (const auto& lv : layout.levels) {
    nlohmann::json l;
    l["i"] = lv.index;
    l["n_i"] = lv.n_i;
    l["q"] = lv.q;
    l["unit"] = lv.unit;
    l["big"] = rect_json(lv.big);
    l["inner"] = rect_json(lv.inner);
    l["central"] = rect_json(lv.central());
    l["boundary"] = nlohmann::json::array();
    for (std::size_t c = 1; c < lv.cells.size(); ++c) l["boundary"].push_back(rect_json(lv.cells[c]));
    j["levels"].push_back(std::move(l));
  }
  return j.dump(2);
}

WeightSpec WeightSpec::euclidean(double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  WeightSpec w;
  w.kind = WeightKind::Euclidean;
  w.alpha = alpha;
  w.h0 = 1.0;
  return w;
}

WeightSpec WeightSpec::shifted(double alpha, double lambda) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::InvalidArgument, "lambda must be >= 0");
  WeightSpec w;
  w.kind = WeightKind::Shifted;
  w.alpha = alpha;
  w.lambda = lambda;
  w.c1 = 1.0;
  w.c2 = 1.0 + lambda;
  w.h0 = 1.0 + lambda;
  return w;
}

WeightSpec WeightSpec::hotspot(double alpha, std::shared_ptr<const HotspotLayout> layout, double c2,
                               std::optional<double> c1) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  if (!layout) throw Error(ErrorCode::InvalidArgument, "hotspot weight needs a layout");
  if (!(c2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "c2 must be positive");
  const double K = layout->K;
  const double lo = c1.value_or(c2 / (16.0 * K));
  if (!(lo > 0.0) || !(lo < c2 / (8.0 * K))) {
    throw Error(ErrorCode::InvalidArgument, "hotspot weight needs 0 < c1 < c2/(8K)");
  }
  WeightSpec w;
  w.kind = WeightKind::Hotspot;
  w.alpha = alpha;
  w.c1 = lo;
  w.c2 = c2;
  w.homogeneous = false;
  w.layout = std::move(layout);
  return w;
}

WeightSpec WeightSpec::with_alpha(double a) const {
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  WeightSpec w = *this;
  w.alpha = a;
  return w;
}

std::string WeightSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind) << "(alpha=" << format_double(alpha) << ", c1=" << format_double(c1)
     << ", c2=" << format_double(c2);
  if (kind == WeightKind::Shifted) os << ", lambda=" << format_double(lambda);
  if (kind == WeightKind::Hotspot && layout) os << ", K=" << layout->K << ", levels=" << layout->levels.size();
  os << ")";
  return os.str();
}

double weight(const WeightSpec& spec, Point u, Point v) {
  if (u == v) throw Error(ErrorCode::DegenerateEdge, "weight of an edge with equal endpoints");
  const double d = dist(u, v);
  switch (spec.kind) {
    case WeightKind::Euclidean:
      return d;
    case WeightKind::Hotspot:
      return (spec.layout->in_central_cell(u) || spec.layout->in_central_cell(v)) ? spec.c1 * d : spec.c2 * d;
    case WeightKind::Shifted:
      return d + spec.lambda * std::abs(dist(u, {0.0, 0.0}) - dist(v, {0.0, 0.0}));
  }
  return d;
}

double power_weight(double base, double alpha) noexcept {
  if (alpha == 1.0) return base;
  if (alpha == 2.0) return base * base;
  return std::pow(base, alpha);
}

BoundWeights::BoundWeights(const WeightSpec& spec, std::span<const Point> points)
    : kind_(spec.kind), c1_(spec.c1), c2_(spec.c2), lambda_(spec.lambda), points_(points) {
  if (kind_ == WeightKind::Hotspot) {
    hot_.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) hot_[i] = spec.layout->in_central_cell(points[i]) ? 1 : 0;
  } else if (kind_ == WeightKind::Shifted) {
    radius_.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) radius_[i] = dist(points[i], {0.0, 0.0});
  }
}

AuditResult equivalence_audit(const WeightSpec& spec, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "equivalence audit needs at least one sample");
  Rng rng(seed);
  AuditResult out;
  out.c1_hat = std::numeric_limits<double>::infinity();
  out.c2_hat = 0.0;
  const double tol = 1e-12;
  for (std::size_t k = 0; k < samples; ++k) {
    Point u{rng.uniform(), rng.uniform()};
    const Point v{rng.uniform(), rng.uniform()};
    if (spec.kind == WeightKind::Hotspot && k % 2 == 1) {
      const auto& levels = spec.layout->levels;
      const Rect& c = levels[rng.below(levels.size())].central();
      u = {rng.uniform(c.x0, c.x1), rng.uniform(c.y0, c.y1)};
    }
    if (u == v) continue;
    const double ratio = weight(spec, u, v) / dist(u, v);
    out.c1_hat = std::min(out.c1_hat, ratio);
    out.c2_hat = std::max(out.c2_hat, ratio);
    ++out.samples;
    if (ratio < spec.c1 * (1.0 - tol) || ratio > spec.c2 * (1.0 + tol)) {
      std::ostringstream os;
      os << "h/d = " << format_double(ratio) << " outside [" << format_double(spec.c1) << ", "
         << format_double(spec.c2) << "] at u=(" << format_double(u.x) << "," << format_double(u.y) << "), v=("
         << format_double(v.x) << "," << format_double(v.y) << ")";
      throw Error(ErrorCode::EquivalenceViolation, os.str());
    }
  }
  return out;
}

}  // namespace locmst
