#include "locmst/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "locmst/error.hpp"

namespace locmst {

namespace {


Rect clip_to_unit(const Rect& r) {
  return {std::clamp(r.x0, 0.0, 1.0), std::clamp(r.y0, 0.0, 1.0), std::clamp(r.x1, 0.0, 1.0),
          std::clamp(r.y1, 0.0, 1.0)};
}

std::vector<double> breakpoints(const std::vector<DensityPiece>& pieces, bool x_axis) {
  std::vector<double> v{0.0, 1.0};
  for (const auto& p : pieces) {
    const Rect r = clip_to_unit(p.rect);
    v.push_back(x_axis ? r.x0 : r.y0);
    v.push_back(x_axis ? r.x1 : r.y1);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Density::Density(double background, std::vector<DensityPiece> pieces)
    : background_(background), pieces_(std::move(pieces)) {
  if (!(background_ >= 0.0) || !std::isfinite(background_)) {
    throw Error(ErrorCode::InvalidArgument, "density background must be finite and non-negative");
  }
  for (const auto& p : pieces_) {
    if (!(p.value >= 0.0) || !std::isfinite(p.value)) {
      throw Error(ErrorCode::InvalidArgument, "density piece values must be finite and non-negative");
    }
    if (!(p.rect.x0 <= p.rect.x1) || !(p.rect.y0 <= p.rect.y1)) {
      throw Error(ErrorCode::InvalidArgument, "density piece rectangle is inverted");
    }
  }
  xs_ = breakpoints(pieces_, true);
  ys_ = breakpoints(pieces_, false);
  const std::size_t nx = xs_.size() - 1;
  const std::size_t ny = ys_.size() - 1;
  cell_values_.resize(nx * ny);
  eps1_ = INFINITY;
  eps2_ = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const Point c{0.5 * (xs_[i] + xs_[i + 1]), 0.5 * (ys_[j] + ys_[j + 1])};
      const double v = value(c);
      cell_values_[i * ny + j] = v;
      eps1_ = std::min(eps1_, v);
      eps2_ = std::max(eps2_, v);
    }
  }
  if (!(eps1_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "density must be bounded below by eps1 > 0");
  const double total = integral();
  if (std::fabs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "density integrates to " << format_double(total) << ", not 1";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

Density Density::uniform() { return Density(1.0, {}); }

Density Density::piecewise(double background, std::vector<DensityPiece> pieces) {
  return Density(background, std::move(pieces));
}

double Density::value(Point p) const noexcept {
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
    if (it->rect.contains(p)) return it->value;
  }
  return background_;
}

double Density::mass(const Rect& r) const noexcept {
  const Rect q = clip_to_unit(r);
  const std::size_t ny = ys_.size() - 1;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    const double w = std::min(q.x1, xs_[i + 1]) - std::max(q.x0, xs_[i]);
    if (w <= 0.0) continue;
    for (std::size_t j = 0; j < ny; ++j) {
      const double h = std::min(q.y1, ys_[j + 1]) - std::max(q.y0, ys_[j]);
      if (h <= 0.0) continue;
      total += w * h * cell_values_[i * ny + j];
    }
  }
  return total;
}

std::string Density::describe() const {
  if (pieces_.empty()) return background_ == 1.0 ? "uniform" : "constant";
  std::ostringstream os;
  os << "piecewise(background=" << format_double(background_);
  for (const auto& p : pieces_) {
    os << "; [" << format_double(p.rect.x0) << "," << format_double(p.rect.x1) << "]x["
       << format_double(p.rect.y0) << "," << format_double(p.rect.y1) << "]=" << format_double(p.value);
  }
  os << ")";
  return os.str();
}

Point sample_in_rect(const Density& f, const Rect& r, Rng& rng) {
  const Rect q = clip_to_unit(r);
  if (!(q.area() > 0.0)) throw Error(ErrorCode::InvalidArgument, "sampling rectangle has no area in the unit square");
  const double envelope = f.eps2();
  for (int attempt = 0; attempt < 10'000'000; ++attempt) {
    const Point p{rng.uniform(q.x0, q.x1), rng.uniform(q.y0, q.y1)};
    if (f.is_uniform() || rng.uniform() * envelope < f.value(p)) return p;
  }
  throw Error(ErrorCode::InternalError, "rejection sampling inside rectangle did not terminate");
}

Point sample_outside(const Density& f, const Rect& excluded, Rng& rng) {
  const double envelope = f.eps2();
  for (int attempt = 0; attempt < 10'000'000; ++attempt) {
    const Point p{rng.uniform(), rng.uniform()};
    if (excluded.contains(p)) continue;
    if (f.is_uniform() || rng.uniform() * envelope < f.value(p)) return p;
  }
  throw Error(ErrorCode::InternalError, "rejection sampling outside rectangle did not terminate");
}

namespace {

void fill_iid(std::vector<Point>& out, std::int64_t count, const Density& f, Rng& rng) {
  out.reserve(out.size() + static_cast<std::size_t>(count));
  const double envelope = f.eps2();
  const double cap = 1e6 * static_cast<double>(std::max<std::int64_t>(count, 1));
  double attempts = 0.0;
  for (std::int64_t i = 0; i < count;) {
    if (++attempts > cap) throw Error(ErrorCode::InternalError, "rejection sampling exceeded 1e6 * n attempts");
    const Point p{rng.uniform(), rng.uniform()};
    if (f.is_uniform() || rng.uniform() * envelope < f.value(p)) {
      out.push_back(p);
      ++i;
    }
  }
}

}  // namespace

PointSet sample_binomial(std::int64_t n, const Density& f, std::uint64_t seed) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "sample size must be non-negative");
  PointSet ps;
  ps.seed = seed;
  ps.process = Process::Binomial;
  ps.n = static_cast<double>(n);
  Rng rng(seed);
  fill_iid(ps.points, n, f, rng);
  return ps;
}

PointSet sample_poisson(double n, const Density& f, std::uint64_t seed) {
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::InvalidArgument, "Poisson intensity must be positive");
  PointSet ps;
  ps.seed = seed;
  ps.process = Process::Poisson;
  ps.n = n;
  Rng rng(seed);
  // f integrates to one, so the total count has mean n.
  const std::int64_t count = poisson_count(n, rng);
  fill_iid(ps.points, count, f, rng);
  return ps;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_points_csv(std::ostream& os, const std::vector<Point>& points) {
  os << "index,x,y\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    os << i << ',' << format_double(points[i].x) << ',' << format_double(points[i].y) << '\n';
  }
}

void write_points_json(std::ostream& os, const std::vector<Point>& points) {
  os << '[';
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) os << ',';
    os << '[' << format_double(points[i].x) << ',' << format_double(points[i].y) << ']';
  }
  os << "]\n";
}

std::vector<Point> read_points_csv(std::istream& is) {
  std::vector<Point> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("index", 0) == 0) continue;
    std::istringstream fields(line);
    std::string idx, xs, ys;
    if (!std::getline(fields, idx, ',') || !std::getline(fields, xs, ',') || !std::getline(fields, ys, ',')) {
      throw Error(ErrorCode::InvalidArgument, "malformed point CSV at line " + std::to_string(line_no));
    }
    try {
      points.push_back({std::stod(xs), std::stod(ys)});
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "unparsable coordinate at line " + std::to_string(line_no));
    }
  }
  return points;
}

}  // namespace locmst
