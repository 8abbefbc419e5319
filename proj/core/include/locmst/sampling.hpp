#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "locmst/geometry.hpp"
#include "locmst/random.hpp"

namespace locmst {

struct DensityPiece {
  Rect rect;
  double value = 1.0;
};

/// Piecewise-constant probability density on the unit square.  A background
/// value applies everywhere; listed rectangles override it, later rectangles
/// overriding earlier ones.  Construction checks that the density integrates
/// to one (within 1e-12) and is bounded below by a positive eps1.
class Density {
 public:
  static Density uniform();
  static Density piecewise(double background, std::vector<DensityPiece> pieces);

  double value(Point p) const noexcept;
  /// Integral of f over r intersected with the unit square.
  double mass(const Rect& r) const noexcept;
  double integral() const noexcept { return mass({0.0, 0.0, 1.0, 1.0}); }

  double eps1() const noexcept { return eps1_; }
  double eps2() const noexcept { return eps2_; }
  bool is_uniform() const noexcept { return pieces_.empty() && background_ == 1.0; }
  double background() const noexcept { return background_; }
  const std::vector<DensityPiece>& pieces() const noexcept { return pieces_; }

  std::string describe() const;

 private:
  Density(double background, std::vector<DensityPiece> pieces);

  double background_ = 1.0;
  std::vector<DensityPiece> pieces_;
  // Compressed grid on which f is constant.
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> cell_values_;
  double eps1_ = 1.0;
  double eps2_ = 1.0;
};

enum class Process { Binomial, Poisson };

struct PointSet {
  std::vector<Point> points;
  std::uint64_t seed = 0;
  Process process = Process::Binomial;
  double n = 0.0;  // sample size (binomial) or intensity scale (Poisson)

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
};

/// One draw from f restricted to r (rejection against the eps2 envelope).
Point sample_in_rect(const Density& f, const Rect& r, Rng& rng);

/// One draw from f conditioned on lying outside `excluded`.
Point sample_outside(const Density& f, const Rect& excluded, Rng& rng);

/// Exactly n i.i.d. points from f.  Same (n, f, seed) gives the same output.
PointSet sample_binomial(std::int64_t n, const Density& f, std::uint64_t seed);

/// Poisson process with intensity n f(.): N ~ Poisson(n), then N i.i.d. points.
PointSet sample_poisson(double n, const Density& f, std::uint64_t seed);

/// CSV with header `index,x,y`, 17 significant digits.
void write_points_csv(std::ostream& os, const std::vector<Point>& points);
/// JSON array of [x, y] pairs, 17 significant digits.
void write_points_json(std::ostream& os, const std::vector<Point>& points);
/// Reads the CSV format above; lines starting with '#' are skipped.
std::vector<Point> read_points_csv(std::istream& is);

/// printf("%.17g") of v.
std::string format_double(double v);

}  // namespace locmst
