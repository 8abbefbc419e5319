#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "locmst/bounds.hpp"
#include "locmst/geometry.hpp"
#include "locmst/mst.hpp"
#include "locmst/sampling.hpp"
#include "locmst/weights.hpp"

namespace locmst {

// ---------------------------------------------------------------- threading

/// requested > 0 wins, then LOCMST_THREADS, then hardware concurrency.
int resolve_threads(int requested);

/// Runs body(k) for k in [0, count) on up to `threads` workers.  The first
/// exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

// ------------------------------------------------------- tiling statistics

struct GapStat {
  std::vector<CellIndex> occupied;  // sorted, distinct
  std::vector<std::int64_t> gaps;   // T_1 .. T_{Q+1}
  double alpha = 1.0;
  double s_alpha = 0.0;
  std::int64_t cell_count = 0;
};

/// Gaps between occupied cells in snake order; the empty configuration has
/// the single gap s^2 - 1.
GapStat gap_stat(std::span<const Point> points, const Tiling& t, double alpha);
GapStat gap_stat_from_cells(std::vector<CellIndex> occupied, std::int64_t cell_count, double alpha);

/// Adding `extra` must not decrease S_alpha when alpha <= 1 and must not
/// increase it when alpha > 1, with equality when extra lands in an occupied
/// cell.  Comparisons allow 1e-9 relative slack for rounding.
Verdict gap_stat_monotonicity(std::span<const Point> points, const Tiling& t, double alpha, Point extra);

struct LowerBoundStat {
  std::int64_t g_alpha = 0;
  std::int64_t occupied = 0;
  double bound = 0.0;
  double mst_weight = 0.0;
  bool holds = true;
  bool vacuous = false;  // fewer than two occupied cells: nothing forces an edge out
};

/// Occupied cells whose (up to 8) neighbouring cells are all empty.
std::int64_t isolated_cell_count(std::span<const Point> points, const Tiling& t);

LowerBoundStat lower_bound_stat(std::span<const Point> points, const Tiling& t, const WeightSpec& spec);
LowerBoundStat lower_bound_stat(std::span<const Point> points, const Tiling& t, const WeightSpec& spec,
                                double mst_weight);

struct TiledUpperBound {
  double w_uni = 0.0;
  double rhs = 0.0;
  double mst_weight = 0.0;
  double s_alpha = 0.0;
  bool holds = true;
  std::vector<std::pair<std::size_t, std::size_t>> tree;
};

/// Star on the lowest-index node of each occupied cell, consecutive occupied
/// cells joined through those nodes.  Throws EmptyPointSet.
TiledUpperBound tiled_upper_bound(std::span<const Point> points, const Tiling& t, const WeightSpec& spec);
TiledUpperBound tiled_upper_bound(std::span<const Point> points, const Tiling& t, const WeightSpec& spec,
                                  double mst_weight);

// ------------------------------------------------------------ merge bound

struct MergeCheck {
  double merged = 0.0;
  double first = 0.0;
  double joining = 0.0;  // c2^alpha sum_x d^alpha(x, ps1)
  bool holds = true;
};

MergeCheck merge_bound_check(std::span<const Point> ps1, std::span<const Point> ps2, const WeightSpec& spec);

// ------------------------------------------------------------- hotspot demo

enum class Prop1Mode { Planted, MonteCarlo };

struct Prop1Options {
  int level = 1;
  std::int64_t reps = 1;
  std::uint64_t seed = 1;
  Prop1Mode mode = Prop1Mode::Planted;
  /// Monte Carlo only: false samples from the uniform density, true from a
  /// piecewise-constant density with mass 1/n_i on every cell S_i(l) and
  /// mass 1/(2 n_i) on the rest of the big square.
  bool adapted_density = true;
  int threads = 0;
};

struct Prop1Report {
  int K = 2;
  int level = 1;
  std::int64_t n_i = 0;
  Prop1Mode mode = Prop1Mode::Planted;
  std::string density;
  std::int64_t reps = 0;
  std::int64_t occurrences = 0;
  std::int64_t star_failures = 0;
  int min_center_degree = 0;  // over occurrences; 0 if none
  double frequency = 0.0;
  double log_event_probability = 0.0;  // exact P(E_K(i)) under the density used
  double log_floor = 0.0;              // log of (eps1/2)^{4K-3} e^{-2C}, C = 100 eps2 (2K-1)^2
  double eps1 = 1.0;
  double eps2 = 1.0;
  std::string first_failure;

  bool ok() const noexcept { return star_failures == 0; }
};

/// Density used by Monte Carlo mode with adapted_density.
Density prop1_adapted_density(const HotspotLayout& layout, int level);

/// log P(E_K(i)) for n_i i.i.d. points from f.
double prop1_log_event_probability(const HotspotLayout& layout, int level, const Density& f);

/// Indices of the unique node in each S_i(l), l = 0..4K-4, when E_K(i) holds;
/// empty otherwise.
std::vector<std::size_t> detect_event(std::span<const Point> points, const HotspotLayout& layout, int level);

/// Induced subgraph on `planted` must be exactly the star around planted[0].
Verdict check_star(const MstResult& mst, const std::vector<std::size_t>& planted);

Prop1Report prop1_demo(const WeightSpec& spec, const Prop1Options& opt);

// -------------------------------------------------------- good-square probe

struct GoodSquareConfig {
  int g = 5;
  Tiling tiling;
  CellCoord center;
  std::vector<CellCoord> satellites;  // 12, cyclic order around the ring
  Rect moat;                          // N_{15g} clipped to the unit square
  std::vector<Point> points;          // background then satellites
  std::size_t first_satellite = 0;
  Point added;                        // X_j
};

/// Throws GeometryInfeasible unless 6g+1 cells fit along a side.
GoodSquareConfig build_good_square(int g, std::int64_t n, std::uint64_t seed, bool exact_center = false);

/// Realised distance windows of a configuration.
Verdict verify_good_square(const GoodSquareConfig& c);

struct GoodSquareOutcome {
  double alpha = 1.0;
  double increment = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool within = true;
};

struct GoodSquareReport {
  int g = 5;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  double side = 0.0;
  bool geometry_ok = true;
  bool single_edge = true;
  std::size_t v_min = 0;
  std::vector<GoodSquareOutcome> outcomes;
  std::string witness;

  bool ok() const noexcept;
};

GoodSquareReport good_square_probe(int g, std::int64_t n, const std::vector<double>& alphas, std::uint64_t seed,
                                   bool exact_center = false);

// ---------------------------------------------------------- scaling studies

struct ScalingConfig {
  std::vector<std::int64_t> n_list;
  std::vector<double> alphas{1.0};
  std::int64_t reps = 30;
  std::uint64_t seed = 1;
  WeightSpec spec = WeightSpec::euclidean(1.0);
  Density density = Density::uniform();
  Process process = Process::Binomial;
  int threads = 0;
};

struct ScalingPoint {
  std::int64_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // Bessel-corrected
  double normalized_sd = 0.0;  // sd / n^{1 - alpha/2}
  double corridor_low = 0.0;
  double corridor_high = 0.0;
  bool in_corridor = true;
};

struct LinearFit {
  double slope = 0.0;
  double slope_se = 0.0;
  double intercept = 0.0;
  double intercept_se = 0.0;
};

/// Ordinary least squares y = intercept + slope x with standard errors.
LinearFit ols_fit(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingFit {
  double alpha = 1.0;
  std::int64_t reps = 0;
  std::vector<ScalingPoint> points;
  LinearFit mean_fit;      // log mean vs log n
  LinearFit variance_fit;  // log variance vs log n
  double beta_low = 0.0;
  double beta_up = 0.0;

  bool corridor_ok() const noexcept;
};

/// One MST per replicate, evaluated at every alpha in the config.
std::vector<ScalingFit> scaling_experiment(const ScalingConfig& cfg);
/// Same study with the variance replicate floor (200).
std::vector<ScalingFit> variance_experiment(const ScalingConfig& cfg);

std::string scaling_fit_to_json(const ScalingFit& fit);

// ------------------------------------------------------ per-replicate rows

struct ExperimentRecord {
  std::string experiment;
  std::int64_t n = 0;
  double alpha = 1.0;
  WeightKind weight_kind = WeightKind::Euclidean;
  std::uint64_t seed = 0;
  std::int64_t replicate = 0;
  double mst_weight = 0.0;
  int max_degree = 0;
  std::int64_t g_alpha = -1;  // -1 when the A = 1 tiling is not admissible
  double s_alpha = 0.0;
  double runtime_ms = 0.0;
};

struct SimulateConfig {
  std::int64_t n = 0;
  std::vector<double> alphas{1.0};
  std::int64_t reps = 1;
  std::uint64_t seed = 1;
  WeightSpec spec = WeightSpec::euclidean(1.0);
  Density density = Density::uniform();
  Process process = Process::Binomial;
  int threads = 0;
};

/// Rows ordered by replicate, then alpha.
std::vector<ExperimentRecord> simulate(const SimulateConfig& cfg);

void write_records_csv(std::ostream& os, const std::vector<ExperimentRecord>& rows);

/// Points for replicate r: binomial or Poisson under f with a derived seed.
std::vector<Point> replicate_points(std::int64_t n, const Density& f, Process process, std::uint64_t seed);

/// n points, about half inside randomly chosen central cells of the layout,
/// the rest uniform on the unit square.
std::vector<Point> sample_hotspot_mixture(std::size_t n, const HotspotLayout& layout, std::uint64_t seed);

}  // namespace locmst
