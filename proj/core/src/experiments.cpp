#include "locmst/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "locmst/error.hpp"
#include "locmst/random.hpp"

namespace locmst {

namespace {

// Experiment tags mixed into derived seeds.
constexpr std::uint64_t kTagProp1 = 0x70726f7031ULL;
constexpr std::uint64_t kTagGoodSquare = 0x676f6f64ULL;

double rel_slack(double a, double b) { return 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

std::vector<CellIndex> occupied_cells(std::span<const Point> points, const Tiling& t) {
  std::vector<CellIndex> cells;
  cells.reserve(points.size());
  for (const auto& p : points) cells.push_back(cell_of(p, t));
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LOCMST_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw Error(ErrorCode::InvalidArgument, std::string("LOCMST_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    while (!stop.load(std::memory_order_relaxed)) {
      const std::size_t k = next.fetch_add(1);
      if (k >= count) return;
      try {
        body(k);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// ------------------------------------------------------- tiling statistics

GapStat gap_stat_from_cells(std::vector<CellIndex> occupied, std::int64_t cell_count, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  GapStat g;
  g.alpha = alpha;
  g.cell_count = cell_count;
  std::sort(occupied.begin(), occupied.end());
  occupied.erase(std::unique(occupied.begin(), occupied.end()), occupied.end());
  g.occupied = std::move(occupied);
  if (g.occupied.empty()) {
    g.gaps.push_back(cell_count - 1);
  } else {
    g.gaps.push_back(g.occupied.front() - 1);
    for (std::size_t k = 1; k < g.occupied.size(); ++k) g.gaps.push_back(g.occupied[k] - g.occupied[k - 1]);
    g.gaps.push_back(cell_count - g.occupied.back());
  }
  for (std::int64_t t : g.gaps) {
    if (t > 0) g.s_alpha += power_weight(static_cast<double>(t), alpha);
  }
  return g;
}

GapStat gap_stat(std::span<const Point> points, const Tiling& t, double alpha) {
  return gap_stat_from_cells(occupied_cells(points, t), t.cell_count(), alpha);
}

Verdict gap_stat_monotonicity(std::span<const Point> points, const Tiling& t, double alpha, Point extra) {
  const GapStat before = gap_stat(points, t, alpha);
  std::vector<CellIndex> cells = before.occupied;
  const CellIndex c = cell_of(extra, t);
  const bool already = std::binary_search(cells.begin(), cells.end(), c);
  cells.push_back(c);
  const GapStat after = gap_stat_from_cells(std::move(cells), t.cell_count(), alpha);
  const double b = before.s_alpha;
  const double a = after.s_alpha;
  std::ostringstream os;
  os << "alpha=" << format_double(alpha) << " cell " << c << ": S before " << format_double(b) << ", after "
     << format_double(a);
  if (already) {
    if (a != b) return Verdict::fail("occupied cell changed S_alpha; " + os.str());
    return Verdict::ok();
  }
  if (alpha <= 1.0 && a < b - rel_slack(a, b)) return Verdict::fail("S_alpha decreased; " + os.str());
  if (alpha > 1.0 && a > b + rel_slack(a, b)) return Verdict::fail("S_alpha increased; " + os.str());
  return Verdict::ok();
}

std::int64_t isolated_cell_count(std::span<const Point> points, const Tiling& t) {
  const int s = t.s;
  std::vector<char> occ(static_cast<std::size_t>(s) * s, 0);
  for (const auto& p : points) {
    const CellCoord c = cell_coord_of(p, t);
    occ[static_cast<std::size_t>(c.col) * s + c.row] = 1;
  }
  std::int64_t count = 0;
  for (int col = 0; col < s; ++col) {
    for (int row = 0; row < s; ++row) {
      if (!occ[static_cast<std::size_t>(col) * s + row]) continue;
      bool alone = true;
      for (int dc = -1; dc <= 1 && alone; ++dc) {
        for (int dr = -1; dr <= 1 && alone; ++dr) {
          const int c2 = col + dc, r2 = row + dr;
          if ((dc == 0 && dr == 0) || c2 < 0 || r2 < 0 || c2 >= s || r2 >= s) continue;
          if (occ[static_cast<std::size_t>(c2) * s + r2]) alone = false;
        }
      }
      if (alone) ++count;
    }
  }
  return count;
}

LowerBoundStat lower_bound_stat(std::span<const Point> points, const Tiling& t, const WeightSpec& spec,
                                double mst_weight) {
  LowerBoundStat r;
  r.mst_weight = mst_weight;
  r.g_alpha = isolated_cell_count(points, t);
  r.occupied = static_cast<std::int64_t>(occupied_cells(points, t).size());
  r.vacuous = r.occupied < 2;
  if (!r.vacuous) r.bound = 0.5 * power_weight(spec.c1 * t.cell_side, spec.alpha) * static_cast<double>(r.g_alpha);
  r.holds = mst_weight >= r.bound - 1e-12;
  return r;
}

LowerBoundStat lower_bound_stat(std::span<const Point> points, const Tiling& t, const WeightSpec& spec) {
  return lower_bound_stat(points, t, spec, compute_mst(points, spec).total_weight);
}

TiledUpperBound tiled_upper_bound(std::span<const Point> points, const Tiling& t, const WeightSpec& spec,
                                  double mst_weight) {
  if (points.empty()) throw Error(ErrorCode::EmptyPointSet, "tiled upper bound needs at least one node");
  std::vector<std::pair<CellIndex, std::size_t>> by_cell;
  by_cell.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) by_cell.emplace_back(cell_of(points[k], t), k);
  std::sort(by_cell.begin(), by_cell.end());

  TiledUpperBound r;
  r.mst_weight = mst_weight;
  std::vector<CellIndex> occupied;
  std::size_t prev_root = points.size();
  for (std::size_t k = 0; k < by_cell.size();) {
    const CellIndex cell = by_cell[k].first;
    const std::size_t root = by_cell[k].second;
    occupied.push_back(cell);
    if (prev_root != points.size()) r.tree.emplace_back(std::min(prev_root, root), std::max(prev_root, root));
    std::size_t m = k + 1;
    for (; m < by_cell.size() && by_cell[m].first == cell; ++m) {
      r.tree.emplace_back(std::min(root, by_cell[m].second), std::max(root, by_cell[m].second));
    }
    prev_root = root;
    k = m;
  }
  const BoundWeights w(spec, points);
  for (auto [a, b] : r.tree) r.w_uni += power_weight(w(a, b), spec.alpha);
  r.s_alpha = gap_stat_from_cells(std::move(occupied), t.cell_count(), spec.alpha).s_alpha;
  r.rhs = power_weight(2.0 * spec.c2 * t.cell_side, spec.alpha) * (static_cast<double>(points.size()) + r.s_alpha);
  r.holds = mst_weight <= r.w_uni + 1e-12 * (1.0 + r.w_uni) && r.w_uni <= r.rhs + 1e-12 * (1.0 + r.rhs);
  return r;
}

TiledUpperBound tiled_upper_bound(std::span<const Point> points, const Tiling& t, const WeightSpec& spec) {
  if (points.empty()) throw Error(ErrorCode::EmptyPointSet, "tiled upper bound needs at least one node");
  return tiled_upper_bound(points, t, spec, compute_mst(points, spec).total_weight);
}

// ------------------------------------------------------------ merge bound

MergeCheck merge_bound_check(std::span<const Point> ps1, std::span<const Point> ps2, const WeightSpec& spec) {
  if (ps1.empty()) throw Error(ErrorCode::EmptyPointSet, "merge bound needs n1 >= 1");
  std::vector<Point> all(ps1.begin(), ps1.end());
  all.insert(all.end(), ps2.begin(), ps2.end());
  MergeCheck r;
  r.merged = compute_mst(all, spec).total_weight;
  r.first = compute_mst(ps1, spec).total_weight;
  double sum = 0.0;
  for (const auto& x : ps2) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& y : ps1) nearest = std::min(nearest, dist(x, y));
    sum += power_weight(nearest, spec.alpha);
  }
  r.joining = std::pow(spec.c2, spec.alpha) * sum;
  const double rhs = r.first + r.joining;
  r.holds = r.merged <= rhs + 1e-12 * (1.0 + rhs);
  return r;
}

// ------------------------------------------------------------- hotspot demo

Density prop1_adapted_density(const HotspotLayout& layout, int level) {
  const HotspotLevel& lv = layout.level(level);
  const double n = lv.n_i;
  const double m = static_cast<double>(lv.cells.size());
  const double big_area = lv.big.area();
  const double cell_area = lv.unit * lv.unit;
  const double rest_value = (0.5 / n) / (big_area - m * cell_area);
  const double background = (1.0 - (m + 0.5) / n) / (1.0 - big_area);
  std::vector<DensityPiece> pieces;
  pieces.push_back({lv.big, rest_value});
  for (const auto& c : lv.cells) pieces.push_back({c, (1.0 / n) / cell_area});
  return Density::piecewise(background, std::move(pieces));
}

double prop1_log_event_probability(const HotspotLayout& layout, int level, const Density& f) {
  const HotspotLevel& lv = layout.level(level);
  const double n = lv.n_i;
  const double m = static_cast<double>(lv.cells.size());
  double log_p = std::lgamma(n + 1.0) - std::lgamma(n - m + 1.0);
  for (const auto& c : lv.cells) log_p += std::log(f.mass(c));
  log_p += (n - m) * std::log1p(-f.mass(lv.big));
  return log_p;
}

std::vector<std::size_t> detect_event(std::span<const Point> points, const HotspotLayout& layout, int level) {
  const HotspotLevel& lv = layout.level(level);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> found(lv.cells.size(), kNone);
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!lv.big.contains(points[k])) continue;
    std::size_t hit = kNone;
    for (std::size_t l = 0; l < lv.cells.size(); ++l) {
      if (lv.cells[l].contains(points[k])) {
        hit = l;
        break;
      }
    }
    if (hit == kNone || found[hit] != kNone) return {};
    found[hit] = k;
  }
  for (std::size_t idx : found) {
    if (idx == kNone) return {};
  }
  return found;
}

Verdict check_star(const MstResult& mst, const std::vector<std::size_t>& planted) {
  if (planted.empty()) return Verdict::fail("no planted nodes");
  std::vector<char> in_set(mst.n, 0);
  for (std::size_t v : planted) in_set[v] = 1;
  const std::size_t v0 = planted.front();
  std::size_t spokes = 0;
  for (const auto& e : mst.edges) {
    if (!in_set[e.i] || !in_set[e.j]) continue;
    if (e.i != v0 && e.j != v0) {
      return Verdict::fail("induced edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") avoids the centre");
    }
    ++spokes;
  }
  if (spokes + 1 != planted.size()) {
    return Verdict::fail("centre joined to " + std::to_string(spokes) + " of " + std::to_string(planted.size() - 1) +
                         " boundary nodes");
  }
  return Verdict::ok();
}

Prop1Report prop1_demo(const WeightSpec& spec, const Prop1Options& opt) {
  if (spec.kind != WeightKind::Hotspot || !spec.layout) {
    throw Error(ErrorCode::InvalidArgument, "prop1 demo needs a hotspot weight");
  }
  if (opt.reps < 1) throw Error(ErrorCode::InvalidArgument, "reps must be >= 1");
  const HotspotLayout& layout = *spec.layout;
  const HotspotLevel& lv = layout.level(opt.level);
  const int K = layout.K;
  const auto n = static_cast<std::int64_t>(lv.n_i);
  const std::size_t m = lv.cells.size();

  const bool adapted = opt.mode == Prop1Mode::MonteCarlo && opt.adapted_density;
  const Density f = adapted ? prop1_adapted_density(layout, opt.level) : Density::uniform();

  Prop1Report rep;
  rep.K = K;
  rep.level = opt.level;
  rep.n_i = n;
  rep.mode = opt.mode;
  rep.density = f.describe();
  rep.reps = opt.reps;
  rep.eps1 = f.eps1();
  rep.eps2 = f.eps2();
  rep.log_event_probability = prop1_log_event_probability(layout, opt.level, f);
  const double C = 100.0 * f.eps2() * (2.0 * K - 1.0) * (2.0 * K - 1.0);
  rep.log_floor = (4.0 * K - 3.0) * std::log(f.eps1() / 2.0) - 2.0 * C;

  struct Slot {
    bool occurred = false;
    bool star = true;
    int degree = 0;
    std::string why;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(opt.reps));
  parallel_for(slots.size(), resolve_threads(opt.threads), [&](std::size_t r) {
    const std::uint64_t seed = derive_seed(opt.seed, kTagProp1 + static_cast<std::uint64_t>(K), r);
    std::vector<Point> points;
    std::vector<std::size_t> planted;
    if (opt.mode == Prop1Mode::Planted) {
      Rng rng(seed);
      points.reserve(static_cast<std::size_t>(n));
      for (const auto& c : lv.cells) points.push_back(sample_in_rect(f, c, rng));
      for (std::int64_t k = static_cast<std::int64_t>(m); k < n; ++k) points.push_back(sample_outside(f, lv.big, rng));
      planted.resize(m);
      std::iota(planted.begin(), planted.end(), std::size_t{0});
    } else {
      points = sample_binomial(n, f, seed).points;
      planted = detect_event(points, layout, opt.level);
      if (planted.empty()) return;
    }
    Slot& s = slots[r];
    s.occurred = true;
    const MstResult mst = mst_prim_dense(points, spec);
    s.degree = mst.degrees[planted.front()];
    const Verdict v = check_star(mst, planted);
    s.star = v.pass && s.degree >= 4 * K - 4;
    if (!v.pass) s.why = v.witness;
    else if (!s.star) s.why = "centre degree " + std::to_string(s.degree) + " below 4K-4";
  });

  for (std::size_t r = 0; r < slots.size(); ++r) {
    const Slot& s = slots[r];
    if (!s.occurred) continue;
    ++rep.occurrences;
    rep.min_center_degree = rep.occurrences == 1 ? s.degree : std::min(rep.min_center_degree, s.degree);
    if (!s.star) {
      ++rep.star_failures;
      if (rep.first_failure.empty()) rep.first_failure = "replicate " + std::to_string(r) + ": " + s.why;
    }
  }
  rep.frequency = static_cast<double>(rep.occurrences) / static_cast<double>(rep.reps);
  return rep;
}

// -------------------------------------------------------- good-square probe

GoodSquareConfig build_good_square(int g, std::int64_t n, std::uint64_t seed, bool exact_center) {
  if (g < 5) throw Error(ErrorCode::InvalidArgument, "good squares need g >= 5");
  GoodSquareConfig c;
  c.g = g;
  c.tiling = build_tiling(n, 1.0);
  const int s = c.tiling.s;
  if (6 * g + 1 > s) {
    throw Error(ErrorCode::GeometryInfeasible, "ring of radius 3g=" + std::to_string(3 * g) + " needs " +
                                                   std::to_string(6 * g + 1) + " cells per side, grid has " +
                                                   std::to_string(s));
  }
  if (n < 12) throw Error(ErrorCode::GeometryInfeasible, "need at least the 12 satellite nodes");
  const int r = 3 * g;
  c.center = {r, r};
  const int offsets[12][2] = {{r, -r}, {r, -g}, {r, g},   {r, r},   {g, r},   {-g, r},
                              {-r, r}, {-r, g}, {-r, -g}, {-r, -r}, {-g, -r}, {g, -r}};
  for (const auto& o : offsets) c.satellites.push_back({c.center.col + o[0], c.center.row + o[1]});

  const int reach = 15 * g;
  c.moat = {std::max(0, c.center.col - reach) / static_cast<double>(s),
            std::max(0, c.center.row - reach) / static_cast<double>(s),
            std::min(s, c.center.col + reach + 1) / static_cast<double>(s),
            std::min(s, c.center.row + reach + 1) / static_cast<double>(s)};
  const std::int64_t background = n - 12;
  if (background > 0 && c.moat == Rect{0.0, 0.0, 1.0, 1.0}) {
    throw Error(ErrorCode::GeometryInfeasible, "moat N_15g covers the unit square; no room for background nodes");
  }

  Rng rng(derive_seed(seed, kTagGoodSquare, static_cast<std::uint64_t>(g)));
  const Density uniform = Density::uniform();
  c.points.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k < background; ++k) c.points.push_back(sample_outside(uniform, c.moat, rng));
  c.first_satellite = c.points.size();
  for (const auto& sat : c.satellites) c.points.push_back(sample_in_rect(uniform, cell_rect(c.tiling, sat), rng));
  const Rect centre = cell_rect(c.tiling, c.center);
  c.added = exact_center ? centre.center() : sample_in_rect(uniform, centre, rng);
  return c;
}

Verdict verify_good_square(const GoodSquareConfig& c) {
  const double side = c.tiling.cell_side;
  const double lo = (3.0 * c.g - 1.0) * side;
  const double hi = (5.0 * c.g - 1.0) * side;
  const double ring = (2.0 * c.g + 5.0) * side;
  for (std::size_t k = 0; k < c.satellites.size(); ++k) {
    const Point p = c.points[c.first_satellite + k];
    const double d = dist(p, c.added);
    if (d < lo || d > hi) {
      return Verdict::fail("satellite " + std::to_string(k) + " at distance " + format_double(d / side) +
                           " cells from X_j");
    }
    const Point q = c.points[c.first_satellite + (k + 1) % c.satellites.size()];
    if (dist(p, q) > ring) {
      return Verdict::fail("satellites " + std::to_string(k) + " and next are " + format_double(dist(p, q) / side) +
                           " cells apart");
    }
  }
  for (std::size_t k = 0; k < c.first_satellite; ++k) {
    if (c.moat.contains(c.points[k])) return Verdict::fail("background node " + std::to_string(k) + " inside the moat");
  }
  return Verdict::ok();
}

bool GoodSquareReport::ok() const noexcept {
  if (!geometry_ok || !single_edge) return false;
  for (const auto& o : outcomes) {
    if (!o.within) return false;
  }
  return true;
}

GoodSquareReport good_square_probe(int g, std::int64_t n, const std::vector<double>& alphas, std::uint64_t seed,
                                   bool exact_center) {
  if (alphas.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one alpha");
  const GoodSquareConfig c = build_good_square(g, n, seed, exact_center);
  GoodSquareReport rep;
  rep.g = g;
  rep.n = n;
  rep.seed = seed;
  rep.side = c.tiling.cell_side;
  if (Verdict v = verify_good_square(c); !v) {
    rep.geometry_ok = false;
    rep.witness = v.witness;
  }

  const WeightSpec spec = WeightSpec::euclidean(1.0);
  const MstResult before = mst_prim_dense(c.points, spec);
  std::vector<Point> with = c.points;
  with.push_back(c.added);
  const std::size_t j = c.points.size();
  const MstResult after = mst_prim_dense(with, spec);

  std::set<std::pair<std::size_t, std::size_t>> old_edges;
  for (const auto& e : before.edges) old_edges.emplace(e.i, e.j);
  std::vector<Edge> fresh;
  for (const auto& e : after.edges) {
    if (!old_edges.count({e.i, e.j})) fresh.push_back(e);
  }
  std::size_t nearest = 0;
  for (std::size_t k = 1; k < c.points.size(); ++k) {
    if (dist(c.points[k], c.added) < dist(c.points[nearest], c.added)) nearest = k;
  }
  rep.v_min = nearest;
  rep.single_edge = fresh.size() == 1 && fresh[0].j == j && fresh[0].i == nearest;
  if (!rep.single_edge && rep.witness.empty()) {
    rep.witness = std::to_string(fresh.size()) + " new edges after adding X_j";
  }

  for (double a : alphas) {
    GoodSquareOutcome o;
    o.alpha = a;
    const double w_before = reweight(before, a).total_weight;
    const double w_after = reweight(after, a).total_weight;
    o.increment = w_after - w_before;
    o.lower = std::pow((3.0 * g - 1.0) * rep.side, a);
    o.upper = std::pow((5.0 * g - 1.0) * rep.side, a);
    const double slack = 1e-12 * (1.0 + w_after);
    o.within = o.increment >= o.lower - slack && o.increment <= o.upper + slack;
    if (!o.within && rep.witness.empty()) {
      rep.witness = "increment " + format_double(o.increment) + " outside [" + format_double(o.lower) + ", " +
                    format_double(o.upper) + "] at alpha=" + format_double(a);
    }
    rep.outcomes.push_back(o);
  }
  return rep;
}

// ---------------------------------------------------------- scaling studies

LinearFit ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::InvalidArgument, "OLS needs two or more points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::InvalidArgument, "OLS needs distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (x.size() > 2) {
    double rss = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double r = y[k] - f.intercept - f.slope * x[k];
      rss += r * r;
    }
    const double sigma2 = rss / (n - 2.0);
    f.slope_se = std::sqrt(sigma2 / sxx);
    f.intercept_se = std::sqrt(sigma2 * (1.0 / n + mx * mx / sxx));
  }
  return f;
}

bool ScalingFit::corridor_ok() const noexcept {
  return std::all_of(points.begin(), points.end(), [](const ScalingPoint& p) { return p.in_corridor; });
}

std::vector<Point> replicate_points(std::int64_t n, const Density& f, Process process, std::uint64_t seed) {
  if (process == Process::Poisson) return sample_poisson(static_cast<double>(n), f, seed).points;
  return sample_binomial(n, f, seed).points;
}

std::vector<ScalingFit> scaling_experiment(const ScalingConfig& cfg) {
  if (cfg.n_list.size() < 4) throw Error(ErrorCode::InvalidArgument, "scaling needs at least four n values");
  for (std::size_t k = 1; k < cfg.n_list.size(); ++k) {
    if (cfg.n_list[k] <= cfg.n_list[k - 1]) throw Error(ErrorCode::InvalidArgument, "n_list must be increasing");
  }
  if (cfg.n_list.front() < 2) throw Error(ErrorCode::InvalidArgument, "n values must be >= 2");
  if (cfg.reps < 30) throw Error(ErrorCode::InvalidArgument, "scaling needs reps >= 30");
  if (cfg.alphas.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one alpha");

  const std::size_t na = cfg.alphas.size();
  const auto reps = static_cast<std::size_t>(cfg.reps);
  std::vector<ScalingFit> fits(na);
  for (std::size_t a = 0; a < na; ++a) {
    BoundsInput in{cfg.alphas[a], cfg.density.eps1(), cfg.density.eps2(), cfg.spec.c1, cfg.spec.c2};
    const BoundsResult b = compute_bounds(in);
    fits[a].alpha = cfg.alphas[a];
    fits[a].reps = cfg.reps;
    fits[a].beta_low = b.low.value;
    fits[a].beta_up = b.up.value;
  }
  const int threads = resolve_threads(cfg.threads);

  for (std::int64_t n : cfg.n_list) {
    std::vector<double> totals(reps * na);
    parallel_for(reps, threads, [&](std::size_t r) {
      const auto pts = replicate_points(n, cfg.density, cfg.process, derive_seed(cfg.seed, static_cast<std::uint64_t>(n), r));
      const MstResult mst = compute_mst(pts, cfg.spec);
      for (std::size_t a = 0; a < na; ++a) totals[r * na + a] = reweight(mst, cfg.alphas[a]).total_weight;
    });
    for (std::size_t a = 0; a < na; ++a) {
      double mean = 0.0;
      for (std::size_t r = 0; r < reps; ++r) mean += totals[r * na + a];
      mean /= static_cast<double>(reps);
      double ss = 0.0;
      for (std::size_t r = 0; r < reps; ++r) ss += (totals[r * na + a] - mean) * (totals[r * na + a] - mean);
      ScalingPoint p;
      p.n = n;
      p.mean = mean;
      p.variance = ss / static_cast<double>(reps - 1);
      const double alpha = cfg.alphas[a];
      const double rate = std::pow(static_cast<double>(n), 1.0 - alpha / 2.0);
      p.normalized_sd = std::sqrt(p.variance) / rate;
      p.corridor_low = std::pow(cfg.spec.c1, alpha) * fits[a].beta_low * rate;
      p.corridor_high = std::pow(cfg.spec.c2, alpha) * fits[a].beta_up * rate;
      p.in_corridor = mean >= p.corridor_low && mean <= p.corridor_high;
      fits[a].points.push_back(p);
    }
  }
  for (auto& fit : fits) {
    std::vector<double> x, ym, yv;
    for (const auto& p : fit.points) {
      x.push_back(std::log(static_cast<double>(p.n)));
      ym.push_back(std::log(p.mean));
      yv.push_back(std::log(p.variance));
    }
    fit.mean_fit = ols_fit(x, ym);
    fit.variance_fit = ols_fit(x, yv);
  }
  return fits;
}

std::vector<ScalingFit> variance_experiment(const ScalingConfig& cfg) {
  if (cfg.reps < 200) throw Error(ErrorCode::InvalidArgument, "variance study needs reps >= 200");
  return scaling_experiment(cfg);
}

std::string scaling_fit_to_json(const ScalingFit& fit) {
  nlohmann::json j;
  j["alpha"] = fit.alpha;
  j["reps"] = fit.reps;
  j["beta_low"] = fit.beta_low;
  j["beta_up"] = fit.beta_up;
  j["n_list"] = nlohmann::json::array();
  j["points"] = nlohmann::json::array();
  for (const auto& p : fit.points) {
    j["n_list"].push_back(p.n);
    j["points"].push_back({{"n", p.n},
                           {"mean", p.mean},
                           {"variance", p.variance},
                           {"normalized_sd", p.normalized_sd},
                           {"corridor_low", p.corridor_low},
                           {"corridor_high", p.corridor_high},
                           {"in_corridor", p.in_corridor}});
  }
  auto fit_json = [](const LinearFit& f) {
    return nlohmann::json{{"slope", f.slope}, {"slope_se", f.slope_se}, {"intercept", f.intercept},
                          {"intercept_se", f.intercept_se}};
  };
  j["mean_fit"] = fit_json(fit.mean_fit);
  j["variance_fit"] = fit_json(fit.variance_fit);
  j["corridor_ok"] = fit.corridor_ok();
  return j.dump(2);
}

// ------------------------------------------------------ per-replicate rows

std::vector<ExperimentRecord> simulate(const SimulateConfig& cfg) {
  if (cfg.n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (cfg.reps < 1) throw Error(ErrorCode::InvalidArgument, "reps must be >= 1");
  if (cfg.alphas.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one alpha");
  const std::size_t na = cfg.alphas.size();
  const bool tiled = cfg.n >= 3 && tiling_admissible(cfg.n, 1.0);
  const Tiling t = tiled ? build_tiling(cfg.n, 1.0) : Tiling{};
  std::vector<ExperimentRecord> rows(static_cast<std::size_t>(cfg.reps) * na);
  parallel_for(static_cast<std::size_t>(cfg.reps), resolve_threads(cfg.threads), [&](std::size_t r) {
    const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(cfg.n), r);
    const auto pts = replicate_points(cfg.n, cfg.density, cfg.process, seed);
    const auto start = std::chrono::steady_clock::now();
    const MstResult mst = compute_mst(pts, cfg.spec);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const std::int64_t g = tiled ? isolated_cell_count(pts, t) : -1;
    for (std::size_t a = 0; a < na; ++a) {
      ExperimentRecord& row = rows[r * na + a];
      row.experiment = "simulate";
      row.n = cfg.n;
      row.alpha = cfg.alphas[a];
      row.weight_kind = cfg.spec.kind;
      row.seed = seed;
      row.replicate = static_cast<std::int64_t>(r);
      row.mst_weight = reweight(mst, cfg.alphas[a]).total_weight;
      row.max_degree = max_degree(mst);
      row.g_alpha = g;
      row.s_alpha = tiled ? gap_stat(pts, t, cfg.alphas[a]).s_alpha : 0.0;
      row.runtime_ms = ms;
    }
  });
  return rows;
}

void write_records_csv(std::ostream& os, const std::vector<ExperimentRecord>& rows) {
  os << "experiment,n,alpha,weight_kind,seed,replicate,mst_weight,max_degree,g_alpha,s_alpha,runtime_ms\n";
  for (const auto& r : rows) {
    os << r.experiment << ',' << r.n << ',' << format_double(r.alpha) << ',' << to_string(r.weight_kind) << ','
       << r.seed << ',' << r.replicate << ',' << format_double(r.mst_weight) << ',' << r.max_degree << ','
       << r.g_alpha << ',' << format_double(r.s_alpha) << ',' << format_double(r.runtime_ms) << '\n';
  }
}

std::vector<Point> sample_hotspot_mixture(std::size_t n, const HotspotLayout& layout, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (rng.uniform() < 0.5) {
      const Rect& c = layout.levels[rng.below(layout.levels.size())].central();
      pts.push_back({rng.uniform(c.x0, c.x1), rng.uniform(c.y0, c.y1)});
    } else {
      pts.push_back({rng.uniform(), rng.uniform()});
    }
  }
  return pts;
}

}  // namespace locmst
