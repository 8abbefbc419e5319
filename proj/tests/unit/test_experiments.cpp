#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <sstream>

#include "locmst/error.hpp"
#include "locmst/experiments.hpp"
#include "locmst/random.hpp"

using namespace locmst;

namespace {

std::vector<Point> uniform_points(std::int64_t n, std::uint64_t seed) {
  return sample_binomial(n, Density::uniform(), seed).points;
}

}  // namespace

TEST(Threads, ResolveAndParallelFor) {
  EXPECT_EQ(resolve_threads(3), 3);
  setenv("LOCMST_THREADS", "2", 1);
  EXPECT_EQ(resolve_threads(0), 2);
  unsetenv("LOCMST_THREADS");
  EXPECT_GE(resolve_threads(0), 1);

  std::vector<int> hit(1000, 0);
  parallel_for(hit.size(), 4, [&](std::size_t k) { hit[k] += 1; });
  for (int h : hit) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t k) {
                              if (k == 7) throw Error(ErrorCode::InternalError, "boom");
                            }),
               Error);
}

TEST(GapStat, HandComputed) {
  const GapStat g = gap_stat_from_cells({7, 3, 3}, 9, 1.0);
  EXPECT_EQ(g.occupied, (std::vector<CellIndex>{3, 7}));
  EXPECT_EQ(g.gaps, (std::vector<std::int64_t>{2, 4, 2}));
  EXPECT_DOUBLE_EQ(g.s_alpha, 8.0);
  EXPECT_DOUBLE_EQ(gap_stat_from_cells({3, 7}, 9, 2.0).s_alpha, 24.0);
  EXPECT_EQ(gap_stat_from_cells({}, 16, 1.0).gaps, (std::vector<std::int64_t>{15}));
  // Zero gaps contribute nothing.
  EXPECT_DOUBLE_EQ(gap_stat_from_cells({1, 2, 3, 4}, 4, 0.5).s_alpha, 3.0);
}

TEST(GapStat, Monotonicity) {
  const Tiling t = build_tiling(100, 1.0);
  Rng rng(5);
  for (int r = 0; r < 200; ++r) {
    const auto pts = uniform_points(30, static_cast<std::uint64_t>(r));
    const Point extra{rng.uniform(), rng.uniform()};
    for (double alpha : {0.5, 1.0, 1.5, 2.0}) EXPECT_TRUE(gap_stat_monotonicity(pts, t, alpha, extra).pass);
  }
  // An extra point in an occupied cell leaves S unchanged.
  const auto pts = uniform_points(30, 1);
  EXPECT_TRUE(gap_stat_monotonicity(pts, t, 2.0, pts[0]).pass);
}

TEST(LowerBound, HoldsAndVacuous) {
  const Tiling t = build_tiling(400, 1.0);
  for (std::uint64_t r = 0; r < 50; ++r) {
    const auto pts = uniform_points(400, r);
    for (double alpha : {1.0, 2.0}) {
      const LowerBoundStat s = lower_bound_stat(pts, t, WeightSpec::euclidean(alpha));
      EXPECT_TRUE(s.holds);
      EXPECT_FALSE(s.vacuous);
      EXPECT_GE(s.occupied, 2);
    }
  }
  // Everything in one cell: no edge is forced to leave it.
  const std::vector<Point> clump{{0.01, 0.01}, {0.02, 0.01}, {0.01, 0.02}};
  const LowerBoundStat v = lower_bound_stat(clump, t, WeightSpec::euclidean(1.0));
  EXPECT_TRUE(v.vacuous);
  EXPECT_EQ(v.bound, 0.0);
  EXPECT_EQ(v.g_alpha, 1);
}

TEST(LowerBound, IsolatedCells) {
  const Tiling t = build_tiling(9, 1.0);  // 3x3 grid
  const std::vector<Point> corners{{0.1, 0.1}, {0.9, 0.9}};
  EXPECT_EQ(isolated_cell_count(corners, t), 2);
  const std::vector<Point> adjacent{{0.1, 0.1}, {0.5, 0.5}};
  EXPECT_EQ(isolated_cell_count(adjacent, t), 0);
}

TEST(UpperBound, TreeAndAggregate) {
  const Tiling t = build_tiling(400, 1.0);
  for (std::uint64_t r = 0; r < 50; ++r) {
    const auto pts = uniform_points(400, r + 100);
    for (double alpha : {0.5, 1.0, 2.0}) {
      const TiledUpperBound u = tiled_upper_bound(pts, t, WeightSpec::euclidean(alpha));
      EXPECT_EQ(u.tree.size(), pts.size() - 1);
      EXPECT_TRUE(u.holds) << u.mst_weight << " " << u.w_uni << " " << u.rhs;
    }
  }
  EXPECT_THROW(tiled_upper_bound(std::vector<Point>{}, t, WeightSpec::euclidean(1.0)), Error);
  const TiledUpperBound one = tiled_upper_bound(std::vector<Point>{{0.5, 0.5}}, t, WeightSpec::euclidean(1.0));
  EXPECT_EQ(one.w_uni, 0.0);
}

TEST(Merge, BoundHolds) {
  for (std::uint64_t r = 0; r < 50; ++r) {
    const auto a = uniform_points(40, r);
    const auto b = uniform_points(15, r + 1000);
    for (const auto& spec : {WeightSpec::euclidean(1.0), WeightSpec::euclidean(2.0), WeightSpec::shifted(1.5)}) {
      EXPECT_TRUE(merge_bound_check(a, b, spec).holds);
    }
  }
  const auto a = uniform_points(5, 3);
  const MergeCheck same = merge_bound_check(a, std::vector<Point>{}, WeightSpec::euclidean(1.0));
  EXPECT_DOUBLE_EQ(same.merged, same.first);
  EXPECT_EQ(same.joining, 0.0);
}

TEST(Prop1, AdaptedDensityNormalised) {
  const auto layout = build_hotspot_layout(2, 3);
  for (int level = 1; level <= 3; ++level) {
    const Density f = prop1_adapted_density(layout, level);
    EXPECT_NEAR(f.mass({0, 0, 1, 1}), 1.0, 1e-12);
    const auto& lv = layout.level(level);
    const double n = static_cast<double>(lv.n_i);
    for (const Rect& c : lv.cells) EXPECT_NEAR(f.mass(c), 1.0 / n, 1e-12 / n);
  }
}

TEST(Prop1, LogProbabilityOracle) {
  // Independent multinomial evaluation: n!/(n-m)! prod p_l (1 - P_big)^{n-m}.
  const auto layout = build_hotspot_layout(2, 1);
  const auto& lv = layout.level(1);
  const Density f = prop1_adapted_density(layout, 1);
  const double n = static_cast<double>(lv.n_i);
  const double m = static_cast<double>(lv.cells.size());
  double expect = std::lgamma(n + 1.0) - std::lgamma(n - m + 1.0);
  for (const Rect& c : lv.cells) expect += std::log(f.mass(c));
  expect += (n - m) * std::log1p(-f.mass(lv.big));
  EXPECT_NEAR(prop1_log_event_probability(layout, 1, f), expect, 1e-9 * std::abs(expect));
  // Under the uniform density the event is astronomically rare.
  EXPECT_LT(prop1_log_event_probability(layout, 1, Density::uniform()), -500.0);
}

TEST(Prop1, PlantedStar) {
  const auto layout = std::make_shared<const HotspotLayout>(build_hotspot_layout(2, 1));
  Prop1Options opt;
  opt.level = 1;
  opt.reps = 2;
  opt.seed = 9;
  const Prop1Report rep = prop1_demo(WeightSpec::hotspot(1.0, layout), opt);
  EXPECT_EQ(rep.occurrences, 2);
  EXPECT_TRUE(rep.ok()) << rep.first_failure;
  EXPECT_GE(rep.min_center_degree, 4 * 2 - 4);
  EXPECT_THROW(prop1_demo(WeightSpec::euclidean(1.0), opt), Error);
}

TEST(Prop1, DetectAndStarCheck) {
  const auto layout = build_hotspot_layout(2, 1);
  const auto& lv = layout.level(1);
  std::vector<Point> pts;
  for (const Rect& c : lv.cells) pts.push_back({0.5 * (c.x0 + c.x1), 0.5 * (c.y0 + c.y1)});
  pts.push_back({0.999, 0.001});
  const auto found = detect_event(pts, layout, 1);
  ASSERT_EQ(found.size(), lv.cells.size());
  pts.push_back(pts[1]);
  EXPECT_TRUE(detect_event(pts, layout, 1).empty());

  MstResult star;
  star.n = 4;
  star.edges = {{0, 1, 1, 1}, {0, 2, 1, 1}, {0, 3, 1, 1}};
  EXPECT_TRUE(check_star(star, {0, 1, 2, 3}).pass);
  star.edges = {{0, 1, 1, 1}, {1, 2, 1, 1}, {0, 3, 1, 1}};
  EXPECT_FALSE(check_star(star, {0, 1, 2, 3}).pass);
}

TEST(GoodSquare, GeometryAndProbe) {
  const GoodSquareConfig c = build_good_square(5, 10000, 3);
  EXPECT_EQ(c.satellites.size(), 12u);
  EXPECT_TRUE(verify_good_square(c).pass);
  EXPECT_EQ(c.points.size(), 10000u);
  const GoodSquareReport rep = good_square_probe(5, 10000, {1.0, 2.0}, 3);
  EXPECT_TRUE(rep.ok()) << rep.witness;
  ASSERT_EQ(rep.outcomes.size(), 2u);
  for (const auto& o : rep.outcomes) EXPECT_LE(o.lower, o.upper);
  try {
    build_good_square(5, 400, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GeometryInfeasible);
  }
}

TEST(Ols, ExactLine) {
  const LinearFit f = ols_fit({1, 2, 3, 4}, {3, 5, 7, 9});
  EXPECT_NEAR(f.slope, 2.0, 1e-12);
  EXPECT_NEAR(f.intercept, 1.0, 1e-12);
  EXPECT_NEAR(f.slope_se, 0.0, 1e-9);
  // Hand-computed: x = 0,1,2 ; y = 0,2,1 -> slope 0.5, residual var 1.5, se = sqrt(1.5/2).
  const LinearFit g = ols_fit({0, 1, 2}, {0, 2, 1});
  EXPECT_NEAR(g.slope, 0.5, 1e-12);
  EXPECT_NEAR(g.slope_se, std::sqrt(0.75), 1e-12);
  EXPECT_THROW(ols_fit({1, 2}, {1}), Error);
}

TEST(Scaling, SmallStudyDeterministic) {
  ScalingConfig cfg;
  cfg.n_list = {64, 128, 256, 512};
  cfg.alphas = {1.0, 2.0};
  cfg.reps = 30;
  cfg.seed = 4;
  cfg.threads = 2;
  const auto a = scaling_experiment(cfg);
  cfg.threads = 1;
  const auto b = scaling_experiment(cfg);
  ASSERT_EQ(a.size(), 2u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    ASSERT_EQ(a[k].points.size(), 4u);
    for (std::size_t m = 0; m < 4; ++m) EXPECT_EQ(a[k].points[m].mean, b[k].points[m].mean);
    EXPECT_TRUE(a[k].corridor_ok());
  }
  EXPECT_NEAR(a[0].mean_fit.slope, 0.5, 0.15);
  EXPECT_NEAR(a[1].mean_fit.slope, 0.0, 0.15);
}

TEST(Simulate, RowsAndCsv) {
  SimulateConfig cfg;
  cfg.n = 200;
  cfg.alphas = {1.0, 2.0};
  cfg.reps = 3;
  cfg.seed = 11;
  const auto rows = simulate(cfg);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].replicate, 0);
  EXPECT_EQ(rows[1].alpha, 2.0);
  for (const auto& r : rows) {
    EXPECT_GT(r.mst_weight, 0.0);
    EXPECT_GE(r.max_degree, 1);
    EXPECT_LE(r.max_degree, 6);
  }
  std::ostringstream os;
  write_records_csv(os, rows);
  const std::string csv = os.str();
  EXPECT_EQ(csv.rfind("experiment,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  const auto again = simulate(cfg);
  for (std::size_t k = 0; k < rows.size(); ++k) EXPECT_EQ(rows[k].mst_weight, again[k].mst_weight);
}

TEST(Mixture, HalfInCentralCells) {
  const auto layout = build_hotspot_layout(2, 5);
  const auto pts = sample_hotspot_mixture(2000, layout, 6);
  ASSERT_EQ(pts.size(), 2000u);
  std::size_t hot = 0;
  for (const auto& p : pts) hot += layout.in_central_cell(p) ? 1 : 0;
  EXPECT_GT(hot, 900u);
  EXPECT_LT(hot, 1100u);
}
