#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "locmst/error.hpp"
#include "locmst/geometry.hpp"
#include "locmst/random.hpp"
#include "locmst/sampling.hpp"

using namespace locmst;

namespace {

Density split() { return Density::piecewise(7.0 / 6.0, {{{0.0, 0.0, 0.5, 0.5}, 0.5}}); }

}  // namespace

TEST(Density, SplitBoundsAndMass) {
  const Density f = split();
  EXPECT_DOUBLE_EQ(f.eps1(), 0.5);
  EXPECT_DOUBLE_EQ(f.eps2(), 7.0 / 6.0);
  EXPECT_NEAR(f.integral(), 1.0, 1e-12);
  EXPECT_NEAR(f.mass({0, 0, 0.5, 0.5}), 0.125, 1e-15);
  EXPECT_DOUBLE_EQ(f.value({0.25, 0.25}), 0.5);
  EXPECT_DOUBLE_EQ(f.value({0.75, 0.25}), 7.0 / 6.0);
}

TEST(Density, RejectsBadDensities) {
  EXPECT_THROW(Density::piecewise(1.0, {{{0, 0, 0.5, 0.5}, 2.0}}), Error);  // integral 1.25
  EXPECT_THROW(Density::piecewise(4.0 / 3.0, {{{0, 0, 0.5, 0.5}, 0.0}}), Error);  // eps1 = 0
}

TEST(Binomial, EmptyAndDeterministic) {
  EXPECT_TRUE(sample_binomial(0, Density::uniform(), 1).empty());
  const auto a = sample_binomial(1000, split(), 42).points;
  const auto b = sample_binomial(1000, split(), 42).points;
  const auto c = sample_binomial(1000, split(), 43).points;
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (const auto& p : a) EXPECT_TRUE(in_unit_square(p));
}

TEST(Binomial, UniformCellCountsWithinFiveSigma) {
  const auto pts = sample_binomial(100000, Density::uniform(), 5).points;
  const Tiling t = build_tiling(100, 1.0);
  std::vector<int> counts(100, 0);
  for (const auto& p : pts) ++counts[static_cast<std::size_t>(cell_of(p, t) - 1)];
  const double sigma = std::sqrt(100000 * 0.01 * 0.99);
  for (int c : counts) EXPECT_LT(std::abs(c - 1000.0), 5.0 * sigma);
}

TEST(Binomial, SplitDensityQuarterFraction) {
  const int n = 200000;
  const auto pts = sample_binomial(n, split(), 11).points;
  int inside = 0;
  for (const auto& p : pts) inside += (p.x <= 0.5 && p.y <= 0.5) ? 1 : 0;
  const double sigma = std::sqrt(n * 0.125 * 0.875);
  EXPECT_LT(std::abs(inside - 0.125 * n), 5.0 * sigma);
}

TEST(Binomial, ChiSquareOnCoarseGrid) {
  // 4x4 grid, expected cell masses from the density; critical value for 15
  // degrees of freedom at p = 1e-6 is about 51.
  const Density f = split();
  const int n = 160000;
  const auto pts = sample_binomial(n, f, 3).points;
  std::vector<int> counts(16, 0);
  for (const auto& p : pts) {
    const int cx = std::min(3, static_cast<int>(p.x * 4));
    const int cy = std::min(3, static_cast<int>(p.y * 4));
    ++counts[static_cast<std::size_t>(cx * 4 + cy)];
  }
  double chi2 = 0.0;
  for (int cx = 0; cx < 4; ++cx) {
    for (int cy = 0; cy < 4; ++cy) {
      const double e = n * f.mass({cx / 4.0, cy / 4.0, (cx + 1) / 4.0, (cy + 1) / 4.0});
      const double o = counts[static_cast<std::size_t>(cx * 4 + cy)];
      chi2 += (o - e) * (o - e) / e;
    }
  }
  EXPECT_LT(chi2, 51.0);
}

TEST(Poisson, CountConcentration) {
  const auto big = sample_poisson(1e5, Density::uniform(), 8);
  EXPECT_LT(std::abs(static_cast<double>(big.size()) - 1e5), 5.0 * std::sqrt(1e5));
  int empty = 0;
  for (std::uint64_t s = 0; s < 100; ++s) empty += sample_poisson(0.001, Density::uniform(), s).empty() ? 1 : 0;
  EXPECT_GE(empty, 95);
}

TEST(Poisson, MeanCountOverReplicates) {
  double sum = 0.0;
  const int reps = 10000;
  for (int r = 0; r < reps; ++r) sum += static_cast<double>(sample_poisson(100.0, Density::uniform(), derive_seed(1, 2, r)).size());
  EXPECT_NEAR(sum / reps, 100.0, 0.5);
}

TEST(Poisson, SmallAndLargeMeanVariates) {
  for (double mean : {0.5, 7.0, 29.0, 31.0, 250.0}) {
    Rng rng(static_cast<std::uint64_t>(mean * 10));
    const int reps = 40000;
    double s = 0.0, s2 = 0.0;
    for (int r = 0; r < reps; ++r) {
      const double k = static_cast<double>(poisson_count(mean, rng));
      s += k;
      s2 += k * k;
    }
    const double m = s / reps;
    const double v = s2 / reps - m * m;
    EXPECT_NEAR(m, mean, 5.0 * std::sqrt(mean / reps)) << mean;
    EXPECT_NEAR(v / mean, 1.0, 0.05) << mean;
  }
}

TEST(Poisson, ThinningSuperpositionMatchesDirect) {
  // Red points: Poisson(n eps1) uniform; blue: Poisson with intensity
  // n (f - eps1), i.e. mass n(1 - eps1) spread as (f - eps1)/(1 - eps1).
  // f - eps1 vanishes on the quarter; a 1e-9 floor keeps the density valid.
  const Density f = split();
  const double n = 2000.0;
  const double eps1 = f.eps1();
  const Density excess = Density::piecewise((1.0 - 0.25e-9) / 0.75, {{{0, 0, 0.5, 0.5}, 1e-9}});
  std::vector<double> direct(2, 0.0), coupled(2, 0.0);
  const int reps = 400;
  for (int r = 0; r < reps; ++r) {
    for (const auto& p : sample_poisson(n, f, derive_seed(5, 0, r)).points) direct[(p.x <= 0.5 && p.y <= 0.5) ? 0 : 1] += 1;
    for (const auto& p : sample_poisson(n * eps1, Density::uniform(), derive_seed(5, 1, r)).points) {
      coupled[(p.x <= 0.5 && p.y <= 0.5) ? 0 : 1] += 1;
    }
    for (const auto& p : sample_poisson(n * (1.0 - eps1), excess, derive_seed(5, 2, r)).points) {
      coupled[(p.x <= 0.5 && p.y <= 0.5) ? 0 : 1] += 1;
    }
  }
  // Both count totals are Poisson with the same mean; compare with a
  // two-sample normal test at 5 sigma.
  for (int c = 0; c < 2; ++c) {
    EXPECT_LT(std::abs(direct[c] - coupled[c]), 5.0 * std::sqrt(direct[c] + coupled[c])) << c;
  }
}

TEST(PointsIo, CsvRoundTripIsExact) {
  const auto pts = sample_binomial(50, Density::uniform(), 2).points;
  std::stringstream ss;
  ss << "# provenance line\n";
  write_points_csv(ss, pts);
  EXPECT_EQ(read_points_csv(ss), pts);
  std::ostringstream js;
  write_points_json(js, {{0.5, 0.25}});
  EXPECT_EQ(js.str(), "[[0.5,0.25]]\n");
}
