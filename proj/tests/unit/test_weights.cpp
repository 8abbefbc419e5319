#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "json.hpp"
#include "locmst/error.hpp"
#include "locmst/random.hpp"
#include "locmst/weights.hpp"

using namespace locmst;

namespace {

std::shared_ptr<const HotspotLayout> layout_k(int K, int levels = 10) {
  return std::make_shared<const HotspotLayout>(build_hotspot_layout(K, levels));
}

}  // namespace

TEST(Zeta, ThreeHalves) { EXPECT_NEAR(zeta_three_halves(), 2.6123753486854883, 1e-12); }

TEST(HotspotLayout, SpacingConstant) {
  // (10 (2K-1) zeta(3/2))^2 = 6142.05..., 17061.26... from a 30-digit evaluation.
  EXPECT_EQ(build_hotspot_layout(2, 1).D, 6143.0);
  EXPECT_EQ(build_hotspot_layout(3, 1).D, 17062.0);
  EXPECT_EQ(build_hotspot_layout(4, 1).D, 33441.0);
}

TEST(HotspotLayout, FirstLevelGeometry) {
  const HotspotLayout l = build_hotspot_layout(2, 3);
  const HotspotLevel& lv = l.level(1);
  EXPECT_DOUBLE_EQ(lv.n_i, 6143.0);
  EXPECT_NEAR(lv.q, 3.0 / std::sqrt(6143.0), 1e-16);
  EXPECT_NEAR(lv.big.width(), 30.0 / std::sqrt(6143.0), 1e-15);
  EXPECT_EQ(lv.big.x0, 0.0);
  EXPECT_EQ(lv.big.y0, 0.0);
  EXPECT_EQ(lv.cells.size(), 5u);
  EXPECT_DOUBLE_EQ(l.level(2).n_i, 6143.0 * 8);
  EXPECT_EQ(l.level(2).big.x0, lv.big.x1);
  EXPECT_THROW(l.level(4), Error);
}

TEST(HotspotLayout, InvariantsUpToTwentyLevels) {
  for (int K = 2; K <= 6; ++K) {
    const HotspotLayout l = build_hotspot_layout(K, 20);
    EXPECT_NO_THROW(verify_hotspot_layout(l));
    double diag = 0.0;
    for (std::size_t a = 0; a < l.levels.size(); ++a) {
      const auto& lv = l.levels[a];
      diag += 10.0 * lv.q * std::sqrt(2.0);
      EXPECT_EQ(lv.cells.size(), static_cast<std::size_t>(4 * K - 3));
      for (std::size_t b = a + 1; b < l.levels.size(); ++b) EXPECT_FALSE(lv.big.overlaps(l.levels[b].big));
      for (std::size_t c = 0; c < lv.cells.size(); ++c) {
        for (std::size_t d = c + 1; d < lv.cells.size(); ++d) EXPECT_FALSE(lv.cells[c].overlaps(lv.cells[d]));
      }
      // Central cell sits at the middle of S_i.
      EXPECT_NEAR(lv.central().center().x, lv.inner.center().x, 1e-15);
    }
    EXPECT_LE(diag, std::sqrt(2.0));
  }
}

TEST(HotspotLayout, BoundaryCellsPerSide) {
  const HotspotLayout l = build_hotspot_layout(3, 1);
  const HotspotLevel& lv = l.level(1);
  int bottom = 0, top = 0, left = 0, right = 0;
  const double tol = 1e-15;
  for (std::size_t c = 1; c < lv.cells.size(); ++c) {
    bottom += std::abs(lv.cells[c].y0 - lv.inner.y0) < tol;
    top += std::abs(lv.cells[c].y1 - lv.inner.y1) < tol;
    left += std::abs(lv.cells[c].x0 - lv.inner.x0) < tol;
    right += std::abs(lv.cells[c].x1 - lv.inner.x1) < tol;
  }
  EXPECT_EQ(bottom, 3);
  EXPECT_EQ(top, 3);
  EXPECT_EQ(left, 3);
  EXPECT_EQ(right, 3);
}

TEST(HotspotLayout, JsonExport) {
  const auto j = nlohmann::json::parse(layout_to_json(build_hotspot_layout(2, 2)));
  EXPECT_EQ(j["K"], 2);
  ASSERT_EQ(j["levels"].size(), 2u);
  EXPECT_EQ(j["levels"][0]["boundary"].size(), 4u);
  EXPECT_EQ(j["levels"][0]["central"].size(), 4u);
}

TEST(Weight, Examples) {
  const WeightSpec e = WeightSpec::euclidean(1.0);
  EXPECT_EQ(weight(e, {0, 0}, {1, 0}), 1.0);
  const WeightSpec s = WeightSpec::shifted(1.0, 0.5);
  EXPECT_DOUBLE_EQ(weight(s, {1, 0}, {0, 1}), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(weight(s, {1, 0}, {0.5, 0}), 0.75);
  EXPECT_THROW(weight(e, {0.3, 0.3}, {0.3, 0.3}), Error);
  EXPECT_EQ(s.c1, 1.0);
  EXPECT_EQ(s.c2, 1.5);
  EXPECT_EQ(*s.h0, 1.5);
}

TEST(Weight, HotspotRule) {
  const auto l = layout_k(2);
  const WeightSpec h = WeightSpec::hotspot(1.0, l);
  EXPECT_DOUBLE_EQ(h.c1, 1.0 / 32.0);
  EXPECT_LT(h.c1, h.c2 / 16.0);
  const Point centre = l->level(1).central().center();
  const Point corner{l->level(1).central().x1, l->level(1).central().y1};  // closed cell
  const Point far{0.9, 0.9};
  EXPECT_DOUBLE_EQ(weight(h, centre, far), h.c1 * dist(centre, far));
  EXPECT_DOUBLE_EQ(weight(h, far, corner), h.c1 * dist(corner, far));
  EXPECT_DOUBLE_EQ(weight(h, far, {0.8, 0.95}), h.c2 * dist(far, {0.8, 0.95}));
  EXPECT_THROW(WeightSpec::hotspot(1.0, l, 1.0, 1.0 / 16.0), Error);  // c1 = c2/(8K) is not strict
  EXPECT_NO_THROW(WeightSpec::hotspot(1.0, l, 1.0, 0.06));
}

TEST(Weight, SymmetryAndHomogeneity) {
  Rng rng(3);
  const auto l = layout_k(2);
  const WeightSpec specs[] = {WeightSpec::euclidean(1.0), WeightSpec::shifted(1.0), WeightSpec::hotspot(1.0, l)};
  for (int k = 0; k < 20000; ++k) {
    const Point u{rng.uniform(), rng.uniform()}, v{rng.uniform(), rng.uniform()};
    for (const auto& s : specs) EXPECT_EQ(weight(s, u, v), weight(s, v, u));
    const double a = rng.uniform(0.1, 10.0);
    for (int s = 0; s < 2; ++s) {
      const double w = weight(specs[s], u, v);
      EXPECT_NEAR(weight(specs[s], a * u, a * v), a * w, 1e-13 * a * w + 4e-15 * a);
    }
  }
}

TEST(Weight, ShiftedTranslationBound) {
  Rng rng(4);
  const WeightSpec s = WeightSpec::shifted(1.0);
  for (int k = 0; k < 100000; ++k) {
    const Point u{rng.uniform(), rng.uniform()}, v{rng.uniform(), rng.uniform()};
    const Point b{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const double w = weight(s, u, v);
    ASSERT_LE(weight(s, u + b, v + b), 1.5 * w * (1.0 + 1e-15));
  }
}

TEST(Audit, RatiosPerKind) {
  const AuditResult e = equivalence_audit(WeightSpec::euclidean(1.0), 10000, 1);
  EXPECT_EQ(e.c1_hat, 1.0);
  EXPECT_EQ(e.c2_hat, 1.0);
  const AuditResult s = equivalence_audit(WeightSpec::shifted(1.0), 100000, 2);
  EXPECT_GE(s.c1_hat, 1.0);
  EXPECT_LE(s.c2_hat, 1.5 * (1.0 + 1e-12));
  EXPECT_GT(s.c2_hat, 1.4);
  const WeightSpec h = WeightSpec::hotspot(1.0, layout_k(2));
  const AuditResult a = equivalence_audit(h, 10000, 3);
  EXPECT_NEAR(a.c1_hat, h.c1, 1e-15);
  EXPECT_NEAR(a.c2_hat, h.c2, 1e-15);
}

TEST(Audit, ViolationCarriesWitness) {
  WeightSpec bad = WeightSpec::shifted(1.0);
  bad.c2 = 1.2;
  try {
    equivalence_audit(bad, 100000, 5);
    FAIL() << "expected EquivalenceViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EquivalenceViolation);
    EXPECT_NE(std::string(e.what()).find("u=("), std::string::npos);
  }
}
