#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "locmst/geometry.hpp"
#include "locmst/weights.hpp"

namespace locmst {

struct Edge {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  double euclid_len = 0.0;
  double base_weight = 0.0;
  double power_weight = 0.0;
};

/// Strict total order on edges: base weight, then (i, j).  Every MST routine
/// here uses it, so their outputs agree exactly.
inline bool edge_less(double wa, std::size_t ia, std::size_t ja, double wb, std::size_t ib, std::size_t jb) noexcept {
  if (wa != wb) return wa < wb;
  if (ia != ib) return ia < ib;
  return ja < jb;
}
inline bool edge_less(const Edge& a, const Edge& b) noexcept {
  return edge_less(a.base_weight, a.i, a.j, b.base_weight, b.i, b.j);
}

struct MstResult {
  std::size_t n = 0;
  double alpha = 1.0;
  WeightKind weight_kind = WeightKind::Euclidean;
  std::vector<Edge> edges;  // sorted by (i, j)
  double total_weight = 0.0;
  std::vector<int> degrees;
};

/// Throws DuplicatePoints naming the first pair of equal points.
void require_distinct(std::span<const Point> points);

/// O(n^2) Prim over the implicit complete graph.
MstResult mst_prim_dense(std::span<const Point> points, const WeightSpec& spec);
/// Kruskal over all n(n-1)/2 edges with a path-compressing union-find.
MstResult mst_kruskal(std::span<const Point> points, const WeightSpec& spec);
/// Minimum over all n^(n-2) labelled trees (Pruefer enumeration); n <= 8.
MstResult brute_force_mst(std::span<const Point> points, const WeightSpec& spec);
/// Prim when n > 500, Kruskal otherwise.
MstResult compute_mst(std::span<const Point> points, const WeightSpec& spec);

/// Same tree, power weights and total recomputed for another exponent.
MstResult reweight(const MstResult& result, double alpha);

/// Assembles a result from tree index pairs: orders edges by (i, j), fills
/// lengths and weights, sums in that order.
MstResult make_result(std::span<const Point> points, const WeightSpec& spec,
                      const std::vector<std::pair<std::size_t, std::size_t>>& tree);

struct Verdict {
  bool pass = true;
  std::string witness;

  explicit operator bool() const noexcept { return pass; }
  static Verdict ok() { return {}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

/// Every non-tree edge must beat (in edge order) every edge on the tree path
/// between its endpoints.  Also checks that result is a spanning tree.
Verdict verify_mst_path_criterion(std::span<const Point> points, const WeightSpec& spec, const MstResult& result);

/// Each tree edge must be the least edge across the cut it defines.  O(n^3).
Verdict verify_cut_property(std::span<const Point> points, const WeightSpec& spec, const MstResult& result);

/// Recomputes the MST for each alpha with h fixed and compares edge sets.
Verdict alpha_invariance_check(std::span<const Point> points, const WeightSpec& spec,
                               const std::vector<double>& alphas);

int max_degree(const MstResult& result) noexcept;
std::map<int, std::size_t> degree_histogram(const MstResult& result);

/// Largest x in [0, 1] with sqrt(1 + x^2 - 2x cos(2 pi / K)) >= rho, by
/// bisection to 1e-12.  Throws InvalidK unless sqrt(2 - 2cos(2 pi / K)) < rho.
double sector_r0(double rho, int K);

struct SectorViolation {
  std::size_t vertex = 0;
  int sector = 0;
  double ratio = 0.0;
  double r0 = 0.0;
};

/// For every vertex, splits the incident tree edges into K angular sectors
/// and reports each consecutive length ratio (shorter / longer) above r0 + 1e-9.
std::vector<SectorViolation> sector_ratio_audit(std::span<const Point> points, const WeightSpec& spec,
                                                const MstResult& result, int K);

struct OneNodeDifference {
  double delta = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double mst_with = 0.0;
  double mst_without = 0.0;

  bool holds() const noexcept { return delta <= f1 + f2 + 1e-12 * (1.0 + mst_with); }
};

/// points holds n+1 nodes; compares the MST with and without points[j].
OneNodeDifference one_node_difference(std::span<const Point> points, std::size_t j, const WeightSpec& spec);

struct ScaleTranslateReport {
  Verdict scaling;
  Verdict translation;
  double scaled_ratio = 0.0;  // MST(aX) / (a^alpha MST(X))
  double translated = 0.0;    // MST(X + b)
  double translate_bound = 0.0;
};

/// Scaling part needs spec.homogeneous, translation part needs spec.h0;
/// throws SpecMissingProperty otherwise.
ScaleTranslateReport scale_translate_check(std::span<const Point> points, const WeightSpec& spec, double a, Point b);

/// {n, alpha, weight_kind, total_weight, edges: [[i, j, base_weight]], degrees}
std::string mst_to_json(const MstResult& result);
/// Header `i,j,euclid_len,base_weight,power_weight`.
void write_edges_csv(std::ostream& os, const MstResult& result);

}  // namespace locmst
