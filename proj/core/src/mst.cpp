#include "locmst/mst.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "locmst/error.hpp"
#include "locmst/sampling.hpp"

namespace locmst {

namespace {

using TreePairs = std::vector<std::pair<std::size_t, std::size_t>>;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string pair_str(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

template <WeightKind Kind>
TreePairs prim_tree(const BoundWeights& w) {
  const std::size_t n = w.size();
  TreePairs tree;
  if (n <= 1) return tree;
  tree.reserve(n - 1);
  std::vector<double> best_w(n, kInf);
  std::vector<std::size_t> best_a(n, 0);
  std::vector<std::size_t> best_b(n, 0);
  std::vector<std::size_t> rest(n - 1);
  std::iota(rest.begin(), rest.end(), std::size_t{1});

  std::size_t current = 0;
  while (!rest.empty()) {
    std::size_t arg = 0;
    for (std::size_t k = 0; k < rest.size(); ++k) {
      const std::size_t v = rest[k];
      const double wv = w.at<Kind>(current, v);
      const std::size_t a = std::min(current, v);
      const std::size_t b = std::max(current, v);
      if (edge_less(wv, a, b, best_w[v], best_a[v], best_b[v])) {
        best_w[v] = wv;
        best_a[v] = a;
        best_b[v] = b;
      }
      const std::size_t m = rest[arg];
      if (k != arg && edge_less(best_w[v], best_a[v], best_b[v], best_w[m], best_a[m], best_b[m])) arg = k;
    }
    const std::size_t chosen = rest[arg];
    tree.emplace_back(best_a[chosen], best_b[chosen]);
    rest[arg] = rest.back();
    rest.pop_back();
    current = chosen;
  }
  return tree;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

std::vector<std::vector<std::size_t>> adjacency(std::size_t n, const MstResult& r) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : r.edges) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  return adj;
}

// n-1 edges with valid distinct endpoints forming a connected graph.
Verdict check_spanning(std::size_t n, const MstResult& r) {
  const std::size_t expect = n == 0 ? 0 : n - 1;
  if (r.edges.size() != expect) {
    return Verdict::fail("expected " + std::to_string(expect) + " edges, got " + std::to_string(r.edges.size()));
  }
  UnionFind uf(n);
  for (const auto& e : r.edges) {
    if (e.i >= n || e.j >= n || e.i == e.j) return Verdict::fail("invalid edge " + pair_str(e.i, e.j));
    if (!uf.unite(e.i, e.j)) return Verdict::fail("edge " + pair_str(e.i, e.j) + " closes a cycle");
  }
  return Verdict::ok();
}

}  // namespace

void require_distinct(std::span<const Point> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].x != points[b].x) return points[a].x < points[b].x;
    if (points[a].y != points[b].y) return points[a].y < points[b].y;
    return a < b;
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (points[order[k]] == points[order[k - 1]]) {
      throw Error(ErrorCode::DuplicatePoints,
                  "points " + std::to_string(order[k - 1]) + " and " + std::to_string(order[k]) + " coincide");
    }
  }
}

MstResult make_result(std::span<const Point> points, const WeightSpec& spec, const TreePairs& tree) {
  MstResult r;
  r.n = points.size();
  r.alpha = spec.alpha;
  r.weight_kind = spec.kind;
  r.degrees.assign(points.size(), 0);
  const BoundWeights w(spec, points);
  r.edges.reserve(tree.size());
  for (auto [a, b] : tree) {
    if (a > b) std::swap(a, b);
    Edge e;
    e.i = a;
    e.j = b;
    e.euclid_len = dist(points[a], points[b]);
    e.base_weight = w(a, b);
    e.power_weight = power_weight(e.base_weight, spec.alpha);
    r.edges.push_back(e);
    ++r.degrees[a];
    ++r.degrees[b];
  }
  std::sort(r.edges.begin(), r.edges.end(),
            [](const Edge& x, const Edge& y) { return x.i != y.i ? x.i < y.i : x.j < y.j; });
  for (const auto& e : r.edges) r.total_weight += e.power_weight;
  return r;
}

MstResult reweight(const MstResult& result, double alpha) {
  MstResult r = result;
  r.alpha = alpha;
  r.total_weight = 0.0;
  for (auto& e : r.edges) {
    e.power_weight = power_weight(e.base_weight, alpha);
    r.total_weight += e.power_weight;
  }
  return r;
}

MstResult mst_prim_dense(std::span<const Point> points, const WeightSpec& spec) {
  require_distinct(points);
  const BoundWeights w(spec, points);
  TreePairs tree;
  switch (spec.kind) {
    case WeightKind::Euclidean:
      tree = prim_tree<WeightKind::Euclidean>(w);
      break;
    case WeightKind::Hotspot:
      tree = prim_tree<WeightKind::Hotspot>(w);
      break;
    case WeightKind::Shifted:
      tree = prim_tree<WeightKind::Shifted>(w);
      break;
  }
  return make_result(points, spec, tree);
}

MstResult mst_kruskal(std::span<const Point> points, const WeightSpec& spec) {
  require_distinct(points);
  const std::size_t n = points.size();
  const BoundWeights w(spec, points);
  struct Cand {
    double w;
    std::size_t i;
    std::size_t j;
  };
  std::vector<Cand> cands;
  cands.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) cands.push_back({w(i, j), i, j});
  }
  std::sort(cands.begin(), cands.end(),
            [](const Cand& a, const Cand& b) { return edge_less(a.w, a.i, a.j, b.w, b.i, b.j); });
  UnionFind uf(n);
  TreePairs tree;
  for (const auto& c : cands) {
    if (uf.unite(c.i, c.j)) {
      tree.emplace_back(c.i, c.j);
      if (tree.size() + 1 == n) break;
    }
  }
  return make_result(points, spec, tree);
}

MstResult brute_force_mst(std::span<const Point> points, const WeightSpec& spec) {
  const std::size_t n = points.size();
  if (n > 8) throw Error(ErrorCode::TooLarge, "brute force MST supports n <= 8, got " + std::to_string(n));
  require_distinct(points);
  if (n <= 1) return make_result(points, spec, {});
  if (n == 2) return make_result(points, spec, {{0, 1}});

  const BoundWeights w(spec, points);
  std::vector<double> base(n * n, 0.0);
  std::vector<double> pw(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      base[i * n + j] = base[j * n + i] = w(i, j);
      pw[i * n + j] = pw[j * n + i] = power_weight(base[i * n + j], spec.alpha);
    }
  }
  // Descending edge keys; among equal totals the smallest such sequence is the
  // minimum spanning tree for the strict edge order.
  auto keys_desc = [&](const TreePairs& t) {
    std::vector<std::tuple<double, std::size_t, std::size_t>> k;
    for (auto [a, b] : t) k.emplace_back(base[a * n + b], std::min(a, b), std::max(a, b));
    std::sort(k.begin(), k.end(), std::greater<>());
    return k;
  };

  const std::size_t len = n - 2;
  std::vector<std::size_t> seq(len, 0);
  std::vector<int> deg(n);
  TreePairs tree, best_tree;
  double best_total = kInf;
  while (true) {
    std::fill(deg.begin(), deg.end(), 1);
    for (std::size_t v : seq) ++deg[v];
    tree.clear();
    for (std::size_t v : seq) {
      std::size_t leaf = 0;
      while (deg[leaf] != 1) ++leaf;
      tree.emplace_back(leaf, v);
      --deg[leaf];
      --deg[v];
    }
    std::size_t u = n, v = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (deg[k] == 1) (u == n ? u : v) = k;
    }
    tree.emplace_back(u, v);

    double total = 0.0;
    for (auto [a, b] : tree) total += pw[a * n + b];
    const double scale = std::max(std::abs(total), std::abs(best_total == kInf ? 0.0 : best_total));
    if (best_total == kInf || total < best_total - 1e-12 * scale) {
      best_total = total;
      best_tree = tree;
    } else if (total <= best_total + 1e-12 * scale && keys_desc(tree) < keys_desc(best_tree)) {
      best_total = std::min(best_total, total);
      best_tree = tree;
    }

    std::size_t pos = 0;
    while (pos < len && ++seq[pos] == n) seq[pos++] = 0;
    if (pos == len) break;
  }
  return make_result(points, spec, best_tree);
}

MstResult compute_mst(std::span<const Point> points, const WeightSpec& spec) {
  return points.size() > 500 ? mst_prim_dense(points, spec) : mst_kruskal(points, spec);
}

Verdict verify_mst_path_criterion(std::span<const Point> points, const WeightSpec& spec, const MstResult& result) {
  const std::size_t n = points.size();
  if (Verdict v = check_spanning(n, result); !v) return v;
  if (n <= 2) return Verdict::ok();
  const BoundWeights w(spec, points);
  const auto adj = adjacency(n, result);

  struct Key {
    double w = -kInf;
    std::size_t i = 0;
    std::size_t j = 0;
  };
  std::vector<Key> path_max(n);
  std::vector<std::size_t> parent(n);
  std::vector<std::size_t> stack;
  std::vector<char> is_tree(n * n, 0);
  for (const auto& e : result.edges) is_tree[e.i * n + e.j] = is_tree[e.j * n + e.i] = 1;

  for (std::size_t s = 0; s < n; ++s) {
    path_max[s] = Key{};
    parent[s] = s;
    stack.assign(1, s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : adj[u]) {
        if (v == parent[u] && u != s) continue;
        if (v == s) continue;
        parent[v] = u;
        const Key here{w(u, v), std::min(u, v), std::max(u, v)};
        const Key& up = path_max[u];
        path_max[v] = edge_less(up.w, up.i, up.j, here.w, here.i, here.j) ? here : up;
        stack.push_back(v);
      }
    }
    for (std::size_t t = s + 1; t < n; ++t) {
      if (is_tree[s * n + t]) continue;
      const double wst = w(s, t);
      const Key& m = path_max[t];
      if (!edge_less(m.w, m.i, m.j, wst, s, t)) {
        std::ostringstream os;
        os << "non-tree edge " << pair_str(s, t) << " (h=" << format_double(wst) << ") is not heavier than tree edge "
           << pair_str(m.i, m.j) << " (h=" << format_double(m.w) << ") on its tree path";
        return Verdict::fail(os.str());
      }
    }
  }
  return Verdict::ok();
}

Verdict verify_cut_property(std::span<const Point> points, const WeightSpec& spec, const MstResult& result) {
  const std::size_t n = points.size();
  if (Verdict v = check_spanning(n, result); !v) return v;
  const BoundWeights w(spec, points);
  std::vector<char> side(n);
  std::vector<std::size_t> stack;
  auto adj = adjacency(n, result);
  for (const auto& e : result.edges) {
    std::fill(side.begin(), side.end(), 0);
    side[e.i] = 1;
    stack.assign(1, e.i);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : adj[u]) {
        if (side[v] || (u == e.i && v == e.j)) continue;
        side[v] = 1;
        stack.push_back(v);
      }
    }
    const double we = w(e.i, e.j);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (side[a] == side[b] || (a == e.i && b == e.j)) continue;
        const double wab = w(a, b);
        if (!edge_less(we, e.i, e.j, wab, a, b)) {
          return Verdict::fail("edge " + pair_str(a, b) + " beats tree edge " + pair_str(e.i, e.j) + " across its cut");
        }
      }
    }
  }
  return Verdict::ok();
}

Verdict alpha_invariance_check(std::span<const Point> points, const WeightSpec& spec, const std::vector<double>& alphas) {
  if (alphas.empty()) return Verdict::ok();
  for (double a : alphas) {
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "alphas must be positive");
  }
  auto pairs = [](const MstResult& r) {
    TreePairs p;
    for (const auto& e : r.edges) p.emplace_back(e.i, e.j);
    return p;
  };
  const TreePairs ref = pairs(compute_mst(points, spec.with_alpha(alphas.front())));
  for (std::size_t k = 1; k < alphas.size(); ++k) {
    if (pairs(compute_mst(points, spec.with_alpha(alphas[k]))) != ref) {
      return Verdict::fail("edge set at alpha=" + format_double(alphas[k]) + " differs from alpha=" +
                           format_double(alphas.front()));
    }
  }
  return Verdict::ok();
}

int max_degree(const MstResult& result) noexcept {
  int m = 0;
  for (int d : result.degrees) m = std::max(m, d);
  return m;
}

std::map<int, std::size_t> degree_histogram(const MstResult& result) {
  std::map<int, std::size_t> h;
  for (int d : result.degrees) ++h[d];
  return h;
}

double sector_r0(double rho, int K) {
  if (K < 1) throw Error(ErrorCode::InvalidK, "K must be positive");
  const double c = std::cos(2.0 * std::numbers::pi / K);
  auto g = [c](double x) { return std::sqrt(1.0 + x * x - 2.0 * x * c); };
  // K = 6 with rho = 1 sits exactly on the boundary; rounding in cos must not admit it.
  if (!(g(1.0) < rho - 1e-12)) {
    throw Error(ErrorCode::InvalidK, "sqrt(2 - 2cos(2pi/K)) = " + format_double(g(1.0)) + " is not below c1/c2 = " +
                                         format_double(rho) + " for K=" + std::to_string(K));
  }
  // g >= rho on [0, r0] and g < rho on (r0, 1].
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) >= rho ? lo : hi) = mid;
  }
  return lo;
}

std::vector<SectorViolation> sector_ratio_audit(std::span<const Point> points, const WeightSpec& spec,
                                                const MstResult& result, int K) {
  const double r0 = sector_r0(spec.c1 / spec.c2, K);
  const double width = 2.0 * std::numbers::pi / K;
  const auto adj = adjacency(points.size(), result);
  std::vector<SectorViolation> out;
  std::vector<std::vector<double>> lens(static_cast<std::size_t>(K));
  for (std::size_t v = 0; v < points.size(); ++v) {
    if (adj[v].size() < 2) continue;
    for (auto& l : lens) l.clear();
    for (std::size_t u : adj[v]) {
      double ang = std::atan2(points[u].y - points[v].y, points[u].x - points[v].x);
      if (ang < 0.0) ang += 2.0 * std::numbers::pi;
      const int s = std::min(K - 1, static_cast<int>(ang / width));
      lens[static_cast<std::size_t>(s)].push_back(dist(points[u], points[v]));
    }
    for (int s = 0; s < K; ++s) {
      auto& l = lens[static_cast<std::size_t>(s)];
      std::sort(l.begin(), l.end(), std::greater<>());
      for (std::size_t k = 1; k < l.size(); ++k) {
        const double ratio = l[k] / l[k - 1];
        if (ratio > r0 + 1e-9) out.push_back({v, s, ratio, r0});
      }
    }
  }
  return out;
}

OneNodeDifference one_node_difference(std::span<const Point> points, std::size_t j, const WeightSpec& spec) {
  if (points.size() < 3) throw Error(ErrorCode::InvalidArgument, "one-node difference needs n >= 2 remaining nodes");
  if (j >= points.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(j) + " with " + std::to_string(points.size()) +
                                                " points");
  }
  const MstResult full = compute_mst(points, spec);
  std::vector<Point> rest;
  rest.reserve(points.size() - 1);
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (k != j) rest.push_back(points[k]);
  }
  const MstResult drop = compute_mst(rest, spec);

  OneNodeDifference out;
  out.mst_with = full.total_weight;
  out.mst_without = drop.total_weight;
  out.delta = std::abs(full.total_weight - drop.total_weight);
  double nearest = kInf;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (k != j) nearest = std::min(nearest, dist(points[j], points[k]));
  }
  out.f1 = std::pow(spec.c2, spec.alpha) * power_weight(nearest, spec.alpha);
  double sum = 0.0;
  for (const auto& e : full.edges) {
    if (e.i == j || e.j == j) sum += power_weight(e.euclid_len, spec.alpha);
  }
  out.f2 = std::pow(2.0 * spec.c2, spec.alpha) * sum;
  return out;
}

ScaleTranslateReport scale_translate_check(std::span<const Point> points, const WeightSpec& spec, double a, Point b) {
  if (!spec.homogeneous) {
    throw Error(ErrorCode::SpecMissingProperty, std::string(to_string(spec.kind)) + " weight is not homogeneous");
  }
  if (!spec.h0) {
    throw Error(ErrorCode::SpecMissingProperty, std::string(to_string(spec.kind)) + " weight has no translation constant");
  }
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  ScaleTranslateReport rep;
  const MstResult base = compute_mst(points, spec);

  std::vector<Point> moved(points.begin(), points.end());
  for (auto& p : moved) p = a * p;
  const MstResult scaled = compute_mst(moved, spec);
  const double expect = std::pow(a, spec.alpha) * base.total_weight;
  rep.scaled_ratio = expect > 0.0 ? scaled.total_weight / expect : 1.0;
  bool same_edges = scaled.edges.size() == base.edges.size();
  for (std::size_t k = 0; same_edges && k < base.edges.size(); ++k) {
    same_edges = scaled.edges[k].i == base.edges[k].i && scaled.edges[k].j == base.edges[k].j;
  }
  if (!same_edges) {
    rep.scaling = Verdict::fail("edge set changed under scaling by " + format_double(a));
  } else if (std::abs(rep.scaled_ratio - 1.0) > 1e-10) {
    rep.scaling = Verdict::fail("MST(aX) / (a^alpha MST(X)) = " + format_double(rep.scaled_ratio));
  }

  for (std::size_t k = 0; k < moved.size(); ++k) moved[k] = points[k] + b;
  rep.translated = compute_mst(moved, spec).total_weight;
  rep.translate_bound = std::pow(*spec.h0, spec.alpha) * base.total_weight + 1e-10;
  if (rep.translated > rep.translate_bound) {
    rep.translation = Verdict::fail("MST(X+b) = " + format_double(rep.translated) + " exceeds h0^alpha MST(X) = " +
                                    format_double(rep.translate_bound));
  }
  return rep;
}

std::string mst_to_json(const MstResult& result) {
  nlohmann::json j;
  j["n"] = result.n;
  j["alpha"] = result.alpha;
  j["weight_kind"] = std::string(to_string(result.weight_kind));
  j["total_weight"] = result.total_weight;
  j["edges"] = nlohmann::json::array();
  for (const auto& e : result.edges) j["edges"].push_back(nlohmann::json::array({e.i, e.j, e.base_weight}));
  j["degrees"] = result.degrees;
  return j.dump();
}

void write_edges_csv(std::ostream& os, const MstResult& result) {
  os << "i,j,euclid_len,base_weight,power_weight\n";
  for (const auto& e : result.edges) {
    os << e.i << ',' << e.j << ',' << format_double(e.euclid_len) << ',' << format_double(e.base_weight) << ','
       << format_double(e.power_weight) << '\n';
  }
}

}  // namespace locmst
