#include "commands.hpp"

#include <charconv>

#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "locmst/bounds.hpp"
#include "locmst/error.hpp"
#include "locmst/experiments.hpp"
#include "locmst/mst.hpp"
#include "locmst/random.hpp"
#include "locmst/report.hpp"
#include "locmst/sampling.hpp"
#include "locmst/version.hpp"
#include "locmst/weights.hpp"

namespace locmst::cli {

namespace {

using ojson = nlohmann::ordered_json;

/// Invariant failure surfaced by a subcommand; maps to exit code 1.
struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WeightOpts {
  std::string kind = "euclidean";
  double lambda = 0.5;
  int K = 2;
  int levels = 10;
  double c1 = 0.0;  // 0 selects c2 / (16K)
  double c2 = 1.0;
};

void add_weight_options(CLI::App* sub, WeightOpts& w) {
  sub->add_option("--weight", w.kind, "euclidean | hotspot | shifted")
      ->check(CLI::IsMember({"euclidean", "hotspot", "shifted"}));
  sub->add_option("--lambda", w.lambda, "shifted metric coefficient");
  sub->add_option("--K", w.K, "hotspot degree parameter");
  sub->add_option("--levels", w.levels, "hotspot layout levels");
  sub->add_option("--c1", w.c1, "hotspot weight near central cells (0: c2/(16K))");
  sub->add_option("--c2", w.c2, "hotspot weight elsewhere");
}

WeightSpec make_spec(const WeightOpts& w, double alpha) {
  switch (parse_weight_kind(w.kind)) {
    case WeightKind::Euclidean:
      return WeightSpec::euclidean(alpha);
    case WeightKind::Shifted:
      return WeightSpec::shifted(alpha, w.lambda);
    case WeightKind::Hotspot: {
      auto layout = std::make_shared<const HotspotLayout>(build_hotspot_layout(w.K, w.levels));
      std::optional<double> c1;
      if (w.c1 != 0.0) c1 = w.c1;
      return WeightSpec::hotspot(alpha, std::move(layout), w.c2, c1);
    }
  }
  return WeightSpec::euclidean(alpha);
}

Density make_density(const std::string& name) {
  if (name == "uniform") return Density::uniform();
  // 1/2 on the lower-left quarter, 7/6 elsewhere.
  if (name == "split") return Density::piecewise(7.0 / 6.0, {{{0.0, 0.0, 0.5, 0.5}, 0.5}});
  throw Error(ErrorCode::InvalidArgument, "unknown density '" + name + "'");
}

Process make_process(const std::string& name) {
  if (name == "binomial") return Process::Binomial;
  if (name == "poisson") return Process::Poisson;
  throw Error(ErrorCode::InvalidArgument, "unknown process '" + name + "'");
}

// Every option of the subcommand, as given or defaulted.
// Option text as a JSON scalar: numbers and booleans keep their type.
ojson scalar(const std::string& text) {
  if (text == "true" || text == "false") return text == "true";
  std::int64_t i = 0;
  auto [pi, ei] = std::from_chars(text.data(), text.data() + text.size(), i);
  if (ei == std::errc() && pi == text.data() + text.size() && !text.empty()) return i;
  double d = 0.0;
  auto [pd, ed] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ed == std::errc() && pd == text.data() + text.size() && !text.empty()) return d;
  return text;
}

ojson collect_config(const CLI::App* sub, int threads) {
  ojson j;
  for (const CLI::Option* o : sub->get_options()) {
    if (o->get_lnames().empty()) continue;
    const std::string& name = o->get_lnames().front();
    if (name == "help") continue;
    const auto res = o->reduced_results();
    if (o->get_type_size() == 0) {
      j[name] = o->count() > 0;
    } else if (res.empty()) {
      j[name] = scalar(o->get_default_str());
    } else if (res.size() == 1 && o->get_expected_max() <= 1) {
      j[name] = scalar(res.front());
    } else {
      ojson list = ojson::array();
      for (const auto& r : res) list.push_back(scalar(r));
      j[name] = list;
    }
  }
  j["threads"] = threads;
  return j;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorCode::InvalidArgument, "cannot open output file '" + path + "'");
      os_ = file_.get();
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open output file '" + path + "'");
  f << content;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = spec.find(':', start);
    const std::string tok = spec.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "alpha grid must look like a:b:step, got '" + spec + "'");
    }
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw Error(ErrorCode::InvalidArgument, "alpha grid must look like a:b:step with a <= b and step > 0");
  }
  const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
  std::vector<double> grid;
  for (long k = 0; k < count; ++k) grid.push_back(parts[0] + static_cast<double>(k) * parts[2]);
  return grid;
}

Provenance provenance(const std::string& command, const ojson& config) {
  return {command, config.dump(), kVersion};
}

// ------------------------------------------------------------------ bounds

struct BoundsOpts {
  double alpha = 1.0;
  std::string alpha_grid;
  double eps1 = 1.0, eps2 = 1.0, c1 = 1.0, c2 = 1.0;
  double a_max = 10.0;
  std::string plot, out;
};

int cmd_bounds(const BoundsOpts& o, const ojson& config, std::ostream& out) {
  const std::vector<double> alphas = o.alpha_grid.empty() ? std::vector<double>{o.alpha} : parse_grid(o.alpha_grid);
  OptimizerOptions opt;
  opt.a_max = o.a_max;
  ojson results = ojson::array();
  Series low{"beta_low", {}, {}}, up{"beta_up", {}, {}};
  for (double a : alphas) {
    BoundsInput in{a, o.eps1, o.eps2, o.c1, o.c2};
    const BoundsResult r = compute_bounds(in, opt);
    results.push_back(ojson::parse(bounds_to_json(r)));
    low.x.push_back(a);
    low.y.push_back(r.low.value);
    up.x.push_back(a);
    up.y.push_back(r.up.value);
  }
  const ojson payload = o.alpha_grid.empty() ? results.front() : results;
  Output sink(o.out, out);
  *sink << wrap_json(provenance("bounds", config), payload.dump()) << '\n';
  if (!o.plot.empty()) {
    Panel pl{"beta_low(alpha)", "alpha", "beta_low", {low}, false, false};
    Panel pu{"beta_up(alpha)", "alpha", "beta_up", {up}, false, false};
    write_file(o.plot, render_svg({pl, pu}));
  }
  return kExitOk;
}

// ------------------------------------------------------------------ sample

struct SampleOpts {
  std::int64_t n = 100;
  std::string process = "binomial", density = "uniform", format = "csv", out;
  std::uint64_t seed = 1;
};

int cmd_sample(const SampleOpts& o, const ojson& config, std::ostream& out) {
  const Density f = make_density(o.density);
  const auto pts = replicate_points(o.n, f, make_process(o.process), o.seed);
  Output sink(o.out, out);
  if (o.format == "json") {
    std::ostringstream arr;
    write_points_json(arr, pts);
    *sink << wrap_json(provenance("sample", config), arr.str()) << '\n';
  } else {
    write_csv_provenance(*sink, provenance("sample", config));
    write_points_csv(*sink, pts);
  }
  return kExitOk;
}

// --------------------------------------------------------------------- mst

struct MstOpts {
  std::string points_file;
  std::int64_t n = 100;
  std::uint64_t seed = 1;
  double alpha = 1.0;
  std::string algorithm = "auto", format = "json", out;
  bool verify = false;
  WeightOpts weight;
};

int cmd_mst(const MstOpts& o, const ojson& config, std::ostream& out, std::ostream& err) {
  std::vector<Point> pts;
  if (!o.points_file.empty()) {
    std::ifstream in(o.points_file);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + o.points_file + "'");
    pts = read_points_csv(in);
  } else {
    pts = sample_binomial(o.n, Density::uniform(), o.seed).points;
  }
  const WeightSpec spec = make_spec(o.weight, o.alpha);
  MstResult r;
  if (o.algorithm == "prim") r = mst_prim_dense(pts, spec);
  else if (o.algorithm == "kruskal") r = mst_kruskal(pts, spec);
  else if (o.algorithm == "brute") r = brute_force_mst(pts, spec);
  else r = compute_mst(pts, spec);
  Output sink(o.out, out);
  if (o.format == "csv") {
    write_csv_provenance(*sink, provenance("mst", config));
    write_edges_csv(*sink, r);
  } else {
    *sink << wrap_json(provenance("mst", config), mst_to_json(r)) << '\n';
  }
  if (o.verify) {
    if (Verdict v = verify_mst_path_criterion(pts, spec, r); !v) throw InvariantFailure("path criterion: " + v.witness);
    err << "path criterion: PASS\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------ layout

struct LayoutOpts {
  int K = 2, levels = 10;
  std::string out;
};

int cmd_layout(const LayoutOpts& o, const ojson& config, std::ostream& out) {
  const HotspotLayout layout = build_hotspot_layout(o.K, o.levels);
  Output sink(o.out, out);
  *sink << wrap_json(provenance("layout", config), layout_to_json(layout)) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
  std::int64_t n = 1024;
  std::vector<double> alphas{1.0};
  std::int64_t reps = 10;
  std::uint64_t seed = 1;
  std::string density = "uniform", process = "binomial", out;
  WeightOpts weight;
};

int cmd_simulate(const SimulateOpts& o, const ojson& config, int threads, std::ostream& out) {
  SimulateConfig cfg;
  cfg.n = o.n;
  cfg.alphas = o.alphas;
  cfg.reps = o.reps;
  cfg.seed = o.seed;
  cfg.spec = make_spec(o.weight, o.alphas.front());
  cfg.density = make_density(o.density);
  cfg.process = make_process(o.process);
  cfg.threads = threads;
  const auto rows = simulate(cfg);
  Output sink(o.out, out);
  write_csv_provenance(*sink, provenance("simulate", config));
  write_records_csv(*sink, rows);
  return kExitOk;
}

// ------------------------------------------------------- scaling, variance

struct ScalingOpts {
  std::vector<std::int64_t> n_list{256, 512, 1024, 2048, 4096, 8192};
  std::vector<double> alphas{1.0};
  std::int64_t reps = 0;  // 0: 30 for scaling, 200 for variance
  std::uint64_t seed = 1;
  std::string density = "uniform", process = "binomial", out, plot;
  WeightOpts weight;
};

int cmd_scaling(const ScalingOpts& o, bool variance, const ojson& config, int threads, std::ostream& out,
                std::ostream& err) {
  ScalingConfig cfg;
  cfg.n_list = o.n_list;
  cfg.alphas = o.alphas;
  cfg.reps = o.reps > 0 ? o.reps : (variance ? 200 : 30);
  cfg.seed = o.seed;
  cfg.spec = make_spec(o.weight, o.alphas.front());
  cfg.density = make_density(o.density);
  cfg.process = make_process(o.process);
  cfg.threads = threads;
  const auto fits = variance ? variance_experiment(cfg) : scaling_experiment(cfg);

  ojson payload = ojson::array();
  for (const auto& f : fits) payload.push_back(ojson::parse(scaling_fit_to_json(f)));
  const std::string name = variance ? "variance" : "scaling";
  Output sink(o.out, out);
  *sink << wrap_json(provenance(name, config), payload.dump()) << '\n';

  if (!o.plot.empty()) {
    Panel means{"mean MST weight", "n", "mean", {}, true, true};
    Panel vars{"MST weight variance", "n", "variance", {}, true, true};
    for (const auto& f : fits) {
      Series m{"alpha=" + format_double(f.alpha), {}, {}}, lo{"lower corridor", {}, {}}, hi{"upper corridor", {}, {}};
      Series v{"alpha=" + format_double(f.alpha), {}, {}};
      for (const auto& p : f.points) {
        const double n = static_cast<double>(p.n);
        m.x.push_back(n), m.y.push_back(p.mean);
        lo.x.push_back(n), lo.y.push_back(p.corridor_low);
        hi.x.push_back(n), hi.y.push_back(p.corridor_high);
        v.x.push_back(n), v.y.push_back(p.variance);
      }
      if (fits.size() == 1) {
        means.series = {m, lo, hi};
      } else {
        means.series.push_back(m);
      }
      vars.series.push_back(v);
    }
    write_file(o.plot, render_svg({means, vars}));
  }
  for (const auto& f : fits) {
    if (!f.corridor_ok()) {
      throw InvariantFailure("mean outside the [c1^a beta_low, c2^a beta_up] n^{1-a/2} corridor at alpha=" +
                             format_double(f.alpha));
    }
    err << name << " alpha=" << format_double(f.alpha) << ": mean slope " << format_double(f.mean_fit.slope)
        << " +- " << format_double(f.mean_fit.slope_se) << ", variance slope "
        << format_double(f.variance_fit.slope) << " +- " << format_double(f.variance_fit.slope_se) << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------------- prop1

struct Prop1Opts {
  int K = 2, level = 1, levels = 10;
  std::string mode = "planted", density = "adapted", out;
  std::int64_t reps = 0;
  std::uint64_t seed = 1;
  double c1 = 0.0, c2 = 1.0;
};

int cmd_prop1(const Prop1Opts& o, const ojson& config, int threads, std::ostream& out, std::ostream& err) {
  WeightOpts w;
  w.kind = "hotspot";
  w.K = o.K;
  w.levels = std::max(o.levels, o.level);
  w.c1 = o.c1;
  w.c2 = o.c2;
  const WeightSpec spec = make_spec(w, 1.0);
  Prop1Options opt;
  opt.level = o.level;
  opt.seed = o.seed;
  opt.mode = o.mode == "mc" ? Prop1Mode::MonteCarlo : Prop1Mode::Planted;
  opt.adapted_density = o.density == "adapted";
  opt.threads = threads;
  opt.reps = o.reps;
  if (opt.reps == 0) {
    if (opt.mode == Prop1Mode::Planted) {
      opt.reps = 5;
    } else {
      // Enough replicates to expect about 20 occurrences, capped.
      const Density f = opt.adapted_density ? prop1_adapted_density(*spec.layout, o.level) : Density::uniform();
      const double log_p = prop1_log_event_probability(*spec.layout, o.level, f);
      const double want = std::ceil(20.0 * std::exp(-log_p));
      opt.reps = std::isfinite(want) && want < 1e6 ? static_cast<std::int64_t>(want) : 1000000;
    }
  }
  const Prop1Report r = prop1_demo(spec, opt);
  ojson j;
  j["K"] = r.K;
  j["level"] = r.level;
  j["n_i"] = r.n_i;
  j["mode"] = opt.mode == Prop1Mode::Planted ? "planted" : "mc";
  j["density"] = r.density;
  j["reps"] = r.reps;
  j["occurrences"] = r.occurrences;
  j["frequency"] = r.frequency;
  j["star_failures"] = r.star_failures;
  j["min_center_degree"] = r.min_center_degree;
  j["required_center_degree"] = 4 * r.K - 4;
  j["log_event_probability"] = r.log_event_probability;
  j["event_probability"] = std::exp(r.log_event_probability);
  j["log_floor"] = r.log_floor;
  j["eps1"] = r.eps1;
  j["eps2"] = r.eps2;
  if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
  Output sink(o.out, out);
  *sink << wrap_json(provenance("prop1", config), j.dump()) << '\n';
  if (!r.ok()) throw InvariantFailure("star property failed: " + r.first_failure);
  err << "prop1: " << r.occurrences << " occurrences in " << r.reps << " replicates, star property on all\n";
  return kExitOk;
}

// ------------------------------------------------------- good-square probe

struct ProbeOpts {
  int g = 5;
  std::int64_t n = 10000;
  std::vector<double> alphas{1.0};
  std::uint64_t seed = 1;
  std::int64_t configs = 1;
  bool exact_center = false;
  std::string out;
};

int cmd_probe(const ProbeOpts& o, const ojson& config, int threads, std::ostream& out, std::ostream& err) {
  if (o.configs < 1) throw Error(ErrorCode::InvalidArgument, "configs must be >= 1");
  std::vector<GoodSquareReport> reps(static_cast<std::size_t>(o.configs));
  parallel_for(reps.size(), resolve_threads(threads), [&](std::size_t k) {
    reps[k] = good_square_probe(o.g, o.n, o.alphas, derive_seed(o.seed, 0, k), o.exact_center);
  });
  ojson arr = ojson::array();
  std::string failure;
  for (const auto& r : reps) {
    ojson j;
    j["seed"] = r.seed;
    j["cell_side"] = r.side;
    j["geometry_ok"] = r.geometry_ok;
    j["single_edge"] = r.single_edge;
    j["v_min"] = r.v_min;
    j["outcomes"] = ojson::array();
    for (const auto& oc : r.outcomes) {
      j["outcomes"].push_back(
          {{"alpha", oc.alpha}, {"increment", oc.increment}, {"lower", oc.lower}, {"upper", oc.upper}, {"within", oc.within}});
    }
    if (!r.witness.empty()) j["witness"] = r.witness;
    arr.push_back(j);
    if (!r.ok() && failure.empty()) failure = "seed " + std::to_string(r.seed) + ": " + r.witness;
  }
  ojson payload{{"g", o.g}, {"n", o.n}, {"configs", arr}};
  Output sink(o.out, out);
  *sink << wrap_json(provenance("probe-good-square", config), payload.dump()) << '\n';
  if (!failure.empty()) throw InvariantFailure("good-square probe failed: " + failure);
  err << "probe-good-square: single-edge delta and increment bounds hold on " << reps.size() << " configuration(s)\n";
  return kExitOk;
}

// --------------------------------------------------------------- invariance

struct InvarianceOpts {
  std::int64_t n = 50;
  std::vector<double> alphas{0.5, 1.0, 2.0, 3.0};
  std::int64_t reps = 100;
  std::vector<std::string> weights{"euclidean", "hotspot", "shifted"};
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_invariance(const InvarianceOpts& o, const ojson& config, int threads, std::ostream& out, std::ostream& err) {
  if (o.n < 1 || o.reps < 1) throw Error(ErrorCode::InvalidArgument, "n and reps must be >= 1");
  ojson per_kind = ojson::object();
  std::string failure;
  for (const auto& name : o.weights) {
    WeightOpts w;
    w.kind = name;
    const WeightSpec spec = make_spec(w, o.alphas.front());
    const auto kind = static_cast<std::uint64_t>(spec.kind);
    std::vector<Verdict> verdicts(static_cast<std::size_t>(o.reps));
    parallel_for(verdicts.size(), resolve_threads(threads), [&](std::size_t r) {
      const std::uint64_t seed = derive_seed(o.seed, kind, r);
      const auto pts = spec.kind == WeightKind::Hotspot
                           ? sample_hotspot_mixture(static_cast<std::size_t>(o.n), *spec.layout, seed)
                           : sample_binomial(o.n, Density::uniform(), seed).points;
      verdicts[r] = alpha_invariance_check(pts, spec, o.alphas);
    });
    std::int64_t mismatches = 0;
    for (std::size_t r = 0; r < verdicts.size(); ++r) {
      if (verdicts[r].pass) continue;
      ++mismatches;
      if (failure.empty()) failure = name + " replicate " + std::to_string(r) + ": " + verdicts[r].witness;
    }
    per_kind[name] = {{"instances", o.reps}, {"mismatches", mismatches}};
  }
  Output sink(o.out, out);
  *sink << wrap_json(provenance("invariance", config), per_kind.dump()) << '\n';
  if (!failure.empty()) throw InvariantFailure("alpha invariance failed: " + failure);
  err << "invariance: identical edge sets across all alphas\n";
  return kExitOk;
}

int config_exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::EquivalenceViolation:
    case ErrorCode::InternalError:
      return kExitInvariant;
    default:
      return kExitConfig;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Location-dependent power-weighted minimum spanning trees", "locmst"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: LOCMST_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  BoundsOpts bo;
  auto* bounds = app.add_subcommand("bounds", "beta_low / beta_up and optimizing A");
  bounds->add_option("--alpha", bo.alpha, "edge weight exponent");
  bounds->add_option("--alpha-grid", bo.alpha_grid, "a:b:step grid of exponents");
  bounds->add_option("--eps1", bo.eps1, "density lower bound");
  bounds->add_option("--eps2", bo.eps2, "density upper bound");
  bounds->add_option("--c1", bo.c1, "weight lower constant");
  bounds->add_option("--c2", bo.c2, "weight upper constant");
  bounds->add_option("--a-max", bo.a_max, "upper end of the A search interval");
  bounds->add_option("--plot", bo.plot, "SVG output for the alpha grid");
  bounds->add_option("--out", bo.out, "JSON output path (default stdout)");

  SampleOpts so;
  auto* sample = app.add_subcommand("sample", "draw a point set");
  sample->add_option("--n", so.n, "sample size or Poisson intensity")->check(CLI::NonNegativeNumber);
  sample->add_option("--process", so.process)->check(CLI::IsMember({"binomial", "poisson"}));
  sample->add_option("--density", so.density)->check(CLI::IsMember({"uniform", "split"}));
  sample->add_option("--seed", so.seed);
  sample->add_option("--format", so.format)->check(CLI::IsMember({"csv", "json"}));
  sample->add_option("--out", so.out);

  MstOpts mo;
  auto* mst = app.add_subcommand("mst", "minimum spanning tree of a point set");
  mst->add_option("--points", mo.points_file, "CSV with header index,x,y");
  mst->add_option("--n", mo.n, "uniform sample size when --points is absent")->check(CLI::PositiveNumber);
  mst->add_option("--seed", mo.seed);
  mst->add_option("--alpha", mo.alpha)->check(CLI::PositiveNumber);
  mst->add_option("--algorithm", mo.algorithm)->check(CLI::IsMember({"auto", "prim", "kruskal", "brute"}));
  mst->add_option("--format", mo.format)->check(CLI::IsMember({"csv", "json"}));
  mst->add_flag("--verify", mo.verify, "check the path criterion");
  mst->add_option("--out", mo.out);
  add_weight_options(mst, mo.weight);

  LayoutOpts lo;
  auto* layout = app.add_subcommand("layout", "hotspot layout as JSON");
  layout->add_option("--K", lo.K);
  layout->add_option("--levels", lo.levels);
  layout->add_option("--out", lo.out);

  SimulateOpts si;
  auto* sim = app.add_subcommand("simulate", "per-replicate MST records");
  sim->add_option("--n", si.n)->check(CLI::PositiveNumber);
  sim->add_option("--alpha,--alphas", si.alphas)->delimiter(',')->check(CLI::PositiveNumber);
  sim->add_option("--reps", si.reps)->check(CLI::PositiveNumber);
  sim->add_option("--seed", si.seed);
  sim->add_option("--density", si.density)->check(CLI::IsMember({"uniform", "split"}));
  sim->add_option("--process", si.process)->check(CLI::IsMember({"binomial", "poisson"}));
  sim->add_option("--out", si.out);
  add_weight_options(sim, si.weight);

  ScalingOpts sc;
  auto* scaling = app.add_subcommand("scaling", "mean MST weight against n");
  auto* variance = app.add_subcommand("variance", "MST weight variance against n");
  for (auto* sub : {scaling, variance}) {
    sub->add_option("--n-list", sc.n_list)->delimiter(',')->check(CLI::PositiveNumber);
    sub->add_option("--alpha,--alphas", sc.alphas)->delimiter(',')->check(CLI::PositiveNumber);
    sub->add_option("--reps", sc.reps, "replicates per n (0: 30, or 200 for variance)");
    sub->add_option("--seed", sc.seed);
    sub->add_option("--density", sc.density)->check(CLI::IsMember({"uniform", "split"}));
    sub->add_option("--process", sc.process)->check(CLI::IsMember({"binomial", "poisson"}));
    sub->add_option("--plot", sc.plot, "SVG output");
    sub->add_option("--out", sc.out);
    add_weight_options(sub, sc.weight);
  }

  Prop1Opts po;
  auto* prop1 = app.add_subcommand("prop1", "hotspot star demonstration");
  prop1->add_option("--K", po.K);
  prop1->add_option("--level", po.level);
  prop1->add_option("--levels", po.levels);
  prop1->add_option("--mode", po.mode)->check(CLI::IsMember({"planted", "mc"}));
  prop1->add_option("--density", po.density, "Monte Carlo density")->check(CLI::IsMember({"adapted", "uniform"}));
  prop1->add_option("--reps", po.reps, "replicates (0: automatic)")->check(CLI::NonNegativeNumber);
  prop1->add_option("--seed", po.seed);
  prop1->add_option("--c1", po.c1);
  prop1->add_option("--c2", po.c2);
  prop1->add_option("--out", po.out);

  ProbeOpts pg;
  auto* probe = app.add_subcommand("probe-good-square", "add-one-node probe on a good square");
  probe->add_option("--g", pg.g);
  probe->add_option("--n", pg.n);
  probe->add_option("--alpha,--alphas", pg.alphas)->delimiter(',')->check(CLI::PositiveNumber);
  probe->add_option("--seed", pg.seed);
  probe->add_option("--configs", pg.configs);
  probe->add_flag("--exact-center", pg.exact_center, "place X_j at the centre of its cell");
  probe->add_option("--out", pg.out);

  InvarianceOpts io;
  auto* inv = app.add_subcommand("invariance", "MST edge set across exponents");
  inv->add_option("--n", io.n);
  inv->add_option("--alpha,--alphas", io.alphas)->delimiter(',')->check(CLI::PositiveNumber);
  inv->add_option("--reps", io.reps);
  inv->add_option("--weight,--weights", io.weights)->delimiter(',')->check(
      CLI::IsMember({"euclidean", "hotspot", "shifted"}));
  inv->add_option("--seed", io.seed);
  inv->add_option("--out", io.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const int t = resolve_threads(threads);
    for (auto* sub : app.get_subcommands()) {
      const ojson config = collect_config(sub, t);
      const std::string name = sub->get_name();
      if (name == "bounds") return cmd_bounds(bo, config, out);
      if (name == "sample") return cmd_sample(so, config, out);
      if (name == "mst") return cmd_mst(mo, config, out, err);
      if (name == "layout") return cmd_layout(lo, config, out);
      if (name == "simulate") return cmd_simulate(si, config, t, out);
      if (name == "scaling") return cmd_scaling(sc, false, config, t, out, err);
      if (name == "variance") return cmd_scaling(sc, true, config, t, out, err);
      if (name == "prop1") return cmd_prop1(po, config, t, out, err);
      if (name == "probe-good-square") return cmd_probe(pg, config, t, out, err);
      if (name == "invariance") return cmd_invariance(io, config, t, out, err);
    }
  } catch (const InvariantFailure& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return config_exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace locmst::cli
