#include "locmst/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "locmst/error.hpp"

namespace locmst {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Neumaier {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

// Series for E T^alpha.  Returns early with a partial (lower) sum once it
// reaches `stop`.
double moment_series(double alpha, double p, double tol, double stop) {
  const double log_q = std::log1p(-p);
  Neumaier sum;
  for (std::int64_t k = 1;; ++k) {
    const double kd = static_cast<double>(k);
    const double term = p * std::exp(alpha * std::log(kd) + (kd - 1.0) * log_q);
    sum.add(term);
    const double partial = sum.value();
    if (partial >= stop) return partial;
    // Term ratios ((k+1)/k)^alpha q decrease in k, so the remainder after k
    // is at most t_{k+1} / (1 - rho) with rho the ratio t_{k+2} / t_{k+1}.
    const double next = p * std::exp(alpha * std::log(kd + 1.0) + kd * log_q);
    const double rho = std::exp(alpha * std::log((kd + 2.0) / (kd + 1.0)) + log_q);
    if (rho < 1.0 && next / (1.0 - rho) < tol * std::max(1.0, partial)) return partial;
    if (next == 0.0) return partial;
  }
}

double geometric_p(double A, const BoundsInput& in) { return -std::expm1(-in.delta() * A * A); }

template <class F>
double golden_section(F&& f, double lo, double hi, double tol, bool maximize) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto better = [maximize](double a, double b) { return maximize ? a > b : a < b; };
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (better(f1, f2)) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

void validate_options(const OptimizerOptions& opt) {
  if (!(opt.a_min > 0.0) || !(opt.a_max > opt.a_min) || opt.grid_points < 3 || !(opt.a_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "optimizer needs 0 < a_min < a_max, grid_points >= 3, a_tol > 0");
  }
}

double grid_at(const OptimizerOptions& opt, int k) {
  return opt.a_min + (opt.a_max - opt.a_min) * k / (opt.grid_points - 1);
}

}  // namespace

void BoundsInput::validate() const {
  auto pos = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!pos(alpha) || !pos(eps1) || !pos(eps2) || !pos(c1) || !pos(c2)) {
    throw Error(ErrorCode::InvalidArgument, "alpha, eps1, eps2, c1, c2 must be positive and finite");
  }
  if (eps1 > eps2) throw Error(ErrorCode::InvalidArgument, "eps1 must not exceed eps2");
  if (c1 > c2) throw Error(ErrorCode::InvalidArgument, "c1 must not exceed c2");
}

double geometric_moment(double alpha, double p, double tol) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidP, "success probability must lie in (0, 1)");
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "moment order must be positive");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  return moment_series(alpha, p, tol, kInf);
}

double moment_upper_bound(int r, double theta) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "r must be >= 1");
  if (!(theta > 0.0)) throw Error(ErrorCode::InvalidArgument, "theta must be positive");
  const double p = -std::expm1(-theta);
  double fact = 1.0;
  for (int k = 2; k <= r; ++k) fact *= k;
  return fact / std::pow(p, r);
}

double beta_low_objective(double A, const BoundsInput& in) {
  const double A2 = A * A;
  return std::pow(A, in.alpha) / (2.0 * A2) * -std::expm1(-in.eps1 * A2) * std::exp(-8.0 * in.eps2 * A2);
}

double beta_up_objective(double A, const BoundsInput& in, double moment_tol) {
  const double et = geometric_moment(in.alpha, geometric_p(A, in), moment_tol);
  return std::pow(2.0 * A, in.alpha) * (1.0 + et / (A * A));
}

double c1_of_A(double A, const BoundsInput& in) {
  if (!(A > 0.0)) throw Error(ErrorCode::InvalidArgument, "A must be positive");
  return std::pow(in.c1, in.alpha) * beta_low_objective(A, in);
}

double c2_of_A(double A, const BoundsInput& in, double moment_tol) {
  if (!(A > 0.0)) throw Error(ErrorCode::InvalidArgument, "A must be positive");
  return std::pow(in.c2, in.alpha) * beta_up_objective(A, in, moment_tol);
}

Extremum beta_low(const BoundsInput& in, const OptimizerOptions& opt) {
  in.validate();
  validate_options(opt);
  int best = 0;
  double best_v = -kInf;
  for (int k = 0; k < opt.grid_points; ++k) {
    const double v = beta_low_objective(grid_at(opt, k), in);
    if (v > best_v) {
      best_v = v;
      best = k;
    }
  }
  const double lo = grid_at(opt, std::max(0, best - 1));
  const double hi = grid_at(opt, std::min(opt.grid_points - 1, best + 1));
  const double a = golden_section([&](double x) { return beta_low_objective(x, in); }, lo, hi, opt.a_tol, true);
  Extremum e;
  e.a_star = a;
  e.value = beta_low_objective(a, in);
  if (best_v > e.value) {
    e.value = best_v;
    e.a_star = grid_at(opt, best);
  }
  return e;
}

Extremum beta_up(const BoundsInput& in, const OptimizerOptions& opt) {
  in.validate();
  validate_options(opt);
  int best = opt.grid_points - 1;
  double best_v = kInf;
  for (int k = opt.grid_points - 1; k >= 0; --k) {
    const double A = grid_at(opt, k);
    const double scale = std::pow(2.0 * A, in.alpha);
    // Objective >= best_v once E T^alpha reaches this value.
    const double stop = best_v == kInf ? kInf : (best_v / scale - 1.0) * A * A;
    const double et = moment_series(in.alpha, geometric_p(A, in), opt.moment_tol, stop);
    if (et >= stop) continue;
    const double v = scale * (1.0 + et / (A * A));
    if (v < best_v) {
      best_v = v;
      best = k;
    }
  }
  const double lo = grid_at(opt, std::max(0, best - 1));
  const double hi = grid_at(opt, std::min(opt.grid_points - 1, best + 1));
  const double a =
      golden_section([&](double x) { return beta_up_objective(x, in, opt.moment_tol); }, lo, hi, opt.a_tol, false);
  Extremum e;
  e.a_star = a;
  e.value = beta_up_objective(a, in, opt.moment_tol);
  if (best_v < e.value) {
    e.value = best_v;
    e.a_star = grid_at(opt, best);
  }
  e.et_alpha = geometric_moment(in.alpha, geometric_p(e.a_star, in), opt.moment_tol);
  return e;
}

BoundsResult compute_bounds(const BoundsInput& in, const OptimizerOptions& opt) {
  BoundsResult r;
  r.input = in;
  r.low = beta_low(in, opt);
  r.up = beta_up(in, opt);
  return r;
}

std::pair<double, double> expected_weight_bracket(double n, const BoundsResult& b) {
  if (!(n >= 1.0)) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  const double a = b.input.alpha;
  const double rate = std::pow(n, 1.0 - a / 2.0);
  return {std::pow(b.input.c1, a) * b.low.value * rate, std::pow(b.input.c2, a) * b.up.value * rate};
}

std::pair<double, double> expected_weight_bracket(double n, const BoundsInput& in, const OptimizerOptions& opt) {
  return expected_weight_bracket(n, compute_bounds(in, opt));
}

double lower_deviation_threshold(double n, double A, const BoundsInput& in, double factor) {
  return c1_of_A(A, in) * std::pow(n, 1.0 - in.alpha / 2.0) * (1.0 - factor * std::sqrt(A) / std::pow(n, 0.25));
}

std::pair<double, double> moment_bracket(double n, double A, int k, const BoundsInput& in, double factor) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  const double lo = std::pow(c1_of_A(A, in), k) * (1.0 - factor * k * std::sqrt(A) / std::pow(n, 0.25));
  const double hi = std::pow(c2_of_A(A, in), k) * (1.0 + 2.0 * k / std::pow(n, 1.0 / 16.0));
  return {lo, hi};
}

double chernoff_bound(double m, double mu, double eps, Tail /*tail*/) {
  if (!(eps > 0.0 && eps < 0.5)) throw Error(ErrorCode::InvalidEps, "eps must lie in (0, 1/2)");
  if (!(m > 0.0) || !(mu > 0.0)) throw Error(ErrorCode::InvalidArgument, "m and mu must be positive");
  return std::exp(-eps * eps * m * mu / 4.0);
}

std::string bounds_to_json(const BoundsResult& b) {
  nlohmann::json j;
  j["alpha"] = b.input.alpha;
  j["eps1"] = b.input.eps1;
  j["eps2"] = b.input.eps2;
  j["c1"] = b.input.c1;
  j["c2"] = b.input.c2;
  j["delta"] = b.input.delta();
  j["beta_low"] = b.low.value;
  j["A_low"] = b.low.a_star;
  j["beta_up"] = b.up.value;
  j["A_up"] = b.up.a_star;
  j["ET_alpha"] = b.up.et_alpha;
  return j.dump(2);
}

}  // namespace locmst
