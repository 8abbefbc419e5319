#pragma once

#include <cstdint>
#include <string>
#include <utility>

namespace locmst {

/// Exponent, density bounds and weight-equivalence constants.
struct BoundsInput {
  double alpha = 1.0;
  double eps1 = 1.0;
  double eps2 = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;

  /// eps1 for alpha <= 1, eps2 otherwise.
  double delta() const noexcept { return alpha <= 1.0 ? eps1 : eps2; }
  /// Throws InvalidArgument unless all positive, eps1 <= eps2, c1 <= c2.
  void validate() const;
};

struct OptimizerOptions {
  double a_min = 1e-3;
  double a_max = 10.0;
  int grid_points = 10000;
  double a_tol = 1e-9;
  double moment_tol = 1e-14;
};

struct Extremum {
  double value = 0.0;
  double a_star = 0.0;
  double et_alpha = 0.0;  // E T^alpha at a_star (beta_up only)
};

struct BoundsResult {
  BoundsInput input;
  Extremum low;
  Extremum up;
};

/// E T^alpha = sum_{k>=1} k^alpha (1-p)^{k-1} p, summed until the geometric
/// bound on the remainder drops below tol * max(1, partial sum).  Throws InvalidP.
double geometric_moment(double alpha, double p, double tol = 1e-14);

/// r! / (1 - e^{-theta})^r, an upper bound for E T^r with p = 1 - e^{-theta}.
double moment_upper_bound(int r, double theta);

/// (c1 A)^alpha / (2A^2) (1 - e^{-eps1 A^2}) e^{-8 eps2 A^2}
double c1_of_A(double A, const BoundsInput& in);
/// (2 c2 A)^alpha (1 + E T^alpha / A^2), T geometric with p = 1 - e^{-delta A^2}
double c2_of_A(double A, const BoundsInput& in, double moment_tol = 1e-14);

/// Objectives of beta_low / beta_up: C1, C2 with c1 = c2 = 1.
double beta_low_objective(double A, const BoundsInput& in);
double beta_up_objective(double A, const BoundsInput& in, double moment_tol = 1e-14);

/// Supremum over A of beta_low_objective: grid scan then golden section.
Extremum beta_low(const BoundsInput& in, const OptimizerOptions& opt = {});
/// Infimum over A of beta_up_objective.  The grid is scanned from large A
/// down and each moment series is abandoned once its partial sum already
/// puts the objective above the best value found.
Extremum beta_up(const BoundsInput& in, const OptimizerOptions& opt = {});

BoundsResult compute_bounds(const BoundsInput& in, const OptimizerOptions& opt = {});

/// (c1^alpha beta_low, c2^alpha beta_up) n^{1 - alpha/2}
std::pair<double, double> expected_weight_bracket(double n, const BoundsResult& b);
std::pair<double, double> expected_weight_bracket(double n, const BoundsInput& in, const OptimizerOptions& opt = {});

/// C1(A) n^{1-alpha/2} (1 - factor sqrt(A) / n^{1/4}).  The deviation bound is
/// stated with factor 4 in one place and 36 in the proof; callers choose.
double lower_deviation_threshold(double n, double A, const BoundsInput& in, double factor = 4.0);

/// Bracket on E (MST_n / n^{1-alpha/2})^k:
/// C1^k (1 - factor k sqrt(A) / n^{1/4}) and C2^k (1 + 2k / n^{1/16}).
std::pair<double, double> moment_bracket(double n, double A, int k, const BoundsInput& in, double factor = 36.0);

enum class Tail { Upper, Lower };

/// exp(-eps^2 m mu / 4) for either tail; needs 0 < eps < 1/2 (InvalidEps).
double chernoff_bound(double m, double mu, double eps, Tail tail);

std::string bounds_to_json(const BoundsResult& b);

}  // namespace locmst
