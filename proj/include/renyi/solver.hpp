#pragma once

#include <functional>
#include <limits>

namespace renyi {

enum class ExpandSide { left, right, both };

struct BracketSpec {
  double lo = 0.0;
  double hi = 1.0;
  ExpandSide expand_side = ExpandSide::both;
  double growth = 2.0;
  int max_expansions = 200;
};

struct Minimum {
  double t_star = 0.0;
  double f_star = 0.0;
  int iterations = 0;
};

inline constexpr double kDefaultTol = 1e-11;

/// Golden-section minimization of a convex function. The bracket is widened
/// on the permitted side(s) until an interior point lies below both ends; a
/// side that may not expand acts as a hard boundary. Stops once the bracket
/// width is at most tol * (1 + |t|). Throws ConvergenceError when expansion
/// runs out before certification, std::invalid_argument on a bad spec.
Minimum minimize_convex_1d(const std::function<double(double)>& f, BracketSpec bracket,
                           double tol = kDefaultTol);

/// Root of a continuous monotone g on [lo, hi] to within tol * (1 + |root|).
/// With a finite residual_tol the search also continues until |g| at the
/// returned point is at most residual_tol, or the bracket reaches adjacent
/// doubles. Throws std::invalid_argument if g(lo) and g(hi) share a strict
/// sign and ConvergenceError when max_iterations is exhausted.
double bisect(const std::function<double(double)>& g, double lo, double hi,
              double tol = kDefaultTol, int max_iterations = 10000, int* iterations = nullptr,
              double residual_tol = std::numeric_limits<double>::infinity());

}  // namespace renyi
