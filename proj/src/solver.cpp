#include "renyi/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "renyi/error.hpp"

namespace renyi {
namespace {

constexpr double kInvPhi = 0.6180339887498948482;

bool converged(double lo, double hi, double tol) {
  const double mid = 0.5 * (lo + hi);
  return hi - lo <= tol * (1.0 + std::abs(mid));
}

}  // namespace

Minimum minimize_convex_1d(const std::function<double(double)>& f, BracketSpec b, double tol) {
  if (!(b.lo < b.hi) || !(b.growth > 1.0) || !(tol > 0.0) || b.max_expansions < 0) {
    throw std::invalid_argument("invalid bracket specification");
  }
  const bool can_left = b.expand_side != ExpandSide::right;
  const bool can_right = b.expand_side != ExpandSide::left;

  double lo = b.lo;
  double hi = b.hi;
  double flo = f(lo);
  double fhi = f(hi);
  double mid = 0.5 * (lo + hi);
  double fmid = f(mid);
  int expansions = 0;
  // Slide the triple (lo, mid, hi) downhill until the middle point is
  // no higher than both ends.
  while (!(fmid <= flo && fmid <= fhi)) {
    if (flo < fhi) {
      if (!can_left) break;
      const double step = b.growth * (mid - lo);
      hi = mid;
      fhi = fmid;
      mid = lo;
      fmid = flo;
      lo = mid - step;
      flo = f(lo);
    } else {
      if (!can_right) break;
      const double step = b.growth * (hi - mid);
      lo = mid;
      flo = fmid;
      mid = hi;
      fmid = fhi;
      hi = mid + step;
      fhi = f(hi);
    }
    if (++expansions > b.max_expansions) {
      throw ConvergenceError("bracket expansion exhausted without an interior minimum");
    }
  }

  double a = lo;
  double c = hi;
  double x1 = c - kInvPhi * (c - a);
  double x2 = a + kInvPhi * (c - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int iterations = 0;
  while (!converged(a, c, tol)) {
    if (f1 <= f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - kInvPhi * (c - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (c - a);
      f2 = f(x2);
    }
    ++iterations;
    if (x1 >= x2) break;  // bracket collapsed to adjacent doubles
  }
  Minimum best{x1, f1, iterations};
  if (f2 < best.f_star) best = {x2, f2, iterations};
  // Boundary minima on a side that was not allowed to expand.
  if (flo < best.f_star && a == lo) best = {lo, flo, iterations};
  if (fhi < best.f_star && c == hi) best = {hi, fhi, iterations};
  return best;
}

double bisect(const std::function<double(double)>& g, double lo, double hi, double tol,
              int max_iterations, int* iterations, double residual_tol) {
  if (!(lo <= hi)) throw std::invalid_argument("bisect needs lo <= hi");
  double glo = g(lo);
  const double ghi = g(hi);
  if (glo == 0.0) {
    if (iterations) *iterations = 0;
    return lo;
  }
  if (ghi == 0.0) {
    if (iterations) *iterations = 0;
    return hi;
  }
  if ((glo > 0.0) == (ghi > 0.0)) throw std::invalid_argument("bisect: no sign change on bracket");
  const bool check_residual = residual_tol < std::numeric_limits<double>::infinity();
  int it = 0;
  double mid = 0.5 * (lo + hi);
  for (;;) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const bool narrow = converged(lo, hi, tol);
    if (narrow && !check_residual) break;
    const double gm = g(mid);
    if (gm == 0.0 || (narrow && std::abs(gm) <= residual_tol)) break;
    if (++it > max_iterations) throw ConvergenceError("bisection iteration cap reached");
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  if (iterations) *iterations = it;
  return mid;
}

}  // namespace renyi
