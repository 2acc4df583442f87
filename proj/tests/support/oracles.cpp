#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace oracle {
namespace {

constexpr double kInvPhi = 0.6180339887498948482;

std::pair<double, double> golden(const Fn& f, double a, double b, bool maximize) {
  const double sgn = maximize ? -1.0 : 1.0;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = sgn * f(x1);
  double f2 = sgn * f(x2);
  for (int i = 0; i < 300 && x1 < x2; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = sgn * f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = sgn * f(x2);
    }
  }
  return f1 <= f2 ? std::pair{x1, sgn * f1} : std::pair{x2, sgn * f2};
}

std::pair<double, double> scan(const Fn& f, double lo, double hi, int points, bool maximize) {
  const double sgn = maximize ? -1.0 : 1.0;
  int best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int k = 0; k < points; ++k) {
    const double t = lo + (hi - lo) * k / (points - 1);
    const double v = sgn * f(t);
    if (v < best_v) {
      best_v = v;
      best = k;
    }
  }
  const double a = lo + (hi - lo) * std::max(0, best - 1) / (points - 1);
  const double b = lo + (hi - lo) * std::min(points - 1, best + 1) / (points - 1);
  auto [t, v] = golden(f, a, b, maximize);
  const double tb = lo + (hi - lo) * best / (points - 1);
  if (sgn * v > best_v) return {tb, sgn * best_v};
  return {t, v};
}

double beta_of(double alpha) { return 1.0 / (1.0 - alpha); }

}  // namespace

double scan_min(const Fn& f, double lo, double hi, int points) {
  return scan(f, lo, hi, points, false).second;
}
double scan_argmin(const Fn& f, double lo, double hi, int points) {
  return scan(f, lo, hi, points, false).first;
}
double scan_max(const Fn& f, double lo, double hi, int points) {
  return scan(f, lo, hi, points, true).second;
}

double expect(const std::vector<double>& p, const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * f[i];
  return s;
}

static double avar_objective(const std::vector<double>& y, const std::vector<double>& p,
                             double alpha, double t) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += p[i] * std::max(y[i] - t, 0.0);
  return t + s / (1.0 - alpha);
}

double avar_kinks(const std::vector<double>& y, const std::vector<double>& p, double alpha) {
  double best = std::numeric_limits<double>::infinity();
  for (double t : y) best = std::min(best, avar_objective(y, p, alpha, t));
  return best;
}

double avar_grid(const std::vector<double>& y, const std::vector<double>& p, double alpha,
                 double lo, double hi, double step) {
  double best = std::numeric_limits<double>::infinity();
  const long n = std::lround((hi - lo) / step);
  for (long k = 0; k <= n; ++k) best = std::min(best, avar_objective(y, p, alpha, lo + k * step));
  return best;
}

double evar_high_scan(const std::vector<double>& y, const std::vector<double>& p, double alpha,
                      double order) {
  const double top = *std::max_element(y.begin(), y.end());
  const double bot = *std::min_element(y.begin(), y.end());
  const double c = std::pow(beta_of(alpha), 1.0 / order);
  auto f = [&](double t) {
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += p[i] * std::pow(std::max(y[i] - t, 0.0), order);
    return t + c * std::pow(s, 1.0 / order);
  };
  // The optimizer can sit far below essinf for small alpha; widen until the
  // scan minimum is interior.
  double width = std::max(1.0, top - bot);
  for (int k = 0; k < 60; ++k) {
    const double lo = bot - width;
    const double t = scan_argmin(f, lo, top, 4001);
    if (t > lo + 1e-3 * (top - lo)) return scan_min(f, lo, top, 4001);
    width *= 4.0;
  }
  return scan_min(f, bot - width, top, 4001);
}

double evar_neg_scan(const std::vector<double>& y, const std::vector<double>& p, double alpha,
                     double order) {
  const double top = *std::max_element(y.begin(), y.end());
  const double c = std::pow(beta_of(alpha), 1.0 / order);
  // Parametrize t = top + exp(s) and scan s.
  // The power mean is evaluated as exp(logsumexp / order) so that orders
  // near zero and far below it do not overflow.
  auto f = [&](double s) {
    const double t = top + std::exp(s);
    std::vector<double> terms(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) terms[i] = std::log(p[i]) + order * std::log(t - y[i]);
    const double m = *std::max_element(terms.begin(), terms.end());
    double acc = 0.0;
    for (double x : terms) acc += std::exp(x - m);
    return t - c * std::exp((m + std::log(acc)) / order);
  };
  const double scale = std::log(std::max(1.0, std::abs(top)));
  return std::min(top, scan_min(f, scale - 60.0, scale + 40.0, 20001));
}

double chernoff(const std::vector<double>& y, const std::vector<double>& p, double alpha) {
  const double top = *std::max_element(y.begin(), y.end());
  auto g = [&](double logz) {
    const double z = std::exp(logz);
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += p[i] * std::exp(z * (y[i] - top));
    return top + (std::log(s) - std::log1p(-alpha)) / z;
  };
  return scan_min(g, -20.0, 20.0, 40001);
}

double gauge_dual_norm(const std::vector<double>& p, const std::vector<double>& z, double alpha,
                       double order) {
  const double pprime = order / (order - 1.0);
  const double bound = std::pow(beta_of(alpha), pprime - 1.0);
  const bool upper = pprime > 1.0;
  std::vector<double> a(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) a[i] = std::abs(z[i]);
  const double mean_abs = expect(p, a);

  // Water level c with E max(a / lambda, c) = 1.
  auto fill = [&](double lam) {
    auto mass = [&](double c) {
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) s += p[i] * std::max(a[i] / lam, c);
      return s;
    };
    double lo = 0.0;
    double hi = 1.0;
    while (mass(hi) < 1.0) hi *= 2.0;
    for (int k = 0; k < 200; ++k) {
      const double mid = 0.5 * (lo + hi);
      (mass(mid) < 1.0 ? lo : hi) = mid;
    }
    std::vector<double> w(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) w[i] = std::max(a[i] / lam, hi);
    return w;
  };
  auto feasible = [&](double lam) {
    const std::vector<double> w = fill(lam);
    double m = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) m += p[i] * std::pow(w[i], pprime);
    return upper ? m <= bound * (1.0 + 1e-13) : m >= bound * (1.0 - 1e-13);
  };
  double lo = mean_abs;
  if (feasible(lo)) return lo;
  double hi = 2.0 * lo + 1.0;
  while (!feasible(hi)) hi *= 2.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

double simplex_enumeration(const std::vector<double>& y, const std::vector<double>& p,
                           double alpha, double order, int resolution) {
  const std::size_t n = y.size();
  const bool shannon = std::isinf(order);
  const double pprime = shannon ? 1.0 : order / (order - 1.0);
  const double log_beta = -std::log1p(-alpha);
  const double bound = shannon ? log_beta : std::exp((pprime - 1.0) * log_beta);
  const double slack = 1e-12 * std::max(1.0, std::abs(bound));
  std::vector<int> k(n, 0);
  double best = -std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == n) {
      k[i] = left;
      double budget = 0.0;
      double value = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double q = static_cast<double>(k[j]) / resolution;
        value += q * y[j];
        if (q > 0.0) {
          budget += shannon ? q * std::log(q / p[j])
                            : std::pow(p[j], 1.0 - pprime) * std::pow(q, pprime);
        }
      }
      const bool ok = (shannon || pprime > 1.0) ? budget <= bound + slack : budget >= bound - slack;
      if (ok) best = std::max(best, value);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      k[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, resolution);
  return best;
}

renyi::DiscreteDistribution Sample::dist() const {
  return renyi::DiscreteDistribution::from_samples(values, probs);
}

Sample random_sample(std::mt19937_64& rng, int n, double lo, double hi, double floor) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::set<double> vals;
  while (static_cast<int>(vals.size()) < n) {
    vals.insert(std::round((lo + (hi - lo) * u(rng)) * 1000.0) / 1000.0);
  }
  Sample s;
  s.values.assign(vals.begin(), vals.end());
  std::vector<double> e(n);
  for (double& x : e) x = -std::log(1.0 - u(rng));
  const double total = std::accumulate(e.begin(), e.end(), 0.0);
  s.probs.resize(n);
  for (int i = 0; i < n; ++i) s.probs[i] = floor + (1.0 - n * floor) * e[i] / total;
  // Canonical probabilities: renormalize exactly as the library does.
  const renyi::DiscreteDistribution d = s.dist();
  s.probs.assign(d.probs().begin(), d.probs().end());
  return s;
}

std::vector<double> random_density(std::mt19937_64& rng, const std::vector<double>& p,
                                   bool strictly_positive) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(p.size());
  for (double& x : w) {
    x = -std::log(1.0 - u(rng));
    if (!strictly_positive && u(rng) < 0.2) x = 0.0;
    if (strictly_positive) x += 0.05;
  }
  if (expect(p, w) == 0.0) w[0] = 1.0;
  const double m = expect(p, w);
  for (double& x : w) x /= m;
  return w;
}

}  // namespace oracle
