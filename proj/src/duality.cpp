#include "renyi/duality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

namespace renyi {
namespace {

constexpr int kLinearGrid = 1000;
constexpr int kTailGrid = 200;
constexpr double kTailSpan = 1e6;
constexpr double kInf = std::numeric_limits<double>::infinity();

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

void check_inputs(std::span<const double> probs, std::span<const double> z, double alpha,
                  double p) {
  if (probs.size() != z.size() || probs.empty()) {
    throw std::invalid_argument("functional and probabilities differ in length");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (!std::isfinite(p) || !(p > 1.0 || p < 0.0)) {
    throw std::invalid_argument("dual norm needs p > 1 or p < 0");
  }
}

// Golden-section maximization of a unimodal g on [a, b].
std::pair<double, double> golden_max(const std::function<double(double)>& g, double a, double b) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double g1 = g(x1);
  double g2 = g(x2);
  for (int i = 0; i < 200 && x1 < x2; ++i) {
    if (g1 >= g2) {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - kInvPhi * (b - a);
      g1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + kInvPhi * (b - a);
      g2 = g(x2);
    }
  }
  return g1 >= g2 ? std::pair{x1, g1} : std::pair{x2, g2};
}

// (sum_i p_i m_i^p)^(1/p) for positive m_i, scaled by the extreme element.
double weighted_power_mean(std::span<const double> probs, const std::vector<double>& m, double p) {
  double ref = p > 0.0 ? 0.0 : kInf;
  for (double x : m) ref = p > 0.0 ? std::max(ref, x) : std::min(ref, x);
  if (!(ref > 0.0) || !std::isfinite(ref)) return ref;
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] > 0.0) s += probs[i] * std::exp(p * std::log(m[i] / ref));
  }
  return ref * std::exp(std::log(s) / p);
}

struct RatioProblem {
  std::span<const double> probs;
  std::vector<double> abs_z;
  std::vector<double> w;  // |Z|^(p'-1); +inf where Z = 0 and p < 0
  double p;
  double beta_root;  // beta^(1/p)
  double limit;      // E|Z|, the t -> infinity value

  double ratio(double t) const {
    const std::size_t n = abs_z.size();
    std::vector<double> m(n);
    double num = 0.0;
    if (p > 1.0) {
      for (std::size_t i = 0; i < n; ++i) {
        num += probs[i] * abs_z[i] * std::max(t + w[i], 0.0);
        m[i] = std::max(w[i], -t);
      }
      const double den = t + beta_root * weighted_power_mean(probs, m, p);
      return den > 0.0 ? num / den : -kInf;
    }
    for (std::size_t i = 0; i < n; ++i) {
      num += probs[i] * abs_z[i] * std::max(t - w[i], 0.0);
      m[i] = std::min(w[i], t);
    }
    const double den = t - beta_root * weighted_power_mean(probs, m, p);
    return den > 0.0 ? num / den : -kInf;
  }
};

RatioProblem make_problem(std::span<const double> probs, std::span<const double> z, double alpha,
                          double p) {
  RatioProblem rp{probs, {}, {}, p, std::pow(1.0 / (1.0 - alpha), 1.0 / p), 0.0};
  const double pprime = p / (p - 1.0);
  rp.abs_z.resize(z.size());
  rp.w.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double a = std::abs(z[i]);
    rp.abs_z[i] = a;
    rp.w[i] = a > 0.0 ? std::pow(a, pprime - 1.0) : (p > 1.0 ? 0.0 : kInf);
    rp.limit += probs[i] * a;
  }
  return rp;
}

}  // namespace

DualNorm dual_norm(std::span<const double> probs, std::span<const double> z, double alpha,
                   double p) {
  check_inputs(probs, z, alpha, p);
  const RatioProblem rp = make_problem(probs, z, alpha, p);

  double scale = 0.0;
  for (double x : rp.w) {
    if (std::isfinite(x)) scale = std::max(scale, x);
  }
  if (!(scale > 0.0)) return {rp.limit, std::nullopt};

  std::vector<double> grid;
  if (p > 1.0) {
    // The ratio vanishes for t <= -max W and is affine over affine for t >= 0.
    for (int k = 0; k <= kLinearGrid; ++k) grid.push_back(-scale + scale * k / kLinearGrid);
  } else {
    for (int k = 1; k <= kLinearGrid; ++k) grid.push_back(scale * k / kLinearGrid);
    for (int j = 1; j <= kTailGrid; ++j) {
      grid.push_back(scale * std::exp(j * std::log(kTailSpan) / kTailGrid));
    }
  }

  std::size_t best = 0;
  double best_value = -kInf;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double v = rp.ratio(grid[k]);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[std::min(best + 1, grid.size() - 1)];
  double t_star = grid[best];
  if (a < b) {
    const auto [t, v] = golden_max([&](double t) { return rp.ratio(t); }, a, b);
    if (v > best_value) {
      best_value = v;
      t_star = t;
    }
  }
  if (rp.limit > best_value) return {rp.limit, std::nullopt};
  return {best_value, t_star};
}

DualNorm dual_norm(const Density& z, double alpha, double p) {
  return dual_norm(z.probs(), z.weights(), alpha, p);
}

double dual_norm_affine_bound(std::span<const double> probs, std::span<const double> z,
                              double alpha, double p) {
  check_inputs(probs, z, alpha, p);
  if (!(p < 0.0)) throw std::invalid_argument("affine bound applies to p < 0");
  const double pprime = p / (p - 1.0);
  double mean_abs = 0.0;
  double moment = 0.0;  // E |Z|^p'
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double a = std::abs(z[i]);
    mean_abs += probs[i] * a;
    if (a > 0.0) {
      moment += probs[i] * std::pow(a, pprime);
      s = std::max(s, std::pow(a, pprime - 1.0));
    }
  }
  if (!(s > 0.0)) return mean_abs;
  const double beta_root = std::pow(1.0 / (1.0 - alpha), 1.0 / p);
  const double endpoint = (s * mean_abs - moment) / (s - beta_root * std::pow(moment, 1.0 / p));
  return std::max(mean_abs, endpoint);
}

std::vector<double> hb_density_for(const DiscreteDistribution& d, const RiskSpec& spec) {
  spec.validate();
  const Regime regime = classify(spec.order);
  if (regime != Regime::higher && regime != Regime::negative) {
    throw std::invalid_argument("Hahn-Banach functional needs p > 1 or p < 0");
  }
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) {
    throw std::domain_error("Hahn-Banach functional needs alpha in (0,1)");
  }
  const double p = spec.order.value();
  const DiscreteDistribution mag = d.map([](double v) { return std::abs(v); });
  const RiskResult r = regime == Regime::higher ? evar_inf_high(mag, spec.alpha, p)
                                                : evar_inf_neg(mag, spec.alpha, p);
  if (!r.t_star || (regime == Regime::higher && *r.t_star >= mag.esssup()) ||
      r.branch == Branch::degenerate_negative_order) {
    throw std::domain_error("no interior optimizer for |Y|");
  }
  const double t = *r.t_star;
  std::vector<double> out(d.size());
  const auto v = d.values();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double a = std::abs(v[i]);
    const double base = regime == Regime::higher ? std::max(a - t, 0.0) : t - a;
    out[i] = base > 0.0 ? sign_of(v[i]) * std::pow(base, p - 1.0) : 0.0;
  }
  return out;
}

Witness hb_witness_for(std::span<const double> probs, std::span<const double> z, double alpha,
                       double p) {
  const DualNorm n = dual_norm(probs, z, alpha, p);
  Witness out;
  out.values.resize(z.size());
  if (!n.t_star) {
    out.at_infinity = true;
    for (std::size_t i = 0; i < z.size(); ++i) out.values[i] = sign_of(z[i]);
    return out;
  }
  const RatioProblem rp = make_problem(probs, z, alpha, p);
  const double t = *n.t_star;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double mag = p > 1.0 ? std::max(t + rp.w[i], 0.0) : std::max(t - rp.w[i], 0.0);
    out.values[i] = sign_of(z[i]) * mag;
  }
  return out;
}

bool alt_dual_check(const DiscreteDistribution& d, const RiskSpec& spec, int trials,
                    unsigned seed) {
  spec.validate();
  const Regime regime = classify(spec.order);
  if (regime != Regime::higher && regime != Regime::negative) {
    throw std::invalid_argument("alternative dual check needs p > 1 or p < 0");
  }
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) {
    throw std::invalid_argument("alternative dual check needs alpha in (0,1)");
  }
  const double p = spec.order.value();
  const RiskResult r = evar(d, spec);
  const auto probs = d.probs();
  const auto values = d.values();
  auto pairing = [&](std::span<const double> w) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += probs[i] * values[i] * w[i];
    return s;
  };

  bool ok = dual_norm(probs, r.density->weights(), spec.alpha, p).value <= 1.0 + 1e-6;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  const auto zstar = r.density->weights();
  for (int k = 0; k < trials; ++k) {
    std::vector<double> w(d.size());
    const int family = k % 3;
    if (family == 0) {
      // Small perturbations of the constant density.
      const double eps = std::exp(std::log(1e-3) * unit(rng));
      for (double& x : w) x = std::max(0.0, 1.0 + eps * noise(rng));
    } else if (family == 1) {
      // Segment between the constant density and the optimum.
      const double lam = unit(rng);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1.0 - lam) + lam * zstar[i];
    } else {
      for (double& x : w) x = -std::log(1.0 - unit(rng));
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) mean += probs[i] * w[i];
    if (!(mean > 0.0)) continue;
    for (double& x : w) x /= mean;
    if (dual_norm(probs, w, spec.alpha, p).value > 1.0 + 1e-9) continue;
    if (pairing(w) > r.value + 1e-6) ok = false;
  }
  return ok;
}

}  // namespace renyi
