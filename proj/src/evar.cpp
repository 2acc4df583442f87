#include "renyi/evar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "renyi/error.hpp"
#include "renyi/kernels.hpp"

namespace renyi {
namespace {

void require_open_level(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
}

// 1_{Y = esssup} / P(Y = esssup).
Density top_indicator(const DiscreteDistribution& d) {
  std::vector<double> w(d.size(), 0.0);
  w.back() = 1.0 / d.top_prob();
  return Density(d, std::move(w));
}

// Scales per-atom weights to exact unit mean under d.
Density normalized(const DiscreteDistribution& d, std::vector<double> w) {
  double mean = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) mean += d.probs()[i] * w[i];
  for (double& x : w) x /= mean;
  return Density(d, std::move(w));
}

RiskResult esssup_result(const DiscreteDistribution& d, Branch branch, bool with_density) {
  RiskResult r;
  r.value = d.esssup();
  r.branch = branch;
  if (with_density) r.density = top_indicator(d);
  return r;
}

}  // namespace

void RiskSpec::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
  classify(order);
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::avar:
      return "avar";
    case Branch::higher_order:
      return "higher_order";
    case Branch::shannon:
      return "shannon";
    case Branch::esssup_collapse:
      return "esssup_collapse";
    case Branch::negative_order:
      return "negative_order";
    case Branch::degenerate_negative_order:
      return "degenerate_negative_order";
    case Branch::expectation:
      return "expectation";
    case Branch::esssup_level1:
      return "esssup_level1";
  }
  return "unknown";
}

RiskResult evar(const DiscreteDistribution& d, const RiskSpec& spec, const EvarOptions& opts) {
  spec.validate();
  const Regime regime = classify(spec.order);
  if (spec.alpha == 1.0) return esssup_result(d, Branch::esssup_level1, false);
  if (regime == Regime::collapse) return esssup_result(d, Branch::esssup_collapse, true);
  if (spec.alpha == 0.0) {
    RiskResult r;
    r.value = d.expectation();
    r.density = Density::constant(d);
    r.branch = Branch::expectation;
    return r;
  }
  switch (regime) {
    case Regime::avar:
      return avar(d, spec.alpha);
    case Regime::higher:
      return evar_inf_high(d, spec.alpha, spec.order.value(), opts);
    case Regime::shannon:
      return evar_shannon(d, spec.alpha, opts);
    case Regime::negative:
      return evar_inf_neg(d, spec.alpha, spec.order.value(), opts);
    case Regime::collapse:
      break;
  }
  throw std::logic_error("unreachable regime");
}

RiskResult avar(const DiscreteDistribution& d, double alpha) {
  AvarSolution s = avar_solution(d, alpha);
  RiskResult r;
  r.value = s.value;
  r.t_star = s.var;
  r.density = normalized(d, std::move(s.density));
  r.branch = Branch::avar;
  return r;
}

RiskResult evar_inf_high(const DiscreteDistribution& d, double alpha, double p,
                         const EvarOptions& opts) {
  require_open_level(alpha);
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("order must lie in (1,inf)");
  const double top = d.esssup();
  const double log_beta = -std::log1p(-alpha);
  const double top_prob = d.top_prob();

  RiskResult r;
  r.branch = Branch::higher_order;
  if (top_prob >= 1.0 - alpha) {
    r.value = top;
    r.t_star = top;
    r.density = top_indicator(d);
    return r;
  }

  const auto values = d.values();
  const auto probs = d.probs();
  // Scale-free sums S_k = E[r^k], r = (Y - t)_+ / (esssup - t).
  auto sums = [&](double t) {
    return kernels::power_sums(values, probs, t, -std::log(top - t), p, p - 1.0);
  };
  auto slope = [&](double t) {
    if (t >= top) return 1.0 - std::exp((log_beta + std::log(top_prob)) / p);
    const kernels::PowerSums s = sums(t);
    return 1.0 - std::exp(log_beta / p + (1.0 / p - 1.0) * std::log(s.first) + std::log(s.second));
  };
  auto objective = [&](double t) {
    if (t >= top) return t;
    const kernels::PowerSums s = sums(t);
    return t + (top - t) * std::exp((log_beta + std::log(s.first)) / p);
  };

  double hi = top;
  double lo = d.essinf() - 1.0;
  int expansions = 0;
  while (!(slope(lo) < 0.0)) {
    lo = hi - 2.0 * (hi - lo);
    if (++expansions > 200) throw ConvergenceError("could not bracket the optimizer");
  }

  int iterations = 0;
  double t = 0.0;
  if (std::isfinite(slope(0.5 * (lo + hi)))) {
    t = bisect(slope, lo, hi, opts.tol, opts.max_iterations, &iterations, opts.tol);
  } else {
    const Minimum m =
        minimize_convex_1d(objective, {lo, hi, ExpandSide::left, 2.0, 200}, opts.tol);
    t = m.t_star;
    iterations = m.iterations;
  }
  t = std::min(t, top);

  r.t_star = t;
  r.value = std::min(objective(t), top);
  r.iterations = iterations + expansions;
  r.residual = std::abs(slope(t));

  std::vector<double> w(d.size(), 0.0);
  if (t < top) {
    const double log_scale = -std::log(top - t);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double g = values[i] - t;
      if (g > 0.0) w[i] = std::exp((p - 1.0) * (std::log(g) + log_scale));
    }
    r.density = normalized(d, std::move(w));
  } else {
    r.density = top_indicator(d);
  }
  return r;
}

RiskResult evar_inf_neg(const DiscreteDistribution& d, double alpha, double p,
                        const EvarOptions& opts) {
  require_open_level(alpha);
  if (!(p < 0.0) || !std::isfinite(p)) throw std::invalid_argument("order must be negative");
  const double top = d.esssup();
  if (d.top_prob() >= 1.0 - alpha) return esssup_result(d, Branch::degenerate_negative_order, true);

  const double log_beta = -std::log1p(-alpha);
  const auto gaps = d.gaps_from_max();
  const auto probs = d.probs();

  // t = esssup + e^s; r_i = (t - y_i) / (t - esssup) >= 1.
  auto sums = [&](double s) {
    return kernels::power_sums(gaps, probs, -std::exp(s), -s, p, p - 1.0);
  };
  auto slope = [&](double s) {
    const kernels::PowerSums q = sums(s);
    return 1.0 - std::exp(log_beta / p + (1.0 / p - 1.0) * std::log(q.first) + std::log(q.second));
  };
  auto objective = [&](double s) {
    const kernels::PowerSums q = sums(s);
    return top + std::exp(s) * -std::expm1((log_beta + std::log(q.first)) / p);
  };

  const double log_scale = std::log(std::max(1.0, std::abs(top)));
  const double floor_s = log_scale - 700.0;
  double s_lo = log_scale + std::log(1e-8);
  double s_hi = s_lo;
  int expansions = 0;
  double step = std::log(2.0);
  // Below floor_s the distance t* - esssup, and with it esssup - value, is
  // under the double resolution of esssup; the floor is then returned.
  bool below_floor = false;
  while (!(slope(s_lo) < 0.0)) {
    if (s_lo == floor_s) {
      below_floor = true;
      break;
    }
    s_hi = s_lo;
    s_lo = std::max(floor_s, s_lo - step);
    step *= 2.0;
    ++expansions;
  }
  while (!below_floor && !(slope(s_hi) > 0.0)) {
    s_hi += std::log(2.0);
    if (++expansions > 4000) throw ConvergenceError("could not bracket the optimizer");
  }

  int iterations = 0;
  const double s = below_floor ? floor_s
                               : bisect(slope, s_lo, s_hi, opts.tol * 1e-2, opts.max_iterations,
                                        &iterations, opts.tol);

  RiskResult r;
  r.branch = Branch::negative_order;
  r.t_star = top + std::exp(s);
  r.value = below_floor ? top : std::min(top, objective(s));
  r.iterations = iterations + expansions;
  r.residual = below_floor ? 0.0 : std::abs(slope(s));

  std::vector<double> w(d.size());
  const double lift = std::exp(s);
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp((p - 1.0) * (std::log(gaps[i] + lift) - s));
  }
  r.density = normalized(d, std::move(w));
  return r;
}

RiskResult evar_shannon(const DiscreteDistribution& d, double alpha, const EvarOptions& opts) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0,1)");
  RiskResult r;
  r.branch = Branch::shannon;
  if (alpha == 0.0) {
    r.value = d.expectation();
    r.density = Density::constant(d);
    return r;
  }
  const double log_beta = -std::log1p(-alpha);
  const double cap = -std::log(d.top_prob());
  if (cap <= log_beta + 1e-12 * std::max(1.0, log_beta)) {
    r.value = d.esssup();
    r.density = top_indicator(d);
    return r;
  }

  const auto values = d.values();
  const auto probs = d.probs();
  const double top = d.esssup();
  const double mean = d.expectation();
  const double range = top - d.essinf();
  auto center = [&](double theta) { return theta * (top - mean) <= 500.0 ? mean : top; };
  auto divergence = [&](double theta) {
    const double c = center(theta);
    const kernels::TiltSums s = kernels::tilt_sums(values, probs, theta, c);
    return theta * s.moment / s.mass - std::log(s.mass);
  };
  auto gap = [&](double theta) { return divergence(theta) - log_beta; };

  double hi = 1.0 / range;
  int expansions = 0;
  while (!(gap(hi) > 0.0)) {
    hi *= 2.0;
    if (++expansions > 2000) throw ConvergenceError("could not bracket the tilt parameter");
  }
  int iterations = 0;
  const double theta = bisect(gap, 0.0, hi, std::min(opts.tol, 1e-12), opts.max_iterations, &iterations, opts.tol);

  const double c = center(theta);
  const kernels::TiltSums s = kernels::tilt_sums(values, probs, theta, c);
  r.value = std::clamp(c + s.moment / s.mass, d.essinf(), top);
  r.iterations = iterations + expansions;
  r.residual = std::abs(gap(theta));

  std::vector<double> w(d.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(theta * (values[i] - c)) / s.mass;
  r.density = normalized(d, std::move(w));
  return r;
}

}  // namespace renyi
