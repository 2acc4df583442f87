#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "renyi/evar.hpp"
#include "renyi/kernels.hpp"

namespace renyi {

NormBounds norm_equivalence_bounds(double alpha, double p) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (p > 1.0 && std::isfinite(p)) {
    const double beta = 1.0 / (1.0 - alpha);
    const double c = std::pow(std::pow(beta, 1.0 / (p - 1.0)) - 1.0, (p - 1.0) / p);
    return {std::min(1.0, c), std::pow(beta, 1.0 / p)};
  }
  if (p < 0.0 && std::isfinite(p)) return {1.0 - std::pow(1.0 - alpha, -1.0 / p), 1.0};
  throw std::invalid_argument("norm equivalence needs p > 1 or p < 0");
}

double risk_level_bound(double alpha, double alpha_prime, double p) {
  if (!(alpha_prime > 0.0 && alpha < 1.0 && alpha_prime <= alpha)) {
    throw std::invalid_argument("risk levels must satisfy 0 < alpha' <= alpha < 1");
  }
  if (p > 1.0 && std::isfinite(p)) {
    const double ratio = std::pow((1.0 - alpha) / (1.0 - alpha_prime), 1.0 / (p - 1.0));
    const double shift = std::pow(1.0 / (1.0 - alpha), 1.0 / (1.0 - p));
    return std::pow(ratio - shift, (1.0 - p) / p);
  }
  if (p < 0.0 && std::isfinite(p)) return 1.0 / (1.0 - std::pow(1.0 - alpha_prime, -1.0 / p));
  throw std::invalid_argument("risk level comparison needs p > 1 or p < 0");
}

double lp_norm(const DiscreteDistribution& d, Order p) {
  const auto v = d.values();
  double top = 0.0;
  for (double x : v) top = std::max(top, std::abs(x));
  if (p.is_infinite()) return top;
  if (!(p.value() > 0.0)) throw std::invalid_argument("lp_norm needs p > 0");
  if (top == 0.0) return 0.0;
  std::vector<double> mag(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mag[i] = std::abs(v[i]);
  const kernels::PowerSums s =
      kernels::power_sums(mag, d.probs(), 0.0, -std::log(top), p.value(), p.value());
  return top * std::exp(std::log(s.first) / p.value());
}

double evar_derivative_pprime(const DiscreteDistribution& d, double alpha, double pprime,
                              const EvarOptions& opts) {
  if (!(pprime > 1.0) || !std::isfinite(pprime)) {
    throw std::invalid_argument("conjugate order must lie in (1,inf)");
  }
  if (d.size() < 2) throw std::invalid_argument("derivative needs a nonconstant variable");
  if (!(d.essinf() > 0.0)) throw std::invalid_argument("derivative needs a positive variable");
  const double p = pprime / (pprime - 1.0);
  const RiskResult r = evar_inf_high(d, alpha, p, opts);
  const double beta = 1.0 / (1.0 - alpha);
  const double norm = power_mean(d, p, *r.t_star, PowerMode::plus_part);

  const auto probs = d.probs();
  const auto z = r.density->weights();
  double entropy_term = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] > 0.0) entropy_term += probs[i] * std::pow(z[i], pprime) * std::log(z[i]);
  }
  const double log_beta = std::log(beta);
  return std::pow(beta, 1.0 / p) * norm *
         (log_beta / pprime - entropy_term / (pprime * std::pow(beta, pprime - 1.0)));
}

}  // namespace renyi
