#include "renyi/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "renyi/kernels.hpp"

namespace renyi {
namespace {

void check_weights(std::span<const double> probs, std::span<const double> weights) {
  if (probs.size() != weights.size()) {
    throw std::invalid_argument("density has the wrong number of weights");
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
      throw std::invalid_argument("density weights must be finite and nonnegative");
    }
    mean += probs[i] * weights[i];
  }
  if (std::abs(mean - 1.0) > 1e-10) throw std::invalid_argument("density must have unit mean");
}

}  // namespace

Density::Density(const DiscreteDistribution& d, std::vector<double> weights)
    : probs_(d.probs().begin(), d.probs().end()), weights_(std::move(weights)) {
  check_weights(probs_, weights_);
}

Density::Density(std::vector<double> probs, std::vector<double> weights)
    : probs_(std::move(probs)), weights_(std::move(weights)) {
  if (probs_.empty()) throw std::invalid_argument("density needs at least one atom");
  for (double p : probs_) {
    if (!std::isfinite(p) || !(p > 0.0)) throw std::invalid_argument("probabilities must be positive");
  }
  if (std::abs(std::accumulate(probs_.begin(), probs_.end(), 0.0) - 1.0) > 1e-10) {
    throw std::invalid_argument("probabilities must sum to one");
  }
  check_weights(probs_, weights_);
}

Density Density::constant(const DiscreteDistribution& d) {
  return Density(d, std::vector<double>(d.size(), 1.0));
}

double log_moment(std::span<const double> probs, std::span<const double> weights, double q) {
  if (q == 0.0 || !std::isfinite(q)) throw std::domain_error("log moment needs finite q != 0");
  double ref = q > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  for (double w : weights) {
    if (q < 0.0 && !(w > 0.0)) {
      throw std::domain_error("negative order needs strictly positive weights");
    }
    ref = q > 0.0 ? std::max(ref, w) : std::min(ref, w);
  }
  if (!(ref > 0.0)) return -std::numeric_limits<double>::infinity();
  const kernels::PowerSums s = kernels::power_sums(weights, probs, 0.0, -std::log(ref), q, q);
  return q * std::log(ref) + std::log(s.first);
}

double renyi_entropy(const Density& z, Order q) {
  const auto w = z.weights();
  const auto p = z.probs();
  if (q.is_infinite()) {
    double top = 0.0;
    for (double x : w) top = std::max(top, x);
    return std::log(top);
  }
  const double qv = q.value();
  if (std::isnan(qv) || qv == -std::numeric_limits<double>::infinity()) {
    throw std::invalid_argument("entropy order must be a real number or +inf");
  }
  if (qv == 0.0) {
    double support = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] != 0.0) support += p[i];
    }
    return 0.0 - std::log(support);
  }
  if (qv == 1.0) {
    double h = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] > 0.0) h += p[i] * w[i] * std::log(w[i]);
    }
    return h;
  }
  return log_moment(p, w, qv) / (qv - 1.0);
}

double renyi_divergence(const Density& z, Order q) { return renyi_entropy(z, q); }

double hellinger_divergence(const Density& z, double q) {
  if (q == 1.0) throw std::invalid_argument("Hellinger divergence is undefined at q = 1");
  if (q == 0.0) {
    double support = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (z[i] != 0.0) support += z.probs()[i];
    }
    return 1.0 - support;
  }
  return std::expm1(log_moment(z.probs(), z.weights(), q)) / (q - 1.0);
}

double kl_divergence(const Density& z) { return renyi_entropy(z, Order(1.0)); }

}  // namespace renyi
