#include "renyi/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "renyi/kernels.hpp"

namespace renyi {

DiscreteDistribution DiscreteDistribution::from_samples(std::span<const double> values,
                                                        std::span<const double> weights) {
  if (values.empty()) throw std::invalid_argument("distribution needs at least one value");
  if (!weights.empty() && weights.size() != values.size()) {
    throw std::invalid_argument("values and weights differ in length");
  }
  std::vector<Atom> atoms(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    if (!std::isfinite(values[i])) throw std::invalid_argument("values must be finite");
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("weights must be finite and nonnegative");
    }
    atoms[i] = {values[i], w};
  }
  return from_atoms(atoms);
}

DiscreteDistribution DiscreteDistribution::from_atoms(std::span<const Atom> atoms) {
  if (atoms.empty()) throw std::invalid_argument("distribution needs at least one atom");
  std::vector<Atom> sorted(atoms.begin(), atoms.end());
  for (const Atom& a : sorted) {
    if (!std::isfinite(a.value)) throw std::invalid_argument("values must be finite");
    if (!std::isfinite(a.prob) || a.prob < 0.0) {
      throw std::invalid_argument("weights must be finite and nonnegative");
    }
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Atom& a, const Atom& b) { return a.value < b.value; });

  std::vector<double> values;
  std::vector<double> probs;
  for (const Atom& a : sorted) {
    if (!values.empty() && values.back() == a.value) {
      probs.back() += a.prob;
    } else {
      values.push_back(a.value);
      probs.push_back(a.prob);
    }
  }
  // Drop zero-mass atoms; they carry no information about the law.
  std::size_t k = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (probs[i] > 0.0) {
      values[k] = values[i];
      probs[k] = probs[i];
      ++k;
    }
  }
  values.resize(k);
  probs.resize(k);
  if (values.empty()) throw std::invalid_argument("weights sum to zero");

  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= total;
  return DiscreteDistribution(std::move(values), std::move(probs));
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> values, std::vector<double> probs)
    : values_(std::move(values)), probs_(std::move(probs)) {
  gaps_.resize(values_.size());
  const double top = values_.back();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    gaps_[i] = top - values_[i];
    mean_ += probs_[i] * values_[i];
  }
  mean_ = std::clamp(mean_, values_.front(), values_.back());
}

std::vector<Atom> DiscreteDistribution::atoms() const {
  std::vector<Atom> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {values_[i], probs_[i]};
  return out;
}

double power_mean(const DiscreteDistribution& d, double p, double shift, PowerMode mode) {
  if (p == 0.0 || !std::isfinite(p)) throw std::domain_error("power mean needs finite p != 0");
  const auto v = d.values();
  const auto pr = d.probs();

  // Reference magnitude: the largest base, so every scaled ratio is <= 1.
  double ref = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double g = mode == PowerMode::plus_part ? v[i] - shift : shift - v[i];
    if (mode == PowerMode::full && !(g > 0.0) && (p < 0.0 || g < 0.0)) {
      throw std::domain_error("nonpositive base in power mean");
    }
    if (mode == PowerMode::plus_part && p < 0.0 && !(g > 0.0)) {
      throw std::domain_error("nonpositive base raised to a negative power");
    }
    ref = std::max(ref, g);
  }
  if (!(ref > 0.0)) return 0.0;

  kernels::PowerSums s;
  if (mode == PowerMode::plus_part) {
    s = kernels::power_sums(v, pr, shift, -std::log(ref), p, p);
  } else {
    // shift - v = (-v) - (-shift); reuse the plus-part kernel on negated values.
    std::vector<double> neg(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    s = kernels::power_sums(neg, pr, -shift, -std::log(ref), p, p);
  }
  return ref * std::exp(std::log(s.first) / p);
}

double var_level(const DiscreteDistribution& d, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0,1)");
  if (alpha == 0.0) return d.essinf();
  const auto v = d.values();
  const auto pr = d.probs();
  double cdf = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    cdf += pr[i];
    if (cdf >= alpha - 1e-13) return v[i];
  }
  return d.esssup();
}

AvarSolution avar_solution(const DiscreteDistribution& d, double alpha) {
  const double var = var_level(d, alpha);
  const double beta = 1.0 / (1.0 - alpha);
  const auto v = d.values();
  const auto pr = d.probs();

  double below = 0.0;  // P(Y <= VaR)
  double tail = 0.0;   // E[Y; Y > VaR]
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] <= var) {
      below += pr[i];
    } else {
      tail += pr[i] * v[i];
    }
  }
  const double split = std::max(0.0, below - alpha);  // mass of the VaR atom inside the tail
  AvarSolution out;
  out.var = var;
  out.value = beta * (tail + split * var);
  out.density.assign(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > var) {
      out.density[i] = beta;
    } else if (v[i] == var) {
      out.density[i] = beta * std::clamp(split / pr[i], 0.0, 1.0);
    }
  }
  out.value = std::clamp(out.value, var, d.esssup());
  return out;
}

}  // namespace renyi
