#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace renyi {

struct Atom {
  double value;
  double prob;
};

/// Finite law of a real random variable: strictly increasing support points
/// with positive probabilities summing to one. Immutable after construction.
class DiscreteDistribution {
 public:
  /// Equal weights when `weights` is empty. Duplicate values are merged and
  /// probabilities renormalized. Throws std::invalid_argument on empty
  /// input, non-finite values, negative weights or a zero weight sum.
  static DiscreteDistribution from_samples(std::span<const double> values,
                                           std::span<const double> weights = {});
  static DiscreteDistribution from_atoms(std::span<const Atom> atoms);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<const double> probs() const { return probs_; }
  /// esssup - value for each atom; nonnegative, exactly zero at the top atom.
  std::span<const double> gaps_from_max() const { return gaps_; }
  std::vector<Atom> atoms() const;

  double essinf() const { return values_.front(); }
  double esssup() const { return values_.back(); }
  double expectation() const { return mean_; }
  /// P(Y = esssup Y).
  double top_prob() const { return probs_.back(); }

  /// Distribution of f(Y) with the same atom probabilities.
  template <typename F>
  DiscreteDistribution map(F&& f) const {
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(values_[i]);
    return from_samples(v, probs_);
  }

 private:
  DiscreteDistribution(std::vector<double> values, std::vector<double> probs);

  std::vector<double> values_;
  std::vector<double> probs_;
  std::vector<double> gaps_;
  double mean_ = 0.0;
};

enum class PowerMode {
  plus_part,  // g = (v - shift)_+
  full,       // g = shift - v, must be positive when p < 0
};

/// (sum_i p_i g(v_i)^p)^(1/p), computed in log space. Throws
/// std::domain_error when a nonpositive base would be raised to a negative
/// (or, in full mode, fractional) power.
double power_mean(const DiscreteDistribution& d, double p, double shift, PowerMode mode);

/// Left-continuous lower quantile: smallest v with P(Y <= v) >= alpha, and
/// essinf for alpha = 0. Requires alpha in [0, 1).
double var_level(const DiscreteDistribution& d, double alpha);

struct AvarSolution {
  double value;
  double var;                   // the optimizer t*, equal to var_level
  std::vector<double> density;  // (1/(1-alpha)) times the generalized tail indicator
};

/// Closed form of inf_t { t + E(Y - t)_+ / (1 - alpha) } from the sorted tail.
AvarSolution avar_solution(const DiscreteDistribution& d, double alpha);

}  // namespace renyi
