#pragma once

#include <span>
#include <vector>

#include "renyi/distribution.hpp"
#include "renyi/order.hpp"

namespace renyi {

/// Nonnegative per-atom reweighting Z with E Z = 1 under the atom
/// probabilities it was built against.
class Density {
 public:
  /// Throws std::invalid_argument on size mismatch, a negative or
  /// non-finite weight, or |E Z - 1| > 1e-10.
  Density(const DiscreteDistribution& d, std::vector<double> weights);
  /// Same checks; `probs` must be positive and sum to one within 1e-10.
  Density(std::vector<double> probs, std::vector<double> weights);

  static Density constant(const DiscreteDistribution& d);

  std::size_t size() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t i) const { return weights_[i]; }

 private:
  std::vector<double> probs_;
  std::vector<double> weights_;
};

/// Order-q Renyi entropy. q = 0, 1 and inf are dispatched exactly.
/// For q < 0 every weight must be strictly positive (std::domain_error).
double renyi_entropy(const Density& z, Order q);

/// log E Z^q for finite q != 0, in log space. Zero weights are skipped for
/// q > 0; for q < 0 they raise std::domain_error.
double log_moment(std::span<const double> probs, std::span<const double> weights, double q);

double renyi_divergence(const Density& z, Order q);
/// (E Z^q - 1) / (q - 1); q = 1 raises std::invalid_argument.
double hellinger_divergence(const Density& z, double q);
double kl_divergence(const Density& z);

}  // namespace renyi
