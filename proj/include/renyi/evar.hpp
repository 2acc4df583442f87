#pragma once

#include <optional>
#include <string_view>

#include "renyi/distribution.hpp"
#include "renyi/entropy.hpp"
#include "renyi/order.hpp"
#include "renyi/solver.hpp"

namespace renyi {

struct RiskSpec {
  double alpha = 0.0;
  Order order{1.0};

  /// Throws std::invalid_argument ("alpha must lie in [0,1]", or on p = 0,
  /// p = -inf, NaN).
  void validate() const;
  double beta() const { return 1.0 / (1.0 - alpha); }
};

enum class Branch {
  avar,
  higher_order,
  shannon,
  esssup_collapse,
  negative_order,
  degenerate_negative_order,
  expectation,
  esssup_level1,
};

std::string_view to_string(Branch b);

struct RiskResult {
  double value = 0.0;
  std::optional<double> t_star;
  std::optional<Density> density;
  Branch branch = Branch::expectation;
  int iterations = 0;
  double residual = 0.0;  // |f'(t*)| or the constraint gap of the last solve
};

struct EvarOptions {
  double tol = kDefaultTol;
  int max_iterations = 10000;
};

RiskResult evar(const DiscreteDistribution& d, const RiskSpec& spec, const EvarOptions& opts = {});

RiskResult avar(const DiscreteDistribution& d, double alpha);
RiskResult evar_inf_high(const DiscreteDistribution& d, double alpha, double p,
                         const EvarOptions& opts = {});
RiskResult evar_inf_neg(const DiscreteDistribution& d, double alpha, double p,
                        const EvarOptions& opts = {});
RiskResult evar_shannon(const DiscreteDistribution& d, double alpha, const EvarOptions& opts = {});

/// d/dp' of the risk value at conjugate order p' > 1, for Y > 0 nonconstant.
double evar_derivative_pprime(const DiscreteDistribution& d, double alpha, double pprime,
                              const EvarOptions& opts = {});

struct NormBounds {
  double lower;
  double upper;
};

/// Constants with lower * ||Y|| <= EVaR(|Y|) <= upper * ||Y||, where the
/// norm is L^p for p > 1 and L^inf for p < 0.
NormBounds norm_equivalence_bounds(double alpha, double p);

/// Factor k with EVaR_alpha(Y) <= k * EVaR_alpha_prime(Y) for Y >= 0.
double risk_level_bound(double alpha, double alpha_prime, double p);

/// (E |Y|^p)^(1/p) for p > 0 finite; max |Y| for p = inf.
double lp_norm(const DiscreteDistribution& d, Order p);

}  // namespace renyi
