#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "renyi/distribution.hpp"
#include "renyi/entropy.hpp"
#include "renyi/evar.hpp"

namespace renyi {

struct OracleResult {
  double value;
  Density density;
};

/// Brute-force maximum of E[YZ] over densities on the simplex grid of step
/// 1/resolution (coordinates q_i = p_i w_i) that satisfy the entropy budget,
/// followed by one refinement pass at step 1/(20 resolution) around the
/// best point. At most 6 atoms and resolution >= 10.
OracleResult sup_oracle(const DiscreteDistribution& d, const RiskSpec& spec, int resolution);

struct DualNorm {
  double value;
  /// Maximizing t of the one-dimensional ratio; empty when the supremum is
  /// only reached as t -> infinity.
  std::optional<double> t_star;
};

/// Dual norm of the expectation functional Y -> E[YZ] with respect to
/// Y -> EVaR(|Y|), for a raw (not necessarily unit-mean or signed)
/// functional given per atom. p > 1 or p < 0.
DualNorm dual_norm(std::span<const double> probs, std::span<const double> z, double alpha,
                   double p);
DualNorm dual_norm(const Density& z, double alpha, double p);

/// Value of the affine-ratio endpoint expression for p < 0: max of E|Z| and
/// the ratio at t = esssup |Z|^(p'-1). A lower bound of the dual norm.
double dual_norm_affine_bound(std::span<const double> probs, std::span<const double> z,
                              double alpha, double p);

/// Raw functional Z' attaining E[Y Z'] = EVaR(|Y|) * ||Z'||*. Throws
/// std::domain_error when the solve for |Y| has no interior optimizer.
std::vector<double> hb_density_for(const DiscreteDistribution& d, const RiskSpec& spec);

struct Witness {
  std::vector<double> values;  // per atom of the density's base law
  /// The supremum is only approached as t -> infinity; `values` then holds
  /// the limiting direction sign(Z).
  bool at_infinity = false;
};

/// Random variable Y' with E[Y'Z] = EVaR(|Y'|) * ||Z||*.
Witness hb_witness_for(std::span<const double> probs, std::span<const double> z, double alpha,
                       double p);

/// Samples random unit-mean densities, rescales them into the dual unit
/// ball and checks E[YZ] <= EVaR(Y); also checks ||Z*||* <= 1 + 1e-6 for the
/// optimal density. Deterministic for a given seed.
bool alt_dual_check(const DiscreteDistribution& d, const RiskSpec& spec, int trials,
                    unsigned seed = 12345);

struct KusuokaAtom {
  double level;
  double mass;
};

struct StepPoint {
  double breakpoint;  // sigma(u) = value for u in [breakpoint, next breakpoint)
  double value;
};

struct KusuokaMeasure {
  std::vector<KusuokaAtom> atoms;
  std::vector<StepPoint> sigma;

  double total_mass() const;
  /// Right-continuous step function value at u in [0, 1).
  double sigma_at(double u) const;
  double sigma_integral() const;
};

KusuokaMeasure kusuoka(const DiscreteDistribution& d, const RiskSpec& spec,
                       const EvarOptions& opts = {});
double kusuoka_evaluate(const KusuokaMeasure& m, const DiscreteDistribution& d);
/// sigma_mu(u) = sum over atoms with level <= u of mass / (1 - level).
double sigma_from_measure(const KusuokaMeasure& m, double u);

}  // namespace renyi
