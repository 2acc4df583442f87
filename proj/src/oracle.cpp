#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "renyi/duality.hpp"

namespace renyi {
namespace {

constexpr int kMaxAtoms = 6;
constexpr int kRefineFactor = 20;
constexpr int kRefineWindow = 20;

// Entropy budget in the coordinates q_i = p_i w_i:
//   p' > 1:      sum_i p_i^(1-p') q_i^p'   <= beta^(p'-1)
//   p' = 1:      sum_i q_i log(q_i / p_i)  <= log beta
//   0 < p' < 1:  sum_i p_i^(1-p') q_i^p'   >= beta^(p'-1)
struct Budget {
  std::vector<double> probs;
  double pprime = 1.0;
  bool shannon = false;
  bool at_least = false;
  double bound = 0.0;
  double slack = 0.0;

  double term(std::size_t i, double q) const {
    if (q <= 0.0) return 0.0;
    if (shannon) return q * std::log(q / probs[i]);
    return std::pow(probs[i], 1.0 - pprime) * std::pow(q, pprime);
  }
  bool feasible(double total) const {
    return at_least ? total >= bound - slack : total <= bound + slack;
  }
  // Terms are nonnegative except in the Shannon case, so a partial sum above
  // an upper bound can never recover.
  bool prunable(double partial) const { return !at_least && !shannon && partial > bound + slack; }
};

Budget make_budget(const DiscreteDistribution& d, const RiskSpec& spec) {
  Budget b;
  b.probs.assign(d.probs().begin(), d.probs().end());
  const double alpha = spec.alpha;
  const double log_beta = alpha < 1.0 ? -std::log1p(-alpha) : std::numeric_limits<double>::infinity();
  switch (classify(spec.order)) {
    case Regime::shannon:
      b.shannon = true;
      b.bound = log_beta;
      break;
    case Regime::higher:
    case Regime::negative: {
      b.pprime = conjugate(spec.order).value();
      b.at_least = b.pprime < 1.0;
      b.bound = std::exp((b.pprime - 1.0) * log_beta);
      break;
    }
    default:
      throw std::invalid_argument("oracle needs an entropy-constrained regime (p > 1, inf or p < 0)");
  }
  b.slack = 1e-12 * std::max(1.0, std::isfinite(b.bound) ? std::abs(b.bound) : 1.0);
  return b;
}

// Searches integer points k with sum k = total, each coordinate q_i = k_i / total,
// restricted to |k_i - center_i| <= window for the leading n - 2 coordinates
// (window < 0 means unrestricted). The last two coordinates are resolved per line.
class LatticeSearch {
 public:
  LatticeSearch(const Budget& budget, std::span<const double> values, long total, bool tabulate)
      : budget_(budget), values_(values), total_(total), n_(values.size()) {
    if (tabulate) {
      tables_.resize(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        tables_[i].resize(static_cast<std::size_t>(total_) + 1);
        for (long k = 0; k <= total_; ++k) tables_[i][k] = budget_.term(i, q(k));
      }
    }
  }

  void run(const std::vector<long>& center, long window) {
    center_ = center;
    window_ = window;
    k_.assign(n_, 0);
    recurse(0, 0, 0.0);
  }

  bool found() const { return best_value_ > -std::numeric_limits<double>::infinity(); }
  double best_value() const { return best_value_; }
  const std::vector<long>& best() const { return best_; }

  void offer(const std::vector<double>& qv) {
    double total = 0.0;
    double value = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      total += budget_.term(i, qv[i]);
      value += qv[i] * values_[i];
    }
    if (budget_.feasible(total) && value > best_value_) {
      best_value_ = value;
      best_q_ = qv;
      best_.clear();
    }
  }

  std::vector<double> best_q() const {
    if (best_.empty()) return best_q_;
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = q(best_[i]);
    return out;
  }

 private:
  double q(long k) const { return static_cast<double>(k) / static_cast<double>(total_); }
  double term(std::size_t i, long k) const {
    return tables_.empty() ? budget_.term(i, q(k)) : tables_[i][static_cast<std::size_t>(k)];
  }

  void recurse(std::size_t i, long used, double partial) {
    if (budget_.prunable(partial)) return;
    if (i + 2 == n_) {
      line(used, partial);
      return;
    }
    long lo = 0;
    long hi = total_ - used;
    if (window_ >= 0) {
      lo = std::max(lo, center_[i] - window_);
      hi = std::min(hi, center_[i] + window_);
    }
    for (long k = lo; k <= hi; ++k) {
      k_[i] = k;
      recurse(i + 1, used + k, partial + term(i, k));
    }
  }

  // Coordinates a = n-2 and b = n-1 share `rest`. The budget along the line
  // is convex (or concave) in k_a with its extremum near the proportional
  // split, so the feasible k_a form an interval around that split. Values
  // are increasing, so the objective prefers the smallest feasible k_a.
  void line(long used, double partial) {
    const std::size_t a = n_ - 2;
    const std::size_t b = n_ - 1;
    const long rest = total_ - used;
    auto ok = [&](long ka) { return budget_.feasible(partial + term(a, ka) + term(b, rest - ka)); };
    const double split = static_cast<double>(rest) * budget_.probs[a] /
                         (budget_.probs[a] + budget_.probs[b]);
    long seed = -1;
    for (long cand : {static_cast<long>(std::floor(split)), static_cast<long>(std::ceil(split))}) {
      cand = std::clamp(cand, 0L, rest);
      if (ok(cand) && (seed < 0 || cand < seed)) seed = cand;
    }
    if (seed < 0) return;
    long lo = 0;
    long hi = seed;  // ok(hi) holds
    if (ok(lo)) {
      hi = lo;
    } else {
      while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (ok(mid)) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
    }
    k_[a] = hi;
    k_[b] = rest - hi;
    double value = 0.0;
    for (std::size_t i = 0; i < n_; ++i) value += q(k_[i]) * values_[i];
    if (value > best_value_) {
      best_value_ = value;
      best_ = k_;
    }
  }

  const Budget& budget_;
  std::span<const double> values_;
  long total_;
  std::size_t n_;
  std::vector<std::vector<double>> tables_;
  std::vector<long> center_;
  long window_ = -1;
  std::vector<long> k_;
  std::vector<long> best_;
  std::vector<double> best_q_;
  double best_value_ = -std::numeric_limits<double>::infinity();
};

}  // namespace

OracleResult sup_oracle(const DiscreteDistribution& d, const RiskSpec& spec, int resolution) {
  spec.validate();
  if (d.size() > kMaxAtoms) throw std::invalid_argument("oracle supports at most 6 atoms");
  if (resolution < 10) throw std::invalid_argument("oracle resolution must be at least 10");
  const auto values = d.values();
  const auto probs = d.probs();
  const std::size_t n = d.size();
  if (n == 1) return {values[0], Density(d, {1.0})};

  const Budget budget = make_budget(d, spec);
  const std::vector<double> base(probs.begin(), probs.end());

  LatticeSearch coarse(budget, values, resolution, true);
  coarse.run(std::vector<long>(n, 0), -1);
  coarse.offer(base);  // Z = 1 lies off the lattice for generic probabilities
  std::vector<double> q = coarse.best_q();

  const long fine_total = static_cast<long>(resolution) * kRefineFactor;
  std::vector<long> center(n);
  for (std::size_t i = 0; i < n; ++i) center[i] = std::lround(q[i] * static_cast<double>(fine_total));
  LatticeSearch fine(budget, values, fine_total, false);
  fine.offer(q);
  fine.run(center, kRefineWindow);
  q = fine.best_q();

  double value = 0.0;
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    value += q[i] * values[i];
    w[i] = q[i] / probs[i];
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += probs[i] * w[i];
  for (double& x : w) x /= mean;
  return {value, Density(d, std::move(w))};
}

}  // namespace renyi
