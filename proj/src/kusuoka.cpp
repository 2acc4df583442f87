#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "renyi/duality.hpp"

namespace renyi {
namespace {

KusuokaMeasure single_level(double level, double height) {
  KusuokaMeasure m;
  m.atoms.push_back({level, 1.0});
  if (level > 0.0) m.sigma.push_back({0.0, 0.0});
  m.sigma.push_back({level, height});
  return m;
}

}  // namespace

double KusuokaMeasure::total_mass() const {
  double s = 0.0;
  for (const KusuokaAtom& a : atoms) s += a.mass;
  return s;
}

double KusuokaMeasure::sigma_at(double u) const {
  double v = 0.0;
  for (const StepPoint& s : sigma) {
    if (s.breakpoint <= u) v = s.value;
  }
  return v;
}

double KusuokaMeasure::sigma_integral() const {
  double s = 0.0;
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    const double next = j + 1 < sigma.size() ? sigma[j + 1].breakpoint : 1.0;
    s += (next - sigma[j].breakpoint) * sigma[j].value;
  }
  return s;
}

KusuokaMeasure kusuoka(const DiscreteDistribution& d, const RiskSpec& spec,
                       const EvarOptions& opts) {
  spec.validate();
  if (spec.alpha == 1.0) return single_level(1.0 - d.top_prob(), 1.0 / d.top_prob());
  const RiskResult r = evar(d, spec, opts);
  if (r.branch == Branch::avar) return single_level(spec.alpha, spec.beta());

  // sigma is the quantile function of Z*: weights sorted ascending on the
  // cumulative base probabilities.
  const auto w = r.density->weights();
  const auto probs = d.probs();
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });

  KusuokaMeasure m;
  double u = 0.0;
  for (std::size_t idx : order) {
    if (m.sigma.empty() || w[idx] != m.sigma.back().value) m.sigma.push_back({u, w[idx]});
    u += probs[idx];
  }
  m.atoms.push_back({0.0, m.sigma.front().value});
  for (std::size_t j = 1; j < m.sigma.size(); ++j) {
    const double jump = m.sigma[j].value - m.sigma[j - 1].value;
    m.atoms.push_back({m.sigma[j].breakpoint, (1.0 - m.sigma[j].breakpoint) * jump});
  }
  if (m.atoms.front().mass == 0.0) m.atoms.erase(m.atoms.begin());
  return m;
}

double kusuoka_evaluate(const KusuokaMeasure& m, const DiscreteDistribution& d) {
  double s = 0.0;
  for (const KusuokaAtom& a : m.atoms) {
    if (a.mass == 0.0) continue;
    const double v = a.level < 1.0 ? avar_solution(d, a.level).value : d.esssup();
    s += a.mass * v;
  }
  return s;
}

double sigma_from_measure(const KusuokaMeasure& m, double u) {
  double s = 0.0;
  for (const KusuokaAtom& a : m.atoms) {
    if (a.level <= u) s += a.mass / (1.0 - a.level);
  }
  return s;
}

}  // namespace renyi
