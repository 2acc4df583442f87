#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "renyi/duality.hpp"
#include "renyi/entropy.hpp"
#include "renyi/evar.hpp"

using renyi::DiscreteDistribution;
using renyi::Order;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  int failures = 0;
  double worst = 0.0;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) detail = what;
    pass = false;
  }
  void track(double err) { worst = std::max(worst, err); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Order order_of(double p) { return std::isinf(p) ? Order::infinity() : Order(p); }
Order from_pprime(double pp) { return renyi::conjugate(order_of(pp)); }

double evar_value(const DiscreteDistribution& d, double alpha, double p) {
  return renyi::evar(d, {alpha, order_of(p)}).value;
}

std::vector<double> span_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

DiscreteDistribution indicator(double prob_a) {
  const std::vector<double> v{0.0, 1.0}, w{1.0 - prob_a, prob_a};
  return DiscreteDistribution::from_samples(v, w);
}

Verdict sharp_indicator() {
  Verdict v;
  const auto t0 = Clock::now();
  for (double alpha : {0.5, 0.8, 0.95}) {
    const auto d = indicator(1.0 - alpha);
    for (double p : {1.5, 2.0, 4.0}) {
      const double e = evar_value(d, alpha, p);
      const double n = renyi::lp_norm(d, Order(p));
      v.track(std::abs(e - 1.0));
      v.require(std::abs(e - 1.0) <= 1e-9, fmt("alpha=%g p=%g evar=%.17g", alpha, p, e));
      v.require(std::abs(n - std::pow(1.0 - alpha, 1.0 / p)) <= 1e-12,
                fmt("alpha=%g p=%g norm=%.17g", alpha, p, n));
    }
  }
  const double secs = seconds_since(t0);
  v.require(secs < 1.0, fmt("runtime %.3fs", secs));
  if (v.pass) v.detail = fmt("9 cases, max |evar-1| = %.2e, %.4fs", v.worst, secs);
  return v;
}

Verdict order_independent_entropy() {
  Verdict v;
  for (double alpha : {0.3, 0.9}) {
    const renyi::Density z({alpha, 1.0 - alpha}, {0.0, 1.0 / (1.0 - alpha)});
    const double target = -std::log1p(-alpha);
    for (double q : {0.0, 0.5, 1.0, 2.0, 10.0, HUGE_VAL}) {
      const double h = renyi::renyi_entropy(z, order_of(q));
      v.track(std::abs(h - target));
      v.require(std::abs(h - target) <= 1e-12, fmt("alpha=%g q=%g H=%.17g", alpha, q, h));
    }
  }
  if (v.pass) v.detail = fmt("12 cases, max error %.2e", v.worst);
  return v;
}

Verdict oracle_equivalence() {
  Verdict v;
  std::mt19937_64 rng(20261019);
  const auto t0 = Clock::now();
  int cases = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = oracle::random_sample(rng, 1 + trial % 4, 0, 10).dist();
    for (double alpha : {0.25, 0.5, 0.9}) {
      for (double p : {1.5, 2.0, 3.0, -1.0, -3.0}) {
        const double e = evar_value(d, alpha, p);
        const double o = renyi::sup_oracle(d, {alpha, Order(p)}, 400).value;
        v.track(std::abs(e - o));
        v.require(std::abs(e - o) <= 5e-3,
                  fmt("trial %g: |evar - oracle| = %.3e at p=%g", trial, std::abs(e - o), p));
        ++cases;
      }
    }
  }
  const double secs = seconds_since(t0);
  v.require(secs < 60.0, fmt("runtime %.1fs", secs));
  if (v.pass) v.detail = fmt("%g cases, max gap %.2e, %.1fs", cases, v.worst, secs);
  return v;
}

Verdict regime_collapses() {
  Verdict v;
  std::mt19937_64 rng(4);
  int cases = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = oracle::random_sample(rng, 5, -10, 10).dist();
    for (double alpha : {0.0, 0.3, 0.9, 1.0}) {
      for (double p : {0.25, 0.5, 0.75}) {
        const auto r = renyi::evar(d, {alpha, Order(p)});
        v.require(r.value == d.esssup(), fmt("p=%g alpha=%g value %.17g", p, alpha, r.value));
        v.require(r.iterations == 0, "solver invoked in collapse regime");
        ++cases;
      }
    }
    // Put at least 1 - alpha of the mass on the maximum.
    std::vector<double> vals = span_vec(d.values());
    std::vector<double> probs(vals.size(), 0.4 / (vals.size() - 1));
    probs.back() = 0.6;
    const auto heavy = DiscreteDistribution::from_samples(vals, probs);
    for (double alpha : {0.4, 0.5, 0.9}) {
      for (double p : {-0.5, -1.0, -3.0}) {
        const auto r = renyi::evar(heavy, {alpha, Order(p)});
        v.require(r.value == heavy.esssup(), fmt("degenerate p=%g alpha=%g value %.17g", p, alpha, r.value));
        v.require(r.branch == renyi::Branch::degenerate_negative_order, "wrong branch tag");
        ++cases;
      }
    }
  }
  if (v.pass) v.detail = fmt("%g cases, all exactly esssup", cases);
  return v;
}

Verdict monotone_chain() {
  Verdict v;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = oracle::random_sample(rng, 5, -10, 10).dist();
    for (double alpha : {0.2, 0.6, 0.9}) {
      // AVaR, higher orders, Shannon, negative orders, esssup.
      const std::vector<double> pprimes{HUGE_VAL, 20, 10, 3, 1.5, 1.1, 1.0, 0.9, 0.5, 0.2, 0.05};
      double prev = -HUGE_VAL;
      for (double pp : pprimes) {
        const double e = renyi::evar(d, {alpha, from_pprime(pp)}).value;
        v.require(e >= prev - 1e-8, fmt("trial %g: chain broken at p'=%g", trial, pp));
        prev = e;
      }
      v.require(prev <= d.esssup() + 1e-8, "negative order exceeds esssup");
    }
  }
  if (v.pass) v.detail = "20 distributions x 3 levels, 12-link chain";
  return v;
}

Verdict limits() {
  Verdict v;
  const std::vector<std::vector<renyi::Atom>> cases{
      {{0, .3}, {1, .4}, {2, .3}},
      {{-2, .1}, {0.5, .5}, {3, .25}, {7, .15}},
  };
  std::string trace;
  for (const auto& atoms : cases) {
    const auto d = DiscreteDistribution::from_atoms(atoms);
    const double alpha = 0.5;
    const double avar = renyi::avar(d, alpha).value;
    double prev_hi = HUGE_VAL, prev_lo = HUGE_VAL;
    for (double h : {1e-1, 1e-2, 1e-3}) {
      const double hi = std::abs(evar_value(d, alpha, 1.0 + h) - avar);
      const double lo = std::abs(evar_value(d, alpha, -h) - d.esssup());
      v.require(hi < prev_hi, fmt("p=1+h not decreasing at h=%g (%.3e)", h, hi));
      // Once esssup - evar drops below the resolution of esssup it is 0.
      v.require(prev_lo > 0.0 ? lo < prev_lo : lo == 0.0, fmt("p=-h not decreasing at h=%g (%.3e)", h, lo));
      prev_hi = hi;
      prev_lo = lo;
      if (&atoms == &cases.front()) trace += fmt(" h=%g: %.2e/%.2e", h, hi, lo);
    }
  }
  if (v.pass) v.detail = "gaps (AVaR/esssup)" + trace;
  return v;
}

Verdict log_convexity() {
  Verdict v;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = oracle::random_sample(rng, 5, 0, 10).dist();
    for (int k = 0; k < 10; ++k) {
      const double a = 1.0 + 10.0 * u(rng) + 1e-3;
      const double b = 1.0 + 10.0 * u(rng) + 1e-3;
      const double lam = u(rng);
      const double alpha = 0.05 + 0.9 * u(rng);
      auto ev = [&](double pp) { return renyi::evar(d, {alpha, from_pprime(pp)}).value; };
      const double lhs = ev((1 - lam) * a + lam * b);
      const double rhs = std::pow(ev(a), 1 - lam) * std::pow(ev(b), lam);
      v.track(lhs - rhs);
      v.require(lhs <= rhs + 1e-9, fmt("trial %g: excess %.3e", trial, lhs - rhs));
    }
  }
  if (v.pass) v.detail = fmt("200 triples, max lhs-rhs %.2e", v.worst);
  return v;
}

Verdict derivative() {
  Verdict v;
  std::mt19937_64 rng(8);
  const double h = 1e-4;
  for (int trial = 0; trial < 10; ++trial) {
    const auto d = oracle::random_sample(rng, 3 + trial % 3, 0.5, 10).dist();
    for (double alpha : {0.3, 0.8}) {
      for (double pp : {1.5, 2.0, 4.0}) {
        const double g = renyi::evar_derivative_pprime(d, alpha, pp);
        const double fd = (renyi::evar(d, {alpha, from_pprime(pp + h)}).value -
                           renyi::evar(d, {alpha, from_pprime(pp - h)}).value) / (2 * h);
        const double rel = std::abs(g - fd) / std::max(std::abs(fd), 1e-300);
        v.track(rel);
        v.require(rel <= 1e-3, fmt("trial %g: analytic %.6e vs fd %.6e", trial, g, fd));
        v.require(g <= 0.0, fmt("positive derivative %.3e", g));
      }
    }
  }
  if (v.pass) v.detail = fmt("60 cases, max relative error %.2e", v.worst);
  return v;
}

Verdict kusuoka_identity() {
  Verdict v;
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = oracle::random_sample(rng, 5, -10, 10).dist();
    for (double alpha : {0.25, 0.75}) {
      for (double p : {2.0, 3.0, -1.0}) {
        const double e = evar_value(d, alpha, p);
        const auto m = renyi::kusuoka(d, {alpha, Order(p)});
        const double k = renyi::kusuoka_evaluate(m, d);
        v.track(std::abs(k - e));
        v.require(std::abs(k - e) <= 1e-8, fmt("trial %g: |mixture - evar| = %.3e", trial, std::abs(k - e)));
      }
      const auto m = renyi::kusuoka(d, {alpha, Order(1.0)});
      v.require(m.atoms.size() == 1 && m.atoms[0].level == alpha && std::abs(m.atoms[0].mass - 1.0) <= 1e-12,
                "p=1 measure is not the Dirac at alpha");
    }
  }
  if (v.pass) v.detail = fmt("120 instances, max error %.2e; p=1 gives delta_alpha", v.worst);
  return v;
}

Verdict hahn_banach() {
  Verdict v;
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int counts[2] = {0, 0};
  int finite_witnesses = 0;
  for (int regime = 0; regime < 2; ++regime) {
    const std::vector<double> orders = regime == 0 ? std::vector<double>{1.5, 2.0, 3.0} : std::vector<double>{-0.5, -1.0, -3.0};
    int instances = 0;
    int attempts = 0;
    while (instances < 20 && attempts++ < 200) {
      const auto s = oracle::random_sample(rng, 4, -5, 10);
      const auto d = s.dist();
      const double alpha = 0.1 + 0.8 * u(rng);
      const double p = orders[instances % orders.size()];
      std::vector<double> zp;
      try {
        zp = renyi::hb_density_for(d, {alpha, Order(p)});
      } catch (const std::domain_error&) {
        continue;
      }
      const auto probs = span_vec(d.probs());
      const auto vals = span_vec(d.values());
      std::vector<double> mags(vals.size());
      for (std::size_t i = 0; i < vals.size(); ++i) mags[i] = std::abs(vals[i]);
      double lhs = 0.0;
      for (std::size_t i = 0; i < zp.size(); ++i) lhs += probs[i] * vals[i] * zp[i];
      const double norm_y = evar_value(DiscreteDistribution::from_samples(mags, probs), alpha, p);
      const double rhs = norm_y * renyi::dual_norm(probs, zp, alpha, p).value;
      v.track(std::abs(lhs - rhs) / std::abs(rhs));
      v.require(std::abs(lhs - rhs) <= 1e-6 * std::abs(rhs), fmt("Y-side equality off by %.3e (p=%g)", std::abs(lhs - rhs) / std::abs(rhs), p));

      // Small levels leave random densities outside the entropy budget, so
      // the dual norm is attained at a finite witness more often.
      const double alpha_z = 0.1;
      const auto z = oracle::random_density(rng, probs, true);
      const auto w = renyi::hb_witness_for(probs, z, alpha_z, p);
      const double nz = renyi::dual_norm(probs, z, alpha_z, p).value;
      if (w.at_infinity) {
        v.require(std::abs(nz - oracle::expect(probs, z)) <= 1e-6 * nz, "limit witness but norm differs from E|Z|");
      } else {
        std::vector<double> wm(w.values.size()), yz(w.values.size());
        for (std::size_t i = 0; i < wm.size(); ++i) {
          wm[i] = std::abs(w.values[i]);
          yz[i] = w.values[i] * z[i];
        }
        const double l2 = oracle::expect(probs, yz);
        const double r2 = evar_value(DiscreteDistribution::from_samples(wm, probs), alpha_z, p) * nz;
        ++finite_witnesses;
        v.track(std::abs(l2 - r2) / r2);
        v.require(std::abs(l2 - r2) <= 1e-6 * r2, fmt("Z-side equality off by %.3e (p=%g)", std::abs(l2 - r2) / r2, p));
      }

      const auto r = renyi::evar(d, {alpha, Order(p)});
      const double nstar = renyi::dual_norm(*r.density, alpha, p).value;
      v.require(nstar <= 1.0 + 1e-6, fmt("optimal density has dual norm %.9f", nstar));
      v.require(renyi::alt_dual_check(d, {alpha, Order(p)}, 50, 1000u + instances), "alternative dual representation");
      ++instances;
    }
    counts[regime] = instances;
    v.require(instances == 20, "not enough interior instances");
  }
  v.require(finite_witnesses > 0, "no finite Z-side witness exercised");
  if (v.pass) {
    v.detail = fmt("%g + %g instances (%g finite Z-side witnesses), ", counts[0], counts[1], finite_witnesses) +
               fmt("max relative error %.2e", v.worst);
  }
  return v;
}

Verdict sandwiches() {
  Verdict v;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = oracle::random_sample(rng, 5, -10, 10);
    const auto d = s.dist();
    const auto mag = d.map([](double x) { return std::abs(x); });
    const double alpha = 0.02 + 0.96 * u(rng);
    for (double p : {1.5, 2.0, 4.0}) {
      const auto b = renyi::norm_equivalence_bounds(alpha, p);
      const double n = renyi::lp_norm(d, Order(p));
      const double e = evar_value(mag, alpha, p);
      v.require(b.lower * n <= e + 1e-8 && e <= b.upper * n + 1e-8, fmt("p>1 sandwich, trial %g", trial));
    }
    for (double p : {-0.5, -1.0, -3.0}) {
      const auto b = renyi::norm_equivalence_bounds(alpha, p);
      const double n = renyi::lp_norm(d, Order::infinity());
      const double e = evar_value(mag, alpha, p);
      v.require(b.lower * n <= e + 1e-8 && e <= b.upper * n + 1e-8, fmt("p<0 sandwich, trial %g", trial));
    }
    const auto z = oracle::random_density(rng, s.probs, false);
    for (double p : {1.5, 2.0, 4.0}) {
      const double pp = p / (p - 1.0);
      double m = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) m += s.probs[i] * std::pow(z[i], pp);
      const double nz = std::pow(m, 1.0 / pp);
      const double dn = renyi::dual_norm(s.probs, z, alpha, p).value;
      const double c = renyi::norm_equivalence_bounds(alpha, p).lower;
      v.require(std::pow(1.0 - alpha, (pp - 1.0) / pp) * nz <= dn + 1e-8 && dn <= nz / c + 1e-8,
                fmt("dual sandwich, trial %g p=%g", trial, p));
    }
  }
  std::string sharp;
  const double eps = 1e-6;
  for (double alpha : {0.1, 0.25}) {
    const double p = 2.0;
    const double c = renyi::norm_equivalence_bounds(alpha, p).lower;
    const std::vector<double> y{0.0, std::pow(eps, -1.0 / p)}, w{1.0 - eps, eps};
    const auto d = DiscreteDistribution::from_samples(y, w);
    const double ratio = evar_value(d, alpha, p) / renyi::lp_norm(d, Order(p));
    v.require(std::abs(ratio - c) <= 0.02 * c, fmt("lower constant %.6f vs witness ratio %.6f (alpha=%g)", c, ratio, alpha));
    sharp += fmt(" p=2,a=%g: %.4f/%.4f", alpha, ratio, c);
  }
  // The indicator family converges like eps^(1/(1-p)), so p = -3 needs a
  // much smaller mass than the power family above.
  const double eps_indicator = 1e-12;
  for (double alpha : {0.25, 0.5}) {
    for (double p : {-1.0, -3.0}) {
      const double c = renyi::norm_equivalence_bounds(alpha, p).lower;
      const double ratio = evar_value(indicator(eps_indicator), alpha, p);
      v.require(std::abs(ratio - c) <= 0.02 * c, fmt("lower constant %.6f vs witness ratio %.6f (alpha=%g)", c, ratio, alpha));
      sharp += fmt(" p=%g,a=%g: %.4f", p, alpha, ratio) + fmt("/%.4f", c);
    }
  }
  if (v.pass) v.detail = "150 instances x 3 sandwiches; ratio/constant" + sharp;
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"sharp indicator reproduction", sharp_indicator},
      {"order-independent entropy", order_independent_entropy},
      {"strong duality against the enumeration oracle", oracle_equivalence},
      {"regime collapses", regime_collapses},
      {"monotonicity chain", monotone_chain},
      {"limits at p=1 and p=0", limits},
      {"log-convexity in the conjugate order", log_convexity},
      {"conjugate-order derivative", derivative},
      {"Kusuoka identity", kusuoka_identity},
      {"Hahn-Banach equalities and alternative dual", hahn_banach},
      {"norm sandwiches and sharpness", sandwiches},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failed;
    std::printf("[%s] %zu %s: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
