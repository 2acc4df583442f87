#include <cmath>

#include "renyi/kernels.hpp"

namespace renyi::kernels::scalar {

PowerSums power_sums(std::span<const double> values, std::span<const double> probs, double shift,
                     double log_scale, double k1, double k2) {
  PowerSums out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double g = values[i] - shift;
    if (!(g > 0.0)) continue;
    const double lr = std::log(g) + log_scale;
    out.first += probs[i] * std::exp(k1 * lr);
    out.second += probs[i] * std::exp(k2 * lr);
  }
  return out;
}

TiltSums tilt_sums(std::span<const double> values, std::span<const double> probs, double theta,
                   double center) {
  TiltSums out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double dv = values[i] - center;
    const double w = probs[i] * std::exp(theta * dv);
    out.mass += w;
    out.moment += w * dv;
  }
  return out;
}

}  // namespace renyi::kernels::scalar
