#pragma once

#include <span>
#include <string_view>

// Data-parallel inner loops over distribution atoms. Every kernel has a
// scalar reference implementation; SIMD variants are chosen at runtime and
// must agree with the reference to rounding (see tests/kernels_test.cpp).

namespace renyi::kernels {

enum class Backend { scalar, avx2 };

bool backend_supported(Backend b);
Backend active_backend();
/// Throws std::invalid_argument if the backend is not supported on this CPU
/// or was not compiled in.
void set_backend(Backend b);
std::string_view to_string(Backend b);

struct PowerSums {
  double first = 0.0;
  double second = 0.0;
};

/// For every i with g_i = values[i] - shift > 0, with log r_i = log g_i + log_scale:
///   first  = sum_i probs[i] * exp(k1 * log r_i)
///   second = sum_i probs[i] * exp(k2 * log r_i)
/// Atoms with g_i <= 0 contribute nothing.
PowerSums power_sums(std::span<const double> values, std::span<const double> probs, double shift,
                     double log_scale, double k1, double k2);

struct TiltSums {
  double mass = 0.0;    // sum_i p_i exp(theta (v_i - center))
  double moment = 0.0;  // sum_i p_i exp(theta (v_i - center)) (v_i - center)
};

TiltSums tilt_sums(std::span<const double> values, std::span<const double> probs, double theta,
                   double center);

namespace scalar {
PowerSums power_sums(std::span<const double> values, std::span<const double> probs, double shift,
                     double log_scale, double k1, double k2);
TiltSums tilt_sums(std::span<const double> values, std::span<const double> probs, double theta,
                   double center);
}  // namespace scalar

#ifdef RENYI_HAVE_AVX2
namespace avx2 {
PowerSums power_sums(std::span<const double> values, std::span<const double> probs, double shift,
                     double log_scale, double k1, double k2);
TiltSums tilt_sums(std::span<const double> values, std::span<const double> probs, double theta,
                   double center);
// Elementwise exp/log used by the kernels; exposed for accuracy tests.
void exp_array(std::span<const double> in, std::span<double> out);
void log_array(std::span<const double> in, std::span<double> out);
}  // namespace avx2
#endif

}  // namespace renyi::kernels
