#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "renyi/kernels.hpp"

namespace renyi::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(RENYI_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

// RENYI_RISK_KERNEL=scalar|avx2 pins the backend; anything else picks the best.
Backend initial_backend() {
  if (const char* env = std::getenv("RENYI_RISK_KERNEL")) {
    const std::string name(env);
    if (name == "scalar") return Backend::scalar;
    if (name == "avx2" && cpu_has_avx2()) return Backend::avx2;
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

}  // namespace

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return cpu_has_avx2();
  }
  return false;
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_supported(b)) {
    throw std::invalid_argument("kernel backend not available: " + std::string(to_string(b)));
  }
  backend_slot().store(b, std::memory_order_relaxed);
}

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

PowerSums power_sums(std::span<const double> values, std::span<const double> probs, double shift,
                     double log_scale, double k1, double k2) {
#ifdef RENYI_HAVE_AVX2
  if (active_backend() == Backend::avx2) {
    return avx2::power_sums(values, probs, shift, log_scale, k1, k2);
  }
#endif
  return scalar::power_sums(values, probs, shift, log_scale, k1, k2);
}

TiltSums tilt_sums(std::span<const double> values, std::span<const double> probs, double theta,
                   double center) {
#ifdef RENYI_HAVE_AVX2
  if (active_backend() == Backend::avx2) {
    return avx2::tilt_sums(values, probs, theta, center);
  }
#endif
  return scalar::tilt_sums(values, probs, theta, center);
}

}  // namespace renyi::kernels
