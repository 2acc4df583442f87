// AVX2 + FMA variants. Compiled with -mavx2 -mfma; only called after a
// runtime cpuid check (see dispatch.cpp).

#include <immintrin.h>

#include <algorithm>
#include <array>
#include <cstdint>

#include "renyi/kernels.hpp"

namespace renyi::kernels::avx2 {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d poly5(__m256d x, double c0, double c1, double c2, double c3, double c4,
                     double c5) {
  __m256d r = _mm256_set1_pd(c0);
  r = _mm256_fmadd_pd(r, x, _mm256_set1_pd(c1));
  r = _mm256_fmadd_pd(r, x, _mm256_set1_pd(c2));
  r = _mm256_fmadd_pd(r, x, _mm256_set1_pd(c3));
  r = _mm256_fmadd_pd(r, x, _mm256_set1_pd(c4));
  return _mm256_fmadd_pd(r, x, _mm256_set1_pd(c5));
}

// Cephes-style exp: range reduction by ln 2 and a (2,3) Pade form.
// Arguments below -708 flush to zero; the upper end is clamped at 709.
inline __m256d exp_pd(__m256d x) {
  const __m256d underflow = _mm256_cmp_pd(x, _mm256_set1_pd(-708.0), _CMP_LT_OQ);
  x = _mm256_min_pd(x, _mm256_set1_pd(709.0));
  x = _mm256_max_pd(x, _mm256_set1_pd(-708.0));

  const __m256d n =
      _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634073599)),
                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  x = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125E-1), x);
  x = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212E-6), x);

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d p = _mm256_set1_pd(1.26177193074810590878E-4);
  p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, x);
  __m256d q = _mm256_set1_pd(3.00198505138664455042E-6);
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.00000000000000000009E0));
  __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  r = _mm256_fmadd_pd(_mm256_set1_pd(2.0), r, _mm256_set1_pd(1.0));

  // 2^n through the exponent field.
  const __m128i ni = _mm256_cvtpd_epi32(n);
  __m256i bits = _mm256_cvtepi32_epi64(_mm_add_epi32(ni, _mm_set1_epi32(1023)));
  bits = _mm256_slli_epi64(bits, 52);
  r = _mm256_mul_pd(r, _mm256_castsi256_pd(bits));
  return _mm256_andnot_pd(underflow, r);
}

// Cephes-style log for positive normal inputs: mantissa in [sqrt(1/2), sqrt(2))
// and a (5,5) rational approximation of log(1+x).
inline __m256d log_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_bits = _mm256_srli_epi64(bits, 52);
  const __m256d magic = _mm256_castsi256_pd(_mm256_set1_epi64x(0x4330000000000000LL));
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(exp_bits, _mm256_castpd_si256(magic))), magic);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1022.0));

  const __m256i mant_mask = _mm256_set1_epi64x(0x000fffffffffffffLL);
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, mant_mask), _mm256_set1_epi64x(0x3fe0000000000000LL)));

  const __m256d small = _mm256_cmp_pd(m, _mm256_set1_pd(0.70710678118654752440), _CMP_LT_OQ);
  e = _mm256_sub_pd(e, _mm256_and_pd(small, _mm256_set1_pd(1.0)));
  m = _mm256_sub_pd(_mm256_add_pd(m, _mm256_and_pd(small, m)), _mm256_set1_pd(1.0));

  const __m256d z = _mm256_mul_pd(m, m);
  const __m256d num = poly5(m, 1.01875663804580931796E-4, 4.97494994976747001425E-1,
                            4.70579119878881725854E0, 1.44989225341610930846E1,
                            1.79368678507819816313E1, 7.70838733755885391666E0);
  const __m256d den = poly5(m, 1.0, 1.12873587189167450590E1, 4.52279145837532221105E1,
                            8.29875266912776603211E1, 7.11544750618563894466E1,
                            2.31251620126765340583E1);
  __m256d y = _mm256_mul_pd(m, _mm256_div_pd(_mm256_mul_pd(z, num), den));
  y = _mm256_fnmadd_pd(e, _mm256_set1_pd(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, y);
  __m256d result = _mm256_add_pd(m, y);
  return _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), result);
}

inline double hsum(__m256d v) {
  alignas(32) std::array<double, kLanes> lanes;
  _mm256_store_pd(lanes.data(), v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

PowerSums power_sums(std::span<const double> values, std::span<const double> probs, double shift,
                     double log_scale, double k1, double k2) {
  const __m256d vshift = _mm256_set1_pd(shift);
  const __m256d vscale = _mm256_set1_pd(log_scale);
  const __m256d vk1 = _mm256_set1_pd(k1);
  const __m256d vk2 = _mm256_set1_pd(k2);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc1 = zero;
  __m256d acc2 = zero;

  auto step = [&](__m256d v, __m256d p) {
    const __m256d g = _mm256_sub_pd(v, vshift);
    const __m256d live = _mm256_cmp_pd(g, zero, _CMP_GT_OQ);
    // Dead lanes get g = 1 so log stays finite; their terms are masked out.
    const __m256d safe = _mm256_blendv_pd(_mm256_set1_pd(1.0), g, live);
    const __m256d lr = _mm256_add_pd(log_pd(safe), vscale);
    const __m256d pm = _mm256_and_pd(p, live);
    acc1 = _mm256_fmadd_pd(pm, exp_pd(_mm256_mul_pd(vk1, lr)), acc1);
    acc2 = _mm256_fmadd_pd(pm, exp_pd(_mm256_mul_pd(vk2, lr)), acc2);
  };

  const std::size_t n = values.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    step(_mm256_loadu_pd(values.data() + i), _mm256_loadu_pd(probs.data() + i));
  }
  if (i < n) {
    alignas(32) std::array<double, kLanes> v;
    alignas(32) std::array<double, kLanes> p{};
    v.fill(shift);
    std::copy(values.begin() + static_cast<std::ptrdiff_t>(i), values.end(), v.begin());
    std::copy(probs.begin() + static_cast<std::ptrdiff_t>(i), probs.end(), p.begin());
    step(_mm256_load_pd(v.data()), _mm256_load_pd(p.data()));
  }
  return {hsum(acc1), hsum(acc2)};
}

TiltSums tilt_sums(std::span<const double> values, std::span<const double> probs, double theta,
                   double center) {
  const __m256d vtheta = _mm256_set1_pd(theta);
  const __m256d vcenter = _mm256_set1_pd(center);
  __m256d mass = _mm256_setzero_pd();
  __m256d moment = _mm256_setzero_pd();

  auto step = [&](__m256d v, __m256d p) {
    const __m256d dv = _mm256_sub_pd(v, vcenter);
    const __m256d w = _mm256_mul_pd(p, exp_pd(_mm256_mul_pd(vtheta, dv)));
    mass = _mm256_add_pd(mass, w);
    moment = _mm256_fmadd_pd(w, dv, moment);
  };

  const std::size_t n = values.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    step(_mm256_loadu_pd(values.data() + i), _mm256_loadu_pd(probs.data() + i));
  }
  if (i < n) {
    alignas(32) std::array<double, kLanes> v;
    alignas(32) std::array<double, kLanes> p{};
    v.fill(center);
    std::copy(values.begin() + static_cast<std::ptrdiff_t>(i), values.end(), v.begin());
    std::copy(probs.begin() + static_cast<std::ptrdiff_t>(i), probs.end(), p.begin());
    step(_mm256_load_pd(v.data()), _mm256_load_pd(p.data()));
  }
  return {hsum(mass), hsum(moment)};
}

void exp_array(std::span<const double> in, std::span<double> out) {
  for (std::size_t i = 0; i < in.size(); i += kLanes) {
    alignas(32) std::array<double, kLanes> buf{};
    const std::size_t m = std::min(kLanes, in.size() - i);
    std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(i), m, buf.begin());
    _mm256_store_pd(buf.data(), exp_pd(_mm256_load_pd(buf.data())));
    std::copy_n(buf.begin(), m, out.begin() + static_cast<std::ptrdiff_t>(i));
  }
}

void log_array(std::span<const double> in, std::span<double> out) {
  for (std::size_t i = 0; i < in.size(); i += kLanes) {
    alignas(32) std::array<double, kLanes> buf;
    buf.fill(1.0);
    const std::size_t m = std::min(kLanes, in.size() - i);
    std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(i), m, buf.begin());
    _mm256_store_pd(buf.data(), log_pd(_mm256_load_pd(buf.data())));
    std::copy_n(buf.begin(), m, out.begin() + static_cast<std::ptrdiff_t>(i));
  }
}

}  // namespace renyi::kernels::avx2
