// Compiled with -mavx2 -mfma; only entered after a runtime CPU check.

#include <cmath>

#include "weibias/simd/moments.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define WEIBIAS_HAVE_AVX2_KERNEL 1
#endif

namespace weibias::simd {

#ifdef WEIBIAS_HAVE_AVX2_KERNEL
namespace {

// exp(x) for x <= 0. Cody-Waite reduction x = n ln2 + r, |r| <= ln2/2, then a
// degree-13 Taylor polynomial; truncation error is below 2e-17 relative.
// Arguments below -708 flush to zero.
inline __m256d exp_nonpositive(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d floor_x = _mm256_set1_pd(-708.0);

  const __m256d underflow = _mm256_cmp_pd(x, floor_x, _CMP_LT_OQ);
  x = _mm256_max_pd(x, floor_x);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  // 1/13!, 1/12!, ..., 1/2!, 1, 1 in Horner order.
  __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

  // 2^n from the biased exponent: adding 2^52 leaves n + 1023 in the low
  // mantissa bits, which a 52-bit shift moves into the exponent field.
  const __m256d biased = _mm256_add_pd(n, _mm256_set1_pd(1023.0 + 4503599627370496.0));
  const __m256i bits = _mm256_slli_epi64(_mm256_castpd_si256(biased), 52);
  const __m256d scale = _mm256_castsi256_pd(bits);

  return _mm256_andnot_pd(underflow, _mm256_mul_pd(p, scale));
}

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

WeightedMoments weighted_moments_avx2(std::span<const double> t, double k) {
  const std::size_t size = t.size();
  const double* data = t.data();
  const __m256d kv = _mm256_set1_pd(k);
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  __m256d s2 = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + 4 <= size; i += 4) {
    const __m256d ti = _mm256_loadu_pd(data + i);
    const __m256d w = exp_nonpositive(_mm256_mul_pd(kv, ti));
    const __m256d wt = _mm256_mul_pd(w, ti);
    s0 = _mm256_add_pd(s0, w);
    s1 = _mm256_add_pd(s1, wt);
    s2 = _mm256_fmadd_pd(wt, ti, s2);
  }

  WeightedMoments m{horizontal_sum(s0), horizontal_sum(s1), horizontal_sum(s2)};
  for (; i < size; ++i) {
    const double w = std::exp(k * data[i]);
    const double wt = w * data[i];
    m.sum_w += w;
    m.sum_wt += wt;
    m.sum_wtt += wt * data[i];
  }
  return m;
}

#else

WeightedMoments weighted_moments_avx2(std::span<const double> t, double k) {
  return weighted_moments_scalar(t, k);
}

#endif

}  // namespace weibias::simd
