// AVX2+FMA variants of the arithmetic kernels. Compiled with -mavx2 -mfma in
// this TU only; callers reach them through runtime dispatch (kernels.cpp).

#include "mm/kernels.hpp"

#if defined(MM_BUILD_AVX2)

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace mm::kernels {
namespace {

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    lo = _mm_max_sd(lo, _mm_unpackhi_pd(lo, lo));
    return _mm_cvtsd_f64(lo);
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    lo = _mm_add_sd(lo, _mm_unpackhi_pd(lo, lo));
    return _mm_cvtsd_f64(lo);
}

// exp(x) for four doubles. Cody-Waite range reduction x = k*ln2 + r with
// |r| <= ln2/2, degree-13 Taylor on r (rel error ~4e-18 before rounding),
// then 2^k applied through the exponent field. Arguments below -708 flush
// to zero; callers max-subtract, so arguments never exceed 0 in practice.
inline __m256d exp4(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

    const __m256d lo_cut = _mm256_set1_pd(-708.0);
    const __m256d hi_cut = _mm256_set1_pd(709.0);
    __m256d xc = _mm256_max_pd(_mm256_min_pd(x, hi_cut), lo_cut);

    __m256d kf = _mm256_round_pd(_mm256_mul_pd(xc, log2e),
                                 _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(kf, ln2_hi, xc);
    r = _mm256_fnmadd_pd(kf, ln2_lo, r);

    // Horner over 1/i! coefficients
    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
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

    // multiply by 2^k via the exponent field; |k| <= 1023 after clamping
    __m256i kq = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(kf));
    __m256i bits = _mm256_castpd_si256(p);
    bits = _mm256_add_epi64(bits, _mm256_slli_epi64(kq, 52));
    __m256d res = _mm256_castsi256_pd(bits);

    __m256d under = _mm256_cmp_pd(x, lo_cut, _CMP_LT_OQ);
    return _mm256_andnot_pd(under, res);
}

double v_reduce_max(const double* x, std::size_t n) {
    std::size_t i = 0;
    double m = -std::numeric_limits<double>::infinity();
    if (n >= 4) {
        __m256d acc = _mm256_loadu_pd(x);
        for (i = 4; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
        m = hmax(acc);
    }
    for (; i < n; ++i) m = x[i] > m ? x[i] : m;
    return m;
}

double v_sum_exp(const double* x, std::size_t n, double scale, double shift) {
    const __m256d vs = _mm256_set1_pd(scale);
    const __m256d vh = _mm256_set1_pd(shift);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_fmsub_pd(_mm256_loadu_pd(x + i), vs, vh);
        acc = _mm256_add_pd(acc, exp4(a));
    }
    double s = hsum(acc);
    if (i < n) {
        alignas(32) double buf[4] = {0, 0, 0, 0};
        alignas(32) double out[4];
        std::size_t rem = n - i;
        // pad with an argument that flushes to zero
        for (std::size_t j = 0; j < 4; ++j) buf[j] = -1e9;
        for (std::size_t j = 0; j < rem; ++j) buf[j] = x[i + j] * scale - shift;
        _mm256_store_pd(out, exp4(_mm256_load_pd(buf)));
        for (std::size_t j = 0; j < rem; ++j) s += out[j];
    }
    return s;
}

void v_exp_scaled(const double* x, std::size_t n, double scale, double shift, double* out) {
    const __m256d vs = _mm256_set1_pd(scale);
    const __m256d vh = _mm256_set1_pd(shift);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_fmsub_pd(_mm256_loadu_pd(x + i), vs, vh);
        _mm256_storeu_pd(out + i, exp4(a));
    }
    if (i < n) {
        alignas(32) double buf[4];
        alignas(32) double tmp[4];
        std::size_t rem = n - i;
        for (std::size_t j = 0; j < 4; ++j) buf[j] = -1e9;
        for (std::size_t j = 0; j < rem; ++j) buf[j] = x[i + j] * scale - shift;
        _mm256_store_pd(tmp, exp4(_mm256_load_pd(buf)));
        for (std::size_t j = 0; j < rem; ++j) out[i + j] = tmp[j];
    }
}

double v_dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

const Ops g_avx2{"avx2", v_reduce_max, v_sum_exp, v_exp_scaled, v_dot};

}  // namespace

const Ops* avx2_ops() {
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok ? &g_avx2 : nullptr;
}

}  // namespace mm::kernels

#endif
