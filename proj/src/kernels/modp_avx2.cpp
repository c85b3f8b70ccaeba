// Compiled with -mavx2 -mfma; only reached when the CPU reports both.

#include <immintrin.h>

#include <cmath>

#include "finsub/kernels/modp.hpp"

namespace finsub::kernels {

namespace {

inline double reduce_one(double t, double p, double inv_p)
{
    double r = std::fma(-std::floor(t * inv_p), p, t);
    if (r < 0)
        r += p;
    else if (r >= p)
        r -= p;
    return r;
}

// t in [0, 2^53): returns t mod p in [0, p)
inline __m256d reduce(__m256d t, __m256d p, __m256d inv_p)
{
    const __m256d q = _mm256_floor_pd(_mm256_mul_pd(t, inv_p));
    __m256d r = _mm256_fnmadd_pd(q, p, t);
    const __m256d zero = _mm256_setzero_pd();
    // one correction in each direction covers the rounding of t * inv_p
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), p));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, p, _CMP_GE_OQ), p));
    return r;
}

}  // namespace

void axpy_mod_avx2(std::span<double> dst, std::span<const double> src, std::uint32_t factor, std::uint32_t p)
{
    const double pd = p, inv = 1.0 / pd, fd = factor;
    const __m256d vp = _mm256_set1_pd(pd);
    const __m256d vinv = _mm256_set1_pd(inv);
    const __m256d vf = _mm256_set1_pd(fd);
    const std::size_t n = dst.size();
    double* d = dst.data();
    const double* s = src.data();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d a0 = _mm256_loadu_pd(d + i);
        __m256d a1 = _mm256_loadu_pd(d + i + 4);
        const __m256d b0 = _mm256_loadu_pd(s + i);
        const __m256d b1 = _mm256_loadu_pd(s + i + 4);
        a0 = reduce(_mm256_fmadd_pd(vf, b0, a0), vp, vinv);
        a1 = reduce(_mm256_fmadd_pd(vf, b1, a1), vp, vinv);
        _mm256_storeu_pd(d + i, a0);
        _mm256_storeu_pd(d + i + 4, a1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(d + i);
        const __m256d b = _mm256_loadu_pd(s + i);
        _mm256_storeu_pd(d + i, reduce(_mm256_fmadd_pd(vf, b, a), vp, vinv));
    }
    for (; i < n; ++i)
        d[i] = reduce_one(std::fma(fd, s[i], d[i]), pd, inv);
}

void scale_mod_avx2(std::span<double> dst, std::uint32_t factor, std::uint32_t p)
{
    const double pd = p, inv = 1.0 / pd, fd = factor;
    const __m256d vp = _mm256_set1_pd(pd);
    const __m256d vinv = _mm256_set1_pd(inv);
    const __m256d vf = _mm256_set1_pd(fd);
    const std::size_t n = dst.size();
    double* d = dst.data();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(d + i, reduce(_mm256_mul_pd(vf, _mm256_loadu_pd(d + i)), vp, vinv));
    for (; i < n; ++i)
        d[i] = reduce_one(fd * d[i], pd, inv);
}

}  // namespace finsub::kernels
