// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "thermonet/simd/kernels.hpp"

namespace thermonet::simd {

namespace {

// Finishes a reduction exactly like the scalar Lanes helper: the tail
// element i lands in lane i % 4, then (l0 + l2) + (l1 + l3).
template <class Term>
double finish(__m256d acc, std::size_t start, std::size_t n, Term term) {
    alignas(32) double l[4];
    _mm256_store_pd(l, acc);
    for (std::size_t i = start; i < n; ++i) l[i % 4] += term(i);
    return (l[0] + l[2]) + (l[1] + l[3]);
}

std::uint64_t sum_u16(std::span<const std::uint16_t> values) {
    const std::size_t n = values.size();
    const std::uint16_t* p = values.data();
    __m256i acc64 = _mm256_setzero_si256();
    std::size_t i = 0;
    // Zero-extend 16 u16 samples into two 8 x u32 halves and accumulate.
    while (i + 16 <= n) {
        // Block keeps each 32-bit lane below 2^31: 4096 iters * 2 * 65535.
        __m256i acc32 = _mm256_setzero_si256();
        const std::size_t block_end = std::min(n - (n - i) % 16, i + 16 * 4096);
        for (; i < block_end; i += 16) {
            const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
            const __m256i lo = _mm256_unpacklo_epi16(v, _mm256_setzero_si256());
            const __m256i hi = _mm256_unpackhi_epi16(v, _mm256_setzero_si256());
            acc32 = _mm256_add_epi32(acc32, _mm256_add_epi32(lo, hi));
        }
        acc64 = _mm256_add_epi64(acc64, _mm256_cvtepu32_epi64(_mm256_castsi256_si128(acc32)));
        acc64 = _mm256_add_epi64(acc64, _mm256_cvtepu32_epi64(_mm256_extracti128_si256(acc32, 1)));
    }
    alignas(32) std::uint64_t parts[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(parts), acc64);
    std::uint64_t total = parts[0] + parts[1] + parts[2] + parts[3];
    for (; i < n; ++i) total += p[i];
    return total;
}

double sum(std::span<const double> values) {
    const std::size_t n = values.size();
    const double* p = values.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(p + i));
    return finish(acc, i, n, [p](std::size_t k) { return p[k]; });
}

double sum_abs(std::span<const double> values) {
    const std::size_t n = values.size();
    const double* p = values.data();
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, _mm256_loadu_pd(p + i)));
    }
    return finish(acc, i, n, [p](std::size_t k) { return std::fabs(p[k]); });
}

double index_weighted_sum(std::span<const double> values, double offset) {
    const std::size_t n = values.size();
    const double* p = values.data();
    const __m256d off = _mm256_set1_pd(offset);
    const __m256d step = _mm256_set1_pd(4.0);
    __m256d t = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i), off);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(t, d));
        t = _mm256_add_pd(t, step);
    }
    return finish(acc, i, n, [p, offset](std::size_t k) {
        return static_cast<double>(k) * (p[k] - offset);
    });
}

void affine_residuals(std::span<const double> values, double slope, double intercept,
                      std::span<double> out) {
    const std::size_t n = values.size();
    const double* p = values.data();
    double* o = out.data();
    const __m256d a = _mm256_set1_pd(slope);
    const __m256d b = _mm256_set1_pd(intercept);
    const __m256d step = _mm256_set1_pd(4.0);
    __m256d t = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d fit = _mm256_add_pd(_mm256_mul_pd(a, t), b);
        _mm256_storeu_pd(o + i, _mm256_sub_pd(_mm256_loadu_pd(p + i), fit));
        t = _mm256_add_pd(t, step);
    }
    for (; i < n; ++i) o[i] = p[i] - (slope * static_cast<double>(i) + intercept);
}

void divide(std::span<const double> values, double divisor, std::span<double> out) {
    const std::size_t n = values.size();
    const double* p = values.data();
    double* o = out.data();
    const __m256d d = _mm256_set1_pd(divisor);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(o + i, _mm256_div_pd(_mm256_loadu_pd(p + i), d));
    for (; i < n; ++i) o[i] = p[i] / divisor;
}

void bin_index(std::span<const double> values, std::span<const double> cuts,
               std::span<std::uint32_t> out) {
    const std::size_t n = values.size();
    const double* p = values.data();
    std::uint32_t* o = out.data();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(p + i);
        // Each true compare is all-ones, i.e. -1 as a 64-bit integer.
        __m256i count = _mm256_setzero_si256();
        for (double c : cuts) {
            const __m256d le = _mm256_cmp_pd(_mm256_set1_pd(c), v, _CMP_LE_OQ);
            count = _mm256_sub_epi64(count, _mm256_castpd_si256(le));
        }
        alignas(32) std::int64_t lanes[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), count);
        for (int k = 0; k < 4; ++k) o[i + k] = static_cast<std::uint32_t>(lanes[k]);
    }
    for (; i < n; ++i) {
        std::uint32_t count = 0;
        for (double c : cuts) count += (c <= p[i]) ? 1u : 0u;
        o[i] = count;
    }
}

}  // namespace

const KernelTable& avx2_kernel_table() noexcept {
    static const KernelTable table{
        "avx2", sum_u16, sum, sum_abs, index_weighted_sum, affine_residuals, divide, bin_index,
    };
    return table;
}

}  // namespace thermonet::simd
