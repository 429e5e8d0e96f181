#include "nds/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace nds {

__attribute__((target("avx2"))) bool any_within_avx2(LatticeRows acc, std::size_t begin, std::size_t end,
                                                     const std::int64_t* cand, std::int64_t eps,
                                                     std::int64_t period) {
    const __m256i veps = _mm256_set1_epi64x(eps);
    const __m256i vper = _mm256_set1_epi64x(period);
    const __m256i zero = _mm256_setzero_si256();
    std::size_t j = begin;
    for (; j + 4 <= end; j += 4) {
        __m256i far = zero;
        for (std::size_t i = 0; i < acc.steps; ++i) {
            __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc.rows[i] + j));
            __m256i d = _mm256_sub_epi64(a, _mm256_set1_epi64x(cand[i]));
            __m256i neg = _mm256_sub_epi64(zero, d);
            d = _mm256_blendv_epi8(d, neg, _mm256_cmpgt_epi64(zero, d));
            if (period > 0) {
                __m256i wrap = _mm256_sub_epi64(vper, d);
                d = _mm256_blendv_epi8(d, wrap, _mm256_cmpgt_epi64(d, wrap));
            }
            far = _mm256_or_si256(far, _mm256_cmpgt_epi64(d, veps));
            if (_mm256_movemask_epi8(far) == -1) break;
        }
        if (_mm256_movemask_epi8(far) != -1) return true;
    }
    return any_within_scalar(acc, j, end, cand, eps, period);
}

}  // namespace nds
#endif
