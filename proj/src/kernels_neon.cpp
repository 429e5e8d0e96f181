#include "nds/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace nds {

bool any_within_neon(LatticeRows acc, std::size_t begin, std::size_t end, const std::int64_t* cand,
                     std::int64_t eps, std::int64_t period) {
    const int64x2_t veps = vdupq_n_s64(eps);
    const int64x2_t vper = vdupq_n_s64(period);
    std::size_t j = begin;
    for (; j + 2 <= end; j += 2) {
        uint64x2_t far = vdupq_n_u64(0);
        for (std::size_t i = 0; i < acc.steps; ++i) {
            int64x2_t d = vabsq_s64(vsubq_s64(vld1q_s64(acc.rows[i] + j), vdupq_n_s64(cand[i])));
            if (period > 0) {
                int64x2_t wrap = vsubq_s64(vper, d);
                d = vbslq_s64(vcgtq_s64(d, wrap), wrap, d);
            }
            far = vorrq_u64(far, vcgtq_s64(d, veps));
            if (vgetq_lane_u64(far, 0) && vgetq_lane_u64(far, 1)) break;
        }
        if (!vgetq_lane_u64(far, 0) || !vgetq_lane_u64(far, 1)) return true;
    }
    return any_within_scalar(acc, j, end, cand, eps, period);
}

}  // namespace nds
#endif
