#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace nds {

// Orbit coordinates on an integer lattice: rows[i][j] is the i-th orbit point
// of accepted point j, scaled by the lattice denominator.
struct LatticeRows {
    const std::int64_t* const* rows;
    std::size_t steps;
};

// True iff some j in [begin, end) has every |rows[i][j] - cand[i]| ≤ eps
// (circle metric when period > 0). Values must lie in [0, 2^62).
using AnyWithinFn = bool (*)(LatticeRows acc, std::size_t begin, std::size_t end, const std::int64_t* cand,
                             std::int64_t eps, std::int64_t period);

bool any_within_scalar(LatticeRows, std::size_t, std::size_t, const std::int64_t*, std::int64_t, std::int64_t);
#if defined(__x86_64__) || defined(__i386__)
bool any_within_avx2(LatticeRows, std::size_t, std::size_t, const std::int64_t*, std::int64_t, std::int64_t);
#endif
#if defined(__aarch64__)
bool any_within_neon(LatticeRows, std::size_t, std::size_t, const std::int64_t*, std::int64_t, std::int64_t);
#endif

struct KernelVariant {
    std::string_view name;
    AnyWithinFn fn;
};

// Variants this build has and this CPU can run, scalar first.
std::vector<KernelVariant> available_kernels();

// The kernel in use: the widest available one unless NDS_KERNEL names
// another (scalar, avx2, neon).
const KernelVariant& active_kernel();
// Switches the process-wide kernel; false when the name is unavailable.
bool select_kernel(std::string_view name);

}  // namespace nds
