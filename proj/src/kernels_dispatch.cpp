#include <atomic>
#include <cstdlib>

#include "nds/kernels.hpp"

namespace nds {

std::vector<KernelVariant> available_kernels() {
    std::vector<KernelVariant> out = {{"scalar", &any_within_scalar}};
#if defined(__x86_64__) || defined(__i386__)
    if (__builtin_cpu_supports("avx2")) out.push_back({"avx2", &any_within_avx2});
#endif
#if defined(__aarch64__)
    out.push_back({"neon", &any_within_neon});
#endif
    return out;
}

namespace {

const std::vector<KernelVariant>& variants() {
    static const std::vector<KernelVariant> v = available_kernels();
    return v;
}

std::size_t initial_choice() {
    const auto& v = variants();
    if (const char* env = std::getenv("NDS_KERNEL")) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i].name == env) return i;
    }
    return v.size() - 1;
}

std::atomic<std::size_t>& choice() {
    static std::atomic<std::size_t> c{initial_choice()};
    return c;
}

}  // namespace

const KernelVariant& active_kernel() { return variants()[choice().load(std::memory_order_relaxed)]; }

bool select_kernel(std::string_view name) {
    const auto& v = variants();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].name == name) {
            choice().store(i, std::memory_order_relaxed);
            return true;
        }
    }
    return false;
}

}  // namespace nds
