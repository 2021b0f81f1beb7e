#include <cstdlib>
#include <string_view>

#include "thermonet/simd/kernels.hpp"

namespace thermonet::simd {

#if THERMONET_HAVE_AVX2
const KernelTable& avx2_kernel_table() noexcept;
#endif

const KernelTable* avx2_kernels() noexcept {
#if THERMONET_HAVE_AVX2
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &avx2_kernel_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept {
    static const KernelTable* chosen = [] {
        const char* forced = std::getenv("THERMONET_KERNELS");
        if (forced != nullptr && std::string_view(forced) == "scalar") return &scalar_kernels();
        if (const KernelTable* wide = avx2_kernels()) return wide;
        return &scalar_kernels();
    }();
    return *chosen;
}

}  // namespace thermonet::simd
