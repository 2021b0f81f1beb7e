#pragma once

// Data-parallel inner loops of the pipeline.
//
// Every kernel exists as a portable scalar reference and, where the target
// supports it, an AVX2 variant. Floating-point reductions use four
// interleaved partial sums (element i feeds lane i % 4) combined as
// (l0 + l2) + (l1 + l3), and no kernel contracts multiply-add, so the
// vector variants return bit-identical results to the scalar reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace thermonet::simd {

struct KernelTable {
    std::string_view name;

    /// Exact sum of 16-bit samples.
    std::uint64_t (*sum_u16)(std::span<const std::uint16_t> values);

    /// Sum of `values`.
    double (*sum)(std::span<const double> values);

    /// Sum of |values|.
    double (*sum_abs)(std::span<const double> values);

    /// Sum over i of i * (values[i] - offset).
    double (*index_weighted_sum)(std::span<const double> values, double offset);

    /// out[i] = values[i] - (slope * i + intercept). `out` may alias `values`.
    void (*affine_residuals)(std::span<const double> values, double slope, double intercept,
                             std::span<double> out);

    /// out[i] = values[i] / divisor. `out` may alias `values`.
    void (*divide)(std::span<const double> values, double divisor, std::span<double> out);

    /// out[i] = number of cuts <= values[i]. `cuts` must be ascending.
    void (*bin_index)(std::span<const double> values, std::span<const double> cuts,
                      std::span<std::uint32_t> out);
};

const KernelTable& scalar_kernels() noexcept;

/// AVX2 table, or nullptr when this build or this CPU lacks AVX2.
const KernelTable* avx2_kernels() noexcept;

/// Table used by the library. Picks the widest supported variant at first
/// use; setting THERMONET_KERNELS=scalar in the environment forces the
/// reference path.
const KernelTable& active_kernels() noexcept;

}  // namespace thermonet::simd
