#include <cmath>

#include "thermonet/simd/kernels.hpp"

namespace thermonet::simd {

namespace {

std::uint64_t sum_u16(std::span<const std::uint16_t> values) {
    std::uint64_t total = 0;
    for (auto v : values) total += v;
    return total;
}

// Lane layout mirrors a 4 x double register.
struct Lanes {
    double l[4] = {0.0, 0.0, 0.0, 0.0};
    double reduce() const { return (l[0] + l[2]) + (l[1] + l[3]); }
};

double sum(std::span<const double> values) {
    Lanes acc;
    for (std::size_t i = 0; i < values.size(); ++i) acc.l[i % 4] += values[i];
    return acc.reduce();
}

double sum_abs(std::span<const double> values) {
    Lanes acc;
    for (std::size_t i = 0; i < values.size(); ++i) acc.l[i % 4] += std::fabs(values[i]);
    return acc.reduce();
}

double index_weighted_sum(std::span<const double> values, double offset) {
    Lanes acc;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double t = static_cast<double>(i);
        acc.l[i % 4] += t * (values[i] - offset);
    }
    return acc.reduce();
}

void affine_residuals(std::span<const double> values, double slope, double intercept,
                      std::span<double> out) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double t = static_cast<double>(i);
        out[i] = values[i] - (slope * t + intercept);
    }
}

void divide(std::span<const double> values, double divisor, std::span<double> out) {
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] / divisor;
}

void bin_index(std::span<const double> values, std::span<const double> cuts,
               std::span<std::uint32_t> out) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::uint32_t count = 0;
        for (double c : cuts) count += (c <= values[i]) ? 1u : 0u;
        out[i] = count;
    }
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
    static const KernelTable table{
        "scalar", sum_u16, sum, sum_abs, index_weighted_sum, affine_residuals, divide, bin_index,
    };
    return table;
}

}  // namespace thermonet::simd
