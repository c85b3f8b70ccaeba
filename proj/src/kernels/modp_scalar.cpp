#include "finsub/kernels/modp.hpp"

namespace finsub::kernels {

void axpy_mod_scalar(std::span<double> dst, std::span<const double> src, std::uint32_t factor, std::uint32_t p)
{
    const std::uint64_t f = factor, m = p;
    for (std::size_t i = 0; i < dst.size(); ++i) {
        const auto d = static_cast<std::uint64_t>(dst[i]);
        const auto s = static_cast<std::uint64_t>(src[i]);
        dst[i] = static_cast<double>((d + f * s) % m);
    }
}

void scale_mod_scalar(std::span<double> dst, std::uint32_t factor, std::uint32_t p)
{
    const std::uint64_t f = factor, m = p;
    for (auto& v : dst)
        v = static_cast<double>((f * static_cast<std::uint64_t>(v)) % m);
}

}  // namespace finsub::kernels
