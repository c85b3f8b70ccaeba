#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <utility>

#include "finsub/kernels/modp.hpp"

namespace finsub::kernels {

namespace {

std::atomic<Isa>& active_storage()
{
    static std::atomic<Isa> isa = [] {
        const char* env = std::getenv("FINSUB_SIMD");
        if (env && std::strcmp(env, "scalar") == 0)
            return Isa::scalar;
        return detect_isa();
    }();
    return isa;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p)
{
    // p prime: a^(p-2)
    std::uint64_t result = 1, base = a % p;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(result);
}

}  // namespace

Isa detect_isa()
{
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return Isa::avx2;
#endif
    return Isa::scalar;
}

Isa active_isa()
{
    return active_storage().load();
}

void force_isa(Isa isa)
{
    if (isa == Isa::avx2 && detect_isa() != Isa::avx2)
        isa = Isa::scalar;
    active_storage().store(isa);
}

std::string_view isa_name(Isa isa)
{
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

void axpy_mod(std::span<double> dst, std::span<const double> src, std::uint32_t factor, std::uint32_t p)
{
    if (active_isa() == Isa::avx2)
        axpy_mod_avx2(dst, src, factor, p);
    else
        axpy_mod_scalar(dst, src, factor, p);
}

void scale_mod(std::span<double> dst, std::uint32_t factor, std::uint32_t p)
{
    if (active_isa() == Isa::avx2)
        scale_mod_avx2(dst, factor, p);
    else
        scale_mod_scalar(dst, factor, p);
}

std::size_t dense_rank_mod(std::span<double> matrix, std::size_t rows, std::size_t cols, std::uint32_t p)
{
    if (p < 2 || p > max_modulus)
        throw std::invalid_argument("modulus out of range for the dense kernels");
    if (matrix.size() != rows * cols)
        throw std::invalid_argument("dense matrix size mismatch");
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && matrix[pivot * cols + col] == 0.0)
            ++pivot;
        if (pivot == rows)
            continue;
        if (pivot != rank)
            for (std::size_t j = col; j < cols; ++j)
                std::swap(matrix[pivot * cols + j], matrix[rank * cols + j]);
        std::span<double> prow = matrix.subspan(rank * cols + col, cols - col);
        scale_mod(prow, inverse_mod(static_cast<std::uint32_t>(prow[0]), p), p);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const double v = matrix[r * cols + col];
            if (v == 0.0)
                continue;
            const auto factor = p - static_cast<std::uint32_t>(v);
            axpy_mod(matrix.subspan(r * cols + col, cols - col), prow, factor, p);
        }
        ++rank;
    }
    return rank;
}

}  // namespace finsub::kernels
