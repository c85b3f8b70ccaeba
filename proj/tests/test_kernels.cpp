#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "finsub/kernels/modp.hpp"

using namespace finsub::kernels;

namespace {

std::vector<double> residues(std::mt19937_64& rng, std::size_t n, std::uint32_t p)
{
    std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
    std::vector<double> v(n);
    for (auto& x : v)
        x = d(rng);
    return v;
}

}  // namespace

TEST_CASE("scalar axpy matches 64-bit arithmetic")
{
    std::mt19937_64 rng(3);
    for (std::uint32_t p : {2u, 7u, 65521u, max_modulus}) {
        auto dst = residues(rng, 37, p);
        const auto src = residues(rng, 37, p);
        const std::uint32_t f = static_cast<std::uint32_t>(rng() % p);
        auto expect = dst;
        for (std::size_t i = 0; i < dst.size(); ++i)
            expect[i] = static_cast<double>((static_cast<std::uint64_t>(expect[i]) + std::uint64_t{f} * static_cast<std::uint64_t>(src[i])) % p);
        axpy_mod_scalar(dst, src, f, p);
        CHECK(dst == expect);
    }
}

TEST_CASE("avx2 kernels are equivalent to scalar")
{
    if (detect_isa() != Isa::avx2) {
        MESSAGE("no avx2 on this cpu");
        return;
    }
    std::mt19937_64 rng(11);
    for (std::uint32_t p : {2u, 3u, 251u, 65521u, 1000003u, max_modulus}) {
        for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 16u, 33u, 1001u}) {
            const auto src = residues(rng, n, p);
            const auto base = residues(rng, n, p);
            const std::uint32_t f = static_cast<std::uint32_t>(rng() % p);
            auto a = base, b = base;
            axpy_mod_scalar(a, src, f, p);
            axpy_mod_avx2(b, src, f, p);
            CHECK(a == b);
            a = base;
            b = base;
            scale_mod_scalar(a, f, p);
            scale_mod_avx2(b, f, p);
            CHECK(a == b);
        }
    }
}

TEST_CASE("dense rank is the same under both dispatch targets")
{
    std::mt19937_64 rng(5);
    const auto saved = active_isa();
    for (std::uint32_t p : {2u, 3u, 1000003u}) {
        for (int trial = 0; trial < 10; ++trial) {
            const std::size_t rows = 20 + trial * 7, cols = 30 + trial * 3;
            auto m = residues(rng, rows * cols, p);
            // make some rows dependent
            for (std::size_t j = 0; j < cols; ++j)
                m[j] = std::fmod(m[cols + j] + m[2 * cols + j], p);
            auto a = m, b = m;
            force_isa(Isa::scalar);
            const auto ra = dense_rank_mod(a, rows, cols, p);
            force_isa(Isa::avx2);
            const auto rb = dense_rank_mod(b, rows, cols, p);
            CHECK(ra == rb);
            CHECK(ra <= std::min(rows, cols) - (rows <= cols ? 1 : 0));
        }
    }
    force_isa(saved);
    CHECK(isa_name(Isa::avx2) == "avx2");
}

TEST_CASE("dense rank of small known matrices")
{
    std::vector<double> id{1, 0, 0, 0, 1, 0, 0, 0, 1};
    CHECK(dense_rank_mod(id, 3, 3, 5) == 3);
    std::vector<double> zeros(6, 0.0);
    CHECK(dense_rank_mod(zeros, 2, 3, 2) == 0);
    std::vector<double> m{1, 2, 2, 4};
    CHECK(dense_rank_mod(m, 2, 2, 7) == 1);
}
