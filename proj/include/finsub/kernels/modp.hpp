#pragma once

// Dense row kernels over F_p used by the dense phase of mod-p elimination.
//
// Residues are stored as doubles in [0, p). With p < 2^26 every product
// factor * src stays below 2^52, so t = dst + factor * src is exact in double
// precision and t mod p can be recovered by one floor and a correction step.
// The scalar variant is the reference: it computes the same residue with
// 64-bit integer arithmetic.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace finsub::kernels {

enum class Isa { scalar, avx2 };

/// Largest prime modulus the kernels accept.
inline constexpr std::uint32_t max_modulus = (1u << 26) - 5;

/// Best instruction set available on this CPU (ignores overrides).
Isa detect_isa();

/// Instruction set used by dispatching entry points. Starts at detect_isa(),
/// or scalar when FINSUB_SIMD=scalar is set.
Isa active_isa();

/// Forces the dispatch target; requesting avx2 on a CPU without it falls back
/// to scalar.
void force_isa(Isa isa);

std::string_view isa_name(Isa isa);

/// dst[i] = (dst[i] + factor * src[i]) mod p
void axpy_mod_scalar(std::span<double> dst, std::span<const double> src, std::uint32_t factor, std::uint32_t p);
void axpy_mod_avx2(std::span<double> dst, std::span<const double> src, std::uint32_t factor, std::uint32_t p);

/// dst[i] = (factor * dst[i]) mod p
void scale_mod_scalar(std::span<double> dst, std::uint32_t factor, std::uint32_t p);
void scale_mod_avx2(std::span<double> dst, std::uint32_t factor, std::uint32_t p);

void axpy_mod(std::span<double> dst, std::span<const double> src, std::uint32_t factor, std::uint32_t p);
void scale_mod(std::span<double> dst, std::uint32_t factor, std::uint32_t p);

/// Rank of a dense row-major matrix over F_p by Gaussian elimination.
/// The matrix is overwritten.
std::size_t dense_rank_mod(std::span<double> matrix, std::size_t rows, std::size_t cols, std::uint32_t p);

}  // namespace finsub::kernels
