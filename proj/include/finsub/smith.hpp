#pragma once

#include <cstddef>
#include <vector>

#include "finsub/chain_complex.hpp"

namespace finsub {

/// Dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_sparse(const SparseIntMatrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix operator*(const IntMatrix& rhs) const;
    std::vector<Integer> apply(const std::vector<Integer>& x) const;
    IntMatrix transpose() const;
    bool operator==(const IntMatrix& other) const = default;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += factor * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& factor);
    /// col[dst] += factor * col[src]
    void add_col(std::size_t dst, std::size_t src, const Integer& factor);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// left * M * right = diagonal, with d_1 | d_2 | ... on the diagonal and
/// unimodular left/right. The inverses are tracked alongside.
struct SmithResult {
    IntMatrix diagonal;
    IntMatrix left, right;
    IntMatrix left_inverse, right_inverse;
    std::vector<Integer> invariants;  // nonzero diagonal entries, all positive

    std::size_t rank() const { return invariants.size(); }
};

SmithResult smith_normal_form(const IntMatrix& m);
SmithResult smith_normal_form(const SparseIntMatrix& m);

/// Invariant factors only (no transforms).
std::vector<Integer> smith_invariants_dense(IntMatrix m);

/// Nonzero invariant factors of a sparse matrix: unit pivots are eliminated
/// sparsely first, the residual block goes through the dense algorithm.
std::vector<Integer> smith_invariants(const SparseIntMatrix& m);

/// Re-multiplies left * M * right and checks it equals the diagonal, that
/// the diagonal has the divisibility property, and that the tracked inverses
/// really invert the transforms (so both are unimodular).
bool verify_smith(const IntMatrix& m, const SmithResult& r);

/// Exact determinant by fraction-free elimination.
Integer determinant(IntMatrix m);

/// Rank over F_p (p prime, p < 2^26): sparse elimination, then the dense
/// SIMD kernel once the active block fills in.
std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p);

}  // namespace finsub
