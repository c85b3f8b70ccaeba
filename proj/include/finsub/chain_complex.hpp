#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace finsub {

using Integer = mpz_class;

struct MatrixEntry {
    std::uint32_t row;
    std::uint32_t col;
    Integer value;
};

/// Sparse integer matrix in canonical form: entries sorted row-major, no
/// duplicates, no zeros.
class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols);
    /// Sums duplicate positions and drops zeros.
    SparseIntMatrix(std::size_t rows, std::size_t cols, std::vector<MatrixEntry> entries);

    static SparseIntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return entries_.size(); }
    const std::vector<MatrixEntry>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    SparseIntMatrix transpose() const;
    SparseIntMatrix operator*(const SparseIntMatrix& rhs) const;
    std::vector<Integer> apply(const std::vector<Integer>& x) const;

    bool operator==(const SparseIntMatrix& other) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<MatrixEntry> entries_;
};

/// Free chain complex C_0..C_top with boundaries d_k : C_k -> C_{k-1}.
struct ChainComplexZ {
    std::vector<std::size_t> ranks;
    /// boundaries[k] for k >= 1 is ranks[k-1] x ranks[k]; boundaries[0] is
    /// the zero map 0 x ranks[0].
    std::vector<SparseIntMatrix> boundaries;
    /// Optional generator names per degree (may be empty).
    std::vector<std::vector<std::string>> labels;
    /// Homology is certified exact through this degree.
    int exact_through = std::numeric_limits<int>::max();

    int top_degree() const { return static_cast<int>(ranks.size()) - 1; }
    std::size_t rank(int k) const { return k < 0 || k > top_degree() ? 0 : ranks[k]; }
    /// d_k; the zero matrix of the right shape outside 1..top.
    SparseIntMatrix boundary(int k) const;

    /// Checks shapes and d_{k-1} d_k = 0; throws InvariantError.
    void check() const;
};

/// Degreewise matrices target_k x source_k.
struct ChainMap {
    std::vector<SparseIntMatrix> components;

    /// Checks d f = f d against the given complexes; throws InvariantError.
    void check(const ChainComplexZ& source, const ChainComplexZ& target) const;
};

ChainMap compose(const ChainMap& g, const ChainMap& f);

long long euler_characteristic(const ChainComplexZ& c);

}  // namespace finsub
