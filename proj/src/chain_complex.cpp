#include "finsub/chain_complex.hpp"

#include <algorithm>
#include <map>

#include "finsub/error.hpp"

namespace finsub {

SparseIntMatrix::SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

SparseIntMatrix::SparseIntMatrix(std::size_t rows, std::size_t cols, std::vector<MatrixEntry> entries)
    : rows_(rows), cols_(cols)
{
    for (const auto& e : entries)
        if (e.row >= rows || e.col >= cols)
            throw Error("matrix entry out of range");
    std::sort(entries.begin(), entries.end(),
              [](const MatrixEntry& a, const MatrixEntry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    for (auto& e : entries) {
        if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col) {
            entries_.back().value += e.value;
            continue;
        }
        if (!entries_.empty() && entries_.back().value == 0)
            entries_.pop_back();
        entries_.push_back(std::move(e));
    }
    if (!entries_.empty() && entries_.back().value == 0)
        entries_.pop_back();
}

SparseIntMatrix SparseIntMatrix::identity(std::size_t n)
{
    std::vector<MatrixEntry> e;
    e.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        e.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), 1});
    return SparseIntMatrix(n, n, std::move(e));
}

SparseIntMatrix SparseIntMatrix::transpose() const
{
    std::vector<MatrixEntry> e;
    e.reserve(entries_.size());
    for (const auto& x : entries_)
        e.push_back({x.col, x.row, x.value});
    return SparseIntMatrix(cols_, rows_, std::move(e));
}

SparseIntMatrix SparseIntMatrix::operator*(const SparseIntMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw Error("matrix product shape mismatch");
    // rhs rows indexed for lookup
    std::vector<std::size_t> start(rhs.rows_ + 1, 0);
    for (const auto& e : rhs.entries_)
        ++start[e.row + 1];
    for (std::size_t i = 0; i < rhs.rows_; ++i)
        start[i + 1] += start[i];
    std::vector<MatrixEntry> out;
    std::map<std::uint32_t, Integer> acc;
    std::size_t i = 0;
    while (i < entries_.size()) {
        const auto row = entries_[i].row;
        acc.clear();
        for (; i < entries_.size() && entries_[i].row == row; ++i) {
            const auto& a = entries_[i];
            for (std::size_t t = start[a.col]; t < start[a.col + 1]; ++t)
                acc[rhs.entries_[t].col] += a.value * rhs.entries_[t].value;
        }
        for (auto& [col, v] : acc)
            if (v != 0)
                out.push_back({row, col, v});
    }
    return SparseIntMatrix(rows_, rhs.cols_, std::move(out));
}

std::vector<Integer> SparseIntMatrix::apply(const std::vector<Integer>& x) const
{
    if (x.size() != cols_)
        throw Error("matrix-vector shape mismatch");
    std::vector<Integer> y(rows_);
    for (const auto& e : entries_)
        if (x[e.col] != 0)
            y[e.row] += e.value * x[e.col];
    return y;
}

bool SparseIntMatrix::operator==(const SparseIntMatrix& other) const
{
    if (rows_ != other.rows_ || cols_ != other.cols_ || entries_.size() != other.entries_.size())
        return false;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto &a = entries_[i], &b = other.entries_[i];
        if (a.row != b.row || a.col != b.col || a.value != b.value)
            return false;
    }
    return true;
}

SparseIntMatrix ChainComplexZ::boundary(int k) const
{
    if (k >= 1 && k <= top_degree())
        return boundaries[k];
    return SparseIntMatrix(rank(k - 1), rank(k));
}

void ChainComplexZ::check() const
{
    if (boundaries.size() != ranks.size())
        throw InvariantError("chain complex needs one boundary slot per degree");
    for (int k = 1; k <= top_degree(); ++k) {
        const auto& d = boundaries[k];
        if (d.rows() != ranks[k - 1] || d.cols() != ranks[k])
            throw InvariantError("boundary d_" + std::to_string(k) + " has the wrong shape");
    }
    for (int k = 2; k <= top_degree(); ++k)
        if (!(boundaries[k - 1] * boundaries[k]).is_zero())
            throw InvariantError("d_" + std::to_string(k - 1) + " d_" + std::to_string(k) + " != 0");
}

void ChainMap::check(const ChainComplexZ& source, const ChainComplexZ& target) const
{
    const int top = std::min(source.top_degree(), target.top_degree());
    if (static_cast<int>(components.size()) <= top)
        throw InvariantError("chain map is missing degrees");
    for (int k = 0; k <= top; ++k) {
        const auto& f = components[k];
        if (f.rows() != target.rank(k) || f.cols() != source.rank(k))
            throw InvariantError("chain map component " + std::to_string(k) + " has the wrong shape");
        if (k >= 1 && !(target.boundary(k) * f == components[k - 1] * source.boundary(k)))
            throw InvariantError("chain map does not commute with the boundary in degree " + std::to_string(k));
    }
}

ChainMap compose(const ChainMap& g, const ChainMap& f)
{
    ChainMap out;
    const std::size_t n = std::min(g.components.size(), f.components.size());
    for (std::size_t k = 0; k < n; ++k)
        out.components.push_back(g.components[k] * f.components[k]);
    return out;
}

long long euler_characteristic(const ChainComplexZ& c)
{
    long long chi = 0;
    for (int k = 0; k <= c.top_degree(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(c.ranks[k]);
    return chi;
}

}  // namespace finsub
