#pragma once

// Sparse Gaussian elimination restricted to unit pivots, with Markowitz-style
// pivot choice: the shortest row first, inside it the unit entry whose column
// is least populated (ties broken by index). Eliminating a unit pivot replaces
// the matrix by its Schur complement without changing the remaining
// invariant factors.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace finsub::detail {

struct Overflow : std::exception {
    const char* what() const noexcept override { return "int64 overflow in sparse elimination"; }
};

struct CheckedIntRing {
    using value_type = std::int64_t;
    static bool is_zero(value_type v) { return v == 0; }
    static bool is_unit(value_type v) { return v == 1 || v == -1; }
    // a - f * b
    static value_type sub_mul(value_type a, value_type f, value_type b)
    {
        value_type prod, out;
        if (__builtin_mul_overflow(f, b, &prod) || __builtin_sub_overflow(a, prod, &out))
            throw Overflow{};
        return out;
    }
    // a / u for a unit u
    static value_type div_unit(value_type a, value_type u) { return u == 1 ? a : -a; }
};

struct BigIntRing {
    using value_type = mpz_class;
    static bool is_zero(const value_type& v) { return sgn(v) == 0; }
    static bool is_unit(const value_type& v) { return v == 1 || v == -1; }
    static value_type sub_mul(const value_type& a, const value_type& f, const value_type& b) { return a - f * b; }
    static value_type div_unit(const value_type& a, const value_type& u) { return u == 1 ? a : value_type(-a); }
};

struct PrimeFieldRing {
    using value_type = std::uint32_t;
    std::uint32_t p;
    bool is_zero(value_type v) const { return v == 0; }
    bool is_unit(value_type v) const { return v != 0; }
    value_type sub_mul(value_type a, value_type f, value_type b) const
    {
        const std::uint64_t prod = std::uint64_t{f} * b % p;
        return static_cast<value_type>((a + p - prod) % p);
    }
    value_type inverse(value_type a) const
    {
        std::uint64_t result = 1, base = a % p;
        for (std::uint32_t e = p - 2; e; e >>= 1) {
            if (e & 1)
                result = result * base % p;
            base = base * base % p;
        }
        return static_cast<value_type>(result);
    }
    value_type div_unit(value_type a, value_type u) const
    {
        return static_cast<value_type>(std::uint64_t{a} * inverse(u) % p);
    }
};

template <class Ring>
class SparseEliminator {
public:
    using V = typename Ring::value_type;
    struct Entry {
        std::uint32_t col;
        V val;
    };
    using Row = std::vector<Entry>;

    struct Pivot {
        std::uint32_t row;
        std::uint32_t col;
        V value;
        Row row_entries;                                  // pivot row without the pivot column
        std::vector<std::pair<std::uint32_t, V>> column;  // other rows' coefficients in the pivot column
    };

    /// Rows must be sorted by column with no zero entries.
    SparseEliminator(Ring ring, std::size_t cols, std::vector<Row> rows, bool record = false)
        : ring_(std::move(ring)), rows_(std::move(rows)), col_rows_(cols), col_count_(cols, 0),
          active_(rows_.size(), 1), in_queue_(rows_.size(), 0), stamp_(rows_.size(), 0), record_(record)
    {
        for (std::uint32_t r = 0; r < rows_.size(); ++r) {
            for (const auto& e : rows_[r]) {
                col_rows_[e.col].push_back(r);
                if (col_count_[e.col]++ == 0)
                    ++active_cols_;
            }
            nnz_ += rows_[r].size();
            if (!rows_[r].empty()) {
                queue_.insert({rows_[r].size(), r});
                in_queue_[r] = 1;
            } else {
                active_[r] = 0;
            }
        }
        active_rows_ = 0;
        for (auto a : active_)
            active_rows_ += a;
    }

    /// Eliminates unit pivots until none is left, or until the active block
    /// has density above `dense_switch` (0 disables the switch) with at least
    /// `min_dense_rows` rows.
    void run(double dense_switch = 0.0, std::size_t min_dense_rows = 64)
    {
        std::vector<std::pair<std::uint32_t, V>> others;
        while (!queue_.empty()) {
            if (dense_switch > 0 && active_rows_ >= min_dense_rows &&
                static_cast<double>(nnz_) > dense_switch * static_cast<double>(active_rows_) *
                                                 static_cast<double>(active_cols_))
                return;
            const auto [len, r] = *queue_.begin();
            queue_.erase(queue_.begin());
            in_queue_[r] = 0;
            const Entry* best = nullptr;
            for (const auto& e : rows_[r])
                if (ring_.is_unit(e.val) &&
                    (!best || col_count_[e.col] < col_count_[best->col] ||
                     (col_count_[e.col] == col_count_[best->col] && e.col < best->col)))
                    best = &e;
            if (!best)
                continue;  // stalled until the row changes
            const std::uint32_t c = best->col;
            const V pivot = best->val;

            ++epoch_;
            others.clear();
            for (const auto r2 : col_rows_[c]) {
                if (r2 == r || !active_[r2] || stamp_[r2] == epoch_)
                    continue;
                stamp_[r2] = epoch_;
                if (const auto* e = lookup(rows_[r2], c))
                    others.emplace_back(r2, e->val);
            }
            col_rows_[c].clear();

            if (record_) {
                Pivot pv{r, c, pivot, {}, others};
                for (const auto& e : rows_[r])
                    if (e.col != c)
                        pv.row_entries.push_back(e);
                pivots_.push_back(std::move(pv));
            }

            for (const auto& [r2, a] : others) {
                if (in_queue_[r2]) {
                    queue_.erase({rows_[r2].size(), r2});
                    in_queue_[r2] = 0;
                }
                const V factor = ring_.div_unit(a, pivot);
                eliminate_into(r2, rows_[r], factor);
                if (rows_[r2].empty()) {
                    active_[r2] = 0;
                    --active_rows_;
                } else {
                    queue_.insert({rows_[r2].size(), r2});
                    in_queue_[r2] = 1;
                }
            }
            for (const auto& e : rows_[r])
                if (--col_count_[e.col] == 0)
                    --active_cols_;
            nnz_ -= rows_[r].size();
            rows_[r].clear();
            rows_[r].shrink_to_fit();
            active_[r] = 0;
            --active_rows_;
            ++pivot_count_;
        }
    }

    std::size_t pivot_count() const { return pivot_count_; }
    const std::vector<Pivot>& pivots() const { return pivots_; }

    /// Rows still holding entries after run().
    std::vector<std::uint32_t> active_rows() const
    {
        std::vector<std::uint32_t> out;
        for (std::uint32_t r = 0; r < rows_.size(); ++r)
            if (active_[r] && !rows_[r].empty())
                out.push_back(r);
        return out;
    }
    /// Columns still holding entries after run().
    std::vector<std::uint32_t> active_cols() const
    {
        std::vector<std::uint32_t> out;
        for (std::uint32_t c = 0; c < col_count_.size(); ++c)
            if (col_count_[c] > 0)
                out.push_back(c);
        return out;
    }
    const Row& row(std::uint32_t r) const { return rows_[r]; }

private:
    static const Entry* lookup(const Row& row, std::uint32_t col)
    {
        std::size_t lo = 0, hi = row.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (row[mid].col < col)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo < row.size() && row[lo].col == col ? &row[lo] : nullptr;
    }

    // rows_[target] -= factor * src
    void eliminate_into(std::uint32_t target, const Row& src, const V& factor)
    {
        Row& dst = rows_[target];
        Row out;
        out.reserve(dst.size() + src.size());
        std::size_t i = 0, j = 0;
        const std::size_t before = dst.size();
        while (i < dst.size() || j < src.size()) {
            if (j == src.size() || (i < dst.size() && dst[i].col < src[j].col)) {
                out.push_back(std::move(dst[i++]));
            } else if (i == dst.size() || src[j].col < dst[i].col) {
                V v = ring_.sub_mul(V{}, factor, src[j].val);
                const auto col = src[j].col;
                col_rows_[col].push_back(target);
                if (col_count_[col]++ == 0)
                    ++active_cols_;
                out.push_back({col, std::move(v)});
                ++j;
            } else {
                V v = ring_.sub_mul(dst[i].val, factor, src[j].val);
                if (ring_.is_zero(v)) {
                    if (--col_count_[src[j].col] == 0)
                        --active_cols_;
                } else {
                    out.push_back({src[j].col, std::move(v)});
                }
                ++i;
                ++j;
            }
        }
        dst = std::move(out);
        nnz_ = nnz_ - before + dst.size();
    }

    Ring ring_;
    std::vector<Row> rows_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::vector<std::uint32_t> col_count_;
    std::vector<std::uint8_t> active_;
    std::vector<std::uint8_t> in_queue_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_ = 0;
    std::set<std::pair<std::size_t, std::uint32_t>> queue_;
    std::size_t nnz_ = 0;
    std::size_t active_rows_ = 0;
    std::size_t active_cols_ = 0;
    std::size_t pivot_count_ = 0;
    bool record_ = false;
    std::vector<Pivot> pivots_;
};

}  // namespace finsub::detail
