#include "finsub/smith.hpp"

#include <algorithm>
#include <numeric>

#include "finsub/error.hpp"
#include "finsub/kernels/modp.hpp"
#include "sparse_eliminator.hpp"

namespace finsub {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw Error("ragged matrix literal");
        for (long v : r)
            data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_sparse(const SparseIntMatrix& s)
{
    IntMatrix m(s.rows(), s.cols());
    for (const auto& e : s.entries())
        m(e.row, e.col) = e.value;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw Error("matrix product shape mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                if (rhs(k, j) != 0)
                    out(i, j) += a * rhs(k, j);
        }
    return out;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& x) const
{
    if (x.size() != cols_)
        throw Error("matrix-vector shape mismatch");
    std::vector<Integer> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (x[j] != 0)
                y[i] += (*this)(i, j) * x[j];
    return y;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = (*this)(i, j);
    return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Integer& factor)
{
    if (factor == 0)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(src, j) != 0)
            (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Integer& factor)
{
    if (factor == 0)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        if ((*this)(i, src) != 0)
            (*this)(i, dst) += factor * (*this)(i, src);
}

namespace {

// Elementary operations applied to the working matrix and, when tracking,
// mirrored onto the transforms and their inverses.
struct Reducer {
    IntMatrix a;
    bool track;
    IntMatrix u, ui, v, vi;

    Reducer(IntMatrix m, bool track_) : a(std::move(m)), track(track_)
    {
        if (track) {
            u = ui = IntMatrix::identity(a.rows());
            v = vi = IntMatrix::identity(a.cols());
        }
    }

    void swap_rows(std::size_t i, std::size_t j)
    {
        a.swap_rows(i, j);
        if (track) {
            u.swap_rows(i, j);
            ui.swap_cols(i, j);
        }
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        a.swap_cols(i, j);
        if (track) {
            v.swap_cols(i, j);
            vi.swap_rows(i, j);
        }
    }
    void add_row(std::size_t dst, std::size_t src, const Integer& q)
    {
        a.add_row(dst, src, q);
        if (track) {
            u.add_row(dst, src, q);
            ui.add_col(src, dst, -q);
        }
    }
    void add_col(std::size_t dst, std::size_t src, const Integer& q)
    {
        a.add_col(dst, src, q);
        if (track) {
            v.add_col(dst, src, q);
            vi.add_row(src, dst, -q);
        }
    }
    void negate_row(std::size_t i)
    {
        for (std::size_t j = 0; j < a.cols(); ++j)
            a(i, j) = -a(i, j);
        if (track) {
            for (std::size_t j = 0; j < u.cols(); ++j)
                u(i, j) = -u(i, j);
            for (std::size_t r = 0; r < ui.rows(); ++r)
                ui(r, i) = -ui(r, i);
        }
    }

    // Diagonalizes; with `divisibility` the result is in Smith form.
    void run(bool divisibility)
    {
        const std::size_t rows = a.rows(), cols = a.cols();
        const std::size_t n = std::min(rows, cols);
        for (std::size_t t = 0; t < n; ++t) {
            for (;;) {
                std::size_t pi = rows, pj = cols;
                for (std::size_t i = t; i < rows; ++i)
                    for (std::size_t j = t; j < cols; ++j)
                        if (a(i, j) != 0 && (pi == rows || mpz_cmpabs(a(i, j).get_mpz_t(), a(pi, pj).get_mpz_t()) < 0))
                            pi = i, pj = j;
                if (pi == rows)
                    return;
                swap_rows(t, pi);
                swap_cols(t, pj);
                bool clear = true;
                Integer q;
                for (std::size_t i = t + 1; i < rows; ++i) {
                    if (a(i, t) == 0)
                        continue;
                    mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                    add_row(i, t, -q);
                    if (a(i, t) != 0)
                        clear = false;
                }
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (a(t, j) == 0)
                        continue;
                    mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                    add_col(j, t, -q);
                    if (a(t, j) != 0)
                        clear = false;
                }
                if (!clear)
                    continue;
                if (divisibility) {
                    std::size_t bad = rows;
                    for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                        for (std::size_t j = t + 1; j < cols; ++j)
                            if (a(i, j) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                                bad = i;
                                break;
                            }
                    if (bad != rows) {
                        add_row(t, bad, 1);
                        continue;
                    }
                }
                break;
            }
            if (a(t, t) < 0)
                negate_row(t);
        }
    }
};

// Invariant factors of a diagonal given in any order: repeatedly replaces
// pairs by (gcd, lcm).
std::vector<Integer> normalize_diagonal(std::vector<Integer> d)
{
    std::erase_if(d, [](const Integer& x) { return x == 0; });
    for (auto& x : d)
        x = abs(x);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (mpz_divisible_p(d[j].get_mpz_t(), d[i].get_mpz_t()))
                continue;
            Integer g, l;
            mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
            mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
            d[i] = g;
            d[j] = l;
        }
    std::sort(d.begin(), d.end());
    return d;
}

template <class Ring>
std::vector<typename detail::SparseEliminator<Ring>::Row> sparse_rows(const SparseIntMatrix& m, const Ring& ring);

template <>
std::vector<detail::SparseEliminator<detail::CheckedIntRing>::Row>
sparse_rows(const SparseIntMatrix& m, const detail::CheckedIntRing&)
{
    std::vector<detail::SparseEliminator<detail::CheckedIntRing>::Row> rows(m.rows());
    for (const auto& e : m.entries()) {
        if (!e.value.fits_slong_p())
            throw detail::Overflow{};
        rows[e.row].push_back({e.col, e.value.get_si()});
    }
    return rows;
}

template <>
std::vector<detail::SparseEliminator<detail::BigIntRing>::Row>
sparse_rows(const SparseIntMatrix& m, const detail::BigIntRing&)
{
    std::vector<detail::SparseEliminator<detail::BigIntRing>::Row> rows(m.rows());
    for (const auto& e : m.entries())
        rows[e.row].push_back({e.col, e.value});
    return rows;
}

Integer to_integer(std::int64_t v)
{
    return Integer(static_cast<long>(v));
}
Integer to_integer(const Integer& v)
{
    return v;
}

template <class Ring>
std::vector<Integer> invariants_with(const SparseIntMatrix& m)
{
    Ring ring{};
    detail::SparseEliminator<Ring> el(ring, m.cols(), sparse_rows(m, ring));
    el.run();
    const auto rows = el.active_rows();
    const auto cols = el.active_cols();
    std::vector<std::uint32_t> col_pos(m.cols(), 0);
    for (std::uint32_t j = 0; j < cols.size(); ++j)
        col_pos[cols[j]] = j;
    IntMatrix residual(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& e : el.row(rows[i]))
            residual(i, col_pos[e.col]) = to_integer(e.val);
    std::vector<Integer> out(el.pivot_count(), Integer(1));
    for (auto& x : smith_invariants_dense(std::move(residual)))
        out.push_back(std::move(x));
    return out;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m)
{
    Reducer red(m, true);
    red.run(true);
    SmithResult r;
    r.diagonal = std::move(red.a);
    r.left = std::move(red.u);
    r.right = std::move(red.v);
    r.left_inverse = std::move(red.ui);
    r.right_inverse = std::move(red.vi);
    for (std::size_t t = 0; t < std::min(m.rows(), m.cols()); ++t)
        if (r.diagonal(t, t) != 0)
            r.invariants.push_back(r.diagonal(t, t));
    return r;
}

SmithResult smith_normal_form(const SparseIntMatrix& m)
{
    return smith_normal_form(IntMatrix::from_sparse(m));
}

std::vector<Integer> smith_invariants_dense(IntMatrix m)
{
    Reducer red(std::move(m), false);
    red.run(false);
    std::vector<Integer> d;
    for (std::size_t t = 0; t < std::min(red.a.rows(), red.a.cols()); ++t)
        d.push_back(red.a(t, t));
    return normalize_diagonal(std::move(d));
}

std::vector<Integer> smith_invariants(const SparseIntMatrix& m)
{
    try {
        return invariants_with<detail::CheckedIntRing>(m);
    } catch (const detail::Overflow&) {
        return invariants_with<detail::BigIntRing>(m);
    }
}

bool verify_smith(const IntMatrix& m, const SmithResult& r)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    if (r.diagonal.rows() != rows || r.diagonal.cols() != cols || r.left.rows() != rows ||
        r.left.cols() != rows || r.right.rows() != cols || r.right.cols() != cols ||
        r.left_inverse.rows() != rows || r.right_inverse.rows() != cols)
        return false;
    if (!(r.left * m * r.right == r.diagonal))
        return false;
    if (!(r.left * r.left_inverse == IntMatrix::identity(rows)) ||
        !(r.right * r.right_inverse == IntMatrix::identity(cols)))
        return false;
    std::vector<Integer> diag;
    bool seen_zero = false;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const Integer& x = r.diagonal(i, j);
            if (i != j) {
                if (x != 0)
                    return false;
                continue;
            }
            if (x < 0)
                return false;
            if (x == 0) {
                seen_zero = true;
                continue;
            }
            if (seen_zero)
                return false;
            if (!diag.empty() && !mpz_divisible_p(x.get_mpz_t(), diag.back().get_mpz_t()))
                return false;
            diag.push_back(x);
        }
    return diag == r.invariants;
}

Integer determinant(IntMatrix m)
{
    const std::size_t n = m.rows();
    if (m.cols() != n)
        throw Error("determinant of a non-square matrix");
    if (n == 0)
        return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p)
{
    if (p < 2 || p > kernels::max_modulus)
        throw Error("modulus out of range: " + std::to_string(p));
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            throw Error("modulus must be prime: " + std::to_string(p));
    using El = detail::SparseEliminator<detail::PrimeFieldRing>;
    std::vector<El::Row> rows(m.rows());
    const Integer pz(static_cast<unsigned long>(p));
    for (const auto& e : m.entries()) {
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), e.value.get_mpz_t(), pz.get_mpz_t());
        if (r != 0)
            rows[e.row].push_back({e.col, static_cast<std::uint32_t>(r.get_ui())});
    }
    El el(detail::PrimeFieldRing{p}, m.cols(), std::move(rows));
    el.run(0.15, 64);
    const auto ar = el.active_rows();
    const auto ac = el.active_cols();
    if (ar.empty())
        return el.pivot_count();
    std::vector<std::uint32_t> col_pos(m.cols(), 0);
    for (std::uint32_t j = 0; j < ac.size(); ++j)
        col_pos[ac[j]] = j;
    if (ar.size() * ac.size() > (std::size_t{1} << 28))
        throw ResourceError("dense residual block too large: " + std::to_string(ar.size()) + " x " + std::to_string(ac.size()));
    std::vector<double> dense(ar.size() * ac.size(), 0.0);
    for (std::size_t i = 0; i < ar.size(); ++i)
        for (const auto& e : el.row(ar[i]))
            dense[i * ac.size() + col_pos[e.col]] = static_cast<double>(e.val);
    return el.pivot_count() + kernels::dense_rank_mod(dense, ar.size(), ac.size(), p);
}

}  // namespace finsub
