#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "finsub/error.hpp"
#include "finsub/smith.hpp"

using namespace finsub;

namespace {

// Determinantal divisors: d_k = gcd of all k x k minors, computed by
// cofactor expansion. Invariant factors are d_k / d_{k-1}.
Integer minor_det(const IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols)
{
    if (rows.size() == 1)
        return m(rows[0], cols[0]);
    Integer out = 0;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        std::vector<std::size_t> r(rows.begin() + 1, rows.end()), c;
        for (std::size_t t = 0; t < cols.size(); ++t)
            if (t != j)
                c.push_back(cols[t]);
        const Integer sub = m(rows[0], cols[j]) * minor_det(m, r, c);
        out += j % 2 ? -sub : sub;
    }
    return out;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<Integer> oracle_invariants(const IntMatrix& m)
{
    std::vector<Integer> out;
    Integer prev = 1;
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(m.rows(), k, 0, cur, rs);
        subsets(m.cols(), k, 0, cur, cs);
        Integer g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                const Integer d = minor_det(m, r, c);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            }
        if (g == 0)
            break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

// Plain Gaussian elimination mod p on a dense copy.
std::size_t oracle_rank_mod(const IntMatrix& m, long p)
{
    std::vector<std::vector<long>> a(m.rows(), std::vector<long>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Integer r;
            mpz_fdiv_r_ui(r.get_mpz_t(), m(i, j).get_mpz_t(), static_cast<unsigned long>(p));
            a[i][j] = r.get_si();
        }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < m.rows() && a[piv][c] == 0)
            ++piv;
        if (piv == m.rows())
            continue;
        std::swap(a[piv], a[rank]);
        long inv = 1;
        for (long e = p - 2, b = a[rank][c]; e; e >>= 1, b = b * b % p)
            if (e & 1)
                inv = inv * b % p;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != rank && a[i][c]) {
                const long f = a[i][c] * inv % p;
                for (std::size_t j = 0; j < m.cols(); ++j)
                    a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
            }
        ++rank;
    }
    return rank;
}

SparseIntMatrix to_sparse(const IntMatrix& m)
{
    std::vector<MatrixEntry> e;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0)
                e.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), m(i, j)});
    return SparseIntMatrix(m.rows(), m.cols(), std::move(e));
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int range, double density)
{
    std::uniform_int_distribution<int> v(-range, range);
    std::bernoulli_distribution keep(density);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (keep(rng))
                m(i, j) = v(rng);
    return m;
}

}  // namespace

TEST_CASE("textbook Smith forms")
{
    const IntMatrix m{{2, 4}, {6, 8}};
    const auto r = smith_normal_form(m);
    CHECK(r.diagonal == IntMatrix{{2, 0}, {0, 4}});
    CHECK(oracle_invariants(m) == std::vector<Integer>{2, 4});
    CHECK(verify_smith(m, r));

    const auto id = smith_normal_form(IntMatrix::identity(3));
    CHECK(id.diagonal == IntMatrix::identity(3));
    CHECK(id.left == IntMatrix::identity(3));
    CHECK(id.right == IntMatrix::identity(3));

    const auto z = smith_normal_form(IntMatrix(2, 3));
    CHECK(z.diagonal == IntMatrix(2, 3));
    CHECK(z.rank() == 0);

    CHECK(smith_invariants(to_sparse(IntMatrix{{2, 0}, {0, 3}})) == std::vector<Integer>{1, 6});
}

TEST_CASE("random matrices: certificates and determinantal divisors")
{
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> dim(1, 5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto m = random_matrix(rng, dim(rng), dim(rng), 9, 0.7);
        const auto r = smith_normal_form(m);
        REQUIRE(verify_smith(m, r));
        const auto oracle = oracle_invariants(m);
        CHECK(r.invariants == oracle);
        CHECK(smith_invariants(to_sparse(m)) == oracle);
        CHECK(smith_invariants_dense(m) == oracle);
        CHECK(smith_normal_form(to_sparse(m)).invariants == oracle);
    }
}

TEST_CASE("large entries take the arbitrary-precision path")
{
    const Integer big("4611686018427387903");  // 2^62 - 1
    IntMatrix m(3, 3);
    m(0, 0) = big;
    m(0, 1) = big + 2;
    m(1, 0) = big * 3;
    m(1, 1) = big - 5;
    m(2, 2) = big * big;
    m(2, 0) = 7;
    const auto oracle = oracle_invariants(m);
    CHECK(smith_invariants(to_sparse(m)) == oracle);
    const auto r = smith_normal_form(m);
    CHECK(verify_smith(m, r));
    CHECK(r.invariants == oracle);
    CHECK(abs(determinant(m)) == oracle[0] * oracle[1] * oracle[2]);
}

TEST_CASE("determinant")
{
    CHECK(determinant(IntMatrix{{2, 4}, {6, 8}}) == -8);
    CHECK(determinant(IntMatrix::identity(4)) == 1);
    CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
    CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("rank mod p agrees with dense elimination")
{
    std::mt19937_64 rng(77);
    for (long p : {2L, 3L, 5L, 65521L}) {
        for (int trial = 0; trial < 40; ++trial) {
            const auto m = random_matrix(rng, 1 + trial % 13, 1 + (trial * 7) % 17, 4, 0.3);
            CHECK(rank_mod_p(to_sparse(m), static_cast<std::uint32_t>(p)) == oracle_rank_mod(m, p));
        }
    }
    // large enough to switch to the dense kernel
    const auto big = random_matrix(rng, 150, 140, 3, 0.4);
    CHECK(rank_mod_p(to_sparse(big), 3) == oracle_rank_mod(big, 3));
    CHECK_THROWS_AS(rank_mod_p(to_sparse(big), 4), Error);
    CHECK_THROWS_AS(rank_mod_p(to_sparse(big), 1), Error);
}

TEST_CASE("sparse matrix canonical form")
{
    const SparseIntMatrix m(2, 2, {{1, 0, Integer(3)}, {0, 1, Integer(2)}, {1, 0, Integer(-3)}, {0, 1, Integer(1)}});
    REQUIRE(m.nnz() == 1);
    CHECK(m.entries()[0].row == 0);
    CHECK(m.entries()[0].value == 3);
    CHECK(m.transpose().transpose() == m);
    CHECK((SparseIntMatrix::identity(2) * m) == m);
}
