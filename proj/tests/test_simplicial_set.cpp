#include <doctest.h>

#include <algorithm>
#include <set>

#include "finsub/error.hpp"
#include "finsub/homology.hpp"
#include "finsub/simplicial_set.hpp"

using namespace finsub;

namespace {

// Monotone (k+1)-tuples of vertices whose support is a simplex, by brute
// force over all tuples.
std::vector<std::vector<int>> oracle_cells(const OrderedComplexSpec& x, int k)
{
    const auto simplices = x.all_simplices();
    const std::set<std::vector<int>> simplex_set(simplices.begin(), simplices.end());
    std::vector<std::vector<int>> out;
    std::vector<int> t(k + 1, 0);
    for (;;) {
        if (std::is_sorted(t.begin(), t.end())) {
            std::vector<int> support(t);
            support.erase(std::unique(support.begin(), support.end()), support.end());
            if (simplex_set.count(support))
                out.push_back(t);
        }
        int i = k;
        while (i >= 0 && ++t[i] == x.vertex_count)
            t[i--] = 0;
        if (i < 0)
            break;
    }
    return out;
}

// Nondegenerate cells of the n-fold product: n-tuples of cells with no
// common index j where every coordinate repeats vertex j.
std::size_t oracle_product_nondegenerate(const OrderedComplexSpec& x, int k, int n)
{
    const auto cells = oracle_cells(x, k);
    std::size_t count = 0;
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        bool degenerate = false;
        for (int j = 0; j < k && !degenerate; ++j) {
            bool all = true;
            for (int m = 0; m < n; ++m)
                all = all && cells[idx[m]][j] == cells[idx[m]][j + 1];
            degenerate = all;
        }
        count += !degenerate;
        int m = n - 1;
        while (m >= 0 && ++idx[m] == cells.size())
            idx[m--] = 0;
        if (m < 0)
            break;
    }
    return count;
}

}  // namespace

TEST_CASE("generated simplicial set of circle(3)")
{
    const auto s = from_ordered_complex(circle(3), 2);
    CHECK(oracle_cells(circle(3), 2).size() == 9);
    CHECK(s->size(2) == 9);
    for (int k = 0; k <= 2; ++k) {
        const auto cells = oracle_cells(circle(3), k);
        REQUIRE(s->size(k) == cells.size());
        for (CellId c = 0; c < s->size(k); ++c) {
            const auto p = s->payload(k, c);
            CHECK(std::vector<int>(p.begin(), p.end()) == cells[c]);
        }
    }
    CHECK(s->nondegenerate_count(0) == 3);
    CHECK(s->nondegenerate_count(1) == 3);
    CHECK(s->nondegenerate_count(2) == 0);
    CHECK_NOTHROW(s->check_identities());
}

TEST_CASE("power of circle(3)")
{
    const auto s = from_ordered_complex(circle(3), 3);
    const auto p = power(s, 2);
    CHECK_NOTHROW(p.space->check_identities());
    const std::size_t expected[] = {9, 27, 18};
    for (int k = 0; k <= 2; ++k) {
        CHECK(oracle_product_nondegenerate(circle(3), k, 2) == expected[k]);
        CHECK(p.space->nondegenerate_count(k) == expected[k]);
    }
    CHECK(p.space->nondegenerate_count(3) == 0);
    REQUIRE(p.projections.size() == 2);
    for (const auto& pr : p.projections)
        CHECK_NOTHROW(pr.verify());

    // chi = 9 - 27 + 18 = 0, the torus
    CHECK(euler_characteristic(normalized_chains(p.space).complex) == 0);
    CHECK(oracle_product_nondegenerate(torus(), 2, 1) == 14);  // seven-vertex torus
}

TEST_CASE("quotient identifying the endpoints of an interval")
{
    const auto s = from_ordered_complex(interval(), 2);
    const auto q = quotient(s, {{0, 0, 1}});
    CHECK(q.space->size(0) == 1);
    CHECK_NOTHROW(q.space->check_identities());
    CHECK_NOTHROW(q.projection.verify());
    // every cell of the quotient has a preimage
    for (int k = 0; k <= 2; ++k) {
        std::set<CellId> hit(q.projection.level(k).begin(), q.projection.level(k).end());
        CHECK(hit.size() == q.space->size(k));
    }
    const auto h = homology(normalized_chains(q.space).complex);
    CHECK(trim(h) == make_homology({{1, {}}, {1, {}}}));
}

TEST_CASE("quotient is the finest closed relation")
{
    // identifying two edges of circle(3) also identifies their endpoints
    const auto s = from_ordered_complex(circle(3), 2);
    const auto e01 = *s->find(1, std::vector<std::int32_t>{0, 1});
    const auto e12 = *s->find(1, std::vector<std::int32_t>{1, 2});
    const auto q = quotient(s, {{1, e01, e12}});
    CHECK(q.space->size(0) == 1);
    CHECK(q.space->nondegenerate_count(1) == 2);
    CHECK_NOTHROW(q.space->check_identities());
}

TEST_CASE("subobjects and collapse")
{
    const auto s = from_ordered_complex(sphere(2), 3);
    // the star of vertex 0 is not closed under faces
    CHECK_THROWS_AS(sub_object(s, [&](int k, CellId c) { return s->payload(k, c)[0] == 0; }), InvariantError);

    const auto base = sub_object(s, [&](int k, CellId c) {
        const auto p = s->payload(k, c);
        return std::all_of(p.begin(), p.end(), [](int v) { return v == 0; });
    });
    CHECK(base.space->size(0) == 1);
    const auto q = collapse(s, base.inclusion);
    for (int k = 0; k <= 3; ++k)
        CHECK(q.space->size(k) == s->size(k));
    CHECK(trim(homology(normalized_chains(q.space).complex)) == trim(homology(normalized_chains(s).complex)));
}

TEST_CASE("maps compose and check commutation")
{
    const auto s = from_ordered_complex(circle(3), 2);
    const auto id = SSetMap::identity(s);
    CHECK(compose(id, id) == id);

    // the constant map onto the tower of vertex 0
    std::vector<std::vector<CellId>> asg(3);
    for (int k = 0; k <= 2; ++k)
        asg[k].assign(s->size(k), 0);
    CHECK_NOTHROW(SSetMap(s, s, asg));
    asg[1][3] = 4;  // (1,1) -> (1,2)
    CHECK_THROWS_AS(SSetMap(s, s, asg), InvariantError);
}

TEST_CASE("tuple models store canonical tuples")
{
    for (int n : {2, 3}) {
        const auto base = from_ordered_complex(circle(3), n + 1);
        const auto sp = build_tuple_model(base, n, TupleKind::multiset);
        CHECK_NOTHROW(sp->space->check_identities());
        // every canonical tuple is sorted
        for (int k = 0; k <= n + 1; ++k)
            for (CellId c = 0; c < sp->space->size(k); ++c) {
                const auto t = sp->tuple(k, c);
                CHECK(std::is_sorted(t.begin(), t.end()));
            }
    }
    std::vector<CellId> t{3, 1, 3};
    canonicalize(TupleKind::multiset, t);
    CHECK(t == std::vector<CellId>{1, 3, 3});
    t = {3, 1, 3};
    canonicalize(TupleKind::set, t);
    CHECK(t == std::vector<CellId>{1, 1, 3});
}

TEST_CASE("cell cap")
{
    const auto saved = cell_cap();
    set_cell_cap(50);
    const auto base = from_ordered_complex(circle(3), 4);
    CHECK_THROWS_AS(power(base, 3), ResourceError);
    CHECK_THROWS_AS(build_tuple_model(base, 3, TupleKind::set), ResourceError);
    set_cell_cap(saved);
    CHECK_NOTHROW(power(base, 2));
}
