#include <doctest.h>

#include <algorithm>

#include "finsub/constructions.hpp"
#include "finsub/error.hpp"

using namespace finsub;

namespace {

BuildOptions no_maps(int truncation = -1)
{
    BuildOptions o;
    o.with_maps = false;
    o.truncation = truncation;
    return o;
}

Homology H(std::initializer_list<std::pair<std::size_t, std::vector<long>>> g)
{
    return make_homology(std::vector<std::pair<std::size_t, std::vector<long>>>(g));
}

}  // namespace

TEST_CASE("direct and generic routes give the same cells")
{
    for (const auto& [x, n] : std::vector<std::pair<OrderedComplexSpec, int>>{
             {circle(3), 2}, {circle(3), 3}, {sphere(2), 2}, {rp2(), 2}}) {
        CAPTURE(x.name);
        CAPTURE(n);
        CHECK(identical_cells(*symmetric_product(x, n, no_maps()).space, *symmetric_product_generic(x, n, no_maps()).space));
        CHECK(identical_cells(*finite_subset_space(x, n, no_maps()).space,
                              *finite_subset_space_generic(x, n, no_maps()).space));
    }
}

TEST_CASE("q followed by pi is the direct quotient onto Sub_n")
{
    BuildOptions o;
    o.with_q = true;
    const auto sub = finite_subset_space(circle(3), 3, o);
    const auto sp = symmetric_product(circle(3), 3, o);
    const auto& pi = sub.map("pi");
    const auto& q_sp = sp.map("q");
    const auto& q_sub = sub.map("q");
    // the two constructions build their own copies of the power and of SP^3
    REQUIRE(identical_cells(*q_sp.source(), *q_sub.source()));
    REQUIRE(identical_cells(*pi.source(), *sp.space));
    for (int k = 0; k <= sub.space->truncation(); ++k)
        for (CellId c = 0; c < q_sub.source()->size(k); ++c)
            REQUIRE(pi(k, q_sp(k, c)) == q_sub(k, c));
}

TEST_CASE("named maps")
{
    const auto sp = symmetric_product(sphere(2), 2);
    for (const auto* name : {"j_n", "diag", "incl_sp"})
        CHECK(sp.maps.count(name) == 1);
    CHECK_THROWS_AS(sp.map("alpha"), Error);
    const auto vocab = map_vocabulary();
    for (const auto& [name, m] : sp.maps) {
        CHECK(std::find(vocab.begin(), vocab.end(), name) != vocab.end());
        CHECK_NOTHROW(m.verify());
    }
    const auto sub = finite_subset_space(circle(3), 3);
    CHECK_NOTHROW(sub.map("pi").verify());
    CHECK_NOTHROW(sub.map("incl_sub").verify());
    CHECK_NOTHROW(sub.map("j").verify());
}

TEST_CASE("dimension bound and default truncation")
{
    const auto sp = symmetric_product(sphere(2), 2, no_maps());
    CHECK(sp.space->truncation() == 5);
    CHECK(sp.dimension_bound == 4);
    CHECK(sp.space->nondegenerate_dimension() == 4);
    const auto sub = finite_subset_space(circle(3), 3, no_maps());
    CHECK(sub.space->nondegenerate_dimension() <= 3);
    const auto h = sub.homology();
    CHECK(std::all_of(h.begin(), h.end(), [](const HomologyGroup& g) { return g.reliable; }));

    const auto low = finite_subset_space(torus(), 2, no_maps(3));
    CHECK(low.space->truncation() == 3);
    const auto hl = low.homology();
    CHECK(hl[2].reliable);
    CHECK_FALSE(hl[3].reliable);
}

TEST_CASE("small constructions")
{
    CHECK(trim(symmetric_product(circle(3), 2, no_maps()).homology()) == H({{1, {}}, {1, {}}}));
    CHECK(trim(finite_subset_space(circle(4), 3, no_maps()).homology()) == H({{1, {}}, {0, {}}, {0, {}}, {1, {}}}));
    CHECK(trim(reduced(circle(3), 2, ReducedKind::sub, no_maps()).homology()) == H({{1, {}}, {0, {2}}}));
    CHECK(trim(fat_diagonal(circle(3), 3, no_maps()).homology()) == H({{1, {}}, {2, {}}, {1, {}}}));
    CHECK(trim(sp_mod_fat_diagonal(circle(3), 2, no_maps()).homology()) == H({{1, {}}, {0, {2}}}));
    CHECK(trim(symmetric_product(sphere(2), 2, no_maps()).homology(Coefficients::mod(3))) ==
          H({{1, {}}, {0, {}}, {1, {}}, {0, {}}, {1, {}}}));
    CHECK_THROWS_AS(symmetric_product(circle(3), 0), Error);
}

TEST_CASE("induced maps of the diagonal and of j_2 on spheres")
{
    const auto sp = symmetric_product(sphere(2), 2, no_maps());
    const auto d = induced_map(sp.map("diag"), 2);
    REQUIRE(d.matrix.rows() == 1);
    CHECK(abs(d.matrix(0, 0)) == 2);
    const auto j = induced_map(sp.map("j_n"), 2);
    CHECK(abs(j.matrix(0, 0)) == 1);
    CHECK_THROWS_AS(induced_map(sp.map("j_n"), 9), Error);
}

TEST_CASE("based subsets of three points: three models")
{
    for (const auto& x : {circle(3), sphere(2)}) {
        const auto q = trim(based_subset3(x, no_maps()).homology());
        CHECK(trim(homology(w2_chain_model(x))) == q);
        CHECK(trim(sub3_homology_via_coproduct(x).homology) == q);
    }
    const auto c = sub3_homology_via_coproduct(torus());
    CHECK_FALSE(c.j_image_vanishes(2, 0));
    CHECK(c.homology[2] == H({{1, {}}, {0, {}}, {1, {}}})[2]);
}

TEST_CASE("W_2 chain model is a chain complex with the basepoint removed")
{
    const auto w = w2_chain_model(circle(3));
    CHECK_NOTHROW(w.check());
    const auto sp = symmetric_product(circle(3), 2, no_maps()).chains().complex;
    const auto x = normalized_chains(from_ordered_complex(circle(3), 5)).complex;
    // shifted copy of C(X) without one 0-cell
    for (int k = 0; k <= w.top_degree(); ++k) {
        const std::size_t shifted = k >= 1 ? x.rank(k - 1) - (k == 1 ? 1 : 0) : 0;
        CHECK(w.rank(k) == sp.rank(k) + shifted);
    }
}
