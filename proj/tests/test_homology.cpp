#include <doctest.h>

#include "finsub/error.hpp"
#include "finsub/homology.hpp"

using namespace finsub;

namespace {

NormalizedChains chains_of(const OrderedComplexSpec& x, int truncation = -1)
{
    return normalized_chains(from_ordered_complex(x, truncation < 0 ? x.dimension() + 1 : truncation));
}

}  // namespace

TEST_CASE("textbook homology")
{
    const auto c = chains_of(circle(3));
    CHECK(c.complex.rank(0) == 3);
    CHECK(c.complex.rank(1) == 3);
    CHECK(trim(homology(c.complex)) == make_homology({{1, {}}, {1, {}}}));
    CHECK(trim(homology(chains_of(sphere(2)).complex)) == make_homology({{1, {}}, {0, {}}, {1, {}}}));
    CHECK(trim(homology(chains_of(torus()).complex)) == make_homology({{1, {}}, {2, {}}, {1, {}}}));
    CHECK(trim(homology(chains_of(rp2()).complex)) == make_homology({{1, {}}, {0, {2}}}));

    const auto f2 = homology(chains_of(rp2()).complex, Coefficients::mod(2));
    CHECK(f2[0].betti == 1);
    CHECK(f2[1].betti == 1);
    CHECK(f2[2].betti == 1);
    const auto f3 = homology(chains_of(rp2()).complex, Coefficients::mod(3));
    CHECK(f3[1].betti == 0);
    CHECK(f3[2].betti == 0);
}

TEST_CASE("euler characteristic")
{
    CHECK(euler_characteristic(chains_of(torus()).complex) == 0);
    CHECK(euler_characteristic(chains_of(sphere(2)).complex) == 2);
    CHECK(euler_characteristic(chains_of(rp2()).complex) == 1);
    const auto base = from_ordered_complex(sphere(2), 5);
    const auto sp2 = build_tuple_model(base, 2, TupleKind::multiset);
    CHECK(euler_characteristic(normalized_chains(sp2->space).complex) == 3);
    const auto s1 = from_ordered_complex(circle(3), 4);
    const auto sub3 = build_tuple_model(s1, 3, TupleKind::set);
    CHECK(euler_characteristic(normalized_chains(sub3->space).complex) == 0);
}

TEST_CASE("degrees above the truncation are flagged")
{
    const auto c = normalized_chains(from_ordered_complex(torus(), 2));
    const auto h = homology(c.complex);
    CHECK(h[1].reliable);
    CHECK_FALSE(h[2].reliable);
}

TEST_CASE("universal coefficients")
{
    const auto base = from_ordered_complex(rp2(), 5);
    const auto sp2 = build_tuple_model(base, 2, TupleKind::multiset);
    const auto c = normalized_chains(sp2->space).complex;
    const auto hz = homology(c);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const auto hp = homology(c, Coefficients::mod(p));
        const auto predicted = uct_mod_p(hz, p);
        for (std::size_t k = 0; k + 1 < hp.size(); ++k)
            CHECK(hp[k].betti == predicted[k]);
    }
}

TEST_CASE("json round trip and formatting")
{
    const auto h = make_homology({{1, {}}, {0, {2}}, {2, {2, 4}}, {0, {}}});
    CHECK(homology_from_json(nlohmann::json::parse(to_json(h).dump())) == h);
    CHECK(to_json(h)[2].dump() == R"({"dim":2,"betti":2,"torsion":[2,4]})");
    CHECK(h[2].to_string() == "Z^2+Z/2+Z/4");
    CHECK(h[3].to_string() == "0");
    CHECK(to_string(h) == "(Z, Z/2, Z^2+Z/2+Z/4, 0)");
    HomologyGroup g;
    g.betti = 3;
    CHECK(g.to_string(Coefficients::mod(2)) == "F2^3");
    CHECK(trim(h).size() == 3);
    CHECK(reduced(h)[0].is_zero());
    CHECK_THROWS(homology_from_json(nlohmann::json::parse(R"([{"dim":0}])")));
}

TEST_CASE("homology basis coordinates")
{
    const auto c = chains_of(torus()).complex;
    for (int k = 0; k <= 2; ++k) {
        const HomologyBasis b(c, k);
        for (std::size_t i = 0; i < b.generator_count(); ++i) {
            const auto coords = b.coordinates(b.generator(i));
            for (std::size_t j = 0; j < coords.size(); ++j)
                CHECK(coords[j] == (i == j ? 1 : 0));
        }
    }
    // a single edge is not a cycle
    const HomologyBasis b1(c, 1);
    std::vector<Integer> edge(c.rank(1), 0);
    edge[0] = 1;
    CHECK_THROWS_AS(b1.coordinates(edge), InvariantError);

    // the boundary of a triangle is zero in H_1
    const auto d2 = c.boundary(2);
    std::vector<Integer> tri(c.rank(2), 0);
    tri[0] = 1;
    for (const auto& x : b1.coordinates(d2.apply(tri)))
        CHECK(x == 0);

    const HomologyBasis t(chains_of(rp2()).complex, 1);
    REQUIRE(t.generator_count() == 1);
    CHECK(t.order(0) == 2);
    auto twice = t.generator(0);
    for (auto& x : twice)
        x *= 3;
    CHECK(t.coordinates(twice) == std::vector<Integer>{1});
}

TEST_CASE("identity induces the identity")
{
    for (const auto& x : {torus(), rp2(), sphere(2)}) {
        const auto c = chains_of(x);
        const auto f = chain_map(SSetMap::identity(c.space), c, c);
        for (int k = 0; k <= 2; ++k) {
            const HomologyBasis b(c.complex, k);
            CHECK(induced_map(b, b, f.components[k]) == IntMatrix::identity(b.generator_count()));
        }
    }
}

TEST_CASE("functoriality on X -> SP^2 X -> SP^3 X")
{
    const auto base = from_ordered_complex(sphere(2), 4);
    const auto sp2 = build_tuple_model(base, 2, TupleKind::multiset);
    const auto sp3 = build_tuple_model(base, 3, TupleKind::multiset);

    auto build = [&](const SSetPtr& src, const TupleModel& tgt, auto coords) {
        std::vector<std::vector<CellId>> asg(src->truncation() + 1);
        for (int k = 0; k <= src->truncation(); ++k)
            for (CellId c = 0; c < src->size(k); ++c) {
                std::vector<CellId> t = coords(k, c);
                t.resize(tgt.n, 0);
                asg[k].push_back(tgt.locate(k, t));
            }
        return SSetMap(src, tgt.space, std::move(asg));
    };
    const auto j2 = build(base, *sp2, [](int, CellId c) { return std::vector<CellId>{c}; });
    const auto j3 = build(base, *sp3, [](int, CellId c) { return std::vector<CellId>{c}; });
    const auto incl = build(sp2->space, *sp3, [&](int k, CellId c) {
        const auto t = sp2->tuple(k, c);
        return std::vector<CellId>(t.begin(), t.end());
    });
    CHECK(compose(incl, j2) == j3);

    const auto cx = normalized_chains(base), c2 = normalized_chains(sp2->space), c3 = normalized_chains(sp3->space);
    const auto fj2 = chain_map(j2, cx, c2), fincl = chain_map(incl, c2, c3), fj3 = chain_map(j3, cx, c3);
    fj2.check(cx.complex, c2.complex);
    fincl.check(c2.complex, c3.complex);
    CHECK(compose(fincl, fj2).components[2] == fj3.components[2]);

    const HomologyBasis bx(cx.complex, 2), b2(c2.complex, 2), b3(c3.complex, 2);
    const auto a = induced_map(bx, b2, fj2.components[2]);
    const auto b = induced_map(b2, b3, fincl.components[2]);
    const auto c = induced_map(bx, b3, fj3.components[2]);
    CHECK(b * a == c);
    CHECK(abs(a(0, 0)) == 1);
}

TEST_CASE("abelian quotients")
{
    // Z/2 + Z modulo (0, 2)
    HomologyGroup g;
    g.betti = 1;
    g.torsion = {Integer(2)};
    const auto q = quotient_group(g, {{Integer(0), Integer(2)}});
    CHECK(q.group.betti == 0);
    CHECK(q.group.torsion == std::vector<Integer>{2, 2});
    CHECK(q.vanishes({Integer(0), Integer(4)}));
    CHECK(q.vanishes({Integer(2), Integer(0)}));
    CHECK_FALSE(q.vanishes({Integer(0), Integer(1)}));
    CHECK_FALSE(q.vanishes({Integer(1), Integer(0)}));
}
