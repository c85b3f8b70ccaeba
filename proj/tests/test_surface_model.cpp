#include <doctest.h>

#include <random>

#include "finsub/constructions.hpp"
#include "finsub/error.hpp"
#include "finsub/surface_model.hpp"

using namespace finsub;

namespace {

Homology H(std::initializer_list<std::pair<std::size_t, std::vector<long>>> g)
{
    return make_homology(std::vector<std::pair<std::size_t, std::vector<long>>>(g));
}

long binomial(int n, int k)
{
    long b = 1;
    for (int i = 1; i <= k; ++i)
        b = b * (n - k + i) / i;
    return b;
}

}  // namespace

TEST_CASE("generator counts")
{
    for (int r = 0; r <= 5; ++r)
        for (int n = 1; n <= 4; ++n) {
            long expected = 0;
            for (int l = 0; l <= std::min(r, n); ++l)
                expected += binomial(r, l) * (n - l + 1);
            CHECK(static_cast<long>(monomial_cells(r, n).size()) == expected);
        }
    const auto cells = monomial_cells(2, 2);
    CHECK(cells.front().label() == "SP^0D");
    CHECK(cells.back().label() == "SP^2D");
    CHECK(MonomialCell{{1, 2}, 0}.label() == "e1*e2");
    CHECK(MonomialCell{{2}, 1}.label() == "e2*SP^1D");
}

TEST_CASE("known homology")
{
    CHECK(trim(homology(sp_chain_complex(surface_sphere(), 3))) ==
          H({{1, {}}, {0, {}}, {1, {}}, {0, {}}, {1, {}}, {0, {}}, {1, {}}}));
    CHECK(trim(homology(sp_chain_complex(surface_torus(), 2))) == H({{1, {}}, {2, {}}, {2, {}}, {2, {}}, {1, {}}}));
    CHECK(trim(homology(sp_chain_complex(surface_rp2(), 2))) == H({{1, {}}, {0, {2}}, {0, {}}, {0, {2}}}));
    CHECK(trim(homology(sp_chain_complex(surface_torus(), 1))) == H({{1, {}}, {2, {}}, {1, {}}}));
}

TEST_CASE("top homology report")
{
    const auto t3 = top_homology_report(surface_torus(), 3);
    CHECK(t3.orientable);
    CHECK(t3.top_z == HomologyGroup{6, 1, {}});
    const auto p2 = top_homology_report(surface_rp2(), 2);
    CHECK_FALSE(p2.orientable);
    CHECK(p2.top_z.is_zero());
    CHECK(p2.top_f2.betti == 1);
    for (int n : {2, 3}) {
        CHECK(top_homology_report(surface_torus(), n).below_f2.betti == 2);
        CHECK(top_homology_report(surface_genus(2), n).below_f2.betti == 4);
    }
}

TEST_CASE("boundary squares to zero for random attaching words")
{
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
        SurfacePresentation p;
        p.r = 1 + trial % 5;
        std::uniform_int_distribution<int> letter(1, p.r), len(0, 9);
        const int l = len(rng);
        for (int i = 0; i < l; ++i)
            p.word.push_back(rng() % 2 ? letter(rng) : -letter(rng));
        for (int n = 1; n <= 4; ++n)
            CHECK_NOTHROW(sp_chain_complex(p, n));  // check() runs inside
    }
}

TEST_CASE("agrees with the quotient model at n = 2")
{
    BuildOptions o;
    o.with_maps = false;
    const std::vector<std::pair<SurfacePresentation, OrderedComplexSpec>> pairs = {
        {surface_sphere(), sphere(2)}, {surface_torus(), torus()}, {surface_rp2(), rp2()}};
    for (const auto& [p, x] : pairs) {
        CAPTURE(p.name);
        const auto q = symmetric_product(x, 2, o);
        for (auto c : {Coefficients::integers(), Coefficients::mod(2)})
            CHECK(trim(q.homology(c)) == trim(homology(sp_chain_complex(p, 2), c)));
    }
}

TEST_CASE("presentation input")
{
    const auto p = load_surface(R"({"r":2,"word":[1,2,-1,-2]})");
    CHECK(p.r == 2);
    CHECK(p.word == surface_torus().word);
    CHECK(p.orientable());
    const auto q = load_surface(serialize(surface_genus(2)));
    CHECK(q.word == surface_genus(2).word);
    CHECK(q.name == "genus2");
    CHECK(builtin_surface("genus3").r == 6);
    CHECK(surface_rp2().boundary_of_disk() == std::vector<long>{2});

    CHECK_THROWS_AS(load_surface("{"), ParseError);
    CHECK_THROWS_AS(load_surface(R"({"r":1})"), ParseError);
    CHECK_THROWS_AS(load_surface(R"({"r":1,"word":[2]})"), ParseError);
    CHECK_THROWS_AS(load_surface(R"({"r":1,"word":[0]})"), ParseError);
    CHECK_THROWS_AS(load_surface(R"({"r":-1,"word":[]})"), ParseError);
    CHECK_THROWS_AS(builtin_surface("klein"), ParseError);
    CHECK_THROWS_AS(sp_chain_complex(surface_torus(), 0), Error);
}
