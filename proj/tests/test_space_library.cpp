#include <doctest.h>

#include "finsub/error.hpp"
#include "finsub/space_library.hpp"

using namespace finsub;

TEST_CASE("builtins are valid and have the expected shape")
{
    CHECK(circle(3).all_simplices().size() == 6);
    CHECK(sphere(2).dimension() == 2);
    CHECK(sphere(2).all_simplices().size() == 14);  // boundary of the 3-simplex
    CHECK(torus().dimension() == 2);
    CHECK(rp2().dimension() == 2);
    for (const auto& s : {interval(), circle(5), sphere(1), sphere(3), torus(), rp2(), wedge_circles(2)})
        CHECK_NOTHROW(validate(s));

    // vertices - edges + triangles
    auto chi = [](const OrderedComplexSpec& s) {
        long c = 0;
        for (const auto& f : s.all_simplices())
            c += f.size() % 2 ? 1 : -1;
        return c;
    };
    CHECK(chi(torus()) == 0);
    CHECK(chi(rp2()) == 1);
    CHECK(chi(sphere(2)) == 2);
    CHECK(chi(wedge_circles(2)) == -1);
}

TEST_CASE("builtin lookup by name")
{
    CHECK(builtin_space("circle3") == circle(3));
    CHECK(builtin_space("circle(4)") == circle(4));
    CHECK(builtin_space("sphere2") == sphere(2));
    CHECK(builtin_space("torus") == torus());
    CHECK_THROWS_AS(builtin_space("klein"), ParseError);
    CHECK_THROWS_AS(builtin_space("circle2"), ParseError);
}

TEST_CASE("serialize and load round trip")
{
    for (const auto& s : {circle(3), sphere(2), torus(), rp2(), wedge_circles(3)})
        CHECK(load_complex(serialize(s)) == s);
    const auto c = load_complex(R"({"name":"c","vertices":3,"simplices":[[0,1],[0,2],[1,2]],"basepoint":1})");
    CHECK(c.basepoint == 1);
    CHECK(c.name == "c");
}

TEST_CASE("load errors")
{
    CHECK_THROWS_AS(load_complex("not json"), ParseError);
    CHECK_THROWS_AS(load_complex("[1,2]"), ParseError);
    CHECK_THROWS_AS(load_complex(R"({"simplices":[[0,1]]})"), ParseError);
    CHECK_THROWS_AS(load_complex(R"({"vertices":2})"), ParseError);
    CHECK_THROWS_AS(load_complex(R"({"vertices":2,"simplices":[[1,0]]})"), ParseError);
    CHECK_THROWS_AS(load_complex(R"({"vertices":2,"simplices":[[0,2]]})"), ParseError);
    CHECK_THROWS_AS(load_complex(R"({"vertices":2,"simplices":[[0,0]]})"), ParseError);
    CHECK_THROWS_AS(load_complex(R"({"vertices":3,"simplices":[[0,1]]})"), ParseError);  // disconnected
    CHECK_THROWS_AS(load_complex(R"({"vertices":2,"simplices":[[0,1]],"basepoint":5})"), ParseError);
    CHECK_THROWS_AS(load_complex(R"({"vertices":2,"simplices":[["a"]]})"), ParseError);
}
