#include <doctest.h>

#include <set>

#include "finsub/error.hpp"
#include "finsub/verify.hpp"

using namespace finsub;

namespace {

Homology H(std::initializer_list<std::pair<std::size_t, std::vector<long>>> g)
{
    return make_homology(std::vector<std::pair<std::size_t, std::vector<long>>>(g));
}

}  // namespace

TEST_CASE("catalog is well formed")
{
    const auto& cat = verification_catalog();
    std::set<std::string> ids;
    std::set<int> criteria;
    for (const auto& c : cat) {
        CHECK(ids.insert(c.id).second);
        CHECK(static_cast<bool>(c.body));
        CHECK(c.criterion >= 1);
        CHECK(c.criterion <= 12);
        if (c.tag == CaseTag::required)
            criteria.insert(c.criterion);
    }
    CHECK(criteria.size() == 12);
    CHECK(ids.count("bott-sub3-s1"));
    CHECK(ids.count("sub2-equals-sp2"));
}

TEST_CASE("a wrong expected torsion fails with a diff")
{
    const auto c = homology_case("rp2-wrong", "", 0, CaseTag::required,
                                 [] {
                                     return std::pair{H({{1, {}}, {0, {2}}}), std::size_t{7}};
                                 },
                                 H({{1, {}}, {0, {3}}}));
    const auto r = run_case(c);
    CHECK(r.status == CaseStatus::fail);
    CHECK(r.detail == "degree 1: expected Z/3, got Z/2");
    CHECK(r.cells == 7);
    CHECK(r.blocking());

    const auto ok = run_case(homology_case("rp2-right", "", 0, CaseTag::required,
                                           [] { return std::pair{H({{1, {}}, {0, {2}}, {0, {}}}), std::size_t{0}}; },
                                           H({{1, {}}, {0, {2}}})));
    CHECK(ok.status == CaseStatus::pass);
}

TEST_CASE("unreliable degrees are inconclusive")
{
    auto h = H({{1, {}}, {0, {}}, {1, {}}});
    h[2].reliable = false;
    CHECK(compare_homology(h, H({{1, {}}, {0, {}}, {1, {}}})).status == CaseStatus::inconclusive);
    CHECK(compare_homology(h, H({{1, {}}})).status == CaseStatus::fail);
}

TEST_CASE("resource limits skip and errors fail")
{
    VerificationCase big{"big", "", 0, CaseTag::stretch, true, []() -> CaseOutcome { throw ResourceError("too many cells"); }};
    const auto r = run_case(big);
    CHECK(r.status == CaseStatus::skipped);
    CHECK_FALSE(r.blocking());
    big.tag = CaseTag::required;
    CHECK(run_case(big).blocking());

    VerificationCase bad{"bad", "", 0, CaseTag::required, true, []() -> CaseOutcome { throw InvariantError("dd != 0"); }};
    CHECK(run_case(bad).status == CaseStatus::fail);

    CaseReport inc;
    inc.status = CaseStatus::inconclusive;
    inc.inconclusive_fails = false;
    CHECK_FALSE(inc.blocking());
    inc.inconclusive_fails = true;
    CHECK(inc.blocking());
}

TEST_CASE("selection")
{
    CHECK(select_cases("nonexistent-*").empty());
    const auto empty = run_suite("nonexistent-*", 4);
    CHECK(empty.cases.empty());
    CHECK(empty.ok());
    const auto three = select_cases("three-model-*");
    CHECK(three.size() == 3);
    for (const auto* c : select_cases("stretch"))
        CHECK(c->tag == CaseTag::stretch);
    CHECK(select_cases("paper").size() + select_cases("stretch").size() == verification_catalog().size());
    CHECK_THROWS_AS(run_case("no-such-case"), Error);
}

TEST_CASE("small cases run concurrently in catalog order")
{
    const auto report = run_cases(select_cases("*-circle"), 3, "circles");
    REQUIRE(report.cases.size() == select_cases("*-circle").size());
    REQUIRE(report.cases.size() >= 3);
    for (std::size_t i = 0; i < report.cases.size(); ++i)
        CHECK(report.cases[i].id == select_cases("*-circle")[i]->id);
    CHECK(report.ok());
    CHECK(report.count(CaseStatus::pass) == report.cases.size());

    const auto bott = run_case("bott-sub3-s1");
    CHECK(bott.status == CaseStatus::pass);
    CHECK(bott.computed == H({{1, {}}, {0, {}}, {0, {}}, {1, {}}}));
}

TEST_CASE("report json round trip")
{
    Report r;
    r.suite = "x";
    CaseReport a;
    a.id = "a";
    a.criterion = 3;
    a.status = CaseStatus::pass;
    a.expected = H({{1, {}}, {0, {2}}});
    a.computed = a.expected;
    a.seconds = 0.25;
    a.cells = 12;
    CaseReport b;
    b.id = "b";
    b.tag = CaseTag::stretch;
    b.status = CaseStatus::skipped;
    b.detail = "cap";
    r.cases = {a, b};
    const auto j = r.to_json();
    CHECK(j["ok"] == true);
    const auto back = Report::from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.to_json() == j);
    CHECK(back.cases[0].expected == a.expected);
    CHECK(back.cases[1].tag == CaseTag::stretch);
    CHECK_THROWS_AS(Report::from_json(nlohmann::json::parse(R"({"suite":"x","cases":[{"id":1}]})")), ParseError);
}
