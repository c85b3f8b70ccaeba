#include "finsub/verify.hpp"

#include <atomic>
#include <chrono>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "finsub/constructions.hpp"
#include "finsub/error.hpp"
#include "finsub/fundamental_group.hpp"
#include "finsub/surface_model.hpp"

namespace finsub {

std::string to_string(CaseTag t)
{
    return t == CaseTag::required ? "required" : "stretch";
}

std::string to_string(CaseStatus s)
{
    switch (s) {
    case CaseStatus::pass:
        return "pass";
    case CaseStatus::fail:
        return "fail";
    case CaseStatus::inconclusive:
        return "inconclusive";
    case CaseStatus::skipped:
        return "skipped";
    }
    return "?";
}

namespace {

CaseStatus status_from_string(const std::string& s)
{
    for (auto st : {CaseStatus::pass, CaseStatus::fail, CaseStatus::inconclusive, CaseStatus::skipped})
        if (to_string(st) == s)
            return st;
    throw ParseError("unknown case status '" + s + "'");
}

HomologyGroup group_at(const Homology& h, int k)
{
    if (k < static_cast<int>(h.size()))
        return h[k];
    HomologyGroup g;
    g.degree = k;
    return g;
}

HomologyGroup free_group(int degree, std::size_t betti, std::vector<long> torsion = {})
{
    HomologyGroup g;
    g.degree = degree;
    g.betti = betti;
    for (long t : torsion)
        g.torsion.push_back(Integer(t));
    return g;
}

CaseOutcome check(bool ok, std::string detail, std::size_t cells = 0)
{
    CaseOutcome o;
    o.status = ok ? CaseStatus::pass : CaseStatus::fail;
    o.detail = std::move(detail);
    o.cells = cells;
    return o;
}

BuildOptions plain(int truncation = -1)
{
    BuildOptions o;
    o.with_maps = false;
    o.truncation = truncation;
    return o;
}

std::pair<Homology, std::size_t> measured(const ConstructionResult& r, Coefficients coeff = {})
{
    return {r.homology(coeff), r.space->total_cells()};
}

// The spaces the property cases sweep over.
std::vector<ConstructionResult> small_constructions()
{
    std::vector<ConstructionResult> out;
    const auto s1 = circle(3), s2 = sphere(2), t = torus(), p = rp2();
    out.push_back(base_space(t, plain()));
    out.push_back(base_space(p, plain()));
    out.push_back(symmetric_product(s1, 2, plain()));
    out.push_back(symmetric_product(s1, 3, plain()));
    out.push_back(symmetric_product(s2, 2, plain()));
    out.push_back(symmetric_product(p, 2, plain()));
    out.push_back(finite_subset_space(s1, 2, plain()));
    out.push_back(finite_subset_space(s1, 3, plain()));
    out.push_back(finite_subset_space(s2, 2, plain()));
    out.push_back(reduced(s1, 2, ReducedKind::sub, plain()));
    out.push_back(reduced(s2, 2, ReducedKind::sp, plain()));
    out.push_back(fat_diagonal(s1, 3, plain()));
    out.push_back(based_subset3(s2, plain()));
    return out;
}

Pi1Status pi1_status(const TruncatedSimplicialSet& s, std::string& detail, const HomologyGroup& h1)
{
    const auto p = fundamental_presentation(s);
    const auto ab = abelianization(p);
    const auto t = tietze_simplify(p);
    detail = std::to_string(p.generators) + " generators, " + std::to_string(p.relators.size()) + " relators -> " +
             to_string(t.status) + " " + t.presentation.to_string() + "; abelianization " + ab.to_string();
    if (!(ab == h1)) {
        detail += " differs from H_1 = " + h1.to_string();
        return Pi1Status::inconclusive;
    }
    return t.status;
}

CaseOutcome pi1_trivial(const ConstructionResult& r)
{
    CaseOutcome o;
    const auto h1 = group_at(r.homology(), 1);
    const auto st = pi1_status(*r.space, o.detail, h1);
    o.status = st == Pi1Status::trivial ? CaseStatus::pass : CaseStatus::inconclusive;
    o.cells = r.space->total_cells();
    return o;
}

bool is_plus_minus(const IntMatrix& m, long v)
{
    return m.rows() == 1 && m.cols() == 1 && (m(0, 0) == v || m(0, 0) == -v);
}

std::string matrix_string(const IntMatrix& m)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? " " : "") << m(i, j);
    }
    os << "]";
    return os.str();
}

std::vector<VerificationCase> build_catalog()
{
    using enum CaseTag;
    const auto Z = [](std::initializer_list<std::pair<std::size_t, std::vector<long>>> g) {
        return make_homology(std::vector<std::pair<std::size_t, std::vector<long>>>(g));
    };
    std::vector<VerificationCase> cat;

    // 1
    cat.push_back({"sub2-equals-sp2", "Sub_2 and SP^2 have the same cells (circle, sphere)", 1, required, true, [] {
                       bool same = true;
                       std::size_t cells = 0;
                       for (const auto& x : {circle(3), sphere(2)}) {
                           const auto a = finite_subset_space(x, 2, plain());
                           const auto b = symmetric_product(x, 2, plain());
                           same = same && identical_cells(*a.space, *b.space);
                           cells += a.space->total_cells();
                       }
                       return check(same, same ? "identical cell structures" : "cell structures differ", cells);
                   }});
    cat.push_back(homology_case("sub2-circle", "Sub_2(S^1) is a Moebius band", 1, required,
                                [] { return measured(finite_subset_space(circle(3), 2, plain())); },
                                Z({{1, {}}, {1, {}}})));

    // 2
    cat.push_back(homology_case("reduced-sub2-circle", "Sub_2(S^1)/S^1 is RP^2", 2, required,
                                [] { return measured(reduced(circle(3), 2, ReducedKind::sub, plain())); },
                                Z({{1, {}}, {0, {2}}})));
    cat.push_back(homology_case("reduced-sp2-circle", "SP^2(S^1)/S^1 is acyclic", 2, required,
                                [] { return measured(reduced(circle(3), 2, ReducedKind::sp, plain())); },
                                Z({{1, {}}})));

    // 3
    cat.push_back(homology_case("bott-sub3-s1", "Sub_3(S^1) has the homology of S^3", 3, required,
                                [] { return measured(finite_subset_space(circle(3), 3, plain())); },
                                Z({{1, {}}, {0, {}}, {0, {}}, {1, {}}})));
    cat.push_back({"pi1-sub3-s1", "pi_1 Sub_3(S^1) presentation trivializes", 3, required, true,
                   [] { return pi1_trivial(finite_subset_space(circle(3), 3, plain())); }});

    // 4
    cat.push_back(homology_case("sub4-s1", "Sub_4(S^1) has the homology of S^3", 4, required,
                                [] { return measured(finite_subset_space(circle(3), 4, plain())); },
                                Z({{1, {}}, {0, {}}, {0, {}}, {1, {}}})));
    cat.push_back(homology_case("sub5-s1", "Sub_5(S^1) has the homology of S^5", 4, stretch,
                                [] { return measured(finite_subset_space(circle(3), 5, plain())); },
                                Z({{1, {}}, {0, {}}, {0, {}}, {0, {}}, {0, {}}, {1, {}}})));

    // 5
    cat.push_back(homology_case("sp2-s2", "SP^2(S^2) is CP^2", 5, required,
                                [] { return measured(symmetric_product(sphere(2), 2, plain())); },
                                Z({{1, {}}, {0, {}}, {1, {}}, {0, {}}, {1, {}}})));
    cat.push_back(homology_case("reduced-sp2-s2", "SP^2(S^2)/S^2 is S^4", 5, required,
                                [] { return measured(reduced(sphere(2), 2, ReducedKind::sp, plain())); },
                                Z({{1, {}}, {0, {}}, {0, {}}, {0, {}}, {1, {}}})));
    cat.push_back(homology_case("reduced-sub2-s2", "Sub_2(S^2)/S^2: H_2 = Z/2, H_4 = Z", 5, required,
                                [] { return measured(reduced(sphere(2), 2, ReducedKind::sub, plain())); },
                                Z({{1, {}}, {0, {}}, {0, {2}}, {0, {}}, {1, {}}})));

    // 6
    cat.push_back(homology_case("sub3-s2", "Sub_3(S^2): Z+Z/2 in degree 4, Z in degree 6", 6, required,
                                [] { return measured(finite_subset_space(sphere(2), 3, plain())); },
                                Z({{1, {}}, {0, {}}, {0, {}}, {0, {}}, {1, {2}}, {0, {}}, {1, {}}})));
    cat.push_back({"pi1-sub3-s2", "pi_1 Sub_3(S^2) presentation trivializes", 6, required, true,
                   [] { return pi1_trivial(finite_subset_space(sphere(2), 3, plain(3))); }});
    cat.push_back({"sub4-s2-h6", "H_6 Sub_4(S^2) = Z+Z/3", 6, stretch, true, [] {
                       const auto r = finite_subset_space(sphere(2), 4, plain(7));
                       const auto h = r.homology();
                       const auto expected = free_group(6, 1, {3});
                       const auto got = group_at(h, 6);
                       auto o = check(got == expected && got.reliable, "H_6 = " + got.to_string(), r.space->total_cells());
                       return o;
                   }});

    // 7
    const auto sp2_torus = Z({{1, {}}, {2, {}}, {2, {}}, {2, {}}, {1, {}}});
    cat.push_back(homology_case("sp2-torus-quotient", "SP^2(T) from the quotient model", 7, required,
                                [] { return measured(symmetric_product(torus(), 2, plain())); }, sp2_torus));
    cat.push_back(homology_case("sp2-torus-surface", "SP^2(T) from the surface chain model", 7, required,
                                [] { return std::pair{homology(sp_chain_complex(surface_torus(), 2)), std::size_t{0}}; },
                                sp2_torus));
    cat.push_back({"sp2-torus-models-agree", "quotient and surface models of SP^2(T) agree over Z and F_2", 7, required,
                   true, [] {
                       const auto q = symmetric_product(torus(), 2, plain());
                       const auto s = sp_chain_complex(surface_torus(), 2);
                       bool ok = true;
                       for (auto c : {Coefficients::integers(), Coefficients::mod(2)})
                           ok = ok && trim(q.homology(c)) == trim(homology(s, c));
                       return check(ok, ok ? "agree" : "models disagree", q.space->total_cells());
                   }});

    // 8
    const std::vector<std::pair<std::string, Homology>> based = {
        {"circle(3)", Z({{1, {}}})},
        {"sphere(2)", Z({{1, {}}, {0, {}}, {0, {}}, {0, {}}, {1, {}}})},
        {"torus", Z({{1, {}}, {0, {}}, {1, {}}, {2, {}}, {1, {}}})},
    };
    for (const auto& [space, expected] : based) {
        const std::string id = "three-model-" + (space == "circle(3)" ? std::string("s1") : space == "torus" ? "torus" : "s2");
        cat.push_back({id, "Sub_3(" + space + ", x0): quotient, W_2 chains and coproduct agree", 8, required, true,
                       [space, expected] {
                           const auto x = builtin_space(space);
                           const auto q = based_subset3(x, plain());
                           const auto hq = trim(q.homology());
                           const auto hw = trim(homology(w2_chain_model(x)));
                           const auto hc = trim(sub3_homology_via_coproduct(x).homology);
                           CaseOutcome o = compare_homology(hq, expected, q.space->total_cells());
                           if (!(hw == hq) || !(hc == hq)) {
                               o.status = CaseStatus::fail;
                               o.detail = "quotient " + to_string(hq) + ", W_2 " + to_string(hw) + ", coproduct " + to_string(hc);
                           }
                           return o;
                       }});
    }

    // 9
    cat.push_back({"diag-s2-h2", "diagonal S^2 -> SP^2(S^2) is multiplication by 2 on H_2", 9, required, true, [] {
                       const auto sp = symmetric_product(sphere(2), 2, plain());
                       const auto m = induced_map(sp.map("diag"), 2);
                       return check(is_plus_minus(m.matrix, 2), "matrix " + matrix_string(m.matrix), sp.space->total_cells());
                   }});
    cat.push_back({"j2-s2-h2", "j_2: S^2 -> SP^2(S^2) is an isomorphism on H_2", 9, required, true, [] {
                       const auto sp = symmetric_product(sphere(2), 2, plain());
                       const auto m = induced_map(sp.map("j_n"), 2);
                       return check(is_plus_minus(m.matrix, 1), "matrix " + matrix_string(m.matrix), sp.space->total_cells());
                   }});
    cat.push_back({"j-torus-sub3-h2", "singleton map T -> Sub_3(T) is nonzero on H_2", 9, required, true, [] {
                       // H_2 only needs levels up to 3
                       const auto sub = finite_subset_space(torus(), 3, plain(3));
                       const auto m = induced_map(sub.map("j"), 2);
                       bool nonzero = false;
                       for (std::size_t i = 0; i < m.matrix.rows(); ++i)
                           nonzero = nonzero || m.matrix(i, 0) != 0;
                       return check(nonzero,
                                    "H_2(Sub_3 T) = " + m.target.to_string() + ", image of [T] = " + matrix_string(m.matrix),
                                    sub.space->total_cells());
                   }});
    cat.push_back({"j-x0-torus-coproduct", "j_x0 [T] != 0 in H_2(Sub_3(T, x0)), coproduct model", 9, required, true, [] {
                       const auto c = sub3_homology_via_coproduct(torus());
                       const bool nonzero = !c.j_image_vanishes(2, 0);
                       return check(nonzero, "j column " + matrix_string(c.j_star.at(2)) + ", diag column " +
                                                 matrix_string(c.diag_star.at(2)) + ", quotient " +
                                                 c.homology.at(2).to_string());
                   }});
    cat.push_back({"j-x0-torus-quotient", "j_x0 [T] = +-2 generator in H_2(Sub_3(T, x0)), quotient model", 9, required,
                   true, [] {
                       const auto b = based_subset3(torus(), plain());
                       const auto m = induced_map(b.map("j_x0"), 2);
                       return check(m.target.betti == 1 && m.target.torsion.empty() && is_plus_minus(m.matrix, 2),
                                    "H_2 = " + m.target.to_string() + ", matrix " + matrix_string(m.matrix),
                                    b.space->total_cells());
                   }});

    // 10
    cat.push_back({"top-sp2-s2", "H_4 SP^2(S^2) = Z", 10, required, true, [] {
                       const auto r = symmetric_product(sphere(2), 2, plain());
                       const auto g = group_at(r.homology(), 4);
                       return check(g == free_group(4, 1), "H_4 = " + g.to_string(), r.space->total_cells());
                   }});
    cat.push_back({"top-sp2-s3", "H_6 SP^2(S^3) = 0", 10, required, true, [] {
                       const auto r = symmetric_product(sphere(3), 2, plain());
                       const auto h = r.homology();
                       const auto g = group_at(h, 6);
                       return check(g.is_zero() && g.reliable, "homology " + to_string(h), r.space->total_cells());
                   }});
    cat.push_back({"top-sp2-rp2", "H_4 SP^2(RP^2) = 0 over Z, F_2 over F_2", 10, required, true, [] {
                       const auto r = symmetric_product(rp2(), 2, plain());
                       const auto hz = group_at(r.homology(), 4);
                       const auto h2 = group_at(r.homology(Coefficients::mod(2)), 4);
                       return check(hz.is_zero() && h2.betti == 1,
                                    "H_4 = " + hz.to_string() + ", mod 2 " + h2.to_string(Coefficients::mod(2)),
                                    r.space->total_cells());
                   }});
    cat.push_back({"surface-sp3-torus-h6", "surface model: H_6 SP^3(T) = Z", 10, required, true, [] {
                       const auto rep = top_homology_report(surface_torus(), 3);
                       return check(rep.top_z == free_group(6, 1), rep.to_string());
                   }});
    cat.push_back({"surface-odd-top-mod2", "surface model: H_{2n-1}(SP^n X; F_2) = F_2^r, torus and genus 2, n = 2, 3",
                   10, required, true, [] {
                       bool ok = true;
                       std::string detail;
                       for (const auto& p : {surface_torus(), surface_genus(2)})
                           for (int n : {2, 3}) {
                               const auto rep = top_homology_report(p, n);
                               ok = ok && rep.below_f2.betti == static_cast<std::size_t>(p.r) && rep.below_f2.torsion.empty();
                               detail += (detail.empty() ? "" : "; ") + p.name + " " + rep.to_string();
                           }
                       return check(ok, detail);
                   }});

    // 11
    cat.push_back(homology_case("w2-s3", "Sub_3(S^3, x0) has the homology of a suspended RP^2 (W_2 chains)", 11,
                                required, [] { return std::pair{homology(w2_chain_model(sphere(3))), std::size_t{0}}; },
                                Z({{1, {}}, {0, {}}, {0, {}}, {0, {}}, {0, {}}, {0, {2}}})));

    // 12
    cat.push_back({"prop-dd-zero", "boundary squares to zero on every construction", 12, required, true, [] {
                       std::size_t cells = 0;
                       for (const auto& r : small_constructions()) {
                           r.chains().complex.check();
                           cells += r.space->total_cells();
                       }
                       return check(true, "checked", cells);
                   }});
    cat.push_back({"prop-simplicial-identities", "simplicial identities hold on every construction", 12, required, true,
                   [] {
                       std::size_t cells = 0;
                       for (const auto& r : small_constructions()) {
                           r.space->check_identities();
                           cells += r.space->total_cells();
                       }
                       return check(true, "checked", cells);
                   }});
    cat.push_back({"prop-dimension-bound", "no nondegenerate cells above n dim X", 12, required, true, [] {
                       bool ok = true;
                       std::string detail;
                       for (const auto& r : small_constructions()) {
                           const int d = r.space->nondegenerate_dimension();
                           ok = ok && d <= r.dimension_bound;
                           detail += r.name + ":" + std::to_string(d) + "<=" + std::to_string(r.dimension_bound) + " ";
                       }
                       return check(ok, detail);
                   }});
    cat.push_back({"prop-snf-certificates", "U M V = D with unimodular transforms", 12, required, true, [] {
                       std::mt19937_64 rng(20240611);
                       std::uniform_int_distribution<int> entry(-6, 6), dim(1, 7);
                       bool ok = true;
                       for (int trial = 0; trial < 200 && ok; ++trial) {
                           IntMatrix m(dim(rng), dim(rng));
                           for (std::size_t i = 0; i < m.rows(); ++i)
                               for (std::size_t j = 0; j < m.cols(); ++j)
                                   m(i, j) = entry(rng) * (trial % 3 == 0 ? 1000003 : 1);
                           ok = verify_smith(m, smith_normal_form(m));
                       }
                       const auto c = symmetric_product(circle(3), 2, plain()).chains().complex;
                       for (int k = 1; k <= c.top_degree() && ok; ++k) {
                           const auto m = IntMatrix::from_sparse(c.boundary(k));
                           ok = verify_smith(m, smith_normal_form(m));
                       }
                       return check(ok, ok ? "all certificates verified" : "certificate failed");
                   }});
    cat.push_back({"prop-triangulation-invariance", "Sub_3 of circle(3) and circle(4) agree", 12, required, true, [] {
                       const auto a = finite_subset_space(circle(3), 3, plain());
                       const auto b = finite_subset_space(circle(4), 3, plain());
                       const auto ha = trim(a.homology()), hb = trim(b.homology());
                       return check(ha == hb, to_string(ha) + " vs " + to_string(hb),
                                    a.space->total_cells() + b.space->total_cells());
                   }});
    cat.push_back({"prop-universal-coefficients", "F_p dimensions follow from integral homology", 12, required, true, [] {
                       bool ok = true;
                       std::string detail;
                       auto sweep = [&](const std::string& name, const ChainComplexZ& c) {
                           const auto hz = homology(c);
                           for (std::uint32_t p : {2u, 3u}) {
                               const auto hp = homology(c, Coefficients::mod(p));
                               const auto predicted = uct_mod_p(hz, p);
                               for (std::size_t k = 0; k < hp.size() && k < predicted.size(); ++k)
                                   if (hp[k].reliable && hp[k].betti != predicted[k]) {
                                       ok = false;
                                       detail += name + " p=" + std::to_string(p) + " degree " + std::to_string(k) + "; ";
                                   }
                           }
                       };
                       for (const auto& r : small_constructions())
                           sweep(r.name, r.chains().complex);
                       sweep("Sub3(sphere2)", finite_subset_space(sphere(2), 3, plain()).chains().complex);
                       sweep("W2(sphere3)", w2_chain_model(sphere(3)));
                       for (const auto& p : {surface_torus(), surface_rp2(), surface_genus(2)})
                           sweep("surface " + p.name, sp_chain_complex(p, 3));
                       return check(ok, ok ? "consistent" : detail);
                   }});
    cat.push_back({"prop-relative-sp-sub", "SP^n/fat diagonal and Sub_n/Sub_{n-1} agree", 12, required, true, [] {
                       bool ok = true;
                       std::string detail;
                       for (const auto& [x, n] : std::vector<std::pair<OrderedComplexSpec, int>>{
                                {circle(3), 2}, {circle(3), 3}, {sphere(2), 2}}) {
                           const auto a = trim(sp_mod_fat_diagonal(x, n, plain()).homology());
                           const auto b = trim(reduced(x, n, ReducedKind::sub, plain()).homology());
                           ok = ok && a == b;
                           detail += x.name + " n=" + std::to_string(n) + ": " + to_string(a) + " vs " + to_string(b) + "; ";
                       }
                       return check(ok, detail);
                   }});
    cat.push_back({"prop-poincare-failure-sub3-s2", "Sub_3(S^2) has torsion in H_4 while H_1 = 0", 12, required, true,
                   [] {
                       const auto r = finite_subset_space(sphere(2), 3, plain());
                       const auto h = r.homology();
                       const bool ok = group_at(h, 1).is_zero() && !group_at(h, 4).torsion.empty();
                       return check(ok, to_string(h), r.space->total_cells());
                   }});
    cat.push_back({"prop-abelianization", "abelianized pi_1 presentations equal H_1", 12, required, true, [] {
                       bool ok = true;
                       std::string detail;
                       for (const auto& r : small_constructions()) {
                           const auto ab = abelianization(fundamental_presentation(*r.space));
                           const auto h1 = group_at(r.homology(), 1);
                           ok = ok && ab == h1;
                           detail += r.name + ":" + ab.to_string() + " ";
                       }
                       return check(ok, detail);
                   }});
    cat.push_back({"pi1-sp2-torus", "pi_1 SP^2(T) abelianizes to Z^2", 12, required, true, [] {
                       const auto r = symmetric_product(torus(), 2, plain(3));
                       const auto ab = abelianization(fundamental_presentation(*r.space));
                       return check(ab == free_group(1, 2), "abelianization " + ab.to_string(), r.space->total_cells());
                   }});
    cat.push_back({"prop-steenrod-splitting", "rank H_k(X) <= rank H_k(SP^n X)", 12, required, true, [] {
                       bool ok = true;
                       std::string detail;
                       for (const auto& [x, n] : std::vector<std::pair<OrderedComplexSpec, int>>{
                                {circle(3), 2}, {circle(3), 3}, {sphere(2), 2}, {torus(), 2}, {rp2(), 2}}) {
                           for (auto c : {Coefficients::integers(), Coefficients::mod(2)}) {
                               const auto hx = base_space(x, plain()).homology(c);
                               const auto hs = symmetric_product(x, n, plain()).homology(c);
                               for (int k = 0; k < static_cast<int>(hx.size()); ++k) {
                                   const auto a = group_at(hx, k), b = group_at(hs, k);
                                   if (a.betti > b.betti || a.torsion.size() > b.torsion.size()) {
                                       ok = false;
                                       detail += x.name + " n=" + std::to_string(n) + " degree " + std::to_string(k) + "; ";
                                   }
                               }
                           }
                       }
                       return check(ok, ok ? "holds" : detail);
                   }});
    cat.push_back({"prop-surface-cross-model", "surface model equals quotient SP^2 for sphere, torus, RP^2", 12, required,
                   true, [] {
                       bool ok = true;
                       std::string detail;
                       const std::vector<std::pair<SurfacePresentation, OrderedComplexSpec>> pairs = {
                           {surface_sphere(), sphere(2)}, {surface_torus(), torus()}, {surface_rp2(), rp2()}};
                       for (const auto& [p, x] : pairs) {
                           const auto q = symmetric_product(x, 2, plain());
                           const auto s = sp_chain_complex(p, 2);
                           for (auto c : {Coefficients::integers(), Coefficients::mod(2)}) {
                               const bool same = trim(q.homology(c)) == trim(homology(s, c));
                               ok = ok && same;
                               if (!same)
                                   detail += p.name + " over " + c.name() + "; ";
                           }
                       }
                       return check(ok, ok ? "agree" : detail);
                   }});
    cat.push_back({"prop-euler", "Euler characteristic from ranks equals the alternating Betti sum", 12, required, true,
                   [] {
                       bool ok = true;
                       for (const auto& r : small_constructions()) {
                           const auto c = r.chains().complex;
                           long long chi = 0;
                           const auto h = homology(c);
                           for (const auto& g : h)
                               chi += (g.degree % 2 ? -1 : 1) * static_cast<long long>(g.betti);
                           ok = ok && chi == euler_characteristic(c);
                       }
                       return check(ok, ok ? "consistent" : "mismatch");
                   }});
    return cat;
}

bool matches(std::string_view pattern, std::string_view s)
{
    if (pattern.empty())
        return s.empty();
    if (pattern[0] == '*') {
        for (std::size_t i = 0; i <= s.size(); ++i)
            if (matches(pattern.substr(1), s.substr(i)))
                return true;
        return false;
    }
    return !s.empty() && pattern[0] == s[0] && matches(pattern.substr(1), s.substr(1));
}

}  // namespace

CaseOutcome compare_homology(const Homology& computed, const Homology& expected, std::size_t cells)
{
    CaseOutcome o;
    o.cells = cells;
    o.expected = trim(expected);
    o.computed = trim(computed);
    const std::size_t top = std::max(o.expected->size(), o.computed->size());
    std::string diff;
    bool unreliable = false;
    for (std::size_t k = 0; k < top; ++k) {
        const auto a = group_at(*o.computed, static_cast<int>(k));
        const auto b = group_at(*o.expected, static_cast<int>(k));
        if (!(a == b))
            diff += "degree " + std::to_string(k) + ": expected " + b.to_string() + ", got " + a.to_string() + "; ";
        if (!a.reliable && k < o.expected->size())
            unreliable = true;
    }
    if (!diff.empty()) {
        o.status = unreliable ? CaseStatus::inconclusive : CaseStatus::fail;
        diff.resize(diff.size() - 2);
        o.detail = diff;
    } else if (unreliable) {
        o.status = CaseStatus::inconclusive;
        o.detail = "matches, but some degrees are above the certified range";
    } else {
        o.status = CaseStatus::pass;
        o.detail = to_string(*o.computed);
    }
    return o;
}

VerificationCase homology_case(std::string id, std::string summary, int criterion, CaseTag tag,
                               std::function<std::pair<Homology, std::size_t>()> compute, Homology expected)
{
    VerificationCase c;
    c.id = std::move(id);
    c.summary = std::move(summary);
    c.criterion = criterion;
    c.tag = tag;
    c.body = [compute = std::move(compute), expected = std::move(expected)] {
        const auto [h, cells] = compute();
        return compare_homology(h, expected, cells);
    };
    return c;
}

const std::vector<VerificationCase>& verification_catalog()
{
    static const std::vector<VerificationCase> catalog = build_catalog();
    return catalog;
}

bool CaseReport::blocking() const
{
    if (tag != CaseTag::required)
        return false;
    return status == CaseStatus::fail || status == CaseStatus::skipped ||
           (status == CaseStatus::inconclusive && inconclusive_fails);
}

bool Report::ok() const
{
    return std::none_of(cases.begin(), cases.end(), [](const CaseReport& c) { return c.blocking(); });
}

std::size_t Report::count(CaseStatus s) const
{
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [s](const CaseReport& c) { return c.status == s; }));
}

nlohmann::ordered_json Report::to_json() const
{
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["ok"] = ok();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : cases) {
        nlohmann::ordered_json e;
        e["id"] = c.id;
        e["criterion"] = c.criterion;
        e["tag"] = to_string(c.tag);
        e["inconclusive_fails"] = c.inconclusive_fails;
        e["status"] = to_string(c.status);
        e["detail"] = c.detail;
        if (c.expected)
            e["expected"] = finsub::to_json(*c.expected);
        if (c.computed)
            e["computed"] = finsub::to_json(*c.computed);
        e["seconds"] = c.seconds;
        e["cells"] = c.cells;
        arr.push_back(std::move(e));
    }
    j["cases"] = std::move(arr);
    return j;
}

Report Report::from_json(const nlohmann::json& j)
{
    Report r;
    try {
        r.suite = j.at("suite").get<std::string>();
        for (const auto& e : j.at("cases")) {
            CaseReport c;
            c.id = e.at("id").get<std::string>();
            c.criterion = e.at("criterion").get<int>();
            const auto tag = e.at("tag").get<std::string>();
            if (tag != "required" && tag != "stretch")
                throw ParseError("unknown case tag '" + tag + "'");
            c.tag = tag == "required" ? CaseTag::required : CaseTag::stretch;
            c.inconclusive_fails = e.at("inconclusive_fails").get<bool>();
            c.status = status_from_string(e.at("status").get<std::string>());
            c.detail = e.at("detail").get<std::string>();
            if (e.contains("expected"))
                c.expected = homology_from_json(e.at("expected"));
            if (e.contains("computed"))
                c.computed = homology_from_json(e.at("computed"));
            c.seconds = e.at("seconds").get<double>();
            c.cells = e.at("cells").get<std::size_t>();
            r.cases.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("report: ") + ex.what());
    }
    return r;
}

std::string Report::to_table() const
{
    std::ostringstream os;
    for (const auto& c : cases) {
        os << std::left << std::setw(14) << to_string(c.status) << std::setw(32) << c.id << std::setw(10) << to_string(c.tag)
           << std::right << std::fixed << std::setprecision(2) << std::setw(9) << c.seconds << "s  " << c.detail << "\n";
    }
    os << count(CaseStatus::pass) << " passed, " << count(CaseStatus::fail) << " failed, "
       << count(CaseStatus::inconclusive) << " inconclusive, " << count(CaseStatus::skipped) << " skipped\n";
    return os.str();
}

CaseReport run_case(const VerificationCase& c)
{
    CaseReport r;
    r.id = c.id;
    r.criterion = c.criterion;
    r.tag = c.tag;
    r.inconclusive_fails = c.inconclusive_fails;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        auto o = c.body();
        r.status = o.status;
        r.detail = std::move(o.detail);
        r.expected = std::move(o.expected);
        r.computed = std::move(o.computed);
        r.cells = o.cells;
    } catch (const ResourceError& e) {
        r.status = CaseStatus::skipped;
        r.detail = e.what();
    } catch (const std::exception& e) {
        r.status = CaseStatus::fail;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

CaseReport run_case(std::string_view id)
{
    for (const auto& c : verification_catalog())
        if (c.id == id)
            return run_case(c);
    throw Error("unknown verification case '" + std::string(id) + "'");
}

std::vector<const VerificationCase*> select_cases(std::string_view filter, const std::vector<VerificationCase>& catalog)
{
    std::vector<const VerificationCase*> out;
    for (const auto& c : catalog) {
        bool take;
        if (filter == "paper")
            take = c.tag == CaseTag::required;
        else if (filter == "stretch")
            take = c.tag == CaseTag::stretch;
        else if (filter == "all")
            take = true;
        else
            take = matches(filter, c.id);
        if (take)
            out.push_back(&c);
    }
    return out;
}

Report run_cases(const std::vector<const VerificationCase*>& cases, unsigned jobs, std::string suite)
{
    Report report;
    report.suite = std::move(suite);
    report.cases.resize(cases.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cases.size();)
            report.cases[i] = run_case(*cases[i]);
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cases.size())));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    pool.clear();
    return report;
}

Report run_suite(std::string_view filter, unsigned jobs)
{
    return run_cases(select_cases(filter), jobs, std::string(filter));
}

}  // namespace finsub
