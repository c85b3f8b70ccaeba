#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "finsub/constructions.hpp"
#include "finsub/error.hpp"
#include "finsub/fundamental_group.hpp"
#include "finsub/kernels/modp.hpp"
#include "finsub/surface_model.hpp"
#include "finsub/verify.hpp"

using namespace finsub;

namespace {

const std::vector<std::string> kConstructions = {
    "base", "sp", "sub", "sp-generic", "sub-generic", "fat", "sp-reduced", "sub-reduced",
    "sp-mod-fat", "based-sub3", "w2", "coproduct", "surface-sp",
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// builtin:NAME or file:PATH (a bare name is treated as builtin)
OrderedComplexSpec resolve_space(const std::string& ref)
{
    if (ref.starts_with("file:"))
        return load_complex(slurp(ref.substr(5)));
    if (ref.starts_with("builtin:"))
        return builtin_space(ref.substr(8));
    return builtin_space(ref);
}

// surface:NAME, or a JSON presentation file via file:PATH
SurfacePresentation resolve_surface(const std::string& ref)
{
    if (ref.starts_with("file:"))
        return load_surface(slurp(ref.substr(5)));
    if (ref.starts_with("surface:"))
        return builtin_surface(ref.substr(8));
    if (ref.starts_with("builtin:"))
        return builtin_surface(ref.substr(8));
    return builtin_surface(ref);
}

Coefficients parse_coeff(std::string s)
{
    for (auto& ch : s)
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (s == "z")
        return Coefficients::integers();
    if (s.starts_with("f"))
        s = s.substr(1);
    try {
        std::size_t pos = 0;
        const unsigned long p = std::stoul(s, &pos);
        bool prime = pos == s.size() && p >= 2 && p <= kernels::max_modulus;
        for (unsigned long d = 2; prime && d * d <= p; ++d)
            prime = p % d != 0;
        if (prime)
            return Coefficients::mod(static_cast<std::uint32_t>(p));
    } catch (const std::exception&) {
    }
    throw ParseError("coefficients must be z or a prime (2, f3, ...)");
}

struct Built {
    std::string name;
    ChainComplexZ complex;
    std::size_t cells = 0;
    SSetPtr space;
};

Built build(const std::string& construction, const std::string& space, int n, int truncation)
{
    BuildOptions o;
    o.with_maps = false;
    o.truncation = truncation;
    auto from = [](const ConstructionResult& r) {
        return Built{r.name, r.chains().complex, r.space->total_cells(), r.space};
    };
    if (construction == "surface-sp") {
        const auto p = resolve_surface(space);
        return {"SP" + std::to_string(n) + "(" + p.name + ") surface model", sp_chain_complex(p, n), 0, nullptr};
    }
    const auto x = resolve_space(space);
    if (construction == "base")
        return from(base_space(x, o));
    if (construction == "sp")
        return from(symmetric_product(x, n, o));
    if (construction == "sub")
        return from(finite_subset_space(x, n, o));
    if (construction == "sp-generic")
        return from(symmetric_product_generic(x, n, o));
    if (construction == "sub-generic")
        return from(finite_subset_space_generic(x, n, o));
    if (construction == "fat")
        return from(fat_diagonal(x, n, o));
    if (construction == "sp-reduced")
        return from(reduced(x, n, ReducedKind::sp, o));
    if (construction == "sub-reduced")
        return from(reduced(x, n, ReducedKind::sub, o));
    if (construction == "sp-mod-fat")
        return from(sp_mod_fat_diagonal(x, n, o));
    if (construction == "based-sub3")
        return from(based_subset3(x, o));
    if (construction == "w2")
        return {"W2(" + x.name + ")", w2_chain_model(x, o), 0, nullptr};
    throw ParseError("unknown construction '" + construction + "'");
}

void print_homology(const std::string& name, const Homology& h, Coefficients c, std::size_t cells, const std::string& emit)
{
    if (emit == "json") {
        nlohmann::ordered_json j;
        j["space"] = name;
        j["coefficients"] = c.name();
        if (cells)
            j["cells"] = cells;
        j["homology"] = to_json(h);
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << name << " over " << c.name();
    if (cells)
        std::cout << " (" << cells << " cells)";
    std::cout << "\n";
    for (const auto& g : h)
        std::cout << "  H_" << g.degree << " = " << g.to_string(c) << (g.reliable ? "" : "  (above certified range)") << "\n";
}

std::string default_construction_for(const std::string& map)
{
    if (map == "diag" || map == "j_n" || map == "incl_sp" || map == "q")
        return "sp";
    if (map == "j" || map == "pi" || map == "incl_sub")
        return "sub";
    if (map == "incl_fat")
        return "fat";
    if (map == "alpha" || map == "j_x0")
        return "based-sub3";
    return "";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"finsub: homology of symmetric products and finite subset spaces"};
    app.require_subcommand(1);

    auto* spaces = app.add_subcommand("spaces", "list builtin spaces, constructions, surfaces and maps");

    std::string space = "builtin:circle3", construction = "sub", coeff = "z", emit = "table";
    int n = 2, truncation = -1;
    auto* hom = app.add_subcommand("homology", "homology of a construction");
    hom->add_option("--space", space, "builtin:NAME, file:PATH, or surface:NAME for surface-sp");
    hom->add_option("--construction", construction)->check(CLI::IsMember(kConstructions));
    hom->add_option("--n", n)->check(CLI::Range(1, 64));
    hom->add_option("--coeff", coeff, "z, or a prime p");
    hom->add_option("--truncation", truncation, "top level of the truncation (default n*dim+1)");
    hom->add_option("--emit", emit)->check(CLI::IsMember({"json", "table"}));

    std::string map_name, map_construction;
    int degree = 0;
    auto* map = app.add_subcommand("map", "induced map on H_k");
    map->add_option("--name", map_name)->required()->check(CLI::IsMember(map_vocabulary()));
    map->add_option("--space", space);
    map->add_option("--construction", map_construction, "construction carrying the map (inferred from --name)")
        ->check(CLI::IsMember({"sp", "sub", "fat", "based-sub3", "sp-reduced", "sub-reduced", "sp-mod-fat"}));
    map->add_option("--n", n)->check(CLI::Range(1, 64));
    map->add_option("--degree", degree)->required()->check(CLI::NonNegativeNumber);
    map->add_option("--truncation", truncation);
    map->add_option("--emit", emit)->check(CLI::IsMember({"json", "table"}));

    auto* pi1 = app.add_subcommand("pi1", "edge-path presentation of pi_1 and its simplification");
    pi1->add_option("--space", space);
    pi1->add_option("--construction", construction)
        ->check(CLI::IsMember({"base", "sp", "sub", "fat", "sp-reduced", "sub-reduced", "sp-mod-fat", "based-sub3"}));
    pi1->add_option("--n", n)->check(CLI::Range(1, 64));
    std::size_t budget = 1'000'000;
    pi1->add_option("--budget", budget, "bound on total relator length");
    pi1->add_option("--emit", emit)->check(CLI::IsMember({"json", "table"}));

    std::string suite = "paper", output;
    unsigned jobs = 1;
    auto* verify = app.add_subcommand("verify", "run the verification catalog");
    verify->add_option("--suite", suite, "paper, stretch, all, or an id pattern with *");
    verify->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));
    verify->add_option("--emit", emit)->check(CLI::IsMember({"json", "table"}));
    verify->add_option("--output", output, "also write the JSON report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*spaces) {
            std::cout << "builtin spaces:\n";
            for (const auto& s : builtin_names())
                std::cout << "  " << s << "\n";
            std::cout << "constructions:\n";
            for (const auto& s : kConstructions)
                std::cout << "  " << s << "\n";
            std::cout << "surfaces (surface-sp): sphere, torus, rp2, genusG\n";
            std::cout << "maps:\n";
            for (const auto& s : map_vocabulary())
                std::cout << "  " << s << "\n";
            return 0;
        }
        if (*hom) {
            const auto c = parse_coeff(coeff);
            if (construction == "coproduct") {
                BuildOptions o;
                o.truncation = truncation;
                const auto x = resolve_space(space);
                auto h = sub3_homology_via_coproduct(x, o).homology;
                if (!c.integral()) {
                    // the quotient description is integral; reduce through universal coefficients
                    const auto dims = uct_mod_p(h, c.p);
                    for (std::size_t k = 0; k < h.size(); ++k) {
                        h[k].betti = dims[k];
                        h[k].torsion.clear();
                    }
                }
                print_homology("Sub3(" + x.name + ",x0) coproduct model", h, c, 0, emit);
                return 0;
            }
            const auto b = build(construction, space, n, truncation);
            print_homology(b.name, homology(b.complex, c), c, b.cells, emit);
            return 0;
        }
        if (*map) {
            const auto con = map_construction.empty() ? default_construction_for(map_name) : map_construction;
            if (con.empty())
                throw ParseError("map '" + map_name + "' needs --construction");
            const auto x = resolve_space(space);
            BuildOptions o;
            o.truncation = truncation;
            o.with_maps = map_name == "pi" || map_name == "incl_sp" || map_name == "incl_sub";
            o.with_q = map_name == "q";
            ConstructionResult r;
            if (con == "sp")
                r = symmetric_product(x, n, o);
            else if (con == "sub")
                r = finite_subset_space(x, n, o);
            else if (con == "fat")
                r = fat_diagonal(x, n, o);
            else if (con == "based-sub3")
                r = based_subset3(x, o);
            else if (con == "sp-reduced")
                r = reduced(x, n, ReducedKind::sp, o);
            else if (con == "sub-reduced")
                r = reduced(x, n, ReducedKind::sub, o);
            else
                r = sp_mod_fat_diagonal(x, n, o);
            const auto m = induced_map(r.map(map_name), degree);
            if (emit == "json") {
                nlohmann::ordered_json j;
                j["map"] = map_name;
                j["construction"] = r.name;
                j["degree"] = degree;
                auto group = [](const HomologyGroup& g) {
                    return to_json(Homology{g}).at(0);
                };
                j["source"] = group(m.source);
                j["target"] = group(m.target);
                auto rows = nlohmann::ordered_json::array();
                for (std::size_t i = 0; i < m.matrix.rows(); ++i) {
                    auto row = nlohmann::ordered_json::array();
                    for (std::size_t k = 0; k < m.matrix.cols(); ++k)
                        row.push_back(m.matrix(i, k).get_str());
                    rows.push_back(row);
                }
                j["matrix"] = rows;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << map_name << " on H_" << degree << ": " << m.source.to_string() << " -> " << m.target.to_string()
                          << " (" << r.name << ")\n";
                for (std::size_t i = 0; i < m.matrix.rows(); ++i) {
                    std::cout << " ";
                    for (std::size_t k = 0; k < m.matrix.cols(); ++k)
                        std::cout << " " << m.matrix(i, k);
                    std::cout << "\n";
                }
            }
            return 0;
        }
        if (*pi1) {
            const auto b = build(construction, space, n, construction == "base" ? -1 : std::max(truncation, 3));
            const auto p = fundamental_presentation(*b.space);
            const auto t = tietze_simplify(p, budget);
            const auto ab = abelianization(p);
            if (emit == "json") {
                nlohmann::ordered_json j;
                j["space"] = b.name;
                j["generators"] = p.generators;
                j["relators"] = p.relators.size();
                j["status"] = to_string(t.status);
                j["simplified_generators"] = t.presentation.generators;
                j["simplified_relators"] = t.presentation.relators;
                j["abelianization"] = to_json(Homology{ab}).at(0);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << b.name << ": " << p.generators << " generators, " << p.relators.size() << " relators\n"
                          << "  simplified: " << t.presentation.to_string() << " (" << to_string(t.status) << ")\n"
                          << "  abelianization: " << ab.to_string() << "\n";
            }
            return 0;
        }
        if (*verify) {
            const auto report = run_suite(suite, jobs);
            if (!output.empty()) {
                std::ofstream out(output);
                out << report.to_json().dump(2) << "\n";
            }
            if (emit == "json")
                std::cout << report.to_json().dump(2) << "\n";
            else
                std::cout << report.to_table();
            return report.ok() ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "finsub: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "finsub: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "finsub: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
