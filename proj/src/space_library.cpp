#include "finsub/space_library.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include <json.hpp>

#include "finsub/error.hpp"

namespace finsub {

namespace {

int find_root(std::vector<int>& parent, int v)
{
    while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    return v;
}

std::vector<std::vector<int>> sorted_triangles(std::vector<std::vector<int>> simplices)
{
    for (auto& s : simplices)
        std::sort(s.begin(), s.end());
    std::sort(simplices.begin(), simplices.end());
    return simplices;
}

}  // namespace

int OrderedComplexSpec::dimension() const
{
    int dim = vertex_count > 0 ? 0 : -1;
    for (const auto& s : maximal_simplices)
        dim = std::max(dim, static_cast<int>(s.size()) - 1);
    return dim;
}

std::vector<std::vector<int>> OrderedComplexSpec::all_simplices() const
{
    std::set<std::vector<int>> faces;
    for (int v = 0; v < vertex_count; ++v)
        faces.insert({v});
    for (const auto& s : maximal_simplices) {
        const auto m = s.size();
        // every nonempty subset of s; dimensions stay small so 2^m is fine
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
            std::vector<int> face;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (std::uint64_t{1} << i))
                    face.push_back(s[i]);
            faces.insert(std::move(face));
        }
    }
    std::vector<std::vector<int>> out(faces.begin(), faces.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

void validate(const OrderedComplexSpec& spec)
{
    if (spec.vertex_count <= 0)
        throw ParseError("complex must have at least one vertex");
    if (spec.basepoint < 0 || spec.basepoint >= spec.vertex_count)
        throw ParseError("basepoint " + std::to_string(spec.basepoint) + " out of range");
    for (const auto& s : spec.maximal_simplices) {
        if (s.empty())
            throw ParseError("empty simplex");
        if (s.size() > 24)
            throw ParseError("simplex dimension too large");
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 0 || s[i] >= spec.vertex_count)
                throw ParseError("vertex index " + std::to_string(s[i]) + " out of range");
            if (i > 0 && s[i] == s[i - 1])
                throw ParseError("duplicate vertex " + std::to_string(s[i]) + " in simplex");
            if (i > 0 && s[i] < s[i - 1])
                throw ParseError("simplex vertices must be strictly increasing");
        }
    }
    std::vector<int> parent(spec.vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& s : spec.maximal_simplices)
        for (std::size_t i = 1; i < s.size(); ++i)
            parent[find_root(parent, s[i])] = find_root(parent, s[0]);
    const int root = find_root(parent, 0);
    for (int v = 1; v < spec.vertex_count; ++v)
        if (find_root(parent, v) != root)
            throw ParseError("complex is disconnected (vertex " + std::to_string(v) + ")");
}

OrderedComplexSpec load_complex(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("complex parse failure: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("complex must be a JSON object");
    OrderedComplexSpec spec;
    try {
        spec.name = j.value("name", std::string{});
        if (!j.contains("vertices") || !j["vertices"].is_number_integer())
            throw ParseError("missing integer field \"vertices\"");
        spec.vertex_count = j["vertices"].get<int>();
        if (!j.contains("simplices") || !j["simplices"].is_array())
            throw ParseError("missing array field \"simplices\"");
        spec.maximal_simplices = j["simplices"].get<std::vector<std::vector<int>>>();
        spec.basepoint = j.value("basepoint", 0);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("complex parse failure: ") + e.what());
    }
    validate(spec);
    return spec;
}

std::string serialize(const OrderedComplexSpec& spec)
{
    nlohmann::ordered_json j;
    j["name"] = spec.name;
    j["vertices"] = spec.vertex_count;
    j["simplices"] = spec.maximal_simplices;
    j["basepoint"] = spec.basepoint;
    return j.dump();
}

OrderedComplexSpec interval()
{
    return {"interval", 2, {{0, 1}}, 0};
}

OrderedComplexSpec circle(int m)
{
    if (m < 3)
        throw ParseError("circle needs at least 3 vertices");
    OrderedComplexSpec spec{"circle" + std::to_string(m), m, {}, 0};
    for (int i = 0; i + 1 < m; ++i)
        spec.maximal_simplices.push_back({i, i + 1});
    spec.maximal_simplices.push_back({0, m - 1});
    spec.maximal_simplices = sorted_triangles(std::move(spec.maximal_simplices));
    return spec;
}

OrderedComplexSpec sphere(int d)
{
    if (d < 1 || d > 12)
        throw ParseError("sphere dimension must be in 1..12");
    // boundary of the (d+1)-simplex: omit one vertex at a time
    OrderedComplexSpec spec{"sphere" + std::to_string(d), d + 2, {}, 0};
    for (int omit = d + 1; omit >= 0; --omit) {
        std::vector<int> s;
        for (int v = 0; v < d + 2; ++v)
            if (v != omit)
                s.push_back(v);
        spec.maximal_simplices.push_back(std::move(s));
    }
    return spec;
}

OrderedComplexSpec torus()
{
    // Moebius-Csaszar 7-vertex torus: {i,i+1,i+3} and {i,i+2,i+3} mod 7
    OrderedComplexSpec spec{"torus", 7, {}, 0};
    for (int i = 0; i < 7; ++i) {
        spec.maximal_simplices.push_back({i, (i + 1) % 7, (i + 3) % 7});
        spec.maximal_simplices.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    spec.maximal_simplices = sorted_triangles(std::move(spec.maximal_simplices));
    return spec;
}

OrderedComplexSpec rp2()
{
    // hemi-icosahedron
    OrderedComplexSpec spec{"rp2", 6,
                            {{0, 1, 3}, {0, 1, 5}, {0, 2, 4}, {0, 2, 5}, {0, 3, 4},
                             {1, 2, 3}, {1, 2, 4}, {1, 4, 5}, {2, 3, 5}, {3, 4, 5}},
                            0};
    spec.maximal_simplices = sorted_triangles(std::move(spec.maximal_simplices));
    return spec;
}

OrderedComplexSpec wedge_circles(int r)
{
    if (r < 1)
        throw ParseError("wedge of circles needs r >= 1");
    OrderedComplexSpec spec{"wedge" + std::to_string(r), 1 + 2 * r, {}, 0};
    for (int i = 0; i < r; ++i) {
        const int a = 1 + 2 * i, b = 2 + 2 * i;
        spec.maximal_simplices.push_back({0, a});
        spec.maximal_simplices.push_back({0, b});
        spec.maximal_simplices.push_back({a, b});
    }
    spec.maximal_simplices = sorted_triangles(std::move(spec.maximal_simplices));
    return spec;
}

namespace {

bool parse_param(std::string_view name, std::string_view stem, int& value)
{
    if (name.substr(0, stem.size()) != stem)
        return false;
    auto rest = name.substr(stem.size());
    if (!rest.empty() && rest.front() == '(' && rest.back() == ')')
        rest = rest.substr(1, rest.size() - 2);
    if (rest.empty())
        return false;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
    return ec == std::errc{} && ptr == rest.data() + rest.size();
}

}  // namespace

OrderedComplexSpec builtin_space(std::string_view name)
{
    if (name.substr(0, 8) == "builtin:")
        name.remove_prefix(8);
    int p = 0;
    if (name == "interval")
        return interval();
    if (name == "torus")
        return torus();
    if (name == "rp2")
        return rp2();
    if (parse_param(name, "wedge_circles", p) || parse_param(name, "wedge", p))
        return wedge_circles(p);
    if (parse_param(name, "circle", p))
        return circle(p);
    if (parse_param(name, "sphere", p))
        return sphere(p);
    throw ParseError("unknown builtin space '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names()
{
    return {"interval", "circle(m), m>=3", "sphere(d), 1<=d<=12", "torus", "rp2", "wedge_circles(r), r>=1"};
}

}  // namespace finsub
