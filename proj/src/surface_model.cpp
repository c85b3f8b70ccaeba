#include "finsub/surface_model.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

#include <json.hpp>

#include "finsub/error.hpp"

namespace finsub {

void SurfacePresentation::check() const
{
    if (r < 0)
        throw ParseError("surface presentation: negative number of circles");
    if (r > 24)
        throw ParseError("surface presentation: more than 24 circles");
    for (int x : word)
        if (x == 0 || std::abs(x) > r)
            throw ParseError("surface presentation: letter " + std::to_string(x) + " out of range 1.." + std::to_string(r));
}

std::vector<long> SurfacePresentation::boundary_of_disk() const
{
    std::vector<long> c(static_cast<std::size_t>(r), 0);
    for (int x : word)
        c[std::abs(x) - 1] += x > 0 ? 1 : -1;
    return c;
}

bool SurfacePresentation::orientable() const
{
    const auto c = boundary_of_disk();
    return std::all_of(c.begin(), c.end(), [](long v) { return v == 0; });
}

SurfacePresentation load_surface(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("surface presentation: ") + e.what());
    }
    if (!j.is_object() || !j.contains("r") || !j.contains("word"))
        throw ParseError("surface presentation: expected {\"r\":..., \"word\":[...]}");
    SurfacePresentation p;
    try {
        p.r = j.at("r").get<int>();
        p.word = j.at("word").get<std::vector<int>>();
        p.name = j.value("name", std::string("surface"));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("surface presentation: ") + e.what());
    }
    p.check();
    return p;
}

std::string serialize(const SurfacePresentation& p)
{
    nlohmann::ordered_json j;
    j["name"] = p.name;
    j["r"] = p.r;
    j["word"] = p.word;
    return j.dump();
}

SurfacePresentation surface_sphere() { return {"sphere", 0, {}}; }
SurfacePresentation surface_torus() { return {"torus", 2, {1, 2, -1, -2}}; }
SurfacePresentation surface_rp2() { return {"rp2", 1, {1, 1}}; }

SurfacePresentation surface_genus(int g)
{
    if (g < 0)
        throw ParseError("surface genus must be >= 0");
    if (g == 0)
        return surface_sphere();
    SurfacePresentation p{"genus" + std::to_string(g), 2 * g, {}};
    for (int i = 0; i < g; ++i) {
        const int a = 2 * i + 1, b = 2 * i + 2;
        p.word.insert(p.word.end(), {a, b, -a, -b});
    }
    return p;
}

SurfacePresentation builtin_surface(std::string_view name)
{
    if (name == "sphere")
        return surface_sphere();
    if (name == "torus")
        return surface_torus();
    if (name == "rp2")
        return surface_rp2();
    if (name.starts_with("genus")) {
        const std::string rest(name.substr(5));
        if (!rest.empty() && std::all_of(rest.begin(), rest.end(), ::isdigit))
            return surface_genus(std::stoi(rest));
    }
    throw ParseError("unknown surface '" + std::string(name) + "'");
}

std::string MonomialCell::label() const
{
    std::ostringstream os;
    for (int c : circles)
        os << "e" << c << "*";
    if (disk_power == 0 && !circles.empty()) {
        auto s = os.str();
        s.pop_back();
        return s;
    }
    os << "SP^" << disk_power << "D";
    return os.str();
}

std::vector<MonomialCell> monomial_cells(int r, int n)
{
    std::vector<MonomialCell> out;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        MonomialCell m;
        for (int i = 0; i < r; ++i)
            if (mask >> i & 1)
                m.circles.push_back(i + 1);
        const int l = static_cast<int>(m.circles.size());
        for (int k = 0; l + k <= n; ++k) {
            m.disk_power = k;
            out.push_back(m);
        }
    }
    std::sort(out.begin(), out.end(), [](const MonomialCell& a, const MonomialCell& b) {
        if (a.degree() != b.degree())
            return a.degree() < b.degree();
        if (a.disk_power != b.disk_power)
            return a.disk_power < b.disk_power;
        return a.circles < b.circles;
    });
    return out;
}

ChainComplexZ sp_chain_complex(const SurfacePresentation& p, int n)
{
    p.check();
    if (n < 1)
        throw Error("sp_chain_complex: n must be >= 1");
    const auto c = p.boundary_of_disk();
    const auto cells = monomial_cells(p.r, n);
    const int top = 2 * n;

    ChainComplexZ out;
    out.ranks.assign(top + 1, 0);
    out.labels.assign(top + 1, {});
    std::map<std::pair<std::vector<int>, int>, std::uint32_t> index;
    for (const auto& m : cells) {
        const int d = m.degree();
        index[{m.circles, m.disk_power}] = static_cast<std::uint32_t>(out.ranks[d]++);
        out.labels[d].push_back(m.label());
    }

    std::vector<std::vector<MatrixEntry>> entries(top + 1);
    for (const auto& m : cells) {
        if (m.disk_power == 0)
            continue;
        const int d = m.degree();
        const std::uint32_t col = index.at({m.circles, m.disk_power});
        const int outer = m.circles.size() % 2 ? -1 : 1;
        for (int i = 1; i <= p.r; ++i) {
            if (c[i - 1] == 0 || std::binary_search(m.circles.begin(), m.circles.end(), i))
                continue;
            // moving e_i past the larger circles of S
            const auto above = m.circles.end() - std::upper_bound(m.circles.begin(), m.circles.end(), i);
            const int sign = outer * (above % 2 ? -1 : 1);
            auto s = m.circles;
            s.insert(std::upper_bound(s.begin(), s.end(), i), i);
            const std::uint32_t row = index.at({s, m.disk_power - 1});
            entries[d].push_back({row, col, Integer(sign * c[i - 1])});
        }
    }
    out.boundaries.resize(top + 1);
    out.boundaries[0] = SparseIntMatrix(0, out.ranks[0]);
    for (int d = 1; d <= top; ++d)
        out.boundaries[d] = SparseIntMatrix(out.ranks[d - 1], out.ranks[d], std::move(entries[d]));
    out.check();
    return out;
}

std::string TopHomologyReport::to_string() const
{
    std::ostringstream os;
    os << "n=" << n << (orientable ? " orientable" : " nonorientable")
       << ": H_" << 2 * n << " = " << top_z.to_string()
       << ", H_" << 2 * n - 1 << " = " << below_z.to_string()
       << "; mod 2: H_" << 2 * n << " = " << top_f2.to_string(Coefficients::mod(2))
       << ", H_" << 2 * n - 1 << " = " << below_f2.to_string(Coefficients::mod(2));
    return os.str();
}

TopHomologyReport top_homology_report(const SurfacePresentation& p, int n)
{
    const auto cx = sp_chain_complex(p, n);
    const auto hz = homology(cx);
    const auto h2 = homology(cx, Coefficients::mod(2));
    TopHomologyReport out;
    out.n = n;
    out.orientable = p.orientable();
    out.top_z = hz[2 * n];
    out.below_z = hz[2 * n - 1];
    out.top_f2 = h2[2 * n];
    out.below_f2 = h2[2 * n - 1];
    return out;
}

}  // namespace finsub
