#include "finsub/fundamental_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <sstream>

#include "finsub/error.hpp"

namespace finsub {

namespace {

using Word = std::vector<int>;

void free_reduce(Word& w)
{
    Word out;
    out.reserve(w.size());
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    // cyclic reduction
    std::size_t a = 0, b = out.size();
    while (b - a >= 2 && out[a] == -out[b - 1]) {
        ++a;
        --b;
    }
    w.assign(out.begin() + a, out.begin() + b);
}

Word inverse(const Word& w)
{
    Word out(w.rbegin(), w.rend());
    for (auto& x : out)
        x = -x;
    return out;
}

// Smallest rotation of w or of its inverse, so that conjugate relators and
// inverse relators compare equal.
Word normal_form(const Word& w)
{
    Word best = w;
    for (const Word& v : {w, inverse(w)})
        for (std::size_t r = 0; r < v.size(); ++r) {
            Word rot(v.begin() + r, v.end());
            rot.insert(rot.end(), v.begin(), v.begin() + r);
            if (rot < best)
                best = std::move(rot);
        }
    return best;
}

}  // namespace

void GroupPresentation::check() const
{
    for (const auto& r : relators)
        for (int x : r)
            if (x == 0 || static_cast<std::size_t>(std::abs(x)) > generators)
                throw Error("relator letter " + std::to_string(x) + " out of range");
}

std::string GroupPresentation::to_string() const
{
    std::ostringstream os;
    os << "<" << generators << " generators | ";
    for (std::size_t i = 0; i < relators.size(); ++i) {
        if (i)
            os << ", ";
        for (std::size_t j = 0; j < relators[i].size(); ++j)
            os << (j ? " " : "") << relators[i][j];
    }
    os << ">";
    return os.str();
}

GroupPresentation fundamental_presentation(const TruncatedSimplicialSet& s)
{
    const std::size_t nv = s.size(0);
    if (nv == 0)
        throw Error("fundamental group of an empty simplicial set");
    std::vector<CellId> edges;
    if (s.truncation() >= 1)
        edges = s.nondegenerate(1);

    std::vector<std::vector<std::pair<CellId, CellId>>> adj(nv);  // (neighbour, edge)
    for (CellId e : edges) {
        const CellId src = s.face(1, e, 1), dst = s.face(1, e, 0);
        adj[src].push_back({dst, e});
        adj[dst].push_back({src, e});
    }
    std::vector<std::uint8_t> seen(nv, 0);
    std::set<CellId> tree;
    std::deque<CellId> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
        const CellId v = queue.front();
        queue.pop_front();
        for (const auto& [w, e] : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                tree.insert(e);
                queue.push_back(w);
            }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw Error("fundamental group: " + s.name() + " is not connected");

    GroupPresentation p;
    std::vector<int> gen_of(s.truncation() >= 1 ? s.size(1) : 0, 0);
    for (CellId e : edges)
        if (!tree.count(e))
            gen_of[e] = static_cast<int>(++p.generators);
    if (s.truncation() >= 2) {
        for (CellId t : s.nondegenerate(2)) {
            Word w;
            auto letter = [&](CellId e, int sign) {
                if (gen_of[e] != 0)
                    w.push_back(sign * gen_of[e]);
            };
            letter(s.face(2, t, 2), 1);
            letter(s.face(2, t, 0), 1);
            letter(s.face(2, t, 1), -1);
            free_reduce(w);
            if (!w.empty())
                p.relators.push_back(std::move(w));
        }
    }
    return p;
}

std::string to_string(Pi1Status s)
{
    switch (s) {
    case Pi1Status::trivial:
        return "trivial";
    case Pi1Status::free:
        return "free";
    case Pi1Status::inconclusive:
        return "inconclusive";
    }
    return "?";
}

TietzeResult tietze_simplify(GroupPresentation p, std::size_t budget)
{
    p.check();
    TietzeResult out;
    std::vector<std::uint8_t> alive(p.generators + 1, 1);
    alive[0] = 0;
    auto& rels = p.relators;

    auto tidy = [&] {
        std::set<Word> seen;
        std::vector<Word> kept;
        for (auto& r : rels) {
            free_reduce(r);
            if (r.empty())
                continue;
            if (seen.insert(normal_form(r)).second)
                kept.push_back(std::move(r));
        }
        rels = std::move(kept);
    };

    for (;;) {
        tidy();
        // a relator of length one kills its generator
        bool changed = false;
        for (const auto& r : rels)
            if (r.size() == 1) {
                const int g = std::abs(r[0]);
                for (auto& s : rels)
                    std::erase_if(s, [g](int x) { return std::abs(x) == g; });
                alive[g] = 0;
                ++out.eliminations;
                changed = true;
                break;
            }
        if (changed)
            continue;

        // eliminate a generator that occurs exactly once in a relator,
        // choosing the shortest such relator
        std::size_t best_rel = rels.size(), best_pos = 0;
        for (std::size_t i = 0; i < rels.size(); ++i) {
            if (best_rel < rels.size() && rels[i].size() >= rels[best_rel].size())
                continue;
            const auto& r = rels[i];
            for (std::size_t j = 0; j < r.size(); ++j) {
                const int g = std::abs(r[j]);
                if (std::count_if(r.begin(), r.end(), [g](int x) { return std::abs(x) == g; }) == 1) {
                    best_rel = i;
                    best_pos = j;
                    break;
                }
            }
        }
        if (best_rel == rels.size())
            break;

        // rotate so the generator leads: g^e w = 1, hence g = w^{-1} (e = 1) or g = w (e = -1)
        Word r = rels[best_rel];
        std::rotate(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(best_pos), r.end());
        const int g = std::abs(r[0]);
        const Word w(r.begin() + 1, r.end());
        const Word image = r[0] > 0 ? inverse(w) : w;
        const Word image_inv = inverse(image);
        rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(best_rel));
        std::size_t total = 0;
        for (auto& s : rels) {
            Word t;
            for (int x : s) {
                if (x == g)
                    t.insert(t.end(), image.begin(), image.end());
                else if (x == -g)
                    t.insert(t.end(), image_inv.begin(), image_inv.end());
                else
                    t.push_back(x);
            }
            free_reduce(t);
            s = std::move(t);
            total += s.size();
        }
        alive[g] = 0;
        ++out.eliminations;
        if (total > budget) {
            out.budget_exhausted = true;
            tidy();
            break;
        }
    }

    // renumber the surviving generators
    std::vector<int> renum(alive.size(), 0);
    int next = 0;
    for (std::size_t g = 1; g < alive.size(); ++g)
        if (alive[g])
            renum[g] = ++next;
    for (auto& r : rels)
        for (auto& x : r)
            x = x > 0 ? renum[x] : -renum[-x];
    p.generators = static_cast<std::size_t>(next);
    out.presentation = std::move(p);
    if (out.presentation.generators == 0)
        out.status = Pi1Status::trivial;
    else if (out.presentation.relators.empty())
        out.status = Pi1Status::free;
    else
        out.status = Pi1Status::inconclusive;
    return out;
}

HomologyGroup abelianization(const GroupPresentation& p)
{
    p.check();
    std::vector<MatrixEntry> e;
    for (std::size_t i = 0; i < p.relators.size(); ++i)
        for (int x : p.relators[i])
            e.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(std::abs(x) - 1), Integer(x > 0 ? 1 : -1)});
    const SparseIntMatrix m(p.relators.size(), p.generators, std::move(e));
    HomologyGroup g;
    g.degree = 1;
    const auto inv = smith_invariants(m);
    g.betti = p.generators - inv.size();
    for (const auto& t : inv)
        if (t > 1)
            g.torsion.push_back(t);
    return g;
}

}  // namespace finsub
