#include "finsub/homology.hpp"

#include <algorithm>
#include <sstream>

#include "finsub/error.hpp"
#include "sparse_eliminator.hpp"

namespace finsub {

namespace {

using BigEl = detail::SparseEliminator<detail::BigIntRing>;

std::vector<BigEl::Row> transposed_rows(const SparseIntMatrix& m, const std::vector<std::uint8_t>* skip_cols = nullptr)
{
    // rows of m^T: one per column of m, entries indexed by the rows of m
    std::vector<BigEl::Row> out(m.cols());
    for (const auto& e : m.entries()) {
        if (skip_cols && (*skip_cols)[e.row])
            continue;
        out[e.col].push_back({e.row, e.value});
    }
    return out;
}

}  // namespace

std::string HomologyGroup::to_string(Coefficients coeff) const
{
    if (!coeff.integral())
        return betti == 0 ? "0" : betti == 1 ? coeff.name() : coeff.name() + "^" + std::to_string(betti);
    std::string out;
    if (betti > 0)
        out = betti == 1 ? "Z" : "Z^" + std::to_string(betti);
    for (const auto& t : torsion) {
        if (!out.empty())
            out += "+";
        out += "Z/" + t.get_str();
    }
    return out.empty() ? "0" : out;
}

Homology homology(const ChainComplexZ& c, Coefficients coeff)
{
    const int top = c.top_degree();
    Homology out;
    if (top < 0)
        return out;
    std::vector<std::size_t> rank(top + 2, 0);
    std::vector<std::vector<Integer>> inv(top + 2);
    for (int k = 1; k <= top; ++k) {
        if (coeff.integral()) {
            inv[k] = smith_invariants(c.boundaries[k]);
            rank[k] = inv[k].size();
        } else {
            rank[k] = rank_mod_p(c.boundaries[k], coeff.p);
        }
    }
    for (int k = 0; k <= top; ++k) {
        HomologyGroup g;
        g.degree = k;
        g.betti = c.rank(k) - rank[k] - rank[k + 1];
        for (const auto& t : inv[k + 1])
            if (t > 1)
                g.torsion.push_back(t);
        g.reliable = k <= c.exact_through;
        out.push_back(std::move(g));
    }
    return out;
}

Homology reduced(Homology h)
{
    if (!h.empty()) {
        if (h[0].betti == 0)
            throw Error("reduced homology of an empty complex");
        --h[0].betti;
    }
    return h;
}

Homology make_homology(const std::vector<std::pair<std::size_t, std::vector<long>>>& groups)
{
    Homology h;
    int k = 0;
    for (const auto& [b, t] : groups) {
        HomologyGroup g;
        g.degree = k++;
        g.betti = b;
        for (long x : t)
            g.torsion.emplace_back(x);
        h.push_back(std::move(g));
    }
    return h;
}

Homology trim(Homology h)
{
    while (!h.empty() && h.back().is_zero())
        h.pop_back();
    return h;
}

std::vector<std::size_t> uct_mod_p(const Homology& integral, std::uint32_t p)
{
    std::vector<std::size_t> out;
    const Integer pz(static_cast<unsigned long>(p));
    auto divisible = [&](const HomologyGroup& g) {
        std::size_t n = 0;
        for (const auto& t : g.torsion)
            if (mpz_divisible_p(t.get_mpz_t(), pz.get_mpz_t()))
                ++n;
        return n;
    };
    for (std::size_t k = 0; k < integral.size(); ++k) {
        std::size_t d = integral[k].betti + divisible(integral[k]);
        if (k > 0)
            d += divisible(integral[k - 1]);
        out.push_back(d);
    }
    return out;
}

std::string to_string(const Homology& h, Coefficients coeff)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (k)
            os << ", ";
        os << h[k].to_string(coeff);
        if (!h[k].reliable)
            os << "?";
    }
    os << ")";
    return os.str();
}

nlohmann::ordered_json to_json(const Homology& h)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& g : h) {
        nlohmann::ordered_json j;
        j["dim"] = g.degree;
        j["betti"] = g.betti;
        auto t = nlohmann::json::array();
        for (const auto& x : g.torsion) {
            if (x.fits_slong_p())
                t.push_back(x.get_si());
            else
                t.push_back(x.get_str());
        }
        j["torsion"] = t;
        if (!g.reliable)
            j["reliable"] = false;
        arr.push_back(j);
    }
    return arr;
}

Homology homology_from_json(const nlohmann::json& j)
{
    Homology h;
    for (const auto& g : j) {
        HomologyGroup out;
        out.degree = g.at("dim").get<int>();
        out.betti = g.at("betti").get<std::size_t>();
        for (const auto& t : g.at("torsion"))
            out.torsion.emplace_back(t.is_string() ? Integer(t.get<std::string>()) : Integer(t.get<long>()));
        out.reliable = g.value("reliable", true);
        h.push_back(std::move(out));
    }
    return h;
}

NormalizedChains normalized_chains(const SSetPtr& s)
{
    NormalizedChains out;
    out.space = s;
    const int top = s->truncation();
    out.generators.resize(top + 1);
    out.index_of.resize(top + 1);
    out.complex.ranks.resize(top + 1);
    out.complex.boundaries.resize(top + 1);
    for (int k = 0; k <= top; ++k) {
        out.generators[k] = s->nondegenerate(k);
        out.index_of[k].assign(s->size(k), -1);
        for (std::size_t i = 0; i < out.generators[k].size(); ++i)
            out.index_of[k][out.generators[k][i]] = static_cast<std::int64_t>(i);
        out.complex.ranks[k] = out.generators[k].size();
    }
    out.complex.boundaries[0] = SparseIntMatrix(0, out.complex.ranks[0]);
    for (int k = 1; k <= top; ++k) {
        std::vector<MatrixEntry> entries;
        entries.reserve(out.generators[k].size() * (k + 1));
        for (std::size_t col = 0; col < out.generators[k].size(); ++col) {
            const CellId c = out.generators[k][col];
            for (int i = 0; i <= k; ++i) {
                const auto row = out.index_of[k - 1][s->face(k, c, i)];
                if (row >= 0)
                    entries.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col),
                                       Integer(i % 2 == 0 ? 1 : -1)});
            }
        }
        out.complex.boundaries[k] = SparseIntMatrix(out.complex.ranks[k - 1], out.complex.ranks[k], std::move(entries));
    }
    out.complex.exact_through = top - 1;
    return out;
}

ChainMap chain_map(const SSetMap& f, const NormalizedChains& source, const NormalizedChains& target)
{
    if (f.source() != source.space || f.target() != target.space)
        throw Error("chain_map: map does not match the given chain complexes");
    ChainMap out;
    const int top = std::min(source.complex.top_degree(), target.complex.top_degree());
    for (int k = 0; k <= top; ++k) {
        std::vector<MatrixEntry> entries;
        for (std::size_t col = 0; col < source.generators[k].size(); ++col) {
            const auto row = target.index(k, f(k, source.generators[k][col]));
            if (row >= 0)
                entries.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), Integer(1)});
        }
        out.components.emplace_back(target.complex.rank(k), source.complex.rank(k), std::move(entries));
    }
    return out;
}

HomologyBasis::HomologyBasis(const ChainComplexZ& c, int k) : degree_(k)
{
    if (k < 0 || k > c.top_degree())
        throw Error("homology degree " + std::to_string(k) + " out of range");
    const std::size_t nk = c.rank(k);
    rank_k_ = nk;
    boundary_k_ = c.boundary(k);
    std::vector<std::uint8_t> is_a(nk, 0), is_b(nk, 0);

    // pairs between C_k and C_{k-1}
    std::vector<std::uint32_t> low_cols;
    std::vector<BigEl::Row> low_rows(nk);
    if (k >= 1) {
        BigEl el(detail::BigIntRing{}, c.rank(k - 1), transposed_rows(boundary_k_), true);
        el.run();
        for (const auto& p : el.pivots()) {
            Pivot pv{p.row, p.col, p.value, {}, {}};
            for (const auto& e : p.row_entries)
                pv.boundary.emplace_back(e.col, e.val);
            pv.column = p.column;
            is_a[p.row] = 1;
            lower_.push_back(std::move(pv));
        }
        low_cols = el.active_cols();
        for (auto r : el.active_rows())
            low_rows[r] = el.row(r);
    }

    // pairs between C_{k+1} and C_k, on the complex with the a-cells removed
    std::vector<BigEl::Row> high_rows;
    if (k + 1 <= c.top_degree()) {
        BigEl el(detail::BigIntRing{}, nk, transposed_rows(c.boundaries[k + 1], &is_a), true);
        el.run();
        for (const auto& p : el.pivots()) {
            Pivot pv{p.row, p.col, p.value, {}, {}};
            for (const auto& e : p.row_entries)
                pv.boundary.emplace_back(e.col, e.val);
            pv.column = p.column;
            is_b[p.col] = 1;
            upper_.push_back(std::move(pv));
        }
        for (auto r : el.active_rows())
            high_rows.push_back(el.row(r));
    }

    residual_pos_.assign(nk, -1);
    for (std::uint32_t x = 0; x < nk; ++x)
        if (!is_a[x] && !is_b[x]) {
            residual_pos_[x] = static_cast<std::int64_t>(residual_.size());
            residual_.push_back(x);
        }
    const std::size_t n = residual_.size();

    std::vector<std::int64_t> low_pos(c.rank(k - 1), -1);
    for (std::size_t i = 0; i < low_cols.size(); ++i)
        low_pos[low_cols[i]] = static_cast<std::int64_t>(i);
    IntMatrix dk(low_cols.size(), n);
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& e : low_rows[residual_[j]])
            dk(low_pos[e.col], j) = e.val;
    IntMatrix dk1(n, high_rows.size());
    for (std::size_t j = 0; j < high_rows.size(); ++j)
        for (const auto& e : high_rows[j]) {
            if (residual_pos_[e.col] < 0)
                throw InvariantError("homology basis: residual boundary hits a reduced cell");
            dk1(residual_pos_[e.col], j) = e.val;
        }

    const SmithResult s1 = smith_normal_form(dk);
    const std::size_t r = s1.rank();
    const std::size_t m = n - r;
    kernel_ = IntMatrix(n, m);
    kernel_coords_ = IntMatrix(m, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            kernel_(i, j) = s1.right(i, r + j);
            kernel_coords_(j, i) = s1.right_inverse(r + j, i);
        }
    const IntMatrix rel = kernel_coords_ * dk1;
    const SmithResult s2 = smith_normal_form(rel);
    class_change_ = s2.left;
    class_basis_ = kernel_ * s2.left_inverse;

    group_.degree = k;
    group_.reliable = k <= c.exact_through;
    for (std::size_t i = 0; i < m; ++i) {
        if (i < s2.rank()) {
            if (s2.invariants[i] == 1)
                continue;
            group_.torsion.push_back(s2.invariants[i]);
            order_.push_back(s2.invariants[i]);
        } else {
            ++group_.betti;
            order_.emplace_back(0);
        }
        kept_.push_back(i);
    }
}

std::vector<Integer> HomologyBasis::project(std::vector<Integer> z) const
{
    for (const auto& p : lower_)
        z[p.a] = 0;
    for (const auto& p : upper_) {
        if (z[p.b] == 0)
            continue;
        const Integer q = z[p.b] * p.eps;  // eps is a unit
        for (const auto& [y, v] : p.boundary)
            z[y] -= q * v;
        z[p.b] = 0;
    }
    std::vector<Integer> out(residual_.size());
    for (std::size_t i = 0; i < residual_.size(); ++i)
        out[i] = z[residual_[i]];
    return out;
}

std::vector<Integer> HomologyBasis::lift(std::vector<Integer> w) const
{
    std::vector<Integer> z(rank_k_);
    for (std::size_t i = 0; i < residual_.size(); ++i)
        z[residual_[i]] = std::move(w[i]);
    for (auto it = lower_.rbegin(); it != lower_.rend(); ++it) {
        Integer s = 0;
        for (const auto& [x, lambda] : it->column)
            if (z[x] != 0)
                s += z[x] * lambda;
        if (s != 0)
            z[it->a] -= s * it->eps;
    }
    return z;
}

std::vector<Integer> HomologyBasis::coordinates(const std::vector<Integer>& z) const
{
    if (z.size() != rank_k_)
        throw Error("cycle has the wrong length");
    for (const auto& x : boundary_k_.apply(z))
        if (x != 0)
            throw InvariantError("coordinates requested for a chain that is not a cycle");
    const auto y = kernel_coords_.apply(project(z));
    const auto full = class_change_.apply(y);
    std::vector<Integer> out;
    for (std::size_t i = 0; i < kept_.size(); ++i) {
        Integer v = full[kept_[i]];
        if (order_[i] != 0)
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), order_[i].get_mpz_t());
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Integer> HomologyBasis::generator(std::size_t i) const
{
    if (i >= kept_.size())
        throw Error("homology generator index out of range");
    std::vector<Integer> w(residual_.size());
    for (std::size_t x = 0; x < residual_.size(); ++x)
        w[x] = class_basis_(x, kept_[i]);
    auto z = lift(std::move(w));
    for (const auto& x : boundary_k_.apply(z))
        if (x != 0)
            throw InvariantError("lifted homology generator is not a cycle");
    return z;
}

IntMatrix induced_map(const HomologyBasis& source, const HomologyBasis& target, const SparseIntMatrix& f_k)
{
    IntMatrix out(target.generator_count(), source.generator_count());
    for (std::size_t j = 0; j < source.generator_count(); ++j) {
        const auto image = target.coordinates(f_k.apply(source.generator(j)));
        for (std::size_t i = 0; i < image.size(); ++i)
            out(i, j) = image[i];
    }
    return out;
}

bool AbelianQuotient::vanishes(const std::vector<Integer>& v) const
{
    if (v.size() != presentation.rows())
        throw Error("element has the wrong number of coordinates");
    const auto u = snf.left.apply(v);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (i < snf.rank()) {
            if (!mpz_divisible_p(u[i].get_mpz_t(), snf.invariants[i].get_mpz_t()))
                return false;
        } else if (u[i] != 0) {
            return false;
        }
    }
    return true;
}

AbelianQuotient quotient_group(const HomologyGroup& g, const std::vector<std::vector<Integer>>& relations)
{
    const std::size_t t = g.torsion.size();
    const std::size_t m = t + g.betti;
    AbelianQuotient q;
    q.presentation = IntMatrix(m, t + relations.size());
    for (std::size_t i = 0; i < t; ++i)
        q.presentation(i, i) = g.torsion[i];
    for (std::size_t j = 0; j < relations.size(); ++j) {
        if (relations[j].size() != m)
            throw Error("relation has the wrong number of coordinates");
        for (std::size_t i = 0; i < m; ++i)
            q.presentation(i, t + j) = relations[j][i];
    }
    q.snf = smith_normal_form(q.presentation);
    q.group.degree = g.degree;
    q.group.reliable = g.reliable;
    q.group.betti = m - q.snf.rank();
    for (const auto& d : q.snf.invariants)
        if (d > 1)
            q.group.torsion.push_back(d);
    return q;
}

}  // namespace finsub
