#include "finsub/constructions.hpp"

#include <algorithm>
#include <limits>

#include "finsub/error.hpp"

namespace finsub {

namespace {

int truncation_for(const OrderedComplexSpec& x, int n, const BuildOptions& opts)
{
    return opts.truncation >= 0 ? opts.truncation : n * x.dimension() + 1;
}

// The cell x0 x0 ... x0 at every level.
std::vector<CellId> basepoint_cells(const SSetPtr& base, int basepoint)
{
    std::vector<CellId> out;
    for (int k = 0; k <= base->truncation(); ++k) {
        const std::vector<std::int32_t> payload(k + 1, basepoint);
        const auto c = base->find(k, payload);
        if (!c)
            throw InvariantError("basepoint tower missing at level " + std::to_string(k));
        out.push_back(*c);
    }
    return out;
}

void assert_dimension_bound(const SSetPtr& s, int bound)
{
    for (int k = bound + 1; k <= s->truncation(); ++k)
        if (s->nondegenerate_count(k) != 0)
            throw InvariantError(s->name() + " has " + std::to_string(s->nondegenerate_count(k)) +
                                 " nondegenerate cells at level " + std::to_string(k) + ", above the bound " +
                                 std::to_string(bound));
}

// Levelwise map out of a simplicial set, one canonical tuple per source cell.
template <class F>
SSetMap tuple_map(const SSetPtr& source, const TupleModel& target, F&& coords_of)
{
    std::vector<std::vector<CellId>> assignment(source->truncation() + 1);
    std::vector<CellId> coords(target.n);
    for (int k = 0; k <= source->truncation(); ++k) {
        assignment[k].resize(source->size(k));
        for (CellId c = 0; c < source->size(k); ++c) {
            coords_of(k, c, coords);
            assignment[k][c] = target.locate(k, coords);
        }
    }
    return SSetMap(source, target.space, std::move(assignment));
}

std::string sp_name(const OrderedComplexSpec& x, int n)
{
    return "SP" + std::to_string(n) + "(" + x.name + ")";
}

std::string sub_name(const OrderedComplexSpec& x, int n)
{
    return "Sub" + std::to_string(n) + "(" + x.name + ")";
}

std::size_t power_index(const std::vector<CellId>& digits, std::size_t base)
{
    std::size_t idx = 0;
    for (auto d : digits)
        idx = idx * base + d;
    return idx;
}

ConstructionResult generic_route(const OrderedComplexSpec& x, int n, TupleKind kind, const BuildOptions& opts)
{
    const int D = truncation_for(x, n, opts);
    const auto base = from_ordered_complex(x, D);
    const auto pw = power(base, n);
    std::vector<CellPair> pairs;
    std::vector<CellId> digits(n), moved(n);
    for (int k = 0; k <= D; ++k) {
        const std::size_t N = base->size(k);
        const std::size_t count = pw.space->size(k);
        for (std::size_t c = 0; c < count; ++c) {
            for (int m = 0; m < n; ++m)
                digits[m] = pw.projections[m](k, static_cast<CellId>(c));
            for (int i = 0; i + 1 < n; ++i) {
                if (digits[i] == digits[i + 1])
                    continue;
                moved = digits;
                std::swap(moved[i], moved[i + 1]);
                pairs.push_back({k, static_cast<CellId>(c), static_cast<CellId>(power_index(moved, N))});
            }
            if (kind != TupleKind::set)
                continue;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j || digits[i] != digits[j])
                        continue;
                    for (int l = 0; l < n; ++l) {
                        if (l == j || digits[l] == digits[j])
                            continue;
                        moved = digits;
                        moved[j] = digits[l];
                        pairs.push_back({k, static_cast<CellId>(c), static_cast<CellId>(power_index(moved, N))});
                    }
                }
        }
    }
    auto q = quotient(pw.space, pairs);
    ConstructionResult out;
    out.name = (kind == TupleKind::set ? sub_name(x, n) : sp_name(x, n)) + " [generic]";
    out.space = q.space;
    out.dimension_bound = n * x.dimension();
    assert_dimension_bound(out.space, out.dimension_bound);
    out.maps.emplace("q", std::move(q.projection));
    return out;
}

}  // namespace

std::vector<std::string> map_vocabulary()
{
    return {"q", "pi", "j_n", "diag", "j", "incl_sp", "incl_sub", "incl_fat", "alpha", "j_x0", "proj"};
}

const SSetMap& ConstructionResult::map(const std::string& key) const
{
    const auto it = maps.find(key);
    if (it == maps.end())
        throw Error(name + " carries no map named '" + key + "'");
    return it->second;
}

NormalizedChains ConstructionResult::chains() const
{
    auto c = normalized_chains(space);
    if (dimension_bound >= 0 && space->truncation() > dimension_bound)
        c.complex.exact_through = std::numeric_limits<int>::max();
    return c;
}

Homology ConstructionResult::homology(Coefficients coeff) const
{
    return finsub::homology(chains().complex, coeff);
}

ConstructionResult base_space(const OrderedComplexSpec& x, const BuildOptions& opts)
{
    ConstructionResult out;
    out.name = x.name;
    out.space = from_ordered_complex(x, truncation_for(x, 1, opts));
    out.dimension_bound = x.dimension();
    assert_dimension_bound(out.space, out.dimension_bound);
    return out;
}

ConstructionResult symmetric_product(const OrderedComplexSpec& x, int n, const BuildOptions& opts)
{
    if (n < 1)
        throw Error("symmetric product needs n >= 1");
    const int D = truncation_for(x, n, opts);
    const auto base = from_ordered_complex(x, D);
    const auto model = build_tuple_model(base, n, TupleKind::multiset, sp_name(x, n));
    const auto x0 = basepoint_cells(base, x.basepoint);

    ConstructionResult out;
    out.name = sp_name(x, n);
    out.space = model->space;
    out.dimension_bound = n * x.dimension();
    assert_dimension_bound(out.space, out.dimension_bound);

    out.maps.emplace("j_n", tuple_map(base, *model, [&](int k, CellId c, std::vector<CellId>& t) {
                         std::fill(t.begin(), t.end(), x0[k]);
                         t[0] = c;
                     }));
    out.maps.emplace("diag", tuple_map(base, *model, [&](int, CellId c, std::vector<CellId>& t) {
                         std::fill(t.begin(), t.end(), c);
                     }));
    if (opts.with_maps && n >= 2) {
        const auto lower = build_tuple_model(base, n - 1, TupleKind::multiset, sp_name(x, n - 1));
        out.maps.emplace("incl_sp", tuple_map(lower->space, *model, [&](int k, CellId c, std::vector<CellId>& t) {
                             const auto s = lower->tuple(k, c);
                             std::copy(s.begin(), s.end(), t.begin());
                             t[n - 1] = x0[k];
                         }));
    }
    if (opts.with_q) {
        const auto pw = power(base, n);
        out.maps.emplace("q", tuple_map(pw.space, *model, [&](int k, CellId c, std::vector<CellId>& t) {
                             for (int m = 0; m < n; ++m)
                                 t[m] = pw.projections[m](k, c);
                         }));
    }
    return out;
}

ConstructionResult finite_subset_space(const OrderedComplexSpec& x, int n, const BuildOptions& opts)
{
    if (n < 1)
        throw Error("finite subset space needs n >= 1");
    const int D = truncation_for(x, n, opts);
    const auto base = from_ordered_complex(x, D);
    const auto model = build_tuple_model(base, n, TupleKind::set, sub_name(x, n));

    ConstructionResult out;
    out.name = sub_name(x, n);
    out.space = model->space;
    out.dimension_bound = n * x.dimension();
    assert_dimension_bound(out.space, out.dimension_bound);

    out.maps.emplace("j", tuple_map(base, *model, [&](int, CellId c, std::vector<CellId>& t) {
                         std::fill(t.begin(), t.end(), c);
                     }));
    if (opts.with_maps) {
        const auto sp = build_tuple_model(base, n, TupleKind::multiset, sp_name(x, n));
        out.maps.emplace("pi", tuple_map(sp->space, *model, [&](int k, CellId c, std::vector<CellId>& t) {
                             const auto s = sp->tuple(k, c);
                             std::copy(s.begin(), s.end(), t.begin());
                         }));
        if (n >= 2) {
            const auto lower = build_tuple_model(base, n - 1, TupleKind::set, sub_name(x, n - 1));
            out.maps.emplace("incl_sub", tuple_map(lower->space, *model, [&](int k, CellId c, std::vector<CellId>& t) {
                                 const auto s = lower->tuple(k, c);
                                 std::copy(s.begin(), s.end(), t.begin());
                                 t[n - 1] = s[0];
                             }));
        }
    }
    if (opts.with_q) {
        const auto pw = power(base, n);
        out.maps.emplace("q", tuple_map(pw.space, *model, [&](int k, CellId c, std::vector<CellId>& t) {
                             for (int m = 0; m < n; ++m)
                                 t[m] = pw.projections[m](k, c);
                         }));
    }
    return out;
}

ConstructionResult symmetric_product_generic(const OrderedComplexSpec& x, int n, const BuildOptions& opts)
{
    return generic_route(x, n, TupleKind::multiset, opts);
}

ConstructionResult finite_subset_space_generic(const OrderedComplexSpec& x, int n, const BuildOptions& opts)
{
    return generic_route(x, n, TupleKind::set, opts);
}

ConstructionResult fat_diagonal(const OrderedComplexSpec& x, int n, const BuildOptions& opts)
{
    if (n < 2)
        throw Error("fat diagonal needs n >= 2");
    const int D = truncation_for(x, n, opts);
    const auto base = from_ordered_complex(x, D);
    const auto model = build_tuple_model(base, n, TupleKind::multiset, sp_name(x, n));
    auto sub = sub_object(model->space, [&](int k, CellId c) {
        const auto t = model->tuple(k, c);
        return std::adjacent_find(t.begin(), t.end()) != t.end();
    });
    ConstructionResult out;
    out.name = "fat diagonal of " + sp_name(x, n);
    out.space = sub.space;
    out.dimension_bound = n * x.dimension();
    assert_dimension_bound(out.space, out.dimension_bound);
    out.maps.emplace("incl_fat", std::move(sub.inclusion));
    return out;
}

ConstructionResult reduced(const OrderedComplexSpec& x, int n, ReducedKind kind, const BuildOptions& opts)
{
    if (n < 2)
        throw Error("reduced construction needs n >= 2");
    const int D = truncation_for(x, n, opts);
    const auto base = from_ordered_complex(x, D);
    ConstructionResult out;
    std::shared_ptr<const TupleModel> model;
    SubobjectResult sub;
    if (kind == ReducedKind::sp) {
        model = build_tuple_model(base, n, TupleKind::multiset, sp_name(x, n));
        const auto x0 = basepoint_cells(base, x.basepoint);
        sub = sub_object(model->space, [&](int k, CellId c) {
            const auto t = model->tuple(k, c);
            return std::find(t.begin(), t.end(), x0[k]) != t.end();
        });
        out.name = sp_name(x, n) + "/" + sp_name(x, n - 1);
    } else {
        model = build_tuple_model(base, n, TupleKind::set, sub_name(x, n));
        sub = sub_object(model->space, [&](int k, CellId c) {
            const auto t = model->tuple(k, c);
            return t[0] == t[1];
        });
        out.name = sub_name(x, n) + "/" + sub_name(x, n - 1);
    }
    auto q = collapse(model->space, sub.inclusion);
    out.space = q.space;
    out.dimension_bound = n * x.dimension();
    assert_dimension_bound(out.space, out.dimension_bound);
    out.maps.emplace("proj", std::move(q.projection));
    return out;
}

ConstructionResult sp_mod_fat_diagonal(const OrderedComplexSpec& x, int n, const BuildOptions& opts)
{
    const auto fat = fat_diagonal(x, n, opts);
    const auto& incl = fat.map("incl_fat");
    auto q = collapse(incl.target(), incl);
    ConstructionResult out;
    out.name = sp_name(x, n) + "/fat diagonal";
    out.space = q.space;
    out.dimension_bound = n * x.dimension();
    assert_dimension_bound(out.space, out.dimension_bound);
    out.maps.emplace("proj", std::move(q.projection));
    return out;
}

ConstructionResult based_subset3(const OrderedComplexSpec& x, const BuildOptions& opts)
{
    BuildOptions sp_opts = opts;
    sp_opts.with_maps = false;
    sp_opts.with_q = false;
    if (sp_opts.truncation < 0)
        sp_opts.truncation = 2 * x.dimension() + 1;
    const int D = sp_opts.truncation;
    const auto base = from_ordered_complex(x, D);
    const auto model = build_tuple_model(base, 2, TupleKind::multiset, sp_name(x, 2));
    const auto x0 = basepoint_cells(base, x.basepoint);

    std::vector<CellPair> pairs;
    std::vector<CellId> t(2);
    for (int k = 0; k <= D; ++k)
        for (CellId s = 0; s < base->size(k); ++s) {
            t = {s, s};
            const CellId a = model->locate(k, t);
            t = {s, x0[k]};
            const CellId b = model->locate(k, t);
            if (a != b)
                pairs.push_back({k, a, b});
        }
    auto q = quotient(model->space, pairs);
    const auto j2 = tuple_map(base, *model, [&](int k, CellId c, std::vector<CellId>& u) {
        u[0] = c;
        u[1] = x0[k];
    });

    ConstructionResult out;
    out.name = "Sub3(" + x.name + ",x0)";
    out.space = q.space;
    out.dimension_bound = 2 * x.dimension();
    assert_dimension_bound(out.space, out.dimension_bound);
    out.maps.emplace("j_x0", compose(q.projection, j2));
    out.maps.emplace("alpha", std::move(q.projection));
    return out;
}

ChainComplexZ w2_chain_model(const OrderedComplexSpec& x, const BuildOptions& opts)
{
    BuildOptions sp_opts;
    sp_opts.truncation = opts.truncation;
    sp_opts.with_maps = false;
    const auto sp = symmetric_product(x, 2, sp_opts);
    const auto& j = sp.map("j_n");
    const auto& diag = sp.map("diag");
    const auto base = j.source();
    const auto S = sp.chains();
    const auto X = normalized_chains(base);
    const auto J = chain_map(j, X, S);
    const auto Dg = chain_map(diag, X, S);
    const int top = S.complex.top_degree();

    // positions of X generators in the shifted copy; the basepoint 0-chain is dropped
    const CellId x0 = basepoint_cells(base, x.basepoint)[0];
    std::vector<std::vector<std::int64_t>> pos(top + 1);
    std::vector<std::size_t> shifted(top + 2, 0);  // shifted[m] = rank of |C_{m-1}(X)|
    for (int k = 0; k < top; ++k) {
        std::int64_t next = 0;
        pos[k].assign(X.complex.rank(k), -1);
        for (std::size_t g = 0; g < X.complex.rank(k); ++g)
            if (!(k == 0 && X.generators[0][g] == x0))
                pos[k][g] = next++;
        shifted[k + 1] = static_cast<std::size_t>(next);
    }

    ChainComplexZ w;
    w.ranks.resize(top + 1);
    w.boundaries.resize(top + 1);
    for (int m = 0; m <= top; ++m)
        w.ranks[m] = S.complex.rank(m) + shifted[m];
    w.boundaries[0] = SparseIntMatrix(0, w.ranks[0]);
    for (int m = 1; m <= top; ++m) {
        std::vector<MatrixEntry> e;
        for (const auto& x : S.complex.boundaries[m].entries())
            e.push_back(x);
        const auto off_col = static_cast<std::uint32_t>(S.complex.rank(m));
        const auto off_row = static_cast<std::uint32_t>(S.complex.rank(m - 1));
        const int k = m - 1;  // |c| with c in C_k(X)
        auto shifted_col = [&](std::uint32_t g) { return off_col + static_cast<std::uint32_t>(pos[k][g]); };
        for (const auto& x : J.components[k].entries())
            if (pos[k][x.col] >= 0)
                e.push_back({x.row, shifted_col(x.col), x.value});
        for (const auto& x : Dg.components[k].entries())
            if (pos[k][x.col] >= 0)
                e.push_back({x.row, shifted_col(x.col), -x.value});
        if (k >= 1)
            for (const auto& x : X.complex.boundaries[k].entries())
                if (pos[k][x.col] >= 0 && pos[k - 1][x.row] >= 0)
                    e.push_back({off_row + static_cast<std::uint32_t>(pos[k - 1][x.row]), shifted_col(x.col),
                                 -x.value});
        w.boundaries[m] = SparseIntMatrix(w.ranks[m - 1], w.ranks[m], std::move(e));
    }
    // C(SP^2 X) vanishes above 2 dim X and the shifted copy above dim X + 1
    w.exact_through = S.complex.exact_through == std::numeric_limits<int>::max() &&
                              top > x.dimension() + 1
                          ? std::numeric_limits<int>::max()
                          : top - 1;
    w.check();
    return w;
}

std::vector<Integer> CoproductResult::j_image(int k, std::size_t i) const
{
    const auto& m = j_star.at(k);
    std::vector<Integer> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        out[r] = m(r, i);
    return out;
}

bool CoproductResult::j_image_vanishes(int k, std::size_t i) const
{
    return quotients.at(k).vanishes(j_image(k, i));
}

CoproductResult sub3_homology_via_coproduct(const OrderedComplexSpec& x, const BuildOptions& opts)
{
    BuildOptions sp_opts;
    sp_opts.truncation = opts.truncation;
    sp_opts.with_maps = false;
    const auto sp = symmetric_product(x, 2, sp_opts);
    const auto& j = sp.map("j_n");
    const auto& diag = sp.map("diag");
    const auto S = sp.chains();
    const auto X = normalized_chains(j.source());
    const auto J = chain_map(j, X, S);
    const auto Dg = chain_map(diag, X, S);

    CoproductResult out;
    const int top = S.complex.top_degree();
    for (int k = 0; k <= top; ++k) {
        const HomologyBasis bs(S.complex, k);
        out.sp2.push_back(bs.group());
        std::vector<std::vector<Integer>> relations;
        if (k <= x.dimension()) {
            const HomologyBasis bx(X.complex, k);
            out.j_star.push_back(induced_map(bx, bs, J.components[k]));
            out.diag_star.push_back(induced_map(bx, bs, Dg.components[k]));
            const auto& a = out.diag_star.back();
            const auto& b = out.j_star.back();
            for (std::size_t c = 0; c < a.cols(); ++c) {
                std::vector<Integer> v(a.rows());
                for (std::size_t r = 0; r < a.rows(); ++r)
                    v[r] = a(r, c) - b(r, c);
                relations.push_back(std::move(v));
            }
        }
        out.quotients.push_back(quotient_group(bs.group(), relations));
        out.homology.push_back(out.quotients.back().group);
    }
    return out;
}

InducedMap induced_map(const SSetMap& f, int degree)
{
    const auto src = normalized_chains(f.source());
    const auto tgt = normalized_chains(f.target());
    if (degree < 0 || degree > std::min(src.complex.top_degree(), tgt.complex.top_degree()))
        throw Error("induced map: degree " + std::to_string(degree) + " out of range");
    const auto cm = chain_map(f, src, tgt);
    const HomologyBasis bs(src.complex, degree);
    const HomologyBasis bt(tgt.complex, degree);
    return {bs.group(), bt.group(), induced_map(bs, bt, cm.components[degree])};
}

}  // namespace finsub
