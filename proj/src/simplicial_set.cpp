#include "finsub/simplicial_set.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

#include "finsub/error.hpp"

namespace finsub {

namespace {

std::atomic<std::size_t>& cap_storage()
{
    static std::atomic<std::size_t> cap = [] {
        std::size_t value = 40'000'000;
        if (const char* env = std::getenv("FINSUB_CELL_CAP")) {
            char* end = nullptr;
            const auto parsed = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && parsed > 0)
                value = static_cast<std::size_t>(parsed);
        }
        return value;
    }();
    return cap;
}

std::string payload_string(std::span<const std::int32_t> p)
{
    std::string out = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(p[i]);
    }
    return out + "]";
}

std::string cell_string(const TruncatedSimplicialSet& s, int k, CellId c)
{
    return "cell " + std::to_string(c) + " at level " + std::to_string(k) + " " + payload_string(s.payload(k, c));
}

// Lexicographic binary search in a flat table of fixed-width rows.
template <class T>
std::optional<CellId> find_row(const std::vector<T>& table, std::size_t width, std::span<const T> key)
{
    if (width == 0)
        return std::nullopt;
    std::size_t lo = 0, hi = table.size() / width;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const T* row = table.data() + mid * width;
        if (std::lexicographical_compare(row, row + width, key.begin(), key.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < table.size() / width && std::equal(key.begin(), key.end(), table.data() + lo * width))
        return static_cast<CellId>(lo);
    return std::nullopt;
}

std::size_t checked_pow(std::size_t base, int n)
{
    std::size_t out = 1;
    for (int i = 0; i < n; ++i) {
        if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base)
            return std::numeric_limits<std::size_t>::max();
        out *= base;
    }
    return out;
}

std::size_t binomial(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0;
    long double acc = 1;
    for (std::size_t i = 1; i <= k; ++i)
        acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (acc > static_cast<long double>(std::numeric_limits<std::size_t>::max() / 2))
        return std::numeric_limits<std::size_t>::max() / 2;
    return static_cast<std::size_t>(acc + 0.5L);
}

// Union-find whose root is always the smallest member.
class MinUnionFind {
public:
    explicit MinUnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

    CellId find(CellId x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(CellId a, CellId b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (a < b)
            parent_[b] = a;
        else
            parent_[a] = b;
        return true;
    }

private:
    std::vector<CellId> parent_;
};

}  // namespace

std::size_t cell_cap()
{
    return cap_storage().load();
}

void set_cell_cap(std::size_t cap)
{
    cap_storage().store(cap);
}

void require_within_cap(std::size_t estimate, const std::string& what)
{
    if (estimate > cell_cap())
        throw ResourceError(what + " needs " + std::to_string(estimate) + " cells, above the cap of " +
                            std::to_string(cell_cap()) + " (set FINSUB_CELL_CAP to raise it)");
}

// ---------------------------------------------------------------------------
// TruncatedSimplicialSet

std::shared_ptr<const TruncatedSimplicialSet> TruncatedSimplicialSet::from_levels(std::vector<Level> levels,
                                                                                  std::string name)
{
    if (levels.empty())
        throw InvariantError("simplicial set needs at least level 0");
    const int top = static_cast<int>(levels.size()) - 1;
    for (int k = 0; k <= top; ++k) {
        auto& lv = levels[k];
        if (lv.width == 0 && !lv.payload.empty())
            throw InvariantError("zero payload width with cells at level " + std::to_string(k));
        const std::size_t n = lv.count();
        const std::size_t nf = k == 0 ? 0 : n * (k + 1);
        const std::size_t nd = k == top ? 0 : n * (k + 1);
        if (lv.faces.size() != nf || lv.degeneracies.size() != nd)
            throw InvariantError("inconsistent face/degeneracy tables at level " + std::to_string(k));
    }
    for (int k = 0; k <= top; ++k) {
        auto& lv = levels[k];
        const std::size_t n = lv.count();
        lv.degenerate.assign(n, 0);
        if (k == 0)
            continue;
        const auto& below = levels[k - 1];
        for (std::size_t c = 0; c < n; ++c) {
            for (int j = 0; j < k; ++j) {
                const CellId dj = lv.faces[c * (k + 1) + j];
                if (below.degeneracies[std::size_t{dj} * k + j] == c) {
                    lv.degenerate[c] = 1;
                    break;
                }
            }
        }
    }
    auto out = std::make_shared<TruncatedSimplicialSet>();
    out->levels_ = std::move(levels);
    out->name_ = std::move(name);
    return out;
}

std::size_t TruncatedSimplicialSet::total_cells() const
{
    std::size_t total = 0;
    for (const auto& lv : levels_)
        total += lv.count();
    return total;
}

std::optional<CellId> TruncatedSimplicialSet::find(int k, std::span<const std::int32_t> key) const
{
    if (k < 0 || k > truncation() || key.size() != levels_[k].width)
        return std::nullopt;
    return find_row(levels_[k].payload, levels_[k].width, key);
}

std::vector<CellId> TruncatedSimplicialSet::nondegenerate(int k) const
{
    std::vector<CellId> out;
    const auto& flags = levels_.at(k).degenerate;
    for (std::size_t c = 0; c < flags.size(); ++c)
        if (!flags[c])
            out.push_back(static_cast<CellId>(c));
    return out;
}

std::size_t TruncatedSimplicialSet::nondegenerate_count(int k) const
{
    const auto& flags = levels_.at(k).degenerate;
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 0));
}

int TruncatedSimplicialSet::nondegenerate_dimension() const
{
    for (int k = truncation(); k >= 0; --k)
        if (nondegenerate_count(k) > 0)
            return k;
    return -1;
}

void TruncatedSimplicialSet::check_identities() const
{
    const int top = truncation();
    auto fail = [&](int k, CellId c, const std::string& what) {
        throw InvariantError("simplicial identity " + what + " fails on " + cell_string(*this, k, c));
    };
    for (int k = 0; k <= top; ++k) {
        const auto n = static_cast<CellId>(size(k));
        for (CellId c = 0; c < n; ++c) {
            for (int j = 1; j <= k; ++j)
                for (int i = 0; i < j; ++i)
                    if (k >= 2 && face(k - 1, face(k, c, j), i) != face(k - 1, face(k, c, i), j - 1))
                        fail(k, c, "d_i d_j = d_{j-1} d_i");
            if (k == top)
                continue;
            for (int j = 0; j <= k; ++j) {
                const CellId sj = degeneracy(k, c, j);
                if (face(k + 1, sj, j) != c || face(k + 1, sj, j + 1) != c)
                    fail(k, c, "d_j s_j = d_{j+1} s_j = id");
                for (int i = 0; i <= k + 1; ++i) {
                    if (i < j && face(k + 1, sj, i) != degeneracy(k - 1, face(k, c, i), j - 1))
                        fail(k, c, "d_i s_j = s_{j-1} d_i");
                    if (i > j + 1 && face(k + 1, sj, i) != degeneracy(k - 1, face(k, c, i - 1), j))
                        fail(k, c, "d_i s_j = s_j d_{i-1}");
                }
                if (k + 1 < top)
                    for (int i = 0; i <= j; ++i)
                        if (degeneracy(k + 1, sj, i) != degeneracy(k + 1, degeneracy(k, c, i), j + 1))
                            fail(k, c, "s_i s_j = s_{j+1} s_i");
            }
        }
    }
}

std::string TruncatedSimplicialSet::dump() const
{
    std::ostringstream out;
    out << "simplicial set " << (name_.empty() ? "<unnamed>" : name_) << " truncated at " << truncation() << "\n";
    for (int k = 0; k <= truncation(); ++k) {
        out << "level " << k << ": " << size(k) << " cells, " << nondegenerate_count(k) << " nondegenerate\n";
        for (CellId c = 0; c < size(k); ++c) {
            out << "  " << c << (is_degenerate(k, c) ? " * " : "   ") << payload_string(payload(k, c));
            if (k > 0) {
                out << " faces";
                for (int i = 0; i <= k; ++i)
                    out << ' ' << face(k, c, i);
            }
            out << '\n';
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// SSetMap

SSetMap::SSetMap(SSetPtr source, SSetPtr target, std::vector<std::vector<CellId>> assignment, bool verify_now)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment))
{
    if (!source_ || !target_)
        throw Error("map needs a source and a target");
    if (source_->truncation() != target_->truncation())
        throw Error("level mismatch: source truncated at " + std::to_string(source_->truncation()) +
                    ", target at " + std::to_string(target_->truncation()));
    if (assignment_.size() != static_cast<std::size_t>(source_->truncation() + 1))
        throw Error("map assignment has the wrong number of levels");
    for (int k = 0; k <= source_->truncation(); ++k) {
        if (assignment_[k].size() != source_->size(k))
            throw Error("map assignment size mismatch at level " + std::to_string(k));
        for (CellId c : assignment_[k])
            if (c >= target_->size(k))
                throw Error("map assigns an out-of-range cell at level " + std::to_string(k));
    }
    if (verify_now)
        verify();
}

SSetMap SSetMap::identity(SSetPtr space)
{
    std::vector<std::vector<CellId>> assignment(space->truncation() + 1);
    for (int k = 0; k <= space->truncation(); ++k) {
        assignment[k].resize(space->size(k));
        std::iota(assignment[k].begin(), assignment[k].end(), 0u);
    }
    return SSetMap(space, space, std::move(assignment), false);
}

void SSetMap::verify() const
{
    const auto& s = *source_;
    const auto& t = *target_;
    const int top = s.truncation();
    for (int k = 0; k <= top; ++k) {
        for (CellId c = 0; c < s.size(k); ++c) {
            const CellId fc = assignment_[k][c];
            for (int i = 0; k > 0 && i <= k; ++i)
                if (assignment_[k - 1][s.face(k, c, i)] != t.face(k, fc, i))
                    throw InvariantError("map does not commute with d_" + std::to_string(i) + " on " +
                                         cell_string(s, k, c));
            for (int j = 0; k < top && j <= k; ++j)
                if (assignment_[k + 1][s.degeneracy(k, c, j)] != t.degeneracy(k, fc, j))
                    throw InvariantError("map does not commute with s_" + std::to_string(j) + " on " +
                                         cell_string(s, k, c));
        }
    }
}

SSetMap compose(const SSetMap& g, const SSetMap& f)
{
    if (f.target() != g.source())
        throw Error("maps are not composable: target of the first is not the source of the second");
    const int top = f.source()->truncation();
    std::vector<std::vector<CellId>> assignment(top + 1);
    for (int k = 0; k <= top; ++k) {
        const auto& fl = f.level(k);
        assignment[k].resize(fl.size());
        for (std::size_t c = 0; c < fl.size(); ++c)
            assignment[k][c] = g(k, fl[c]);
    }
    return SSetMap(f.source(), g.target(), std::move(assignment));
}

// ---------------------------------------------------------------------------
// Generated simplicial set of an ordered complex

SSetPtr from_ordered_complex(const OrderedComplexSpec& spec, int truncation)
{
    if (truncation < 0)
        throw Error("truncation level must be non-negative");
    validate(spec);
    if (truncation < spec.dimension())
        throw Error("truncation " + std::to_string(truncation) + " below the complex dimension " +
                    std::to_string(spec.dimension()));
    const auto simplices = spec.all_simplices();
    std::vector<TruncatedSimplicialSet::Level> levels(truncation + 1);

    for (int k = 0; k <= truncation; ++k) {
        std::size_t estimate = 0;
        for (const auto& s : simplices)
            estimate += binomial(k, s.size() - 1);
        require_within_cap(estimate, "level " + std::to_string(k) + " of " + spec.name);

        auto& lv = levels[k];
        lv.width = k + 1;
        std::vector<std::int32_t> tuple(k + 1);
        for (const auto& s : simplices) {
            const int m = static_cast<int>(s.size()) - 1;
            if (m > k)
                continue;
            // monotone surjections {0..k} -> s: choose m step positions among 1..k
            std::vector<int> steps(m);
            std::iota(steps.begin(), steps.end(), 1);
            while (true) {
                int vi = 0;
                for (int pos = 0, si = 0; pos <= k; ++pos) {
                    if (si < m && steps[si] == pos) {
                        ++vi;
                        ++si;
                    }
                    tuple[pos] = s[vi];
                }
                lv.payload.insert(lv.payload.end(), tuple.begin(), tuple.end());
                int idx = m - 1;
                while (idx >= 0 && steps[idx] == k - (m - 1 - idx))
                    --idx;
                if (idx < 0)
                    break;
                ++steps[idx];
                for (int t = idx + 1; t < m; ++t)
                    steps[t] = steps[t - 1] + 1;
            }
        }
        // sort rows lexicographically
        const std::size_t w = lv.width, n = lv.count();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::lexicographical_compare(lv.payload.begin() + a * w, lv.payload.begin() + (a + 1) * w,
                                                lv.payload.begin() + b * w, lv.payload.begin() + (b + 1) * w);
        });
        std::vector<std::int32_t> sorted(lv.payload.size());
        for (std::size_t i = 0; i < n; ++i)
            std::copy_n(lv.payload.begin() + order[i] * w, w, sorted.begin() + i * w);
        lv.payload = std::move(sorted);
    }

    std::vector<std::int32_t> key;
    for (int k = 0; k <= truncation; ++k) {
        auto& lv = levels[k];
        const std::size_t n = lv.count();
        if (k > 0) {
            lv.faces.resize(n * (k + 1));
            for (std::size_t c = 0; c < n; ++c) {
                const auto* row = lv.payload.data() + c * (k + 1);
                for (int i = 0; i <= k; ++i) {
                    key.assign(row, row + k + 1);
                    key.erase(key.begin() + i);
                    lv.faces[c * (k + 1) + i] = *find_row(levels[k - 1].payload, k, std::span<const std::int32_t>(key));
                }
            }
        }
        if (k < truncation) {
            lv.degeneracies.resize(n * (k + 1));
            for (std::size_t c = 0; c < n; ++c) {
                const auto* row = lv.payload.data() + c * (k + 1);
                for (int j = 0; j <= k; ++j) {
                    key.assign(row, row + k + 1);
                    key.insert(key.begin() + j, row[j]);
                    lv.degeneracies[c * (k + 1) + j] =
                        *find_row(levels[k + 1].payload, k + 2, std::span<const std::int32_t>(key));
                }
            }
        }
    }
    return TruncatedSimplicialSet::from_levels(std::move(levels), spec.name);
}

// ---------------------------------------------------------------------------
// Products

PowerResult power(const SSetPtr& s, int n)
{
    if (n < 1)
        throw Error("power exponent must be positive");
    const int top = s->truncation();
    std::size_t estimate = 0;
    for (int k = 0; k <= top; ++k)
        estimate += checked_pow(s->size(k), n);
    require_within_cap(estimate, "power^" + std::to_string(n) + " of " + s->name());

    std::vector<TruncatedSimplicialSet::Level> levels(top + 1);
    std::vector<std::vector<std::vector<CellId>>> proj(n, std::vector<std::vector<CellId>>(top + 1));
    std::vector<CellId> digits(n);
    for (int k = 0; k <= top; ++k) {
        const std::size_t base = s->size(k);
        const std::size_t count = checked_pow(base, n);
        const std::size_t below = k > 0 ? s->size(k - 1) : 0;
        const std::size_t above = k < top ? s->size(k + 1) : 0;
        auto& lv = levels[k];
        lv.width = n * s->width(k);
        lv.payload.reserve(count * lv.width);
        if (k > 0)
            lv.faces.resize(count * (k + 1));
        if (k < top)
            lv.degeneracies.resize(count * (k + 1));
        for (int m = 0; m < n; ++m)
            proj[m][k].resize(count);
        std::fill(digits.begin(), digits.end(), 0);
        for (std::size_t c = 0; c < count; ++c) {
            for (int m = 0; m < n; ++m) {
                const auto p = s->payload(k, digits[m]);
                lv.payload.insert(lv.payload.end(), p.begin(), p.end());
                proj[m][k][c] = digits[m];
            }
            for (int i = 0; k > 0 && i <= k; ++i) {
                std::size_t idx = 0;
                for (int m = 0; m < n; ++m)
                    idx = idx * below + s->face(k, digits[m], i);
                lv.faces[c * (k + 1) + i] = static_cast<CellId>(idx);
            }
            for (int j = 0; k < top && j <= k; ++j) {
                std::size_t idx = 0;
                for (int m = 0; m < n; ++m)
                    idx = idx * above + s->degeneracy(k, digits[m], j);
                lv.degeneracies[c * (k + 1) + j] = static_cast<CellId>(idx);
            }
            for (int m = n - 1; m >= 0; --m) {
                if (++digits[m] < base)
                    break;
                digits[m] = 0;
            }
        }
    }
    PowerResult out;
    out.space = TruncatedSimplicialSet::from_levels(std::move(levels), s->name() + "^" + std::to_string(n));
    for (int m = 0; m < n; ++m)
        out.projections.emplace_back(out.space, s, std::move(proj[m]), false);
    return out;
}

// ---------------------------------------------------------------------------
// Quotients, subobjects, collapses

QuotientResult quotient(const SSetPtr& s, const std::vector<CellPair>& pairs)
{
    const int top = s->truncation();
    std::vector<MinUnionFind> uf;
    uf.reserve(top + 1);
    for (int k = 0; k <= top; ++k)
        uf.emplace_back(s->size(k));

    std::vector<CellPair> queue(pairs.begin(), pairs.end());
    for (const auto& p : queue)
        if (p.level < 0 || p.level > top || p.a >= s->size(p.level) || p.b >= s->size(p.level))
            throw Error("quotient pair out of range");
    while (!queue.empty()) {
        const CellPair p = queue.back();
        queue.pop_back();
        if (!uf[p.level].unite(p.a, p.b))
            continue;
        const int k = p.level;
        for (int i = 0; k > 0 && i <= k; ++i)
            queue.push_back({k - 1, s->face(k, p.a, i), s->face(k, p.b, i)});
        for (int j = 0; k < top && j <= k; ++j)
            queue.push_back({k + 1, s->degeneracy(k, p.a, j), s->degeneracy(k, p.b, j)});
    }

    // classes ordered by their smallest member, which is the lex-min payload
    std::vector<std::vector<CellId>> class_of(top + 1);
    std::vector<std::vector<CellId>> reps(top + 1);
    for (int k = 0; k <= top; ++k) {
        const auto n = static_cast<CellId>(s->size(k));
        class_of[k].resize(n);
        for (CellId c = 0; c < n; ++c) {
            const CellId root = uf[k].find(c);
            if (root == c) {
                class_of[k][c] = static_cast<CellId>(reps[k].size());
                reps[k].push_back(c);
            } else {
                class_of[k][c] = class_of[k][root];
            }
        }
    }
    std::vector<TruncatedSimplicialSet::Level> levels(top + 1);
    for (int k = 0; k <= top; ++k) {
        auto& lv = levels[k];
        lv.width = s->width(k);
        const std::size_t n = reps[k].size();
        lv.payload.reserve(n * lv.width);
        if (k > 0)
            lv.faces.resize(n * (k + 1));
        if (k < top)
            lv.degeneracies.resize(n * (k + 1));
        for (std::size_t q = 0; q < n; ++q) {
            const CellId r = reps[k][q];
            const auto p = s->payload(k, r);
            lv.payload.insert(lv.payload.end(), p.begin(), p.end());
            for (int i = 0; k > 0 && i <= k; ++i)
                lv.faces[q * (k + 1) + i] = class_of[k - 1][s->face(k, r, i)];
            for (int j = 0; k < top && j <= k; ++j)
                lv.degeneracies[q * (k + 1) + j] = class_of[k + 1][s->degeneracy(k, r, j)];
        }
    }
    QuotientResult out;
    out.space = TruncatedSimplicialSet::from_levels(std::move(levels), s->name() + "/~");
    out.projection = SSetMap(s, out.space, std::move(class_of), false);
    return out;
}

SubobjectResult sub_object(const SSetPtr& s, const std::function<bool(int, CellId)>& keep)
{
    const int top = s->truncation();
    std::vector<std::vector<std::uint8_t>> selected(top + 1);
    for (int k = 0; k <= top; ++k) {
        selected[k].resize(s->size(k));
        for (CellId c = 0; c < s->size(k); ++c)
            selected[k][c] = keep(k, c) ? 1 : 0;
    }
    for (int k = 0; k <= top; ++k) {
        for (CellId c = 0; c < s->size(k); ++c) {
            if (!selected[k][c])
                continue;
            for (int i = 0; k > 0 && i <= k; ++i)
                if (!selected[k - 1][s->face(k, c, i)])
                    throw InvariantError("selection not closed under faces: " + cell_string(*s, k, c) +
                                         " is selected but its face d_" + std::to_string(i) + " is not");
            for (int j = 0; k < top && j <= k; ++j)
                if (!selected[k + 1][s->degeneracy(k, c, j)])
                    throw InvariantError("selection not closed under degeneracies: " + cell_string(*s, k, c) +
                                         " is selected but s_" + std::to_string(j) + " of it is not");
        }
    }
    std::vector<std::vector<CellId>> new_id(top + 1), incl(top + 1);
    for (int k = 0; k <= top; ++k) {
        new_id[k].assign(s->size(k), 0);
        for (CellId c = 0; c < s->size(k); ++c)
            if (selected[k][c]) {
                new_id[k][c] = static_cast<CellId>(incl[k].size());
                incl[k].push_back(c);
            }
    }
    std::vector<TruncatedSimplicialSet::Level> levels(top + 1);
    for (int k = 0; k <= top; ++k) {
        auto& lv = levels[k];
        lv.width = s->width(k);
        const std::size_t n = incl[k].size();
        if (k > 0)
            lv.faces.resize(n * (k + 1));
        if (k < top)
            lv.degeneracies.resize(n * (k + 1));
        for (std::size_t q = 0; q < n; ++q) {
            const CellId c = incl[k][q];
            const auto p = s->payload(k, c);
            lv.payload.insert(lv.payload.end(), p.begin(), p.end());
            for (int i = 0; k > 0 && i <= k; ++i)
                lv.faces[q * (k + 1) + i] = new_id[k - 1][s->face(k, c, i)];
            for (int j = 0; k < top && j <= k; ++j)
                lv.degeneracies[q * (k + 1) + j] = new_id[k + 1][s->degeneracy(k, c, j)];
        }
    }
    SubobjectResult out;
    out.space = TruncatedSimplicialSet::from_levels(std::move(levels), "sub(" + s->name() + ")");
    out.inclusion = SSetMap(out.space, s, std::move(incl), false);
    return out;
}

QuotientResult collapse(const SSetPtr& s, const SSetMap& inclusion)
{
    if (inclusion.target() != s)
        throw Error("collapse: subobject is not included in this simplicial set");
    const auto& a = *inclusion.source();
    if (a.size(0) == 0)
        throw Error("collapse: subobject is empty");
    std::vector<CellPair> pairs;
    for (int k = 0; k <= a.truncation(); ++k) {
        if (a.size(k) == 0)
            continue;
        const CellId first = inclusion(k, 0);
        for (CellId c = 1; c < a.size(k); ++c)
            pairs.push_back({k, first, inclusion(k, c)});
    }
    auto out = quotient(s, pairs);
    return out;
}

// ---------------------------------------------------------------------------
// Canonical tuple models

void canonicalize(TupleKind kind, std::vector<CellId>& coords)
{
    std::sort(coords.begin(), coords.end());
    if (kind == TupleKind::set) {
        const std::size_t n = coords.size();
        const auto end = std::unique(coords.begin(), coords.end());
        const std::size_t distinct = static_cast<std::size_t>(end - coords.begin());
        // pad by repeating the smallest element at the front
        std::vector<CellId> padded(n, coords[0]);
        std::copy(coords.begin(), coords.begin() + distinct, padded.begin() + (n - distinct));
        coords = std::move(padded);
    }
}

CellId TupleModel::locate(int k, std::vector<CellId>& coords) const
{
    canonicalize(kind, coords);
    const auto found = find_row(tuples[k], static_cast<std::size_t>(n), std::span<const CellId>(coords));
    if (!found)
        throw InvariantError("canonical tuple missing from the tuple model");
    return *found;
}

std::shared_ptr<const TupleModel> build_tuple_model(const SSetPtr& base, int n, TupleKind kind, std::string name)
{
    if (n < 1)
        throw Error("tuple model needs n >= 1");
    const int top = base->truncation();
    auto model = std::make_shared<TupleModel>();
    model->base = base;
    model->n = n;
    model->kind = kind;
    model->tuples.resize(top + 1);

    std::size_t estimate = 0;
    for (int k = 0; k <= top; ++k) {
        const std::size_t N = base->size(k);
        if (kind == TupleKind::multiset)
            estimate += binomial(N + n - 1, n);
        else
            for (int m = 1; m <= n; ++m)
                estimate += binomial(N, m);
    }
    require_within_cap(estimate, (kind == TupleKind::multiset ? "SP^" : "Sub_") + std::to_string(n) + " of " +
                                     base->name());

    for (int k = 0; k <= top; ++k) {
        const auto N = static_cast<CellId>(base->size(k));
        auto& tab = model->tuples[k];
        if (N == 0)
            continue;
        std::vector<CellId> t(n, 0);
        if (kind == TupleKind::multiset) {
            while (true) {
                tab.insert(tab.end(), t.begin(), t.end());
                int i = n - 1;
                while (i >= 0 && t[i] == N - 1)
                    --i;
                if (i < 0)
                    break;
                ++t[i];
                for (int j = i + 1; j < n; ++j)
                    t[j] = t[i];
            }
        } else {
            for (int m = 1; m <= std::min<int>(n, static_cast<int>(N)); ++m) {
                std::vector<CellId> comb(m);
                std::iota(comb.begin(), comb.end(), 0u);
                while (true) {
                    std::vector<CellId> padded(n, comb[0]);
                    std::copy(comb.begin(), comb.end(), padded.begin() + (n - m));
                    tab.insert(tab.end(), padded.begin(), padded.end());
                    int i = m - 1;
                    while (i >= 0 && comb[i] == N - static_cast<CellId>(m - i))
                        --i;
                    if (i < 0)
                        break;
                    ++comb[i];
                    for (int j = i + 1; j < m; ++j)
                        comb[j] = comb[j - 1] + 1;
                }
            }
            // sort rows of width n
            const std::size_t count = tab.size() / n;
            std::vector<std::size_t> order(count);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return std::lexicographical_compare(tab.begin() + a * n, tab.begin() + (a + 1) * n,
                                                    tab.begin() + b * n, tab.begin() + (b + 1) * n);
            });
            std::vector<CellId> sorted(tab.size());
            for (std::size_t i = 0; i < count; ++i)
                std::copy_n(tab.begin() + order[i] * n, n, sorted.begin() + i * n);
            tab = std::move(sorted);
        }
    }

    std::vector<TruncatedSimplicialSet::Level> levels(top + 1);
    std::vector<CellId> coords(n);
    for (int k = 0; k <= top; ++k) {
        auto& lv = levels[k];
        const auto& tab = model->tuples[k];
        const std::size_t count = tab.size() / n;
        lv.width = n * base->width(k);
        lv.payload.reserve(count * lv.width);
        if (k > 0)
            lv.faces.resize(count * (k + 1));
        if (k < top)
            lv.degeneracies.resize(count * (k + 1));
        for (std::size_t c = 0; c < count; ++c) {
            const CellId* t = tab.data() + c * n;
            for (int m = 0; m < n; ++m) {
                const auto p = base->payload(k, t[m]);
                lv.payload.insert(lv.payload.end(), p.begin(), p.end());
            }
            for (int i = 0; k > 0 && i <= k; ++i) {
                for (int m = 0; m < n; ++m)
                    coords[m] = base->face(k, t[m], i);
                lv.faces[c * (k + 1) + i] = model->locate(k - 1, coords);
            }
            for (int j = 0; k < top && j <= k; ++j) {
                for (int m = 0; m < n; ++m)
                    coords[m] = base->degeneracy(k, t[m], j);
                lv.degeneracies[c * (k + 1) + j] = model->locate(k + 1, coords);
            }
        }
    }
    if (name.empty())
        name = (kind == TupleKind::multiset ? "SP" : "Sub") + std::to_string(n) + "(" + base->name() + ")";
    model->space = TruncatedSimplicialSet::from_levels(std::move(levels), std::move(name));
    return model;
}

}  // namespace finsub

namespace finsub {

bool identical_cells(const TruncatedSimplicialSet& a, const TruncatedSimplicialSet& b)
{
    if (a.truncation() != b.truncation())
        return false;
    for (int k = 0; k <= a.truncation(); ++k) {
        const auto& x = a.level(k);
        const auto& y = b.level(k);
        if (x.width != y.width || x.payload != y.payload || x.faces != y.faces || x.degeneracies != y.degeneracies)
            return false;
    }
    return true;
}

}  // namespace finsub
