#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finsub/space_library.hpp"

namespace finsub {

using CellId = std::uint32_t;

/// Upper bound on the number of cells any single enumeration may allocate.
/// Defaults to 40M, or the value of FINSUB_CELL_CAP when set.
std::size_t cell_cap();
void set_cell_cap(std::size_t cap);

/// Throws ResourceError when `estimate` exceeds cell_cap().
void require_within_cap(std::size_t estimate, const std::string& what);

/// A simplicial set truncated at level D: every level k <= D carries its cells
/// (as payload rows of fixed width), the face maps d_0..d_k (k >= 1) and the
/// degeneracies s_0..s_k (k < D).
///
/// Cells of a level are ordered lexicographically by payload, so the smallest
/// index of an equivalence class is also its lexicographically minimal member.
class TruncatedSimplicialSet {
public:
    struct Level {
        std::size_t width = 0;               // payload ints per cell
        std::vector<std::int32_t> payload;   // count * width
        std::vector<CellId> faces;           // count * (k+1), empty at level 0
        std::vector<CellId> degeneracies;    // count * (k+1), empty at level D
        std::vector<std::uint8_t> degenerate;

        std::size_t count() const { return width == 0 ? 0 : payload.size() / width; }
    };

    /// Takes ownership of fully populated levels (payload, faces,
    /// degeneracies); computes the degeneracy flags. Level sizes are checked
    /// for consistency, the simplicial identities are not (see
    /// check_identities).
    static std::shared_ptr<const TruncatedSimplicialSet> from_levels(std::vector<Level> levels, std::string name = {});

    int truncation() const { return static_cast<int>(levels_.size()) - 1; }
    const std::string& name() const { return name_; }

    std::size_t size(int k) const { return levels_.at(k).count(); }
    std::size_t total_cells() const;
    std::size_t width(int k) const { return levels_.at(k).width; }

    std::span<const std::int32_t> payload(int k, CellId c) const
    {
        const auto& lv = levels_[k];
        return {lv.payload.data() + std::size_t{c} * lv.width, lv.width};
    }
    CellId face(int k, CellId c, int i) const { return levels_[k].faces[std::size_t{c} * (k + 1) + i]; }
    CellId degeneracy(int k, CellId c, int j) const
    {
        return levels_[k].degeneracies[std::size_t{c} * (k + 1) + j];
    }
    bool is_degenerate(int k, CellId c) const { return levels_[k].degenerate[c] != 0; }

    /// Binary search for a payload at level k.
    std::optional<CellId> find(int k, std::span<const std::int32_t> payload) const;

    std::vector<CellId> nondegenerate(int k) const;
    std::size_t nondegenerate_count(int k) const;
    /// Highest level carrying a nondegenerate cell (-1 if empty).
    int nondegenerate_dimension() const;

    /// Exhaustive check of the simplicial identities within the truncation.
    /// Throws InvariantError naming the first violation.
    void check_identities() const;

    /// Text dump: per level, payload and face table of every cell.
    std::string dump() const;

    const Level& level(int k) const { return levels_.at(k); }

private:
    std::vector<Level> levels_;
    std::string name_;
};

using SSetPtr = std::shared_ptr<const TruncatedSimplicialSet>;

/// Same truncation and, level by level, the same payloads, faces and
/// degeneracies. Names are not compared.
bool identical_cells(const TruncatedSimplicialSet& a, const TruncatedSimplicialSet& b);

/// A levelwise cell assignment between two simplicial sets of equal
/// truncation that commutes with every face and degeneracy.
class SSetMap {
public:
    SSetMap() = default;
    /// Verifies commutation exhaustively unless `verify` is false.
    SSetMap(SSetPtr source, SSetPtr target, std::vector<std::vector<CellId>> assignment, bool verify = true);

    static SSetMap identity(SSetPtr space);

    CellId operator()(int k, CellId c) const { return assignment_[k][c]; }
    const SSetPtr& source() const { return source_; }
    const SSetPtr& target() const { return target_; }
    const std::vector<CellId>& level(int k) const { return assignment_.at(k); }

    /// Throws InvariantError naming the first non-commuting cell.
    void verify() const;

    bool operator==(const SSetMap& other) const
    {
        return source_ == other.source_ && target_ == other.target_ && assignment_ == other.assignment_;
    }

private:
    SSetPtr source_;
    SSetPtr target_;
    std::vector<std::vector<CellId>> assignment_;
};

/// g after f. Throws Error when f's target is not g's source.
SSetMap compose(const SSetMap& g, const SSetMap& f);

/// Image of a cell under a map, for callers that hold cell ids.
inline CellId apply_map(const SSetMap& f, int k, CellId c)
{
    return f(k, c);
}

/// The simplicial set generated by an ordered complex: level-k cells are the
/// monotone (k+1)-tuples of vertices whose support is a simplex.
SSetPtr from_ordered_complex(const OrderedComplexSpec& spec, int truncation);

struct PowerResult {
    SSetPtr space;
    std::vector<SSetMap> projections;
};

/// Levelwise n-fold product.
PowerResult power(const SSetPtr& s, int n);

struct CellPair {
    int level;
    CellId a;
    CellId b;
};

struct QuotientResult {
    SSetPtr space;
    SSetMap projection;
};

/// Quotient by the smallest face- and degeneracy-closed equivalence relation
/// containing `pairs`.
QuotientResult quotient(const SSetPtr& s, const std::vector<CellPair>& pairs);

struct SubobjectResult {
    SSetPtr space;
    SSetMap inclusion;
};

/// Subobject of the cells accepted by `keep`. The selection must be closed
/// under faces and degeneracies; otherwise InvariantError names a violating
/// cell.
SubobjectResult sub_object(const SSetPtr& s, const std::function<bool(int, CellId)>& keep);

/// Collapses the image of `inclusion` (a subobject) to a single point tower.
QuotientResult collapse(const SSetPtr& s, const SSetMap& inclusion);

/// Canonical form applied to a sorted tuple of base-cell ids.
enum class TupleKind {
    multiset,  // symmetric product: the sorted tuple itself
    set,       // finite subsets: distinct entries, padded with the smallest
};

/// A levelwise quotient of the n-fold power of `base` whose cells are the
/// canonical n-tuples of base cells. Its payloads coincide with those of the
/// generic power()+quotient() route.
struct TupleModel {
    SSetPtr base;
    int n = 0;
    TupleKind kind = TupleKind::multiset;
    SSetPtr space;
    std::vector<std::vector<CellId>> tuples;  // per level, n ids per cell

    std::span<const CellId> tuple(int k, CellId c) const
    {
        return {tuples[k].data() + std::size_t{c} * n, static_cast<std::size_t>(n)};
    }

    /// Canonicalizes `coords` in place and returns the cell it names.
    CellId locate(int k, std::vector<CellId>& coords) const;
};

void canonicalize(TupleKind kind, std::vector<CellId>& coords);

/// Builds SP^n (multiset) or Sub_n (set) of `base` by direct enumeration of
/// canonical tuples.
std::shared_ptr<const TupleModel> build_tuple_model(const SSetPtr& base, int n, TupleKind kind, std::string name = {});

}  // namespace finsub
