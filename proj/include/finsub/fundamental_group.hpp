#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "finsub/homology.hpp"
#include "finsub/simplicial_set.hpp"

namespace finsub {

/// Generators 1..generators; a relator is a word of signed generator
/// indices (-i is the inverse of generator i).
struct GroupPresentation {
    std::size_t generators = 0;
    std::vector<std::vector<int>> relators;

    /// Throws Error when a relator letter is out of range or zero.
    void check() const;
    std::string to_string() const;
    bool operator==(const GroupPresentation&) const = default;
};

/// Edge-path presentation: spanning tree (BFS from vertex 0) of the
/// nondegenerate 1-cells, one generator per remaining nondegenerate edge,
/// one relator d_2 d_0 (d_1)^{-1} per nondegenerate 2-cell.
GroupPresentation fundamental_presentation(const TruncatedSimplicialSet& s);

enum class Pi1Status {
    trivial,       // no generators left
    free,          // generators left, no relators: a free group
    inconclusive,  // simplification stopped with relators remaining
};

std::string to_string(Pi1Status s);

struct TietzeResult {
    GroupPresentation presentation;
    Pi1Status status = Pi1Status::inconclusive;
    std::size_t eliminations = 0;
    bool budget_exhausted = false;
};

/// Free and cyclic reduction, deletion of generators killed by a relator of
/// length one, and elimination of generators occurring exactly once in
/// some relator. `budget` bounds the total relator length during
/// substitution.
TietzeResult tietze_simplify(GroupPresentation p, std::size_t budget = 1'000'000);

/// Exponent-sum abelianization, as a degree-1 group.
HomologyGroup abelianization(const GroupPresentation& p);

}  // namespace finsub
