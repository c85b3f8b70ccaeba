#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "finsub/chain_complex.hpp"
#include "finsub/simplicial_set.hpp"
#include "finsub/smith.hpp"

namespace finsub {

/// Coefficient ring: the integers (p = 0) or F_p.
struct Coefficients {
    std::uint32_t p = 0;

    static Coefficients integers() { return {}; }
    static Coefficients mod(std::uint32_t p) { return {p}; }
    bool integral() const { return p == 0; }
    std::string name() const { return p == 0 ? "Z" : "F" + std::to_string(p); }
    bool operator==(const Coefficients&) const = default;
};

/// Z^betti + sum Z/t_i (over F_p only betti is used).
struct HomologyGroup {
    int degree = 0;
    std::size_t betti = 0;
    std::vector<Integer> torsion;  // entries > 1, each dividing the next
    bool reliable = true;          // false above the certified degree of a truncation

    bool is_zero() const { return betti == 0 && torsion.empty(); }
    /// Equality of the group data (degree, betti, torsion); `reliable` is ignored.
    bool operator==(const HomologyGroup& o) const
    {
        return degree == o.degree && betti == o.betti && torsion == o.torsion;
    }
    /// "0", "Z", "Z^2+Z/2", or over F_p "F2^3".
    std::string to_string(Coefficients coeff = {}) const;
};

using Homology = std::vector<HomologyGroup>;

/// Degrees 0..top of the complex. Groups above `exact_through` are flagged
/// unreliable.
Homology homology(const ChainComplexZ& c, Coefficients coeff = {});

/// Reduced homology: one Z (or F_p) less in degree 0.
Homology reduced(Homology h);

/// Builds a homology list from (betti, torsion) pairs, degree = position.
Homology make_homology(const std::vector<std::pair<std::size_t, std::vector<long>>>& groups);

/// Drops trailing zero groups so lists of different lengths compare.
Homology trim(Homology h);

/// Predicted dim H_k(-; F_p) from integral homology by universal
/// coefficients: betti_k + #{p | t in degree k} + #{p | t in degree k-1}.
std::vector<std::size_t> uct_mod_p(const Homology& integral, std::uint32_t p);

std::string to_string(const Homology& h, Coefficients coeff = {});
nlohmann::ordered_json to_json(const Homology& h);
Homology homology_from_json(const nlohmann::json& j);

/// Free chain complex on the nondegenerate cells with d = sum (-1)^i d_i,
/// faces landing on degenerate cells dropped.
struct NormalizedChains {
    SSetPtr space;
    ChainComplexZ complex;
    std::vector<std::vector<CellId>> generators;      // per degree: cell ids
    std::vector<std::vector<std::int64_t>> index_of;  // per level: generator index or -1

    std::int64_t index(int k, CellId c) const { return index_of[k][c]; }
};

/// Degrees 0..D of a set truncated at D; exact through degree D-1.
NormalizedChains normalized_chains(const SSetPtr& s);

/// Chain map induced by a simplicial map (degenerate images go to 0).
ChainMap chain_map(const SSetMap& f, const NormalizedChains& source, const NormalizedChains& target);

/// An explicit basis of H_k(C): coordinates of cycles and representative
/// cycles of the generators. Coordinates list torsion summands first (each
/// reduced into [0, t)), then free summands.
class HomologyBasis {
public:
    HomologyBasis(const ChainComplexZ& c, int degree);

    int degree() const { return degree_; }
    const HomologyGroup& group() const { return group_; }
    std::size_t generator_count() const { return order_.size(); }
    /// Order of generator i: the torsion coefficient, or 0 when free.
    const Integer& order(std::size_t i) const { return order_[i]; }

    /// Coordinates of the class of a cycle. Throws InvariantError when z is
    /// not a cycle.
    std::vector<Integer> coordinates(const std::vector<Integer>& z) const;
    /// A cycle representing generator i.
    std::vector<Integer> generator(std::size_t i) const;

private:
    struct Pivot {
        std::uint32_t a;  // cell of the upper degree
        std::uint32_t b;  // cell of the lower degree
        Integer eps;
        std::vector<std::pair<std::uint32_t, Integer>> boundary;  // d a without b, at the time of the pivot
        std::vector<std::pair<std::uint32_t, Integer>> column;    // other cells x with <d x, b> != 0
    };

    std::vector<Integer> project(std::vector<Integer> z) const;
    std::vector<Integer> lift(std::vector<Integer> z) const;

    int degree_;
    std::size_t rank_k_ = 0;
    SparseIntMatrix boundary_k_;
    std::vector<Pivot> lower_;  // pairs (a in C_k, b in C_{k-1})
    std::vector<Pivot> upper_;  // pairs (a in C_{k+1}, b in C_k)
    std::vector<std::uint32_t> residual_;        // surviving cells of C_k
    std::vector<std::int64_t> residual_pos_;     // cell -> position in residual_ or -1
    IntMatrix kernel_;                           // residual_.size() x m, columns span ker d'_k
    IntMatrix kernel_coords_;                    // m x residual_.size(): V^{-1} rows r..
    IntMatrix class_change_;                     // P, m x m
    IntMatrix class_basis_;                      // kernel_ * P^{-1}, residual_.size() x m
    std::vector<std::size_t> kept_;              // indices into P-coordinates that survive
    std::vector<Integer> order_;
    HomologyGroup group_;
};

/// Matrix of f_* : H_k(source) -> H_k(target) in the two bases; rows for
/// torsion summands are reduced modulo their order.
IntMatrix induced_map(const HomologyBasis& source, const HomologyBasis& target, const SparseIntMatrix& f_k);

/// The group G / <relations> where G = (+ Z/t_i) + Z^betti in the
/// coordinates used by HomologyBasis.
struct AbelianQuotient {
    IntMatrix presentation;  // generators x (torsion columns + relations)
    SmithResult snf;
    HomologyGroup group;

    /// True when v (coordinates in G) lies in the relation subgroup.
    bool vanishes(const std::vector<Integer>& v) const;
};

AbelianQuotient quotient_group(const HomologyGroup& g, const std::vector<std::vector<Integer>>& relations);

}  // namespace finsub
