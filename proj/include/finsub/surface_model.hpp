#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "finsub/chain_complex.hpp"
#include "finsub/homology.hpp"

namespace finsub {

/// X = wedge of r circles e_1..e_r with one 2-cell D attached along `word`
/// (signed indices 1..r). The empty word with r = 0 is the sphere.
struct SurfacePresentation {
    std::string name;
    int r = 0;
    std::vector<int> word;

    void check() const;
    /// Signed abelianized attaching word: c_i = exponent sum of e_i.
    std::vector<long> boundary_of_disk() const;
    bool orientable() const;
};

/// {"r":2,"word":[1,2,-1,-2]}, optional "name".
SurfacePresentation load_surface(std::string_view text);
std::string serialize(const SurfacePresentation& p);

SurfacePresentation surface_sphere();
SurfacePresentation surface_torus();
SurfacePresentation surface_rp2();
/// a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1
SurfacePresentation surface_genus(int g);
/// "sphere", "torus", "rp2", "genus2", ...
SurfacePresentation builtin_surface(std::string_view name);

/// e_{i_1} * ... * e_{i_l} * SP^k D
struct MonomialCell {
    std::vector<int> circles;  // strictly increasing, in 1..r
    int disk_power = 0;

    int degree() const { return static_cast<int>(circles.size()) + 2 * disk_power; }
    std::string label() const;
    bool operator==(const MonomialCell&) const = default;
};

/// All monomials with l + k <= n, ordered by degree, then disk power, then
/// circle subset.
std::vector<MonomialCell> monomial_cells(int r, int n);

/// Chain model of SP^n X: d e_i = 0, d SP^k D = dD * SP^{k-1} D with
/// dD = sum c_i e_i, extended as a derivation with Koszul signs; products
/// with a repeated circle vanish.
ChainComplexZ sp_chain_complex(const SurfacePresentation& p, int n);

struct TopHomologyReport {
    int n = 0;
    bool orientable = false;
    HomologyGroup top_z, below_z;     // degrees 2n and 2n-1 over Z
    HomologyGroup top_f2, below_f2;   // over F_2

    std::string to_string() const;
};

TopHomologyReport top_homology_report(const SurfacePresentation& p, int n);

}  // namespace finsub
