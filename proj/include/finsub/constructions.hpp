#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "finsub/homology.hpp"
#include "finsub/simplicial_set.hpp"
#include "finsub/space_library.hpp"

namespace finsub {

/// Names used for the maps attached to a construction:
///   q         X^n -> SP^n X
///   pi        SP^n X -> Sub_n X
///   j_n       X -> SP^n X, x |-> x x0^{n-1}
///   diag      X -> SP^n X, x |-> x^n
///   j         X -> Sub_n X, singletons
///   incl_sp   SP^{n-1} X -> SP^n X, adds the basepoint
///   incl_sub  Sub_{n-1} X -> Sub_n X
///   incl_fat  fat diagonal -> SP^n X
///   alpha     SP^2 X -> Sub_3(X, x0)
///   j_x0      X -> Sub_3(X, x0)
///   proj      a construction -> its collapse
std::vector<std::string> map_vocabulary();

struct BuildOptions {
    int truncation = -1;     // -1: n * dim X + 1
    bool with_maps = true;   // pi, incl_sub, incl_sp (these build the neighbouring spaces)
    bool with_q = false;     // q through the full power (small cases only)
};

struct ConstructionResult {
    std::string name;
    SSetPtr space;
    std::map<std::string, SSetMap> maps;
    /// Upper bound on the nondegenerate dimension (n * dim X); asserted on
    /// construction within the truncation.
    int dimension_bound = -1;

    const SSetMap& map(const std::string& name) const;
    /// Normalized chains; when the truncation is above the dimension bound
    /// every degree is certified exact.
    NormalizedChains chains() const;
    Homology homology(Coefficients coeff = {}) const;
};

/// Generated simplicial set of the input complex (default truncation dim + 1).
ConstructionResult base_space(const OrderedComplexSpec& x, const BuildOptions& opts = {});

ConstructionResult symmetric_product(const OrderedComplexSpec& x, int n, const BuildOptions& opts = {});
ConstructionResult finite_subset_space(const OrderedComplexSpec& x, int n, const BuildOptions& opts = {});

/// The same spaces through the full power X^n and a generic quotient:
/// adjacent transpositions for SP^n, plus moving a repeated coordinate onto
/// any other coordinate for Sub_n. Carries q.
ConstructionResult symmetric_product_generic(const OrderedComplexSpec& x, int n, const BuildOptions& opts = {});
ConstructionResult finite_subset_space_generic(const OrderedComplexSpec& x, int n, const BuildOptions& opts = {});

/// Classes of SP^n X with a repeated coordinate, with incl_fat.
ConstructionResult fat_diagonal(const OrderedComplexSpec& x, int n, const BuildOptions& opts = {});

enum class ReducedKind { sp, sub };

/// SP^n X / SP^{n-1} X or Sub_n X / Sub_{n-1} X, with proj.
ConstructionResult reduced(const OrderedComplexSpec& x, int n, ReducedKind kind, const BuildOptions& opts = {});

/// SP^n X / fat diagonal, with proj.
ConstructionResult sp_mod_fat_diagonal(const OrderedComplexSpec& x, int n, const BuildOptions& opts = {});

/// SP^2 X with (s, s) ~ (s, x0) for every cell s, with alpha and j_x0.
ConstructionResult based_subset3(const OrderedComplexSpec& x, const BuildOptions& opts = {});

/// C(SP^2 X) + |C(X)| (basepoint 0-chain removed, shifted up by one) with
/// d|c| = j_2(c) - diag(c) - |dc|.
ChainComplexZ w2_chain_model(const OrderedComplexSpec& x, const BuildOptions& opts = {});

struct CoproductResult {
    Homology homology;                     // H(SP^2 X) / (diag_* - j_*) H(X), per degree
    std::vector<HomologyGroup> sp2;        // H(SP^2 X)
    std::vector<AbelianQuotient> quotients;
    std::vector<IntMatrix> j_star;         // H_k(X) -> H_k(SP^2 X), k <= dim X
    std::vector<IntMatrix> diag_star;
    /// Coordinates (in the H_k(SP^2 X) basis) of the image of generator i of
    /// H_k(X) under j, i.e. j_{x0,*} before passing to the quotient.
    std::vector<Integer> j_image(int k, std::size_t i) const;
    /// True when the class j_{x0,*}(g_i) vanishes in the quotient.
    bool j_image_vanishes(int k, std::size_t i) const;
};

CoproductResult sub3_homology_via_coproduct(const OrderedComplexSpec& x, const BuildOptions& opts = {});

/// Induced map of a named map of a construction on H_k, in bases computed
/// for the source and target chains.
struct InducedMap {
    HomologyGroup source;
    HomologyGroup target;
    IntMatrix matrix;
};

InducedMap induced_map(const SSetMap& f, int degree);

}  // namespace finsub
