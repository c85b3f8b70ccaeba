#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace finsub {

/// A finite simplicial complex with vertices 0..vertex_count-1, totally
/// ordered by index. Simplices are stored as strictly increasing vertex lists.
struct OrderedComplexSpec {
    std::string name;
    int vertex_count = 0;
    std::vector<std::vector<int>> maximal_simplices;
    int basepoint = 0;

    int dimension() const;

    /// Every simplex of the closure (all faces of all listed simplices, and
    /// isolated vertices), sorted by size then lexicographically.
    std::vector<std::vector<int>> all_simplices() const;

    bool operator==(const OrderedComplexSpec&) const = default;
};

/// Checks ordering, range and connectivity; throws ParseError on violation.
void validate(const OrderedComplexSpec& spec);

/// Parses the JSON text format, e.g.
///   {"name":"circle3","vertices":3,"simplices":[[0,1],[0,2],[1,2]],"basepoint":0}
/// "name" and "basepoint" are optional.
OrderedComplexSpec load_complex(std::string_view text);

std::string serialize(const OrderedComplexSpec& spec);

// Built-in catalog.
OrderedComplexSpec interval();
OrderedComplexSpec circle(int m);
OrderedComplexSpec sphere(int d);
OrderedComplexSpec torus();
OrderedComplexSpec rp2();
OrderedComplexSpec wedge_circles(int r);

/// Looks up a builtin by identifier: "interval", "circle(m)" or "circleM",
/// "sphere(d)" or "sphereD", "torus", "rp2", "wedge_circles(r)" or "wedgeR".
OrderedComplexSpec builtin_space(std::string_view name);

/// Names accepted by builtin_space, with their parameter ranges.
std::vector<std::string> builtin_names();

}  // namespace finsub
