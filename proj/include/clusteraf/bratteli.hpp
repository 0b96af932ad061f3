#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "clusteraf/diagram.hpp"
#include "clusteraf/jacobiperron.hpp"

namespace clusteraf {

/// Least superset of S closed under descendants and under saturation: a
/// vertex with at least one outgoing edge, all of whose edges end in the set,
/// joins the set. Vertices of the final stored level have no outgoing edges
/// and are never added by saturation.
VertexSet hereditary_saturate(const BratteliDiagram& d, const VertexSet& s);
bool is_hereditary_saturated(const BratteliDiagram& d, const VertexSet& s);

/// Subdiagram induced on the complement of I, vertex order preserved.
/// Throws ValidationError unless I is hereditary and saturated.
BratteliDiagram quotient_diagram(const BratteliDiagram& d, const VertexSet& ideal);

/// Induced subdiagram on `keep` without closure requirements; empty leading
/// levels are dropped and their number returned alongside.
std::pair<BratteliDiagram, std::size_t> induced_subdiagram(const BratteliDiagram& d, const VertexSet& keep);

/// Farey fraction p/q labelling a vertex of the mediant diagram.
struct Fraction {
    mpz_class p, q;
    friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct FareyDiagram {
    BratteliDiagram diagram;
    std::vector<std::vector<Fraction>> labels;  ///< per level, increasing; level 0 holds no fraction
};

/// Level 0 is a single root joined to 0/1 and 1/1 on level 1. Each later level
/// repeats the previous fractions, each fed by its own copy, and inserts the
/// mediant of every neighbouring pair, fed once by each neighbour.
FareyDiagram farey_diagram(std::size_t depth);

/// The Farey diagram with 0/1 and 1/1 removed on every level; levels 0 and 1
/// become empty and are dropped, so the result starts at the single vertex 1/2.
BratteliDiagram erase_extremes(const FareyDiagram& f);

struct StripCut {
    BratteliDiagram strip;
    VertexSet selected;
    VertexSet complement;
};

/// Level-wise selection driven by the continued-fraction digits (n = 2)
/// inside the Farey diagram. With d = 2 the strip holds the Farey neighbours
/// bracketing theta, newest vertex first; once theta itself appears the strip
/// narrows to that vertex. Any d at least the largest level width selects
/// everything. Throws ValidationError for other d, for n != 2, and when the
/// digits run out before the diagram ends without the expansion being finite.
StripCut strip_cut(const FareyDiagram& f, const JPExpansion& digits, std::size_t d);

/// Generic splitting: select(level) returns the vertices kept on that level.
/// Throws ValidationError unless the complement is hereditary and saturated.
StripCut strip_select(const BratteliDiagram& d, const std::function<std::vector<std::size_t>(std::size_t)>& select);

/// Level-respecting isomorphism preserving multiplicities; returns for every
/// level the image of each vertex of a, or nullopt.
std::optional<std::vector<std::vector<std::size_t>>> level_isomorphism(const BratteliDiagram& a,
                                                                       const BratteliDiagram& b);
inline bool level_isomorphic(const BratteliDiagram& a, const BratteliDiagram& b) {
    return level_isomorphism(a, b).has_value();
}

/// Dimension of every vertex: the number of paths from level 0, each vertex
/// of level 0 counting once.
std::vector<std::vector<mpz_class>> path_counts(const BratteliDiagram& d);

/// Drops the first `count` levels.
BratteliDiagram drop_levels(const BratteliDiagram& d, std::size_t count);

/// Keeps levels 0..depth.
BratteliDiagram truncate(const BratteliDiagram& d, std::size_t depth);

}  // namespace clusteraf
