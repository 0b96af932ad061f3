#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace clusteraf {

/// Finite truncation of a Bratteli diagram.
///
/// edges[n][u][v] is the number of edges from vertex u on level n to vertex v
/// on level n+1. Level 0 is the top level; its vertices need no incoming edges.
struct BratteliDiagram {
    using Matrix = std::vector<std::vector<std::int64_t>>;

    std::vector<std::size_t> widths;
    std::vector<Matrix> edges;
    bool incomplete = false;  ///< construction stopped early (budget)
    bool degenerate = false;  ///< no vertices remain

    std::size_t levels() const noexcept { return widths.size(); }
    std::size_t vertex_count() const noexcept;
    std::int64_t multiplicity(std::size_t level, std::size_t from, std::size_t to) const {
        return edges[level][from][to];
    }

    /// Throws ValidationError when shapes disagree, a multiplicity is negative,
    /// a vertex below the top lacks an incoming edge, or a vertex above the
    /// final level lacks an outgoing edge.
    void validate() const;

    friend bool operator==(const BratteliDiagram&, const BratteliDiagram&) = default;
};

/// Per-level sets of vertex indices, each kept sorted and duplicate free.
struct VertexSet {
    std::vector<std::vector<std::size_t>> levels;

    static VertexSet empty(const BratteliDiagram& d);
    static VertexSet all(const BratteliDiagram& d);

    bool contains(std::size_t level, std::size_t v) const;
    void insert(std::size_t level, std::size_t v);
    std::size_t size() const;
    /// Throws ValidationError unless every index lies within d's widths.
    void check_bounds(const BratteliDiagram& d) const;
    bool subset_of(const VertexSet& o) const;

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
};

}  // namespace clusteraf
