#include "clusteraf/diagram.hpp"

#include <algorithm>
#include <string>

#include "clusteraf/error.hpp"

namespace clusteraf {

std::size_t BratteliDiagram::vertex_count() const noexcept {
    std::size_t n = 0;
    for (auto w : widths) n += w;
    return n;
}

void BratteliDiagram::validate() const {
    if (widths.empty()) {
        if (!edges.empty()) throw ValidationError("diagram has edges but no levels");
        return;
    }
    if (edges.size() + 1 != widths.size())
        throw ValidationError("diagram needs one multiplicity matrix between consecutive levels");
    for (std::size_t n = 0; n < edges.size(); ++n) {
        const auto& e = edges[n];
        if (e.size() != widths[n]) throw ValidationError("multiplicity matrix row count mismatch at level " + std::to_string(n));
        for (const auto& row : e) {
            if (row.size() != widths[n + 1])
                throw ValidationError("multiplicity matrix column count mismatch at level " + std::to_string(n));
            for (auto v : row)
                if (v < 0) throw ValidationError("negative edge multiplicity at level " + std::to_string(n));
        }
        for (std::size_t u = 0; u < widths[n]; ++u)
            if (std::all_of(e[u].begin(), e[u].end(), [](std::int64_t v) { return v == 0; }))
                throw ValidationError("vertex " + std::to_string(u) + " on level " + std::to_string(n) +
                                      " has no outgoing edge");
        for (std::size_t v = 0; v < widths[n + 1]; ++v) {
            bool any = false;
            for (std::size_t u = 0; u < widths[n] && !any; ++u) any = e[u][v] > 0;
            if (!any)
                throw ValidationError("vertex " + std::to_string(v) + " on level " + std::to_string(n + 1) +
                                      " has no incoming edge");
        }
    }
}

VertexSet VertexSet::empty(const BratteliDiagram& d) {
    VertexSet s;
    s.levels.resize(d.levels());
    return s;
}

VertexSet VertexSet::all(const BratteliDiagram& d) {
    VertexSet s;
    for (auto w : d.widths) {
        std::vector<std::size_t> l(w);
        for (std::size_t i = 0; i < w; ++i) l[i] = i;
        s.levels.push_back(std::move(l));
    }
    return s;
}

bool VertexSet::contains(std::size_t level, std::size_t v) const {
    if (level >= levels.size()) return false;
    return std::binary_search(levels[level].begin(), levels[level].end(), v);
}

void VertexSet::insert(std::size_t level, std::size_t v) {
    if (level >= levels.size()) levels.resize(level + 1);
    auto& l = levels[level];
    auto it = std::lower_bound(l.begin(), l.end(), v);
    if (it == l.end() || *it != v) l.insert(it, v);
}

std::size_t VertexSet::size() const {
    std::size_t n = 0;
    for (const auto& l : levels) n += l.size();
    return n;
}

void VertexSet::check_bounds(const BratteliDiagram& d) const {
    if (levels.size() > d.levels()) throw ValidationError("vertex set has more levels than the diagram");
    for (std::size_t n = 0; n < levels.size(); ++n) {
        if (!std::is_sorted(levels[n].begin(), levels[n].end()) ||
            std::adjacent_find(levels[n].begin(), levels[n].end()) != levels[n].end())
            throw ValidationError("vertex set level " + std::to_string(n) + " is not sorted and duplicate free");
        for (auto v : levels[n])
            if (v >= d.widths[n])
                throw ValidationError("vertex " + std::to_string(v) + " outside level " + std::to_string(n));
    }
}

bool VertexSet::subset_of(const VertexSet& o) const {
    for (std::size_t n = 0; n < levels.size(); ++n)
        for (auto v : levels[n])
            if (!o.contains(n, v)) return false;
    return true;
}

}  // namespace clusteraf
