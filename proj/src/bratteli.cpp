#include "clusteraf/bratteli.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "clusteraf/error.hpp"

namespace clusteraf {

namespace {

using Flags = std::vector<std::vector<char>>;

Flags to_flags(const BratteliDiagram& d, const VertexSet& s) {
    s.check_bounds(d);
    Flags f(d.levels());
    for (std::size_t n = 0; n < d.levels(); ++n) f[n].assign(d.widths[n], 0);
    for (std::size_t n = 0; n < s.levels.size(); ++n)
        for (auto v : s.levels[n]) f[n][v] = 1;
    return f;
}

VertexSet from_flags(const Flags& f) {
    VertexSet s;
    s.levels.resize(f.size());
    for (std::size_t n = 0; n < f.size(); ++n)
        for (std::size_t v = 0; v < f[n].size(); ++v)
            if (f[n][v]) s.levels[n].push_back(v);
    return s;
}

VertexSet normalized(const BratteliDiagram& d, VertexSet s) {
    s.levels.resize(d.levels());
    return s;
}

// Subdiagram on the given per-level vertex orders.
BratteliDiagram ordered_subdiagram(const BratteliDiagram& d, const std::vector<std::vector<std::size_t>>& order) {
    BratteliDiagram r;
    for (std::size_t n = 0; n < order.size(); ++n) r.widths.push_back(order[n].size());
    for (std::size_t n = 0; n + 1 < order.size(); ++n) {
        BratteliDiagram::Matrix m(order[n].size(), std::vector<std::int64_t>(order[n + 1].size(), 0));
        for (std::size_t i = 0; i < order[n].size(); ++i)
            for (std::size_t j = 0; j < order[n + 1].size(); ++j) m[i][j] = d.edges[n][order[n][i]][order[n + 1][j]];
        r.edges.push_back(std::move(m));
    }
    return r;
}

int cmp_fraction(const Fraction& x, const Fraction& y) {
    mpz_class l = x.p * y.q, r = y.p * x.q;
    return l < r ? -1 : (l > r ? 1 : 0);
}

std::size_t index_of(const std::vector<Fraction>& level, const Fraction& x) {
    auto it = std::lower_bound(level.begin(), level.end(), x,
                               [](const Fraction& a, const Fraction& b) { return cmp_fraction(a, b) < 0; });
    if (it == level.end() || cmp_fraction(*it, x) != 0) throw InternalError("fraction missing from Farey level");
    return static_cast<std::size_t>(it - level.begin());
}

}  // namespace

VertexSet hereditary_saturate(const BratteliDiagram& d, const VertexSet& s) {
    Flags f = to_flags(d, s);
    const std::size_t L = d.levels();
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t n = 0; n + 1 < L; ++n)
            for (std::size_t u = 0; u < d.widths[n]; ++u) {
                if (!f[n][u]) continue;
                for (std::size_t v = 0; v < d.widths[n + 1]; ++v)
                    if (d.edges[n][u][v] > 0 && !f[n + 1][v]) {
                        f[n + 1][v] = 1;
                        changed = true;
                    }
            }
        for (std::size_t n = L >= 2 ? L - 1 : 0; n-- > 0;)
            for (std::size_t u = 0; u < d.widths[n]; ++u) {
                if (f[n][u]) continue;
                bool any = false, inside = true;
                for (std::size_t v = 0; v < d.widths[n + 1]; ++v)
                    if (d.edges[n][u][v] > 0) {
                        any = true;
                        inside = inside && f[n + 1][v];
                    }
                if (any && inside) {
                    f[n][u] = 1;
                    changed = true;
                }
            }
    }
    return from_flags(f);
}

bool is_hereditary_saturated(const BratteliDiagram& d, const VertexSet& s) {
    return hereditary_saturate(d, s) == normalized(d, s);
}

std::pair<BratteliDiagram, std::size_t> induced_subdiagram(const BratteliDiagram& d, const VertexSet& keep) {
    Flags f = to_flags(d, keep);
    std::vector<std::vector<std::size_t>> order(d.levels());
    for (std::size_t n = 0; n < d.levels(); ++n)
        for (std::size_t v = 0; v < d.widths[n]; ++v)
            if (f[n][v]) order[n].push_back(v);
    std::size_t offset = 0;
    while (offset < order.size() && order[offset].empty()) ++offset;
    BratteliDiagram full = ordered_subdiagram(d, order);
    return {drop_levels(full, offset), offset};
}

BratteliDiagram quotient_diagram(const BratteliDiagram& d, const VertexSet& ideal) {
    if (!is_hereditary_saturated(d, ideal))
        throw ValidationError("quotient needs a hereditary saturated vertex set");
    Flags f = to_flags(d, ideal);
    std::vector<std::vector<std::size_t>> order(d.levels());
    for (std::size_t n = 0; n < d.levels(); ++n)
        for (std::size_t v = 0; v < d.widths[n]; ++v)
            if (!f[n][v]) order[n].push_back(v);
    BratteliDiagram r = ordered_subdiagram(d, order);
    r.incomplete = d.incomplete;
    r.degenerate = r.vertex_count() == 0;
    if (!r.degenerate) r.validate();
    return r;
}

FareyDiagram farey_diagram(std::size_t depth) {
    if (depth < 1) throw ValidationError("farey_diagram needs depth at least 1");
    FareyDiagram f;
    f.diagram.widths = {1, 2};
    f.diagram.edges.push_back({{1, 1}});
    f.labels.push_back({});
    f.labels.push_back({Fraction{0, 1}, Fraction{1, 1}});
    for (std::size_t n = 1; n < depth; ++n) {
        const auto& prev = f.labels.back();
        const std::size_t w = prev.size();
        std::vector<Fraction> next;
        BratteliDiagram::Matrix e(w, std::vector<std::int64_t>(2 * w - 1, 0));
        for (std::size_t i = 0; i < w; ++i) {
            next.push_back(prev[i]);
            e[i][2 * i] = 1;
            if (i + 1 < w) {
                next.push_back(Fraction{prev[i].p + prev[i + 1].p, prev[i].q + prev[i + 1].q});
                e[i][2 * i + 1] = 1;
                e[i + 1][2 * i + 1] = 1;
            }
        }
        f.diagram.widths.push_back(next.size());
        f.diagram.edges.push_back(std::move(e));
        f.labels.push_back(std::move(next));
    }
    f.diagram.validate();
    return f;
}

BratteliDiagram erase_extremes(const FareyDiagram& f) {
    const auto& d = f.diagram;
    VertexSet keep = VertexSet::empty(d);
    for (std::size_t n = 1; n < d.levels(); ++n)
        for (std::size_t v = 1; v + 1 < d.widths[n]; ++v) keep.levels[n].push_back(v);
    auto [r, offset] = induced_subdiagram(d, keep);
    if (r.levels() && offset != 2) throw InternalError("unexpected empty levels in the Farey interior");
    return r;
}

StripCut strip_select(const BratteliDiagram& d,
                      const std::function<std::vector<std::size_t>(std::size_t)>& select) {
    std::vector<std::vector<std::size_t>> order(d.levels());
    StripCut out;
    out.selected = VertexSet::empty(d);
    for (std::size_t n = 0; n < d.levels(); ++n) {
        order[n] = select(n);
        for (auto v : order[n]) {
            if (v >= d.widths[n]) throw ValidationError("selected vertex outside level " + std::to_string(n));
            if (out.selected.contains(n, v)) throw ValidationError("vertex selected twice on level " + std::to_string(n));
            out.selected.insert(n, v);
        }
    }
    out.complement = VertexSet::empty(d);
    for (std::size_t n = 0; n < d.levels(); ++n)
        for (std::size_t v = 0; v < d.widths[n]; ++v)
            if (!out.selected.contains(n, v)) out.complement.levels[n].push_back(v);
    if (!is_hereditary_saturated(d, out.complement))
        throw ValidationError("complement of the selected strip is not hereditary and saturated");
    out.strip = ordered_subdiagram(d, order);
    out.strip.validate();
    return out;
}

StripCut strip_cut(const FareyDiagram& f, const JPExpansion& digits, std::size_t d) {
    const auto& D = f.diagram;
    std::size_t max_width = 0;
    for (auto w : D.widths) max_width = std::max(max_width, w);
    if (d >= max_width) {
        return strip_select(D, [&](std::size_t n) {
            std::vector<std::size_t> v(D.widths[n]);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
            return v;
        });
    }
    if (digits.n != 2) throw ValidationError("the digit-driven strip is implemented for n = 2 only");
    if (d != 2) throw ValidationError("strip width must be 2 or cover the whole diagram");

    // Stern-Brocot moves after the first left turn: false = left, true = right.
    std::vector<bool> word;
    const std::size_t k = digits.digits.size();
    for (std::size_t j = 0; j < k; ++j) {
        std::int64_t a = digits.digits[j][0];
        if (digits.finite && j + 1 == k) --a;
        for (std::int64_t t = 0; t < a; ++t) word.push_back(j % 2 == 1);
    }
    if (!word.empty()) word.erase(word.begin());
    bool integral = digits.finite && k == 0;
    if (!digits.finite && word.size() + 2 < D.levels())
        throw ValidationError("not enough digits to follow theta through " + std::to_string(D.levels()) + " levels");

    // per level: vertices in strip order (newest first)
    std::vector<std::vector<Fraction>> path(D.levels());
    Fraction lo{0, 1}, hi{1, 1};
    bool newest_hi = true;  // which end of the bracket was inserted last
    for (std::size_t n = 1; n < D.levels(); ++n) {
        if (integral) {
            path[n] = {Fraction{0, 1}};
            continue;
        }
        std::size_t step = n - 1;  // moves made before level n
        if (step <= word.size()) {
            if (step > 0) {
                Fraction med{lo.p + hi.p, lo.q + hi.q};
                if (word[step - 1]) {
                    lo = med;
                    newest_hi = false;
                } else {
                    hi = med;
                    newest_hi = true;
                }
            } else if (!word.empty()) {
                newest_hi = word[0];  // the endpoint kept at the next level comes first
            }
            path[n] = newest_hi ? std::vector<Fraction>{hi, lo} : std::vector<Fraction>{lo, hi};
        } else {
            path[n] = {Fraction{lo.p + hi.p, lo.q + hi.q}};
        }
    }
    return strip_select(D, [&](std::size_t n) {
        if (n == 0) return std::vector<std::size_t>{0};
        std::vector<std::size_t> v;
        for (const auto& x : path[n]) v.push_back(index_of(f.labels[n], x));
        return v;
    });
}

std::vector<std::vector<mpz_class>> path_counts(const BratteliDiagram& d) {
    std::vector<std::vector<mpz_class>> out;
    if (d.widths.empty()) return out;
    out.push_back(std::vector<mpz_class>(d.widths[0], 1));
    for (std::size_t n = 0; n + 1 < d.levels(); ++n) {
        std::vector<mpz_class> next(d.widths[n + 1], 0);
        for (std::size_t u = 0; u < d.widths[n]; ++u)
            for (std::size_t v = 0; v < d.widths[n + 1]; ++v)
                if (d.edges[n][u][v]) next[v] += out[n][u] * d.edges[n][u][v];
        out.push_back(std::move(next));
    }
    return out;
}

BratteliDiagram drop_levels(const BratteliDiagram& d, std::size_t count) {
    BratteliDiagram r;
    r.incomplete = d.incomplete;
    if (count >= d.levels()) return r;
    r.widths.assign(d.widths.begin() + static_cast<std::ptrdiff_t>(count), d.widths.end());
    r.edges.assign(d.edges.begin() + static_cast<std::ptrdiff_t>(count), d.edges.end());
    return r;
}

BratteliDiagram truncate(const BratteliDiagram& d, std::size_t depth) {
    if (depth + 1 >= d.levels()) return d;
    BratteliDiagram r;
    r.widths.assign(d.widths.begin(), d.widths.begin() + static_cast<std::ptrdiff_t>(depth + 1));
    r.edges.assign(d.edges.begin(), d.edges.begin() + static_cast<std::ptrdiff_t>(depth));
    return r;
}

namespace {

class IsoSearch {
public:
    IsoSearch(const BratteliDiagram& a, const BratteliDiagram& b) : a_(a), b_(b) {}

    std::optional<std::vector<std::vector<std::size_t>>> run() {
        if (a_.widths != b_.widths) return std::nullopt;
        refine();
        map_.resize(a_.levels());
        used_.resize(b_.levels());
        for (std::size_t n = 0; n < a_.levels(); ++n) {
            map_[n].assign(a_.widths[n], 0);
            used_[n].assign(b_.widths[n], 0);
        }
        if (!dfs(0, 0)) return std::nullopt;
        return map_;
    }

private:
    // joint colour refinement on both diagrams
    void refine() {
        const std::size_t L = a_.levels();
        ca_.resize(L);
        cb_.resize(L);
        for (std::size_t n = 0; n < L; ++n) {
            ca_[n].assign(a_.widths[n], static_cast<long>(n));
            cb_[n].assign(b_.widths[n], static_cast<long>(n));
        }
        std::size_t classes = L;
        while (true) {
            using Sig = std::tuple<long, std::vector<std::pair<std::int64_t, long>>, std::vector<std::pair<std::int64_t, long>>>;
            std::map<Sig, long> ids;
            auto sig = [&](const BratteliDiagram& g, const std::vector<std::vector<long>>& c, std::size_t n, std::size_t v) {
                std::vector<std::pair<std::int64_t, long>> in, out;
                if (n > 0)
                    for (std::size_t u = 0; u < g.widths[n - 1]; ++u)
                        if (g.edges[n - 1][u][v]) in.emplace_back(g.edges[n - 1][u][v], c[n - 1][u]);
                if (n + 1 < g.levels())
                    for (std::size_t w = 0; w < g.widths[n + 1]; ++w)
                        if (g.edges[n][v][w]) out.emplace_back(g.edges[n][v][w], c[n + 1][w]);
                std::sort(in.begin(), in.end());
                std::sort(out.begin(), out.end());
                return Sig{c[n][v], std::move(in), std::move(out)};
            };
            std::vector<std::vector<Sig>> sa(L), sb(L);
            for (std::size_t n = 0; n < L; ++n) {
                for (std::size_t v = 0; v < a_.widths[n]; ++v) sa[n].push_back(sig(a_, ca_, n, v));
                for (std::size_t v = 0; v < b_.widths[n]; ++v) sb[n].push_back(sig(b_, cb_, n, v));
            }
            for (auto* s : {&sa, &sb})
                for (auto& level : *s)
                    for (auto& x : level) ids.try_emplace(x, 0);
            long next = 0;
            for (auto& [k, v] : ids) v = next++;
            for (std::size_t n = 0; n < L; ++n) {
                for (std::size_t v = 0; v < a_.widths[n]; ++v) ca_[n][v] = ids[sa[n][v]];
                for (std::size_t v = 0; v < b_.widths[n]; ++v) cb_[n][v] = ids[sb[n][v]];
            }
            if (ids.size() == classes) break;
            classes = ids.size();
        }
    }

    bool dfs(std::size_t n, std::size_t i) {
        if (n == a_.levels()) return true;
        if (i == a_.widths[n]) return dfs(n + 1, 0);
        if (++steps_ > 50000000) throw BudgetExceeded("isomorphism search exceeded its step budget");
        for (std::size_t j = 0; j < b_.widths[n]; ++j) {
            if (used_[n][j] || cb_[n][j] != ca_[n][i]) continue;
            bool ok = true;
            if (n > 0)
                for (std::size_t u = 0; u < a_.widths[n - 1] && ok; ++u)
                    ok = a_.edges[n - 1][u][i] == b_.edges[n - 1][map_[n - 1][u]][j];
            if (!ok) continue;
            used_[n][j] = 1;
            map_[n][i] = j;
            if (dfs(n, i + 1)) return true;
            used_[n][j] = 0;
        }
        return false;
    }

    const BratteliDiagram& a_;
    const BratteliDiagram& b_;
    std::vector<std::vector<long>> ca_, cb_;
    std::vector<std::vector<std::size_t>> map_;
    std::vector<std::vector<char>> used_;
    std::size_t steps_ = 0;
};

}  // namespace

std::optional<std::vector<std::vector<std::size_t>>> level_isomorphism(const BratteliDiagram& a,
                                                                       const BratteliDiagram& b) {
    if (a.edges.size() != b.edges.size()) return std::nullopt;
    return IsoSearch(a, b).run();
}

}  // namespace clusteraf
