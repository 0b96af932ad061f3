#include "clusteraf/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "clusteraf/error.hpp"

namespace clusteraf {

namespace {

struct Side {
    std::size_t tri, pos;  // position in clockwise order
};

std::vector<std::vector<Side>> sides_of(const Triangulation& t) {
    std::vector<std::vector<Side>> s(t.arcs);
    for (std::size_t i = 0; i < t.triangles.size(); ++i) {
        auto cw = t.triangles[i].cw();
        for (std::size_t p = 0; p < 3; ++p) {
            if (cw[p] >= t.arcs) throw ValidationError("triangle " + std::to_string(i + 1) + " names arc " +
                                                       std::to_string(cw[p] + 1) + " beyond the arc count");
            s[cw[p]].push_back({i, p});
        }
    }
    return s;
}

struct UnionFind {
    std::vector<std::size_t> p;
    explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

std::array<std::size_t, 3> rotate_to(const std::array<std::size_t, 3>& cw, std::size_t arc) {
    for (std::size_t r = 0; r < 3; ++r)
        if (cw[r] == arc) return {cw[r], cw[(r + 1) % 3], cw[(r + 2) % 3]};
    throw InternalError("arc missing from its triangle");
}

}  // namespace

SurfaceParams surface_params(int g, int n) {
    if (g < 0 || n < 1 || 2 * g - 2 + n <= 0)
        throw ValidationError("surface (" + std::to_string(g) + "," + std::to_string(n) +
                              ") needs g >= 0, n >= 1 and 2g-2+n > 0");
    return {g, n, 6 * g - 6 + 3 * n, 6 * g - 6 + 2 * n};
}

std::vector<std::pair<int, int>> pairs_for_rank(int m) {
    if (m <= 0 || m % 3 != 0) throw ValidationError("rank " + std::to_string(m) + " is not a positive multiple of 3");
    std::vector<std::pair<int, int>> out;
    // 6g - 6 + 3n = m  <=>  2g + n = m/3 + 2
    int s = m / 3 + 2;
    for (int g = 0; 2 * g < s; ++g) {
        int n = s - 2 * g;
        if (n >= 1 && 2 * g - 2 + n > 0) out.emplace_back(g, n);
    }
    if (out.empty()) throw ValidationError("no surface has rank " + std::to_string(m));
    return out;
}

std::vector<std::array<std::size_t, 3>> Triangulation::corner_punctures() const {
    auto sides = sides_of(*this);
    const std::size_t T = triangles.size();
    UnionFind uf(3 * T);
    auto corner = [](std::size_t tri, std::size_t i) { return 3 * tri + (i % 3); };
    for (std::size_t a = 0; a < arcs; ++a) {
        if (sides[a].size() != 2) continue;
        auto [t1, i] = sides[a][0];
        auto [t2, j] = sides[a][1];
        // side i of t1 runs from corner i-1 to corner i; the glued side runs backwards
        uf.unite(corner(t1, i + 2), corner(t2, j));
        uf.unite(corner(t1, i), corner(t2, j + 2));
    }
    std::map<std::size_t, std::size_t> ids;
    std::vector<std::array<std::size_t, 3>> out(T);
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t i = 0; i < 3; ++i) {
            auto root = uf.find(corner(t, i));
            auto [it, fresh] = ids.try_emplace(root, ids.size());
            out[t][i] = it->second;
        }
    return out;
}

std::size_t Triangulation::puncture_count() const {
    std::set<std::size_t> s;
    for (const auto& c : corner_punctures()) s.insert(c.begin(), c.end());
    return s.size();
}

std::pair<std::size_t, std::size_t> Triangulation::arc_endpoints(std::size_t arc) const {
    auto sides = sides_of(*this);
    if (arc >= arcs || sides[arc].empty()) throw ValidationError("arc out of range");
    auto c = corner_punctures();
    auto [t, i] = sides[arc][0];
    std::size_t x = c[t][(i + 2) % 3], y = c[t][i];
    return {std::min(x, y), std::max(x, y)};
}

void Triangulation::validate() const {
    SurfaceParams sp = surface_params(g, n);
    if (static_cast<int>(arcs) != sp.m)
        throw ValidationError("S_{" + std::to_string(g) + "," + std::to_string(n) + "} needs " + std::to_string(sp.m) +
                              " arcs, got " + std::to_string(arcs));
    if (3 * triangles.size() != 2 * arcs)
        throw ValidationError("triangle count must be 2m/3 = " + std::to_string(2 * arcs / 3));
    for (std::size_t i = 0; i < triangles.size(); ++i) {
        const auto& a = triangles[i].arcs;
        if (a[0] == a[1] || a[1] == a[2] || a[0] == a[2])
            throw ValidationError("triangle " + std::to_string(i + 1) +
                                  " repeats an arc (self-folded triangles are not supported)");
    }
    auto sides = sides_of(*this);
    for (std::size_t a = 0; a < arcs; ++a)
        if (sides[a].size() != 2)
            throw ValidationError("arc " + std::to_string(a + 1) + " lies on " + std::to_string(sides[a].size()) +
                                  " triangle sides instead of 2");
    std::size_t p = puncture_count();
    if (static_cast<int>(p) != n)
        throw ValidationError("gluing produces " + std::to_string(p) + " punctures, expected " + std::to_string(n));
    long euler = static_cast<long>(p) - static_cast<long>(arcs) + static_cast<long>(triangles.size());
    if (euler != 2 - 2 * g) throw ValidationError("Euler characteristic does not match the genus");
}

ExchangeMatrix bt_from_triangulation(const Triangulation& t) {
    t.validate();
    std::vector<ExchangeMatrix::Row> b(t.arcs, ExchangeMatrix::Row(t.arcs, 0));
    for (const auto& tri : t.triangles) {
        auto cw = tri.cw();
        for (std::size_t p = 0; p < 3; ++p) {
            std::size_t i = cw[p], j = cw[(p + 1) % 3];
            b[i][j] += 1;
            b[j][i] -= 1;
        }
    }
    return ExchangeMatrix(std::move(b));
}

std::optional<Quadrilateral> quadrilateral(const Triangulation& t, std::size_t arc) {
    if (arc >= t.arcs) throw ValidationError("arc " + std::to_string(arc + 1) + " out of range");
    auto sides = sides_of(t);
    if (sides[arc].size() != 2 || sides[arc][0].tri == sides[arc][1].tri) return std::nullopt;
    std::size_t t1 = sides[arc][0].tri, t2 = sides[arc][1].tri;
    auto x = rotate_to(t.triangles[t1].cw(), arc), y = rotate_to(t.triangles[t2].cw(), arc);
    Quadrilateral q{arc, {x[1], x[2], y[1], y[2]}, t1, t2};
    // the new triangles (k, b, c) and (k, d, a) must not repeat an arc
    if (q.sides[1] == q.sides[2] || q.sides[3] == q.sides[0]) return std::nullopt;
    return q;
}

bool is_flippable(const Triangulation& t, std::size_t arc) { return quadrilateral(t, arc).has_value(); }

Triangulation flip(const Triangulation& t, std::size_t k) {
    auto q = quadrilateral(t, k);
    if (!q) throw ValidationError("arc " + std::to_string(k + 1) + " is not flippable");
    Triangulation r = t;
    auto [a, b, c, d] = q->sides;
    r.triangles[q->t1] = Triangle{{k, b, c}, true};
    r.triangles[q->t2] = Triangle{{k, d, a}, true};
    return r;
}

mpq_class ptolemy_flip_value(const mpq_class& a, const mpq_class& b, const mpq_class& c, const mpq_class& d,
                             const mpq_class& k) {
    if (k == 0) throw ValidationError("lambda length must be nonzero");
    return (a * c + b * d) / k;
}

std::vector<mpq_class> LambdaLengths::current() const {
    std::vector<mpq_class> v;
    for (auto s : slot) v.push_back(registry[s]);
    return v;
}

std::vector<mpq_class> LambdaLengths::residuals() const {
    std::vector<mpq_class> r;
    for (const auto& rel : relations) {
        const auto& s = rel.sides;
        r.push_back(registry[rel.diagonals[0]] * registry[rel.diagonals[1]] -
                    registry[s[0]] * registry[s[2]] - registry[s[1]] * registry[s[3]]);
    }
    return r;
}

bool LambdaLengths::relations_hold() const {
    auto r = residuals();
    return std::all_of(r.begin(), r.end(), [](const mpq_class& x) { return x == 0; });
}

bool LambdaLengths::positive() const {
    return std::all_of(registry.begin(), registry.end(), [](const mpq_class& x) { return x > 0; });
}

std::vector<PtolemyRelation> initial_relations(const Triangulation& t) {
    t.validate();
    const std::size_t n = static_cast<std::size_t>(t.n);
    std::vector<std::vector<std::size_t>> candidates(n);
    std::vector<std::optional<Quadrilateral>> quads(t.arcs);
    for (std::size_t a = t.arcs; a-- > 0;) {
        quads[a] = quadrilateral(t, a);
        if (!quads[a]) continue;
        auto [x, y] = t.arc_endpoints(a);
        candidates[x].push_back(a);
        if (y != x) candidates[y].push_back(a);
    }
    // distinct arcs for as many punctures as possible, larger indices first
    std::vector<std::optional<std::size_t>> owner(t.arcs);
    std::vector<std::optional<std::size_t>> pick(n);
    std::vector<bool> seen;
    auto augment = [&](auto&& self, std::size_t p) -> bool {
        for (auto a : candidates[p]) {
            if (seen[a]) continue;
            seen[a] = true;
            if (!owner[a] || self(self, *owner[a])) {
                owner[a] = p;
                pick[p] = a;
                return true;
            }
        }
        return false;
    };
    for (std::size_t p = 0; p < n; ++p) {
        seen.assign(t.arcs, false);
        augment(augment, p);
    }
    std::vector<PtolemyRelation> out;
    for (std::size_t p = 0; p < n; ++p)
        if (pick[p]) out.push_back(PtolemyRelation{quads[*pick[p]]->sides, {*pick[p], *pick[p]}});
    return out;
}

LambdaLengths make_lambda_lengths(const Triangulation& t, std::vector<mpq_class> values) {
    if (values.size() != t.arcs) throw ValidationError("need one lambda length per arc");
    for (const auto& v : values)
        if (v <= 0) throw ValidationError("lambda lengths must be positive");
    LambdaLengths l;
    l.registry = std::move(values);
    l.slot.resize(t.arcs);
    std::iota(l.slot.begin(), l.slot.end(), 0);
    l.relations = initial_relations(t);
    return l;
}

FlipResult flip(const Triangulation& t, const LambdaLengths& l, std::size_t k) {
    auto q = quadrilateral(t, k);
    if (!q) throw ValidationError("arc " + std::to_string(k + 1) + " is not flippable");
    if (l.slot.size() != t.arcs) throw ValidationError("lambda lengths do not match the triangulation");
    auto [a, b, c, d] = q->sides;
    FlipResult r{flip(t, k), l};
    mpq_class v = ptolemy_flip_value(l.at(a), l.at(b), l.at(c), l.at(d), l.at(k));
    std::size_t old = l.slot[k], fresh = r.lambdas.registry.size();
    r.lambdas.registry.push_back(v);
    r.lambdas.relations.push_back(PtolemyRelation{{l.slot[a], l.slot[b], l.slot[c], l.slot[d]}, {old, fresh}});
    r.lambdas.slot[k] = fresh;
    return r;
}

std::size_t ptolemy_jacobian_rank(const LambdaLengths& l, const std::vector<mpq_class>& point) {
    const std::size_t m = l.slot.size();
    if (point.size() != m) throw ValidationError("point needs one coordinate per arc");
    std::map<std::size_t, std::size_t> var;
    for (std::size_t a = 0; a < m; ++a) var[l.slot[a]] = a;
    auto v = [&](std::size_t reg) {
        auto it = var.find(reg);
        if (it == var.end()) throw ValidationError("relation refers to a retired arc");
        return it->second;
    };
    std::vector<std::vector<mpq_class>> jac;
    for (const auto& rel : l.relations) {
        std::vector<mpq_class> row(m, 0);
        // d0*d1 - s0*s2 - s1*s3
        std::size_t d0 = v(rel.diagonals[0]), d1 = v(rel.diagonals[1]);
        row[d0] += point[d1];
        row[d1] += point[d0];
        for (auto [x, y] : {std::pair{rel.sides[0], rel.sides[2]}, std::pair{rel.sides[1], rel.sides[3]}}) {
            std::size_t i = v(x), j = v(y);
            row[i] -= point[j];
            row[j] -= point[i];
        }
        jac.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < jac.size(); ++col) {
        std::size_t piv = rank;
        while (piv < jac.size() && jac[piv][col] == 0) ++piv;
        if (piv == jac.size()) continue;
        std::swap(jac[piv], jac[rank]);
        for (std::size_t r = 0; r < jac.size(); ++r) {
            if (r == rank || jac[r][col] == 0) continue;
            mpq_class f = jac[r][col] / jac[rank][col];
            for (std::size_t c = col; c < m; ++c) jac[r][c] -= f * jac[rank][c];
        }
        ++rank;
    }
    return rank;
}

namespace {

Triangulation make(int g, int n, std::size_t arcs, std::vector<std::array<std::size_t, 3>> tris, bool cw = true) {
    Triangulation t{g, n, arcs, {}};
    for (auto& a : tris) t.triangles.push_back(Triangle{{a[0] - 1, a[1] - 1, a[2] - 1}, cw});
    t.validate();
    return t;
}

}  // namespace

Triangulation torus_one_puncture() { return make(1, 1, 3, {{2, 1, 3}, {3, 2, 1}}, false); }
Triangulation sphere_three_punctures() { return make(0, 3, 3, {{1, 2, 3}, {1, 3, 2}}); }
Triangulation sphere_four_punctures() { return make(0, 4, 6, {{1, 4, 2}, {2, 6, 3}, {3, 5, 1}, {5, 6, 4}}); }
Triangulation torus_two_punctures() { return make(1, 2, 6, {{1, 4, 3}, {2, 5, 4}, {1, 6, 5}, {2, 3, 6}}); }
Triangulation sphere_five_punctures() {
    return make(0, 5, 9, {{1, 7, 2}, {2, 8, 3}, {3, 9, 1}, {5, 7, 4}, {6, 8, 5}, {4, 9, 6}});
}

}  // namespace clusteraf
