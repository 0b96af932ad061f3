#include "clusteraf/treequot.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <unordered_map>

#include "clusteraf/error.hpp"
#include "parallel.hpp"

namespace clusteraf {

namespace {

std::size_t checked_pow(std::size_t m, std::size_t n) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (__builtin_mul_overflow(r, m, &r)) return static_cast<std::size_t>(-1);
    }
    return r;
}

Path path_of(std::size_t index, std::size_t level, std::size_t m) {
    Path p(level);
    for (std::size_t i = level; i-- > 0;) {
        p[i] = index % m;
        index /= m;
    }
    return p;
}

std::vector<std::size_t> shift_perm(std::size_t m, std::size_t r) {
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = (i + r) % m;
    return perm;
}

Seed apply_shift(const Seed& s, std::size_t r, MatrixMatch mode) {
    const std::size_t m = s.rank();
    auto perm = shift_perm(m, r);
    Seed out;
    out.cluster.assign(m, LaurentPoly(m));
    for (std::size_t i = 0; i < m; ++i) out.cluster[perm[i]] = relabel(s.cluster[i], perm);
    out.matrix = mode == MatrixMatch::Conjugated ? s.matrix.relabeled(perm) : s.matrix;
    return out;
}

std::string seed_key(const Seed& s) {
    std::string k = s.matrix.to_string();
    for (const auto& x : s.cluster) {
        k += '|';
        k += x.to_string();
    }
    return k;
}

std::string canonical_key(const Seed& s, MatrixMatch mode) {
    std::string best;
    for (std::size_t r = 0; r < s.rank(); ++r) {
        std::string k = seed_key(apply_shift(s, r, mode));
        if (r == 0 || k < best) best = std::move(k);
    }
    return best;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

// Seeds reached from a generic seed over the matrix at a common ancestor.
class RelativeSeeds {
public:
    explicit RelativeSeeds(const ExchangeMatrix& root) : root_(root) {}

    const ExchangeMatrix& matrix_at(const Path& prefix) {
        auto it = matrices_.find(prefix);
        if (it != matrices_.end()) return it->second;
        ExchangeMatrix b = prefix.empty() ? root_ : matrix_mutate(matrix_at(Path(prefix.begin(), prefix.end() - 1)), prefix.back());
        return matrices_.emplace(prefix, std::move(b)).first->second;
    }

    const Seed& seed(const ExchangeMatrix& frame, const Path& suffix) {
        auto key = std::make_pair(frame, suffix);
        auto it = seeds_.find(key);
        if (it != seeds_.end()) return it->second;
        Seed s = suffix.empty() ? initial_seed(frame)
                                : seed_mutate(seed(frame, Path(suffix.begin(), suffix.end() - 1)), suffix.back());
        return seeds_.emplace(std::move(key), std::move(s)).first->second;
    }

private:
    ExchangeMatrix root_;
    std::map<Path, ExchangeMatrix> matrices_;
    std::map<std::pair<ExchangeMatrix, Path>, Seed> seeds_;
};

struct Level {
    std::size_t count = 0;                        // tree nodes on this level
    std::vector<std::size_t> vertex_of;           // per tree node
    std::vector<std::vector<std::size_t>> members;  // per vertex, sorted node indices
    std::vector<Seed> seeds;                      // absolute seeds when tracked
};

void check_rank(const Seed& root) {
    validate_seed(root);
    if (root.rank() < 2) throw ValidationError("mutation tree needs rank at least 2");
}

}  // namespace

std::string path_label(const Path& p, std::size_t rank) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (rank > 9 && i) s += '.';
        s += std::to_string(p[i] + 1);
    }
    return s;
}

std::size_t MutationTree::node_count() const {
    std::size_t n = 0;
    for (const auto& l : levels) n += l.size();
    return n;
}

std::size_t node_budget_from_env(std::size_t fallback) {
    const char* env = std::getenv("CLUSTER_AF_BUDGET");
    if (!env || !*env) return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) throw ParseError("CLUSTER_AF_BUDGET must be a positive integer");
    return static_cast<std::size_t>(v);
}

MutationTree build_mutation_tree(const Seed& root, std::size_t depth, std::size_t budget, unsigned threads) {
    check_rank(root);
    const std::size_t m = root.rank();
    std::size_t total = 0;
    for (std::size_t n = 0; n <= depth; ++n) {
        std::size_t w = checked_pow(m, n);
        if (w == static_cast<std::size_t>(-1) || __builtin_add_overflow(total, w, &total) || total > budget)
            throw BudgetExceeded("mutation tree of depth " + std::to_string(depth) + " exceeds node budget " +
                                 std::to_string(budget));
    }
    MutationTree t;
    t.levels.push_back({MutationTreeNode{root, 0, {}}});
    for (std::size_t n = 1; n <= depth; ++n) {
        const auto& prev = t.levels.back();
        std::vector<MutationTreeNode> next(prev.size() * m);
        detail::parallel_for(next.size(), threads, [&](std::size_t i) {
            const auto& parent = prev[i / m];
            std::size_t k = i % m;
            next[i].seed = seed_mutate(parent.seed, k);
            next[i].level = n;
            next[i].path = parent.path;
            next[i].path.push_back(k);
        });
        t.levels.push_back(std::move(next));
    }
    return t;
}

std::optional<std::size_t> cyclic_match(const Seed& a, const Seed& b, MatrixMatch mode) {
    if (a.rank() != b.rank()) throw ValidationError("l-equivalence between seeds of different rank");
    const std::size_t m = a.rank();
    for (std::size_t r = 0; r < m; ++r) {
        auto perm = shift_perm(m, r);
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) ok = relabel(a.cluster[i], perm) == b.cluster[perm[i]];
        if (!ok) continue;
        if (mode == MatrixMatch::Conjugated ? a.matrix.relabeled(perm) == b.matrix : a.matrix == b.matrix)
            return r;
    }
    return std::nullopt;
}

bool l_equivalent(const MutationTreeNode& a, const MutationTreeNode& b, MatrixMatch mode) {
    if (a.level != b.level) {
        if (a.seed.rank() != b.seed.rank()) throw ValidationError("l-equivalence between seeds of different rank");
        return false;
    }
    return cyclic_match(a.seed, b.seed, mode).has_value();
}

std::string to_string(MergePolicy p) {
    switch (p) {
        case MergePolicy::FigureFaithful: return "figure-faithful";
        case MergePolicy::Literal: return "literal";
        case MergePolicy::Absolute: return "absolute";
    }
    return "?";
}

MergePolicy parse_policy(const std::string& s) {
    if (s == "figure-faithful") return MergePolicy::FigureFaithful;
    if (s == "literal") return MergePolicy::Literal;
    if (s == "absolute") return MergePolicy::Absolute;
    throw ParseError("unknown policy '" + s + "' (expected figure-faithful, literal or absolute)");
}

TreeQuotient build_bratteli(const Seed& root, std::size_t depth, const QuotientOptions& opt) {
    check_rank(root);
    if (depth < 1) throw ValidationError("build_bratteli needs depth at least 1");
    const std::size_t m = root.rank();
    const bool track_seeds = opt.policy != MergePolicy::FigureFaithful;

    TreeQuotient out;
    out.policy = opt.policy;
    out.match = opt.match;
    RelativeSeeds rel(root.matrix);

    Level cur;
    cur.count = 1;
    cur.vertex_of = {0};
    cur.members = {{0}};
    if (track_seeds) cur.seeds = {root};

    auto record_level = [&](const Level& l, std::size_t n, std::vector<MergeRecord> merges) {
        LevelQuotient q;
        q.level = n;
        for (const auto& mem : l.members) {
            std::vector<Path> cls;
            for (std::size_t idx : mem) cls.push_back(path_of(idx, n, m));
            q.classes.push_back(std::move(cls));
        }
        q.merges = std::move(merges);
        out.quotients.push_back(std::move(q));
        out.diagram.widths.push_back(l.members.size());
    };
    record_level(cur, 0, {});

    std::size_t total = 1;
    for (std::size_t n = 1; n <= depth; ++n) {
        std::size_t count;
        if (__builtin_mul_overflow(cur.count, m, &count) || __builtin_add_overflow(total, count, &total) ||
            total > opt.budget) {
            out.diagram.incomplete = true;
            break;
        }
        Level next;
        next.count = count;
        if (track_seeds) {
            next.seeds.resize(count);
            detail::parallel_for(count, opt.threads,
                                 [&](std::size_t i) { next.seeds[i] = seed_mutate(cur.seeds[i / m], i % m); });
        }
        std::vector<MergeRecord> merges;

        if (opt.policy == MergePolicy::Absolute) {
            std::vector<std::string> keys(count);
            detail::parallel_for(count, opt.threads,
                                 [&](std::size_t i) { keys[i] = canonical_key(next.seeds[i], opt.match); });
            std::unordered_map<std::string, std::size_t> first;
            next.vertex_of.resize(count);
            for (std::size_t i = 0; i < count; ++i) {
                auto [it, fresh] = first.try_emplace(keys[i], next.members.size());
                if (fresh) {
                    next.members.push_back({i});
                } else {
                    std::size_t v = it->second;
                    std::size_t rep = next.members[v].front();
                    MergeRecord rec{path_of(rep, n, m), path_of(i, n, m), path_of(rep, n, m), path_of(i, n, m), 0};
                    rec.shift = *cyclic_match(next.seeds[rep], next.seeds[i], opt.match);
                    merges.push_back(std::move(rec));
                    next.members[v].push_back(i);
                }
                next.vertex_of[i] = it->second;
            }
        } else {
            // slot j*m + k is child k of previous vertex j
            const std::size_t w = cur.members.size();
            auto slot_members = [&](std::size_t slot) {
                std::vector<std::size_t> r;
                for (std::size_t idx : cur.members[slot / m]) r.push_back(idx * m + slot % m);
                return r;
            };
            UnionFind uf(w * m);
            for (std::size_t j = 0; j + 1 < w; ++j) {
                std::size_t sa = j * m + (m - 1), sb = (j + 1) * m;
                auto ma = slot_members(sa), mb = slot_members(sb);
                std::optional<MergeRecord> found;
                for (std::size_t pa : ma) {
                    Path pp = path_of(pa, n, m);
                    for (std::size_t qb : mb) {
                        Path qq = path_of(qb, n, m);
                        auto split = std::mismatch(pp.begin(), pp.end(), qq.begin()).first - pp.begin();
                        Path w_prefix(pp.begin(), pp.begin() + split);
                        const ExchangeMatrix& frame = rel.matrix_at(w_prefix);
                        const Seed& sp = rel.seed(frame, Path(pp.begin() + split, pp.end()));
                        const Seed& sq = rel.seed(frame, Path(qq.begin() + split, qq.end()));
                        if (auto r = cyclic_match(sp, sq, opt.match)) {
                            found = MergeRecord{path_of(ma.front(), n, m), path_of(mb.front(), n, m), pp, qq, *r};
                            break;
                        }
                    }
                    if (found) break;
                }
                if (found) {
                    uf.unite(sa, sb);
                    merges.push_back(std::move(*found));
                }
            }
            if (opt.policy == MergePolicy::Literal) {
                std::unordered_map<std::string, std::size_t> seen;  // seed -> first node index
                std::vector<std::size_t> slot_of(count);
                for (std::size_t s = 0; s < w * m; ++s)
                    for (std::size_t idx : slot_members(s)) slot_of[idx] = s;
                for (std::size_t s = 0; s < w * m; ++s) {
                    for (std::size_t idx : slot_members(s)) {
                        auto [it, fresh] = seen.try_emplace(seed_key(next.seeds[idx]), idx);
                        if (fresh) continue;
                        std::size_t other = slot_of[it->second];
                        if (uf.unite(other, s)) {
                            merges.push_back(MergeRecord{path_of(slot_members(other).front(), n, m),
                                                         path_of(slot_members(s).front(), n, m),
                                                         path_of(it->second, n, m), path_of(idx, n, m), 0});
                        }
                    }
                }
            }
            std::map<std::size_t, std::size_t> root_to_vertex;
            next.vertex_of.assign(count, 0);
            for (std::size_t s = 0; s < w * m; ++s) {
                auto [it, fresh] = root_to_vertex.try_emplace(uf.find(s), next.members.size());
                if (fresh) next.members.emplace_back();
                for (std::size_t idx : slot_members(s)) {
                    next.members[it->second].push_back(idx);
                    next.vertex_of[idx] = it->second;
                }
            }
            for (auto& mem : next.members) std::sort(mem.begin(), mem.end());
        }

        // Edge multiplicities, read off from each member separately.
        BratteliDiagram::Matrix e(cur.members.size(), std::vector<std::int64_t>(next.members.size(), 0));
        for (std::size_t u = 0; u < cur.members.size(); ++u) {
            std::vector<std::int64_t> row(next.members.size(), 0);
            bool first = true;
            for (std::size_t idx : cur.members[u]) {
                std::vector<std::int64_t> r(next.members.size(), 0);
                for (std::size_t k = 0; k < m; ++k) ++r[next.vertex_of[idx * m + k]];
                if (first) {
                    row = r;
                    first = false;
                } else if (r != row) {
                    out.representative_independent = false;
                }
            }
            e[u] = std::move(row);
        }
        out.diagram.edges.push_back(std::move(e));
        if (!track_seeds) next.seeds.clear();
        cur = std::move(next);
        record_level(cur, n, std::move(merges));
    }
    out.diagram.validate();
    return out;
}

}  // namespace clusteraf
