#include "clusteraf/exchange.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "clusteraf/error.hpp"

namespace clusteraf {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ValidationError("exchange matrix entry overflow");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ValidationError("exchange matrix entry overflow");
    return r;
}

void check_direction(std::size_t k, std::size_t m) {
    if (k >= m)
        throw ValidationError("mutation direction " + std::to_string(k + 1) + " out of range 1.." +
                              std::to_string(m));
}

}  // namespace

ExchangeMatrix::ExchangeMatrix(std::vector<Row> rows) : b_(std::move(rows)) {
    const std::size_t m = b_.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (b_[i].size() != m) throw ValidationError("exchange matrix is not square");
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (b_[i][i] != 0) throw ValidationError("exchange matrix has nonzero diagonal entry");
        for (std::size_t j = i + 1; j < m; ++j)
            if (b_[i][j] != -b_[j][i])
                throw ValidationError("exchange matrix is not skew-symmetric at (" + std::to_string(i + 1) +
                                      "," + std::to_string(j + 1) + ")");
    }
}

ExchangeMatrix ExchangeMatrix::zero(std::size_t m) {
    return ExchangeMatrix(std::vector<Row>(m, Row(m, 0)));
}

ExchangeMatrix ExchangeMatrix::circulant(const Row& first_row) {
    const std::size_t m = first_row.size();
    std::vector<Row> rows(m, Row(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) rows[i][j] = first_row[(j + m - i) % m];
    return ExchangeMatrix(std::move(rows));
}

ExchangeMatrix ExchangeMatrix::operator-() const {
    ExchangeMatrix r(*this);
    for (auto& row : r.b_)
        for (auto& v : row) v = -v;
    return r;
}

ExchangeMatrix ExchangeMatrix::relabeled(std::span<const std::size_t> perm) const {
    const std::size_t m = rank();
    if (perm.size() != m) throw ValidationError("relabeling length mismatch");
    ExchangeMatrix r(*this);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) r.b_[perm[i]][perm[j]] = b_[i][j];
    return r;
}

std::string ExchangeMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < b_.size(); ++i) {
        if (i) os << ",";
        os << "[";
        for (std::size_t j = 0; j < b_[i].size(); ++j) {
            if (j) os << ",";
            os << b_[i][j];
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

ExchangeMatrix markov_matrix() {
    return ExchangeMatrix({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
}

ExchangeMatrix matrix_mutate(const ExchangeMatrix& b, std::size_t k) {
    const std::size_t m = b.rank();
    check_direction(k, m);
    std::vector<ExchangeMatrix::Row> r = b.rows();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == k || j == k) {
                r[i][j] = -b(i, j);
                continue;
            }
            std::int64_t bik = b(i, k), bkj = b(k, j);
            std::int64_t s = checked_add(checked_mul(std::abs(bik), bkj), checked_mul(bik, std::abs(bkj)));
            if (s % 2 != 0) throw InternalError("odd correction term in matrix mutation");
            r[i][j] = checked_add(b(i, j), s / 2);
        }
    }
    return ExchangeMatrix(std::move(r));
}

void Quiver::validate() const {
    for (const auto& [ij, c] : arrows) {
        auto [i, j] = ij;
        if (i >= vertices || j >= vertices) throw ValidationError("quiver arrow endpoint out of range");
        if (i == j) throw ValidationError("quiver has a loop");
        if (c < 0) throw ValidationError("negative arrow multiplicity");
        if (c > 0 && count(j, i) > 0) throw ValidationError("quiver has a 2-cycle");
    }
}

std::int64_t Quiver::count(std::size_t i, std::size_t j) const {
    auto it = arrows.find({i, j});
    return it == arrows.end() ? 0 : it->second;
}

Quiver quiver_mutate(const Quiver& q, std::size_t k) {
    check_direction(k, q.vertices);
    q.validate();
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> a = q.arrows;
    // (i) compose every path i -> k -> j into a new arrow i -> j
    for (const auto& [in, cin] : q.arrows) {
        if (in.second != k || cin == 0) continue;
        for (const auto& [out, cout] : q.arrows) {
            if (out.first != k || cout == 0) continue;
            a[{in.first, out.second}] += checked_mul(cin, cout);
        }
    }
    // (ii) reverse arrows at k
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> b;
    for (const auto& [ij, c] : a) {
        if (c == 0) continue;
        auto [i, j] = ij;
        if (i == k || j == k)
            b[{j, i}] += c;
        else
            b[{i, j}] += c;
    }
    // (iii) cancel 2-cycles
    Quiver r{q.vertices, {}};
    for (const auto& [ij, c] : b) {
        auto [i, j] = ij;
        auto back = b.find({j, i});
        std::int64_t rc = back == b.end() ? 0 : back->second;
        std::int64_t keep = c - std::min(c, rc);
        if (keep > 0) r.arrows[{i, j}] = keep;
    }
    return r;
}

ExchangeMatrix to_matrix(const Quiver& q) {
    q.validate();
    std::vector<ExchangeMatrix::Row> rows(q.vertices, ExchangeMatrix::Row(q.vertices, 0));
    for (const auto& [ij, c] : q.arrows) {
        rows[ij.first][ij.second] += c;
        rows[ij.second][ij.first] -= c;
    }
    return ExchangeMatrix(std::move(rows));
}

Quiver to_quiver(const ExchangeMatrix& b) {
    Quiver q{b.rank(), {}};
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t j = 0; j < b.rank(); ++j)
            if (b(i, j) > 0) q.arrows[{i, j}] = b(i, j);
    return q;
}

Seed initial_seed(const ExchangeMatrix& b) {
    Seed s;
    s.matrix = b;
    for (std::size_t i = 0; i < b.rank(); ++i) s.cluster.push_back(LaurentPoly::variable(b.rank(), i));
    return s;
}

void validate_seed(const Seed& s) {
    if (s.cluster.size() != s.matrix.rank()) throw ValidationError("cluster length differs from matrix rank");
    for (const auto& x : s.cluster)
        if (x.arity() != s.matrix.rank()) throw ValidationError("cluster variable arity differs from rank");
}

Seed seed_mutate(const Seed& s, std::size_t k) {
    const std::size_t m = s.rank();
    check_direction(k, m);
    LaurentPoly plus = LaurentPoly::constant(m, 1), minus = LaurentPoly::constant(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        std::int64_t bik = s.matrix(i, k);
        if (bik > 0) plus *= s.cluster[i].pow(static_cast<unsigned>(bik));
        if (bik < 0) minus *= s.cluster[i].pow(static_cast<unsigned>(-bik));
    }
    auto q = div_exact(plus + minus, s.cluster[k]);
    if (!q)
        throw InternalError("exchange relation at direction " + std::to_string(k + 1) +
                            " is not a Laurent polynomial");
    Seed r{s.cluster, matrix_mutate(s.matrix, k)};
    r.cluster[k] = std::move(*q);
    return r;
}

Seed seed_mutate_word(Seed s, std::span<const std::size_t> word) {
    for (std::size_t k : word) s = seed_mutate(s, k);
    return s;
}

ExchangeMatrix permutation_canonical(const ExchangeMatrix& b) {
    std::vector<std::size_t> perm(b.rank());
    std::iota(perm.begin(), perm.end(), 0);
    ExchangeMatrix best = b;
    do {
        ExchangeMatrix c = b.relabeled(perm);
        if (c < best) best = c;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

MutationClass is_mutation_finite(const ExchangeMatrix& b, std::size_t bound, bool permutation_closure) {
    if (bound < 1) throw ValidationError("bound must be at least 1");
    auto key = [&](const ExchangeMatrix& x) { return permutation_closure ? permutation_canonical(x) : x; };
    std::set<ExchangeMatrix> seen;
    std::vector<ExchangeMatrix> orbit;
    std::deque<ExchangeMatrix> queue;
    seen.insert(key(b));
    orbit.push_back(b);
    queue.push_back(b);
    while (!queue.empty()) {
        ExchangeMatrix cur = queue.front();
        queue.pop_front();
        for (std::size_t k = 0; k < cur.rank(); ++k) {
            ExchangeMatrix next;
            try {
                next = matrix_mutate(cur, k);
            } catch (const ValidationError&) {
                return {false, orbit.size(), {}};  // entries outgrew 64 bits
            }
            if (!seen.insert(key(next)).second) continue;
            if (seen.size() > bound) return {false, bound, {}};
            orbit.push_back(next);
            queue.push_back(next);
        }
    }
    return {true, orbit.size(), std::move(orbit)};
}

}  // namespace clusteraf
