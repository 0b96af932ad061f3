#include <doctest.h>

#include <random>

#include "clusteraf/error.hpp"
#include "clusteraf/surface.hpp"

using namespace clusteraf;

namespace {

std::vector<Triangulation> flippable_surfaces() {
    return {torus_one_puncture(), sphere_four_punctures(), torus_two_punctures(), sphere_five_punctures()};
}

// Positive rationals meeting the initial relations, when every relation has
// a side that no other relation mentions (solved linearly) or has the torus
// shape k^2 = a^2 + b^2 (a Pythagorean triple).
std::optional<LambdaLengths> consistent_lengths(const Triangulation& t, std::mt19937_64& rng) {
    auto rels = initial_relations(t);
    std::uniform_int_distribution<int> v(2, 12);
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<mpq_class> x(t.arcs);
        for (auto& e : x) e = v(rng);
        std::vector<int> uses(t.arcs, 0);
        for (const auto& r : rels) {
            for (auto s : r.sides) ++uses[s];
            uses[r.diagonals[0]] += 2;
        }
        bool ok = true;
        for (const auto& r : rels) {
            std::size_t k = r.diagonals[0];
            const auto& s = r.sides;
            if (rels.size() == 1 && s[0] == s[2] && s[1] == s[3]) {
                int m = v(rng) + 1, n = v(rng) % m + 1;
                if (m == n) ++m;
                x[s[0]] = m * m - n * n;
                x[s[1]] = 2 * m * n;
                x[k] = m * m + n * n;
                continue;
            }
            int free = -1;
            for (int i = 0; i < 4 && free < 0; ++i)
                if (uses[s[i]] == 1) free = i;
            if (free < 0) return std::nullopt;
            std::size_t a = s[free], c = s[(free + 2) % 4], b = s[(free + 1) % 4], d = s[(free + 3) % 4];
            x[a] = (x[k] * x[k] - x[b] * x[d]) / x[c];
            if (x[a] <= 0) ok = false;
        }
        if (!ok) continue;
        auto l = make_lambda_lengths(t, x);
        if (l.relations_hold()) return l;
    }
    return std::nullopt;
}

std::vector<mpq_class> random_point(std::mt19937_64& rng, std::size_t m) {
    std::uniform_int_distribution<int> n(1, 50), d(1, 7);
    std::vector<mpq_class> p;
    for (std::size_t i = 0; i < m; ++i) {
        mpq_class q(n(rng), d(rng));
        q.canonicalize();
        p.push_back(q);
    }
    return p;
}

}  // namespace

TEST_CASE("surface parameters") {
    auto p = surface_params(1, 1);
    CHECK(p.m == 3);
    CHECK(p.d == 2);
    CHECK(surface_params(0, 4).m == 6);
    CHECK_THROWS_AS(surface_params(0, 2), ValidationError);
    CHECK_THROWS_AS(surface_params(1, 0), ValidationError);
    CHECK(pairs_for_rank(3) == std::vector<std::pair<int, int>>{{0, 3}, {1, 1}});
    CHECK(pairs_for_rank(9) == std::vector<std::pair<int, int>>{{0, 5}, {1, 3}, {2, 1}});
    CHECK_THROWS_AS(pairs_for_rank(4), ValidationError);
}

TEST_CASE("once-punctured torus gives the Markov matrix") {
    auto t = torus_one_puncture();
    CHECK(bt_from_triangulation(t) == markov_matrix());
    CHECK(t.puncture_count() == 1);
    for (std::size_t a = 0; a < 3; ++a) CHECK(t.arc_endpoints(a) == std::pair<std::size_t, std::size_t>{0, 0});
    // the same triangles listed clockwise
    Triangulation cw{1, 1, 3, {Triangle{{2, 0, 1}, true}, Triangle{{0, 1, 2}, true}}};
    CHECK(bt_from_triangulation(cw) == markov_matrix());
}

TEST_CASE("triangulation validation") {
    auto t = torus_one_puncture();
    Triangulation wrong_count = t;
    wrong_count.arcs = 4;
    CHECK_THROWS_AS(wrong_count.validate(), ValidationError);
    Triangulation folded{0, 3, 3, {Triangle{{0, 0, 1}, true}, Triangle{{1, 2, 2}, true}}};
    CHECK_THROWS_AS(folded.validate(), ValidationError);
    Triangulation genus = t;
    genus.g = 0;
    genus.n = 3;
    CHECK_THROWS_AS(genus.validate(), ValidationError);
    Triangulation range{1, 1, 3, {Triangle{{0, 1, 5}, true}, Triangle{{0, 1, 2}, true}}};
    CHECK_THROWS_AS(range.validate(), ValidationError);
    for (const auto& s : flippable_surfaces()) CHECK_NOTHROW(s.validate());
    CHECK(sphere_four_punctures().puncture_count() == 4);
    CHECK(sphere_five_punctures().puncture_count() == 5);
    CHECK(torus_two_punctures().puncture_count() == 2);
}

TEST_CASE("flips agree with matrix mutation") {
    std::mt19937_64 rng(17);
    for (auto t : flippable_surfaces()) {
        for (std::size_t k = 0; k < t.arcs; ++k) {
            REQUIRE(is_flippable(t, k));
            auto f = flip(t, k);
            CHECK(bt_from_triangulation(f) == matrix_mutate(bt_from_triangulation(t), k));
            CHECK(bt_from_triangulation(flip(f, k)) == bt_from_triangulation(t));
        }
        // random walks in the flip graph
        std::uniform_int_distribution<std::size_t> pick(0, t.arcs - 1);
        for (int step = 0; step < 25; ++step) {
            std::size_t k = pick(rng);
            if (!is_flippable(t, k)) continue;
            auto b = matrix_mutate(bt_from_triangulation(t), k);
            t = flip(t, k);
            CHECK(bt_from_triangulation(t) == b);
        }
    }
}

TEST_CASE("thrice-punctured sphere admits no flip") {
    auto t = sphere_three_punctures();
    for (std::size_t k = 0; k < 3; ++k) CHECK_FALSE(is_flippable(t, k));
    CHECK_THROWS_AS(flip(t, 0), ValidationError);
    CHECK(initial_relations(t).empty());
    CHECK(bt_from_triangulation(t) == ExchangeMatrix({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
}

TEST_CASE("Ptolemy relations on the torus") {
    auto t = torus_one_puncture();
    auto l = make_lambda_lengths(t, {3, 4, 5});
    REQUIRE(l.relations.size() == 1);
    CHECK(l.relations_hold());
    CHECK(make_lambda_lengths(t, {3, 4, 6}).residuals() == std::vector<mpq_class>{11});
    CHECK_THROWS_AS(make_lambda_lengths(t, {3, 4}), ValidationError);
    CHECK_THROWS_AS(make_lambda_lengths(t, {3, 0, 5}), ValidationError);
    auto r = flip(t, l, 0);
    CHECK(r.lambdas.at(0) == mpq_class(41, 3));
    CHECK(r.lambdas.relations_hold());
    CHECK(r.lambdas.registry.size() == 4);
    CHECK(ptolemy_flip_value(1, 2, 3, 4, 2) == mpq_class(11, 2));
    CHECK_THROWS_AS(ptolemy_flip_value(1, 2, 3, 4, 0), ValidationError);
}

TEST_CASE("Ptolemy relations survive flip sequences") {
    std::mt19937_64 rng(23);
    for (const auto& start : {torus_one_puncture(), torus_two_punctures()}) {
        auto l0 = consistent_lengths(start, rng);
        REQUIRE(l0.has_value());
        auto t = start;
        auto l = *l0;
        std::uniform_int_distribution<std::size_t> pick(0, t.arcs - 1);
        for (int step = 0; step < 12; ++step) {
            std::size_t k = pick(rng);
            if (!is_flippable(t, k)) continue;
            auto r = flip(t, l, k);
            t = r.triangulation;
            l = r.lambdas;
            CHECK(l.relations_hold());
            CHECK(l.positive());
        }
    }
}

TEST_CASE("flips keep residuals of arbitrary lengths") {
    std::mt19937_64 rng(43);
    for (const auto& start : flippable_surfaces()) {
        auto t = start;
        auto l = make_lambda_lengths(t, random_point(rng, t.arcs));
        auto before = l.residuals();
        std::uniform_int_distribution<std::size_t> pick(0, t.arcs - 1);
        for (int step = 0; step < 10; ++step) {
            std::size_t k = pick(rng);
            if (!is_flippable(t, k)) continue;
            auto r = flip(t, l, k);
            auto res = r.lambdas.residuals();
            REQUIRE(res.size() == l.relations.size() + 1);
            CHECK(std::vector<mpq_class>(res.begin(), res.begin() + static_cast<std::ptrdiff_t>(before.size())) == before);
            CHECK(res.back() == 0);
            CHECK(r.lambdas.positive());
            t = r.triangulation;
            l = r.lambdas;
            before = res;
        }
    }
}

TEST_CASE("Jacobian rank of the relations") {
    std::mt19937_64 rng(29);
    std::pair<Triangulation, std::size_t> cases[] = {
        {sphere_four_punctures(), 4}, {torus_two_punctures(), 2}, {sphere_five_punctures(), 5},
        {torus_one_puncture(), 1},    {sphere_three_punctures(), 0}};
    for (const auto& [t, n] : cases) {
        auto l = make_lambda_lengths(t, std::vector<mpq_class>(t.arcs, 1));
        CHECK(ptolemy_jacobian_rank(l, random_point(rng, t.arcs)) == n);
    }
    auto t = torus_one_puncture();
    auto r = flip(t, make_lambda_lengths(t, {3, 4, 5}), 2);
    CHECK_THROWS_AS(ptolemy_jacobian_rank(r.lambdas, random_point(rng, 3)), ValidationError);
    CHECK_THROWS_AS(ptolemy_jacobian_rank(make_lambda_lengths(t, {3, 4, 5}), random_point(rng, 2)), ValidationError);
}
