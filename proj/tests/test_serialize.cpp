#include <doctest.h>

#include "clusteraf/error.hpp"
#include "clusteraf/serialize.hpp"

using namespace clusteraf;

namespace {

template <class T, class F>
void round_trip(const T& v, F from) {
    Json j = to_json(v);
    T back = from(Json::parse(j.dump()));
    CHECK(back == v);
    CHECK(to_json(back) == j);
}

}  // namespace

TEST_CASE("round trips") {
    round_trip(markov_matrix(), matrix_from_json);
    round_trip(to_quiver(markov_matrix()), quiver_from_json);
    Seed s = seed_mutate_word(initial_seed(markov_matrix()), std::vector<std::size_t>{0, 1, 2});
    round_trip(s, seed_from_json);
    for (auto f : {torus_one_puncture, sphere_three_punctures, sphere_four_punctures, torus_two_punctures,
                   sphere_five_punctures})
        round_trip(f(), triangulation_from_json);
    auto t = torus_one_puncture();
    round_trip(flip(t, make_lambda_lengths(t, {3, 4, 5}), 1).lambdas, lambdas_from_json);
    auto f = farey_diagram(4);
    round_trip(f.diagram, diagram_from_json);
    VertexSet v = VertexSet::empty(f.diagram);
    v.insert(2, 1);
    v.insert(4, 8);
    round_trip(v, vertex_set_from_json);
    round_trip(jp_expand(std::vector<mpq_class>{mpq_class(5, 7), mpq_class(4, 7)}, 9), expansion_from_json);
}

TEST_CASE("quotient round trip") {
    auto s = initial_seed(markov_matrix());
    auto q = build_bratteli(s, 3);
    Json j = to_json(q, 3);
    CHECK(j["levels"] == Json::array({1, 3, 7, 15}));
    auto back = quotient_from_json(Json::parse(j.dump()));
    CHECK(back.diagram == q.diagram);
    CHECK(to_json(back, 3) == j);
    auto r6 = build_bratteli(initial_seed(ExchangeMatrix::circulant({0, 2, 0, 0, 0, -2})), 1);
    CHECK(to_json(quotient_from_json(to_json(r6, 6)), 6) == to_json(r6, 6));
}

TEST_CASE("seed files") {
    Json j = Json::parse(R"({"matrix": [[0, 2, -2], [-2, 0, 2], [2, -2, 0]]})");
    CHECK(seed_from_json(j) == initial_seed(markov_matrix()));
    j["cluster"] = Json::array({"x1", "x2", "x1^2*x3^-1 + x2^2*x3^-1"});
    CHECK(seed_from_json(j).cluster[2] == seed_mutate(initial_seed(markov_matrix()), 2).cluster[2]);
    CHECK_THROWS_AS(seed_from_json(Json::parse(R"({"matrix": [[0, 1], [1, 0]]})")), ValidationError);
    CHECK_THROWS_AS(seed_from_json(Json::parse(R"({"matrix": "no"})")), ParseError);
    CHECK_THROWS_AS(seed_from_json(Json::parse(R"({"cluster": []})")), ParseError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/seed.json"), ParseError);
}

TEST_CASE("path labels") {
    CHECK(parse_path_label("13", 3) == Path{0, 2});
    CHECK(parse_path_label("", 3).empty());
    CHECK(parse_path_label("1.10", 10) == Path{0, 9});
    CHECK_THROWS_AS(parse_path_label("14", 3), ValidationError);
    CHECK_THROWS_AS(parse_path_label("1a", 3), ParseError);
}

TEST_CASE("dot output") {
    auto f = farey_diagram(2);
    std::string dot = to_dot(f.diagram);
    CHECK(dot.find("rank=same;") != std::string::npos);
    CHECK(dot.find("v1_0 -> v2_1;") != std::string::npos);
    BratteliDiagram d{{1, 1}, {{{2}}}};
    CHECK(to_dot(d, {{"a\"b"}}).find("label=\"2\"") != std::string::npos);
    CHECK(to_dot(d, {{"a\"b"}}).find("a\\\"b") != std::string::npos);
}
