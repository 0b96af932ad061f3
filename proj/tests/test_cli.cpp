#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "clusteraf/serialize.hpp"

using namespace clusteraf;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(CLUSTERAF_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("bratteli command reports the merges") {
    auto r = run({"bratteli", "--seed", data("markov.json"), "--depth", "2", "--policy", "figure-faithful",
                  "--format", "json"});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["levels"] == Json::array({1, 3, 7}));
    CHECK(j["merges"] == Json::parse(R"([["mu13", "mu21"], ["mu23", "mu31"]])"));
    auto back = quotient_from_json(j);
    CHECK(to_json(back, 3) == j);
    auto lit = run({"bratteli", "--seed", data("markov.json"), "--depth", "2", "--policy", "literal"});
    CHECK(Json::parse(lit.out)["levels"] == Json::array({1, 3, 5}));
}

TEST_CASE("output is deterministic across runs and thread counts") {
    auto a = run({"bratteli", "--seed", data("markov.json"), "--depth", "4", "--threads", "1"});
    auto b = run({"bratteli", "--seed", data("markov.json"), "--depth", "4", "--threads", "4"});
    auto c = run({"bratteli", "--seed", data("markov.json"), "--depth", "4", "--threads", "4"});
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
    auto d1 = run({"tree", "--seed", data("rank6.json"), "--depth", "2", "--format", "dot"});
    auto d2 = run({"tree", "--seed", data("rank6.json"), "--depth", "2", "--format", "dot", "--threads", "3"});
    CHECK(d1.code == 0);
    CHECK(d1.out == d2.out);
}

TEST_CASE("jp and connes") {
    auto r = run({"jp", "--theta", "5/3", "--steps", "10"});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["finite"] == true);
    CHECK(j["digits"] == Json::parse("[[1],[2]]"));
    CHECK(expansion_from_json(j) == jp_expand(std::vector<mpq_class>{mpq_class(5, 3)}, 10));
    auto c = run({"connes", "--matrices", "2,1;1,1"});
    CHECK(c.code == 0);
    CHECK(c.out == "0.962423650119\n");
    auto p = run({"connes", "--matrices", "2,1;1,1", "--precision", "4"});
    CHECK(p.out == "0.9624\n");
    auto many = run({"connes", "--matrices", "1,1;0,1", "--matrices", "3,1;2,1 2,1;1,1", "--format", "json"});
    CHECK(Json::parse(many.out)["log_dilatations"].size() == 2);
}

TEST_CASE("surface commands") {
    auto t = run({"triangulate", "--seed", data("torus11.json"), "--lambdas", "3,4,5"});
    REQUIRE(t.code == 0);
    Json j = Json::parse(t.out);
    CHECK(matrix_from_json(j["matrix"]) == markov_matrix());
    CHECK(j["lambdas"]["relations_hold"] == true);
    auto f = run({"flip", "--seed", data("sphere04.json"), "--arc", "3"});
    CHECK(Json::parse(f.out)["mutation_agrees"] == true);
    auto s = run({"sigma", "--seed", data("torus11.json"), "--lambdas", "3,4,5", "--scale", "2"});
    Json sj = Json::parse(s.out);
    CHECK(sj["after"]["current"] == Json::array({"6", "8", "10"}));
    CHECK(sj["after"]["relations_hold"] == true);
    auto d = run({"sigma", "--lambdas", "1", "--t", "1"});
    CHECK(Json::parse(d.out)["values"] == Json::array({"2.718281828459"}));
}

TEST_CASE("farey and ideal commands") {
    auto f = run({"farey", "--depth", "3"});
    CHECK(Json::parse(f.out)["diagram"]["levels"] == Json::array({1, 2, 3, 5}));
    auto i = run({"ideal", "--theta", "-1/2+1/2*sqrt(5)", "--depth", "6"});
    REQUIRE(i.code == 0);
    Json j = Json::parse(i.out);
    CHECK(j["ideal_hereditary_saturated"] == true);
    CHECK(j["quotient_matches_af"] == true);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::Parse);
    CHECK(run({"bratteli", "--depth", "x"}).code == cli::Parse);
    CHECK(run({"jp", "--theta", "1/0"}).code == cli::Parse);
    CHECK(run({"bratteli", "--seed", "/nonexistent.json"}).code == cli::Parse);
    CHECK(run({"bratteli", "--seed", data("markov.json"), "--policy", "nope"}).code == cli::Parse);
    CHECK(run({"flip", "--seed", data("sphere03.json"), "--arc", "1"}).code == cli::Validation);
    CHECK(run({"mutate", "--seed", data("markov.json"), "--word", "4"}).code == cli::Validation);
    CHECK(run({"connes", "--matrices", "1,1;1,1"}).code == cli::Validation);
    CHECK(run({"mutate", "--seed", data("markov.json"), "--format", "dot"}).code == cli::Validation);
    auto b = run({"bratteli", "--seed", data("markov.json"), "--depth", "6", "--budget", "100"});
    CHECK(b.code == cli::Budget);
    CHECK(Json::parse(b.out)["diagram"]["incomplete"] == true);
    CHECK(run({"tree", "--seed", data("markov.json"), "--depth", "6", "--budget", "100"}).code == cli::Budget);
    ::setenv("CLUSTER_AF_BUDGET", "100", 1);
    CHECK(run({"tree", "--seed", data("markov.json"), "--depth", "6"}).code == cli::Budget);
    CHECK(run({"tree", "--seed", data("markov.json"), "--depth", "6", "--budget", "2000"}).code == 0);
    ::unsetenv("CLUSTER_AF_BUDGET");
    CHECK(run({"jp", "--theta", "0,1/2"}).code == cli::Degenerate);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("mutate command") {
    auto r = run({"mutate", "--seed", data("markov.json"), "--word", "1,2"});
    REQUIRE(r.code == 0);
    Seed s = seed_from_json(Json::parse(r.out));
    CHECK(s == seed_mutate_word(initial_seed(markov_matrix()), std::vector<std::size_t>{0, 1}));
}
