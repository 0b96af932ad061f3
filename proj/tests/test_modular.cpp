#include <doctest.h>

#include <cmath>
#include <random>

#include "clusteraf/error.hpp"
#include "clusteraf/modular.hpp"

using namespace clusteraf;

namespace {

SL2Z random_hyperbolic(std::mt19937_64& rng) {
    const SL2Z gens[] = {{{{1, 1}, {0, 1}}}, {{{1, 0}, {1, 1}}}, {{{0, -1}, {1, 0}}}};
    std::uniform_int_distribution<int> g(0, 2), len(2, 6);
    while (true) {
        SL2Z m{{{1, 0}, {0, 1}}};
        int n = len(rng);
        for (int i = 0; i < n; ++i) m = multiply(m, gens[g(rng)]);
        if (std::abs(m[0][0] + m[1][1]) > 2) return m;
    }
}

QuadNum golden() { return parse_quadratic("-1/2+1/2*sqrt(5)"); }

}  // namespace

TEST_CASE("dilatation of the cat map") {
    auto s = dilatation(parse_sl2("2,1;1,1"));
    CHECK(s.classification == MappingClass::Hyperbolic);
    REQUIRE(s.dilatation.has_value());
    CHECK(*s.dilatation == parse_quadratic("3/2+1/2*sqrt(5)"));
    CHECK(std::abs(s.dilatation->to_double() - (3 + std::sqrt(5.0)) / 2) < 1e-12);
    CHECK(std::abs(*s.log_dilatation - std::log((3 + std::sqrt(5.0)) / 2)) < 1e-12);
    CHECK(std::abs(*s.log_dilatation - 0.962423650119) < 1e-12);
}

TEST_CASE("classification") {
    CHECK(dilatation(parse_sl2("1,1;0,1")).classification == MappingClass::Parabolic);
    CHECK_FALSE(dilatation(parse_sl2("1,1;0,1")).dilatation.has_value());
    CHECK(dilatation(parse_sl2("0,-1;1,0")).classification == MappingClass::Elliptic);
    CHECK(dilatation(parse_sl2("-1,0;0,-1")).classification == MappingClass::Parabolic);
    CHECK(dilatation(parse_sl2("-2,-1;-1,-1")).classification == MappingClass::Hyperbolic);
    CHECK_THROWS_AS(dilatation(parse_sl2("2,0;0,1")), ValidationError);
    CHECK_THROWS_AS(parse_sl2("1,2,3;4"), ParseError);
    CHECK_THROWS_AS(parse_sl2("1,x;0,1"), ParseError);
    CHECK_THROWS_AS(parse_sl2("1,1"), ParseError);
    CHECK(to_string(parse_sl2(" 2, 1 ; 1, 1 ")) == "2,1;1,1");
}

TEST_CASE("dilatations are quadratic units") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
        auto m = random_hyperbolic(rng);
        auto s = dilatation(m);
        const QuadNum& l = *s.dilatation;
        QuadNum tr(static_cast<long>(std::abs(s.trace)));
        CHECK((l * l - tr * l + QuadNum(1)).is_zero());
        CHECK(l.norm() == 1);
        CHECK(l > QuadNum(1));
        CHECK(*dilatation(inverse(m)).dilatation == l);
    }
}

TEST_CASE("log dilatation is additive on powers") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 50; ++i) {
        auto m = random_hyperbolic(rng);
        double base = *dilatation(m).log_dilatation;
        for (unsigned k = 1; k <= 5; ++k) CHECK(std::abs(*dilatation(power(m, k)).log_dilatation - k * base) < 1e-12);
    }
    CHECK_THROWS_AS(power(parse_sl2("3,1;1,0"), 60), ValidationError);
}

TEST_CASE("Connes sample") {
    CHECK(connes_sample({}).empty());
    CHECK(connes_sample({parse_sl2("1,1;0,1"), parse_sl2("0,-1;1,0")}).empty());
    auto m = parse_sl2("2,1;1,1");
    auto s = connes_sample({power(m, 2), m, inverse(m), parse_sl2("1,2;1,3")});
    // traces 3, 4 and 7
    REQUIRE(s.size() == 3);
    CHECK(std::abs(s[0] - 0.962423650119207) < 1e-12);
    CHECK(std::abs(s[1] - std::acosh(2.0)) < 1e-12);
    CHECK(std::abs(s[2] - 2 * s[0]) < 1e-12);
    CHECK_THROWS_AS(connes_sample({parse_sl2("1,1;1,1")}), ValidationError);
}

TEST_CASE("flow group law") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> n(1, 30), d(1, 9);
    std::vector<mpq_class> x{3, 4, 5, mpq_class(7, 2)};
    CHECK(sigma_scale(x, FlowParam::exact(QuadNum(1))) == x);
    for (int i = 0; i < 40; ++i) {
        mpq_class a(n(rng), d(rng)), b(n(rng), d(rng));
        a.canonicalize();
        b.canonicalize();
        auto s = FlowParam::exact(a), t = FlowParam::exact(b);
        CHECK(sigma_scale(sigma_scale(x, s), t) == sigma_scale(x, s.then(t)));
        CHECK(std::abs(s.then(t).t - (s.t + t.t)) < 1e-12);
    }
    std::vector<double> y{1.0, 2.0};
    auto z = sigma_scale(sigma_scale(y, FlowParam{0.25, {}}), FlowParam{0.5, {}});
    CHECK(std::abs(z[1] - 2 * std::exp(0.75)) < 1e-12);
    CHECK_THROWS_AS(sigma_scale(x, FlowParam{0.5, {}}), ValidationError);
    CHECK_THROWS_AS(FlowParam::exact(QuadNum(-2)), ValidationError);
    CHECK_THROWS_AS(sigma_scale(x, FlowParam::exact(golden() + QuadNum(1))), ValidationError);
}

TEST_CASE("scaling keeps Ptolemy relations") {
    auto t = torus_one_puncture();
    auto l = make_lambda_lengths(t, {3, 4, 5});
    auto s = sigma_scale(l, FlowParam::exact(QuadNum(2)));
    CHECK(s.current() == std::vector<mpq_class>{6, 8, 10});
    CHECK(s.relations_hold());
    auto f = flip(t, l, 1);
    auto g = sigma_scale(f.lambdas, FlowParam::exact(QuadNum(mpq_class(5, 3))));
    CHECK(g.relations_hold());
    CHECK(flip(f.triangulation, g, 0).lambdas.relations_hold());
}

TEST_CASE("K0 descriptors") {
    auto th = golden();
    auto unit = FlowParam::exact(*dilatation(parse_sl2("2,1;1,1")).dilatation);
    auto base = k0_scale(th, FlowParam::exact(QuadNum(1)));
    CHECK(subgroup_equal(k0_scale(th, unit), base));
    CHECK_FALSE(k0_scale(th, unit) == base);
    CHECK_FALSE(subgroup_equal(k0_scale(th, FlowParam::exact(QuadNum(2))), base));
    CHECK(subgroup_equal(k0_scale(th, FlowParam::exact(QuadNum(1) + th)), base));
    CHECK(subgroup_equal(k0_scale(th + QuadNum(3), FlowParam::exact(QuadNum(1))), base));
    CHECK_FALSE(subgroup_equal(k0_scale(th * QuadNum(2), FlowParam::exact(QuadNum(1))), base));
    CHECK_THROWS_AS(subgroup_equal(k0_scale(th, FlowParam{0.0, {}}), base), ValidationError);

    auto one = FlowParam::exact(QuadNum(1));
    CHECK(subgroup_equal(k0_scale(QuadNum(mpq_class(1, 3)), one), k0_scale(QuadNum(mpq_class(2, 3)), one)));
    CHECK(subgroup_equal(k0_scale(QuadNum(mpq_class(1, 2)), one),
                         k0_scale(QuadNum(0), FlowParam::exact(QuadNum(mpq_class(1, 2))))));
    CHECK_FALSE(subgroup_equal(k0_scale(QuadNum(mpq_class(1, 2)), one), k0_scale(th, one)));

    auto s = FlowParam::exact(QuadNum(2)), t = FlowParam::exact(QuadNum(3));
    CHECK(*k0_scale(th, s.then(t)).scale == QuadNum(6));
    CHECK(k0_scale(th, FlowParam{}) == k0_scale(th, FlowParam{}));
}
