#include <doctest.h>

#include <cmath>
#include <random>

#include "clusteraf/error.hpp"
#include "clusteraf/jacobiperron.hpp"

using namespace clusteraf;

namespace {

// Continued fraction of an irrational a + b sqrt(d) using exact floors
// computed from integer square roots.
std::vector<mpz_class> surd_cf(mpq_class a, mpq_class b, const mpz_class& d, std::size_t k) {
    std::vector<mpz_class> out;
    for (std::size_t i = 0; i < k; ++i) {
        // floor((A + B sqrt d) / den) with integer A, B
        mpz_class den;
        mpz_lcm(den.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
        mpz_class A = mpq_class(a * den).get_num(), B = mpq_class(b * den).get_num();
        mpz_class r2 = B * B * d, r;
        mpz_sqrt(r.get_mpz_t(), r2.get_mpz_t());
        mpz_class lo = B >= 0 ? mpz_class(A + r) : mpz_class(A - r - 1);
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), lo.get_mpz_t(), den.get_mpz_t());
        out.push_back(f);
        a -= f;
        mpq_class n = a * a - b * b * d;
        a = a / n;
        b = -b / n;
    }
    return out;
}

QuadNum golden() { return parse_quadratic("-1/2+1/2*sqrt(5)"); }

}  // namespace

TEST_CASE("rationals match Euclid") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-500, 500), den(1, 400);
    for (int i = 0; i < 200; ++i) {
        mpq_class x(num(rng), den(rng));
        x.canonicalize();
        auto cf = continued_fraction(x);
        auto e = jp_expand(std::vector<mpq_class>{x}, 64);
        CHECK(e.finite);
        CHECK(e.integer_part[0] == cf[0]);
        REQUIRE(e.digits.size() + 1 == cf.size());
        for (std::size_t k = 0; k < e.digits.size(); ++k) CHECK(e.digits[k][0] == cf[k + 1].get_si());
        CHECK(jp_convergent(e, e.digits.size())[1] == x);
    }
}

TEST_CASE("Euclid oracle on a worked fraction") {
    CHECK(continued_fraction(mpq_class(5, 3)) == std::vector<mpz_class>{1, 1, 2});
    auto e = jp_expand(std::vector<mpq_class>{mpq_class(5, 3)}, 10);
    CHECK(e.finite);
    CHECK(e.digits == std::vector<std::vector<std::int64_t>>{{1}, {2}});
}

TEST_CASE("quadratic surds match the exact continued fraction") {
    for (long d : {2L, 3L, 5L, 6L, 7L, 10L, 11L, 13L, 14L, 15L, 17L, 19L, 21L, 22L, 23L, 26L, 29L, 31L, 33L, 35L}) {
        QuadNum t(mpq_class(1, 3), mpq_class(2, 5), d);
        auto want = surd_cf(mpq_class(1, 3), mpq_class(2, 5), d, 13);
        auto e = jp_expand(std::vector<QuadNum>{t}, 12);
        CHECK_FALSE(e.finite);
        CHECK(e.integer_part[0] == want[0]);
        REQUIRE(e.digits.size() == 12);
        for (std::size_t k = 0; k < 12; ++k) CHECK(e.digits[k][0] == want[k + 1].get_si());
    }
}

TEST_CASE("golden ratio") {
    auto e = jp_expand(std::vector<QuadNum>{golden()}, 20);
    CHECK(e.integer_part[0] == 0);
    for (const auto& b : e.digits) CHECK(b == std::vector<std::int64_t>{1});
    // convergents are ratios of Fibonacci numbers
    mpz_class f0 = 0, f1 = 1;
    double t = golden().to_double(), last = 1;
    for (std::size_t k = 1; k <= 20; ++k) {
        mpz_class f2 = f0 + f1;
        f0 = f1;
        f1 = f2;
        auto c = jp_convergent(e, k)[1];
        CHECK(c == mpq_class(f0, f1));
        double err = std::abs(c.get_d() - t);
        CHECK(err < last);
        last = err;
    }
    CHECK(std::abs(jp_convergent(e, 10)[1].get_d() - t) < 1e-3);
    auto k0 = k0_convergents(e, 4);
    CHECK(k0[4] == std::vector<mpz_class>{5, 3});
}

TEST_CASE("degenerate and invalid inputs") {
    CHECK_THROWS_AS(jp_expand(std::vector<mpq_class>{0, mpq_class(1, 2)}, 5), DegenerateInput);
    CHECK_NOTHROW(jp_expand(std::vector<mpq_class>{0, 0}, 5));
    CHECK_THROWS_AS(jp_expand(std::vector<mpq_class>{}, 5), ValidationError);
    CHECK_THROWS_AS(jp_expand(std::vector<double>{0.3}, 16), ValidationError);
    CHECK(jp_expand(std::vector<double>{0.25}, 5).finite);
    auto e = jp_expand(std::vector<mpq_class>{mpq_class(1, 3)}, 4);
    CHECK_THROWS_AS(jp_convergent(e, 2), ValidationError);
    CHECK_THROWS_AS(af_from_digits(e, 2), ValidationError);
    CHECK_THROWS_AS(digit_matrix({-1}), ValidationError);
}

TEST_CASE("two-dimensional expansion") {
    auto e = jp_expand(std::vector<mpq_class>{mpq_class(5, 7), mpq_class(4, 7)}, 20);
    CHECK(e.n == 3);
    CHECK(e.finite);
    CHECK(e.digits.size() == 4);
    auto c = jp_convergent(e, e.digits.size());
    CHECK(c[1] == mpq_class(5, 7));
    CHECK(c[2] == mpq_class(4, 7));
    auto f = jp_expand(std::vector<mpq_class>{mpq_class(2, 7), mpq_class(3, 7)}, 20);
    CHECK(f.finite);
    CHECK(jp_convergent(f, f.digits.size())[2] == mpq_class(3, 7));

    QuadNum c2 = parse_quadratic("sqrt(2)"), c3 = parse_quadratic("1/2*sqrt(2)");
    CHECK_THROWS_AS(jp_expand(std::vector<QuadNum>{c2, parse_quadratic("sqrt(3)")}, 3), ValidationError);
    // 1, sqrt(2)/2 and sqrt(2)-1 are dependent over Q; the fourth step divides by zero
    CHECK(jp_expand(std::vector<QuadNum>{c3, c2 - QuadNum(1)}, 3).digits.size() == 3);
    CHECK_THROWS_AS(jp_expand(std::vector<QuadNum>{c3, c2 - QuadNum(1)}, 6), DegenerateInput);
}

TEST_CASE("AF diagram reads back the digits") {
    auto e = jp_expand(std::vector<mpq_class>{mpq_class(2, 3), mpq_class(4, 9)}, 30);
    CHECK(e.digits.size() == 5);
    auto d = af_from_digits(e, e.digits.size());
    REQUIRE(d.edges.size() == e.digits.size());
    for (std::size_t k = 0; k < d.edges.size(); ++k) {
        const auto& m = d.edges[k];
        // the digits sit in the first column
        CHECK(m[0][0] == e.digits[k][1]);
        CHECK(m[2][0] == e.digits[k][0]);
        CHECK(m[1][0] == 1);
        CHECK(m == digit_matrix(e.digits[k]));
    }
    CHECK(d.widths == std::vector<std::size_t>(e.digits.size() + 1, 3));
}

TEST_CASE("digit cylinders") {
    auto t = golden();
    double tv = t.to_double();
    auto e = jp_expand(std::vector<QuadNum>{t}, 12);
    for (std::size_t k = 1; k <= 12; ++k) {
        auto [lo, hi] = digit_cylinder(e, k);
        CHECK(lo.get_d() <= tv);
        CHECK(tv <= hi.get_d());
        auto r = continuity_radius(t, k);
        CHECK(r.sign() > 0);
        CHECK((t - r) > QuadNum(lo));
    }
    CHECK_THROWS_AS(continuity_radius(QuadNum(mpq_class(1, 2)), 3), DegenerateInput);
}
