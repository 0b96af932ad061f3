#include "clusteraf/jacobiperron.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "clusteraf/error.hpp"

namespace clusteraf {

namespace {

mpz_class floor_of(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}
mpz_class floor_of(const QuadNum& q) { return q.floor(); }
mpz_class floor_of(double x) {
    if (!std::isfinite(x)) throw ValidationError("non-finite input");
    return mpz_class(std::floor(x));
}

bool is_zero(const mpq_class& q) { return q == 0; }
bool is_zero(const QuadNum& q) { return q.is_zero(); }
bool is_zero(double x) { return x == 0.0; }

mpq_class from_int(const mpz_class& z, const mpq_class*) { return mpq_class(z); }
QuadNum from_int(const mpz_class& z, const QuadNum*) { return QuadNum(mpq_class(z)); }
double from_int(const mpz_class& z, const double*) { return z.get_d(); }

std::int64_t to_digit(const mpz_class& z) {
    if (!z.fits_slong_p()) throw ValidationError("Jacobi-Perron digit exceeds 64 bits");
    return z.get_si();
}

template <class T>
JPExpansion expand(const std::vector<T>& theta, std::size_t steps) {
    if (theta.empty()) throw ValidationError("theta needs at least one coordinate");
    const std::size_t dim = theta.size();
    JPExpansion e;
    e.n = dim + 1;
    std::vector<T> alpha(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        mpz_class f = floor_of(theta[i]);
        e.integer_part.push_back(f);
        alpha[i] = theta[i] - from_int(f, static_cast<const T*>(nullptr));
    }
    auto all_zero = [&] { return std::all_of(alpha.begin(), alpha.end(), [](const T& a) { return is_zero(a); }); };
    for (std::size_t s = 0; s < steps; ++s) {
        if (all_zero()) break;
        if (is_zero(alpha[0]))
            throw DegenerateInput("Jacobi-Perron step " + std::to_string(s + 1) +
                                  " divides by a vanishing first coordinate");
        std::vector<T> ratio(dim);
        for (std::size_t i = 0; i + 1 < dim; ++i) ratio[i] = alpha[i + 1] / alpha[0];
        ratio[dim - 1] = T(1) / alpha[0];
        std::vector<std::int64_t> b(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            mpz_class f = floor_of(ratio[i]);
            b[i] = to_digit(f);
            alpha[i] = ratio[i] - from_int(f, static_cast<const T*>(nullptr));
        }
        e.digits.push_back(std::move(b));
    }
    e.finite = all_zero();
    return e;
}

using ZMatrix = std::vector<std::vector<mpz_class>>;

ZMatrix digit_product(const JPExpansion& e, std::size_t k) {
    const std::size_t n = e.n;
    ZMatrix p(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) p[i][i] = 1;
    for (std::size_t j = 0; j < k; ++j) {
        auto m = digit_matrix(e.digits[j]);
        ZMatrix r(n, std::vector<mpz_class>(n, 0));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t b = 0; b < n; ++b)
                    if (m[c][b] != 0) r[a][b] += p[a][c] * m[c][b];
        p = std::move(r);
    }
    return p;
}

void check_prefix(const JPExpansion& e, std::size_t k) {
    if (k > e.digits.size())
        throw ValidationError("prefix length " + std::to_string(k) + " exceeds the " +
                              std::to_string(e.digits.size()) + " available digits");
}

}  // namespace

JPExpansion jp_expand(const std::vector<mpq_class>& theta, std::size_t steps) { return expand(theta, steps); }

JPExpansion jp_expand(const std::vector<QuadNum>& theta, std::size_t steps) {
    for (const auto& t : theta)
        if (!t.is_rational() && !theta.front().is_rational() && t.radicand() != theta.front().radicand())
            throw ValidationError("theta coordinates lie in different quadratic fields");
    return expand(theta, steps);
}

JPExpansion jp_expand(const std::vector<double>& theta, std::size_t steps) {
    if (steps > 15) throw ValidationError("double precision input is limited to 15 steps; pass an exact value");
    return expand(theta, steps);
}

BratteliDiagram::Matrix digit_matrix(const std::vector<std::int64_t>& b) {
    const std::size_t n = b.size() + 1;
    if (n < 2) throw ValidationError("empty digit vector");
    for (auto v : b)
        if (v < 0) throw ValidationError("negative Jacobi-Perron digit");
    BratteliDiagram::Matrix m(n, std::vector<std::int64_t>(n, 0));
    m[0][0] = b[n - 2];
    m[0][n - 1] += 1;
    m[1][0] = 1;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        m[i + 1][0] = b[i - 1];
        m[i + 1][i] = 1;
    }
    return m;
}

std::vector<std::vector<mpz_class>> k0_convergents(const JPExpansion& e, std::size_t depth) {
    check_prefix(e, depth);
    const std::size_t n = e.n;
    std::vector<std::vector<mpz_class>> out;
    ZMatrix p(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) p[i][i] = 1;
    auto first_column = [&] {
        std::vector<mpz_class> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = p[i][0];
        return v;
    };
    out.push_back(first_column());
    for (std::size_t j = 0; j < depth; ++j) {
        auto m = digit_matrix(e.digits[j]);
        ZMatrix r(n, std::vector<mpz_class>(n, 0));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t b = 0; b < n; ++b)
                    if (m[c][b] != 0) r[a][b] += p[a][c] * m[c][b];
        p = std::move(r);
        out.push_back(first_column());
    }
    return out;
}

std::vector<mpq_class> jp_convergent(const JPExpansion& e, std::size_t k) {
    check_prefix(e, k);
    ZMatrix p = digit_product(e, k);
    const std::size_t n = e.n;
    std::vector<mpq_class> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = p[i][0];
    if (v[0] == 0) throw InternalError("convergent has vanishing first coordinate");
    std::vector<mpq_class> out(n);
    out[0] = 1;
    for (std::size_t i = 1; i < n; ++i) out[i] = (v[i] + mpq_class(e.integer_part[i - 1]) * v[0]) / v[0];
    return out;
}

BratteliDiagram af_from_digits(const JPExpansion& e, std::size_t depth) {
    if (depth > e.digits.size())
        throw ValidationError("af_from_digits needs " + std::to_string(depth) + " digits, have " +
                              std::to_string(e.digits.size()));
    BratteliDiagram d;
    d.widths.assign(depth + 1, e.n);
    for (std::size_t k = 0; k < depth; ++k) d.edges.push_back(digit_matrix(e.digits[k]));
    d.validate();
    return d;
}

std::pair<mpq_class, mpq_class> digit_cylinder(const JPExpansion& e, std::size_t k) {
    if (e.n != 2) throw ValidationError("digit cylinders are implemented for n = 2");
    check_prefix(e, k);
    mpz_class p_prev = 1, q_prev = 0, p = e.integer_part[0], q = 1;
    for (std::size_t j = 0; j < k; ++j) {
        mpz_class a = e.digits[j][0];
        mpz_class pn = a * p + p_prev, qn = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = pn;
        q = qn;
    }
    mpq_class x(p, q), y(p + p_prev, q + q_prev);
    x.canonicalize();
    y.canonicalize();
    if (y < x) std::swap(x, y);
    return {x, y};
}

QuadNum continuity_radius(const QuadNum& theta, std::size_t k) {
    JPExpansion e = jp_expand(std::vector<QuadNum>{theta}, k);
    if (e.digits.size() < k)
        throw DegenerateInput("theta has only " + std::to_string(e.digits.size()) + " digits");
    auto [lo, hi] = digit_cylinder(e, k);
    QuadNum a = theta - QuadNum(lo), b = QuadNum(hi) - theta;
    QuadNum r = (a < b ? a : b) / QuadNum(2);
    if (r.sign() <= 0) throw DegenerateInput("theta lies on the boundary of its digit cylinder");
    return r;
}

std::vector<mpz_class> continued_fraction(const mpq_class& x) {
    std::vector<mpz_class> out;
    mpz_class p = x.get_num(), q = x.get_den();
    while (q != 0) {
        mpz_class a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
        out.push_back(a);
        p = q;
        q = r;
    }
    return out;
}

}  // namespace clusteraf
