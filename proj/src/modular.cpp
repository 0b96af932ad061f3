#include "clusteraf/modular.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

#include "clusteraf/error.hpp"

namespace clusteraf {

namespace {

const mpq_class& rational_scale(const FlowParam& f) {
    if (!f.scale) throw ValidationError("exact scaling needs an exact scale factor");
    if (!f.scale->is_rational()) throw ValidationError("exact scaling of rationals needs a rational scale factor");
    return f.scale->rational_part();
}

std::int64_t checked_mul_add(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    std::int64_t x, y, r;
    if (__builtin_mul_overflow(a, b, &x) || __builtin_mul_overflow(c, d, &y) || __builtin_add_overflow(x, y, &r))
        throw ValidationError("SL(2,Z) product overflows 64 bits");
    return r;
}

}  // namespace

FlowParam FlowParam::exact(const QuadNum& s) {
    if (s.sign() <= 0) throw ValidationError("scale factor must be positive");
    return FlowParam{std::log(s.to_double()), s};
}

FlowParam FlowParam::then(const FlowParam& o) const {
    FlowParam r{t + o.t, std::nullopt};
    if (scale && o.scale) r.scale = *scale * *o.scale;
    return r;
}

double FlowParam::factor() const { return scale ? scale->to_double() : std::exp(t); }

std::vector<mpq_class> sigma_scale(const std::vector<mpq_class>& x, const FlowParam& f) {
    const mpq_class& s = rational_scale(f);
    std::vector<mpq_class> r;
    r.reserve(x.size());
    for (const auto& v : x) r.push_back(v * s);
    return r;
}

LambdaLengths sigma_scale(const LambdaLengths& l, const FlowParam& f) {
    LambdaLengths r = l;
    r.registry = sigma_scale(l.registry, f);
    return r;
}

std::vector<double> sigma_scale(const std::vector<double>& x, const FlowParam& f) {
    double s = f.factor();
    std::vector<double> r;
    r.reserve(x.size());
    for (double v : x) r.push_back(v * s);
    return r;
}

SL2Z parse_sl2(const std::string& text) {
    SL2Z m{};
    std::vector<std::int64_t> v;
    std::string cur;
    std::size_t semis = 0, field = 0;
    auto flush = [&] {
        std::string s;
        for (char c : cur)
            if (!std::isspace(static_cast<unsigned char>(c))) s += c;
        if (s.empty()) throw ParseError("matrix '" + text + "' has an empty entry");
        std::size_t used = 0;
        long long x = 0;
        try {
            x = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size()) throw ParseError("matrix entry '" + s + "' is not an integer");
        v.push_back(x);
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') {
            flush();
            if (++field > 1) throw ParseError("matrix '" + text + "' needs two entries per row");
        } else if (c == ';') {
            flush();
            if (field != 1) throw ParseError("matrix '" + text + "' needs two entries per row");
            field = 0;
            ++semis;
        } else {
            cur += c;
        }
    }
    flush();
    if (semis != 1 || field != 1 || v.size() != 4) throw ParseError("matrix '" + text + "' is not of the form a,b;c,d");
    m[0] = {v[0], v[1]};
    m[1] = {v[2], v[3]};
    return m;
}

std::string to_string(const SL2Z& m) {
    std::ostringstream os;
    os << m[0][0] << ',' << m[0][1] << ';' << m[1][0] << ',' << m[1][1];
    return os.str();
}

SL2Z multiply(const SL2Z& a, const SL2Z& b) {
    SL2Z r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = checked_mul_add(a[i][0], b[0][j], a[i][1], b[1][j]);
    return r;
}

SL2Z power(const SL2Z& m, unsigned k) {
    SL2Z r{{{1, 0}, {0, 1}}};
    for (unsigned i = 0; i < k; ++i) r = multiply(r, m);
    return r;
}

SL2Z inverse(const SL2Z& m) {
    if (checked_mul_add(m[0][0], m[1][1], -m[0][1], m[1][0]) != 1) throw ValidationError("determinant must be 1");
    return SL2Z{{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}};
}

std::string to_string(MappingClass c) {
    switch (c) {
        case MappingClass::Elliptic: return "elliptic";
        case MappingClass::Parabolic: return "parabolic";
        case MappingClass::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

MappingClassSample dilatation(const SL2Z& m) {
    std::int64_t det = checked_mul_add(m[0][0], m[1][1], -m[0][1], m[1][0]);
    if (det != 1) throw ValidationError("matrix " + to_string(m) + " has determinant " + std::to_string(det) + ", not 1");
    MappingClassSample s;
    s.matrix = m;
    std::int64_t tr;
    if (__builtin_add_overflow(m[0][0], m[1][1], &tr)) throw ValidationError("trace overflows 64 bits");
    s.trace = tr;
    mpz_class a = tr < 0 ? mpz_class(-mpz_class(tr)) : mpz_class(tr);
    if (a < 2) {
        s.classification = MappingClass::Elliptic;
    } else if (a == 2) {
        s.classification = MappingClass::Parabolic;
    } else {
        s.classification = MappingClass::Hyperbolic;
        s.dilatation = QuadNum(mpq_class(a, 2), mpq_class(1, 2), a * a - 4);
        s.log_dilatation = static_cast<double>(std::acosh(static_cast<long double>(a.get_d()) / 2.0L));
    }
    return s;
}

std::vector<double> connes_sample(const std::vector<SL2Z>& ms) {
    std::map<mpz_class, double> by_trace;
    for (const auto& m : ms) {
        auto s = dilatation(m);
        if (s.classification != MappingClass::Hyperbolic) continue;
        mpz_class a = s.trace < 0 ? mpz_class(-mpz_class(s.trace)) : mpz_class(s.trace);
        by_trace.emplace(a, *s.log_dilatation);
    }
    std::vector<double> out;
    for (const auto& [tr, v] : by_trace) out.push_back(v);
    return out;
}

bool operator==(const K0Descriptor& a, const K0Descriptor& b) {
    if (!(a.theta == b.theta)) return false;
    if (a.scale && b.scale) return *a.scale == *b.scale;
    if (a.scale || b.scale) return false;
    return a.t == b.t;
}

K0Descriptor k0_scale(const QuadNum& theta, const FlowParam& f) { return K0Descriptor{theta, f.t, f.scale}; }

bool subgroup_equal(const K0Descriptor& a, const K0Descriptor& b) {
    if (!a.scale || !b.scale) throw ValidationError("subgroup comparison needs exact scales");
    const QuadNum& s1 = *a.scale;
    const QuadNum& s2 = *b.scale;
    if (a.theta.is_rational() != b.theta.is_rational()) return false;
    if (a.theta.is_rational()) {
        // Z + Z p/q = (1/q) Z
        QuadNum g1 = s1 / QuadNum(mpq_class(a.theta.rational_part().get_den()));
        QuadNum g2 = s2 / QuadNum(mpq_class(b.theta.rational_part().get_den()));
        return g1 == g2 || g1 == -g2;
    }
    // basis u = (s1, s1 theta1), w = (s2, s2 theta2); w = C u with C in GL2(Z)
    std::array<QuadNum, 2> u{s1, s1 * a.theta}, w{s2, s2 * b.theta};
    for (const auto& x : {u[0], u[1], w[0], w[1]})
        if (!x.is_rational() && x.radicand() != a.theta.radicand())
            throw ValidationError("descriptors lie in different quadratic fields");
    // coordinates over Q of x = p + q sqrt(d)
    auto coords = [](const QuadNum& x) { return std::array<mpq_class, 2>{x.rational_part(), x.surd_part()}; };
    auto c0 = coords(u[0]), c1 = coords(u[1]);
    mpq_class det = c0[0] * c1[1] - c0[1] * c1[0];
    if (det == 0) throw InternalError("irrational theta gave dependent generators");
    std::array<std::array<mpq_class, 2>, 2> c;
    for (int i = 0; i < 2; ++i) {
        auto y = coords(w[i]);
        c[i][0] = (y[0] * c1[1] - y[1] * c1[0]) / det;
        c[i][1] = (c0[0] * y[1] - c0[1] * y[0]) / det;
    }
    for (const auto& row : c)
        for (const auto& x : row)
            if (x.get_den() != 1) return false;
    mpq_class cd = c[0][0] * c[1][1] - c[0][1] * c[1][0];
    return cd == 1 || cd == -1;
}

}  // namespace clusteraf
