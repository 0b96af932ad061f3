#include "clusteraf/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <sstream>

#include "clusteraf/error.hpp"

namespace clusteraf {

namespace {

void require_same_arity(const LaurentPoly& a, const LaurentPoly& b, const char* op) {
    if (a.arity() != b.arity())
        throw ValidationError(std::string(op) + ": arity mismatch (" + std::to_string(a.arity()) +
                              " vs " + std::to_string(b.arity()) + ")");
}

int checked_add(int a, int b) {
    long long s = static_cast<long long>(a) + b;
    if (s > INT_MAX || s < INT_MIN) throw ValidationError("exponent overflow");
    return static_cast<int>(s);
}

Exponents add_exps(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
    return r;
}

}  // namespace

LaurentPoly LaurentPoly::constant(std::size_t arity, const mpz_class& c) {
    LaurentPoly p(arity);
    p.add_term(Exponents(arity, 0), c);
    return p;
}

LaurentPoly LaurentPoly::variable(std::size_t arity, std::size_t index, int power) {
    if (index >= arity) throw ValidationError("variable index out of range");
    Exponents e(arity, 0);
    e[index] = power;
    LaurentPoly p(arity);
    p.add_term(e, 1);
    return p;
}

LaurentPoly LaurentPoly::monomial(Exponents exps, const mpz_class& c) {
    LaurentPoly p(exps.size());
    p.add_term(exps, c);
    return p;
}

void LaurentPoly::add_term(const Exponents& e, const mpz_class& c) {
    if (e.size() != arity_) throw ValidationError("term arity mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Exponents LaurentPoly::min_exponents() const {
    Exponents r(arity_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first) {
            r = e;
            first = false;
        } else {
            for (std::size_t i = 0; i < arity_; ++i) r[i] = std::min(r[i], e[i]);
        }
    }
    return r;
}

Exponents LaurentPoly::denominator_exponents() const {
    Exponents r = min_exponents();
    for (auto& v : r) v = v < 0 ? -v : 0;
    return r;
}

int LaurentPoly::total_degree_span() const {
    if (terms_.empty()) return 0;
    int lo = INT_MAX, hi = INT_MIN;
    for (const auto& [e, c] : terms_) {
        long long s = 0;
        for (int v : e) s += v;
        lo = std::min<long long>(lo, s);
        hi = std::max<long long>(hi, s);
    }
    return hi - lo;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    require_same_arity(*this, o, "add");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    require_same_arity(*this, o, "sub");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
    LaurentPoly result = constant(arity_, 1);
    LaurentPoly base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

LaurentPoly LaurentPoly::shifted(const Exponents& shift) const {
    if (shift.size() != arity_) throw ValidationError("shift arity mismatch");
    LaurentPoly r(arity_);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), add_exps(e, shift), c);
    return r;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        mpz_class mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool has_var = std::any_of(e.begin(), e.end(), [](int v) { return v != 0; });
        bool wrote = false;
        if (mag != 1 || !has_var) {
            os << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << "*";
            os << "x" << (i + 1);
            if (e[i] != 1) os << "^" << e[i];
            wrote = true;
        }
    }
    return os.str();
}

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a += b;
    return a;
}

LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a -= b;
    return a;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_arity(a, b, "mul");
    LaurentPoly r(a.arity());
    mpz_class prod;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            prod = ca * cb;
            r.add_term(add_exps(ea, eb), prod);
        }
    return r;
}

std::optional<LaurentPoly> div_exact(const LaurentPoly& num, const LaurentPoly& den) {
    require_same_arity(num, den, "div_exact");
    if (den.is_zero()) throw ValidationError("div_exact: division by zero");
    const std::size_t m = num.arity();
    if (num.is_zero()) return LaurentPoly(m);

    if (den.is_monomial()) {
        const auto& [de, dc] = *den.terms().begin();
        LaurentPoly q(m);
        Exponents neg(m);
        for (std::size_t i = 0; i < m; ++i) neg[i] = -de[i];
        for (const auto& [e, c] : num.terms()) {
            if (!mpz_divisible_p(c.get_mpz_t(), dc.get_mpz_t())) return std::nullopt;
            mpz_class qc;
            mpz_divexact(qc.get_mpz_t(), c.get_mpz_t(), dc.get_mpz_t());
            q.add_term(add_exps(e, neg), qc);
        }
        return q;
    }

    // Move both operands into the polynomial ring with no variable factor
    // in the divisor; the quotient is then a polynomial.
    Exponents nmin = num.min_exponents(), dmin = den.min_exponents();
    Exponents nshift(m), dshift(m), qshift(m);
    for (std::size_t i = 0; i < m; ++i) {
        nshift[i] = -nmin[i];
        dshift[i] = -dmin[i];
        qshift[i] = checked_add(nmin[i], -dmin[i]);
    }
    LaurentPoly rem = num.shifted(nshift);
    const LaurentPoly d = den.shifted(dshift);

    Exponents nmax(m, 0), dmax(m, 0);
    for (const auto& [e, c] : rem.terms())
        for (std::size_t i = 0; i < m; ++i) nmax[i] = std::max(nmax[i], e[i]);
    for (const auto& [e, c] : d.terms())
        for (std::size_t i = 0; i < m; ++i) dmax[i] = std::max(dmax[i], e[i]);

    const auto& [lde, ldc] = *d.terms().begin();
    LaurentPoly quot(m);
    Exponents qe(m);
    mpz_class qc, prod;
    while (!rem.is_zero()) {
        const auto& [re, rc] = *rem.terms().begin();
        for (std::size_t i = 0; i < m; ++i) {
            qe[i] = re[i] - lde[i];
            if (qe[i] < 0 || qe[i] > nmax[i] - dmax[i]) return std::nullopt;
        }
        if (!mpz_divisible_p(rc.get_mpz_t(), ldc.get_mpz_t())) return std::nullopt;
        mpz_divexact(qc.get_mpz_t(), rc.get_mpz_t(), ldc.get_mpz_t());
        for (const auto& [e, c] : d.terms()) {
            prod = qc * c;
            rem.add_term(add_exps(e, qe), -prod);
        }
        quot.add_term(qe, qc);
    }
    LaurentPoly q = quot.shifted(qshift);
    if (!(q * den == num)) return std::nullopt;
    return q;
}

LaurentPoly relabel(const LaurentPoly& p, std::span<const std::size_t> perm) {
    const std::size_t m = p.arity();
    if (perm.size() != m) throw ValidationError("relabel: permutation length mismatch");
    std::vector<bool> seen(m, false);
    for (std::size_t v : perm) {
        if (v >= m || seen[v]) throw ValidationError("relabel: not a permutation");
        seen[v] = true;
    }
    LaurentPoly r(m);
    Exponents e2(m);
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 0; i < m; ++i) e2[perm[i]] = e[i];
        r.add_term(e2, c);
    }
    return r;
}

bool is_positive(const LaurentPoly& p) {
    if (p.is_zero()) return false;
    return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& t) { return t.second > 0; });
}

namespace {

class Parser {
public:
    Parser(const std::string& s, std::size_t arity) : s_(s), arity_(arity) {}

    LaurentPoly run() {
        LaurentPoly result(arity_);
        skip();
        if (pos_ == s_.size()) fail("empty polynomial");
        bool first = true;
        while (true) {
            skip();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1 : 1;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            skip();
            term(result, sign);
            skip();
            if (pos_ == s_.size()) break;
        }
        return result;
    }

private:
    void term(LaurentPoly& out, int sign) {
        mpz_class coeff = 1;
        Exponents e(arity_, 0);
        bool any = false;
        while (true) {
            skip();
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= mpz_class(digits());
            } else if (c == 'x') {
                get();
                std::string idx = digits();
                if (idx.size() > 9) fail("variable index too large");
                unsigned long i = std::stoul(idx);
                if (i < 1 || i > arity_) fail("variable x" + idx + " out of range");
                int power = 1;
                skip();
                if (peek() == '^') {
                    get();
                    skip();
                    bool neg = false;
                    if (peek() == '-') {
                        get();
                        neg = true;
                    }
                    std::string p = digits();
                    if (p.size() > 10) fail("exponent too large");
                    long long v = std::stoll(p);
                    if (v > INT_MAX) fail("exponent too large");
                    power = static_cast<int>(neg ? -v : v);
                }
                e[i - 1] = checked_add(e[i - 1], power);
            } else {
                fail("expected coefficient or variable");
            }
            any = true;
            skip();
            if (peek() == '*') {
                get();
                continue;
            }
            break;
        }
        if (!any) fail("empty term");
        out.add_term(e, sign * coeff);
    }

    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return s_.substr(start, pos_ - start);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return s_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("laurent parse error at offset " + std::to_string(pos_) + ": " + msg);
    }

    const std::string& s_;
    std::size_t arity_;
    std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(const std::string& text, std::size_t arity) {
    return Parser(text, arity).run();
}

}  // namespace clusteraf
