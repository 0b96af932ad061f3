#include "clusteraf/quadratic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "clusteraf/error.hpp"

namespace clusteraf {

namespace {

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

}  // namespace

QuadNum::QuadNum(const mpq_class& a, const mpq_class& b, const mpz_class& d) : a_(a), b_(b), d_(d) {
    a_.canonicalize();
    b_.canonicalize();
    if (b_ != 0 && d_ <= 0) throw ValidationError("quadratic radicand must be a positive integer");
    normalize();
}

void QuadNum::normalize() {
    if (b_ == 0) {
        d_ = 0;
        return;
    }
    // pull out square factors; trial division is enough for the radicands used here
    mpz_class d = d_, s = 1;
    for (unsigned long p = 2; p <= 1000000; ++p) {
        mpz_class pp = p * p;
        if (pp > d) break;
        while (mpz_divisible_p(d.get_mpz_t(), pp.get_mpz_t())) {
            d /= pp;
            s *= p;
        }
    }
    if (mpz_perfect_square_p(d.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), d.get_mpz_t());
        s *= r;
        d = 1;
    }
    b_ *= mpq_class(s);
    if (d == 1) {
        a_ += b_;
        b_ = 0;
        d_ = 0;
    } else {
        d_ = d;
    }
}

void QuadNum::unify(const QuadNum& o) {
    if (o.b_ == 0) return;
    if (b_ == 0) {
        d_ = o.d_;
        return;
    }
    if (d_ != o.d_)
        throw ValidationError("arithmetic mixes sqrt(" + d_.get_str() + ") and sqrt(" + o.d_.get_str() + ")");
}

int QuadNum::sign() const {
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    mpq_class lhs = a_ * a_, rhs = b_ * b_ * mpq_class(d_);
    return lhs > rhs ? sa : sb;
}

mpf_class QuadNum::approx(unsigned long bits) const {
    mpf_class r(0, bits);
    mpf_class a(a_, bits);
    if (b_ == 0) return a;
    mpf_class d(d_, bits), b(b_, bits);
    r = a + b * ::sqrt(d);
    return r;
}

double QuadNum::to_double() const { return approx(128).get_d(); }

mpz_class QuadNum::floor() const {
    if (b_ == 0) return floor_q(a_);
    mpf_class x = approx(256);
    mpf_class fl = ::floor(x);
    mpz_class f(fl);
    while ((*this - QuadNum(mpq_class(f))).sign() < 0) --f;
    while ((*this - QuadNum(mpq_class(f + 1))).sign() >= 0) ++f;
    return f;
}

QuadNum QuadNum::conjugate() const {
    QuadNum r(*this);
    r.b_ = -r.b_;
    return r;
}

mpq_class QuadNum::norm() const { return a_ * a_ - b_ * b_ * mpq_class(d_); }

mpq_class QuadNum::trace() const { return 2 * a_; }

QuadNum& QuadNum::operator+=(const QuadNum& o) {
    unify(o);
    a_ += o.a_;
    b_ += o.b_;
    if (b_ == 0) d_ = 0;
    return *this;
}

QuadNum& QuadNum::operator-=(const QuadNum& o) {
    unify(o);
    a_ -= o.a_;
    b_ -= o.b_;
    if (b_ == 0) d_ = 0;
    return *this;
}

QuadNum& QuadNum::operator*=(const QuadNum& o) {
    unify(o);
    mpq_class a = a_ * o.a_ + b_ * o.b_ * mpq_class(d_);
    mpq_class b = a_ * o.b_ + b_ * o.a_;
    a_ = a;
    b_ = b;
    if (b_ == 0) d_ = 0;
    return *this;
}

QuadNum& QuadNum::operator/=(const QuadNum& o) {
    if (o.is_zero()) throw ValidationError("quadratic division by zero");
    unify(o);
    mpq_class n = o.norm();
    QuadNum c = o.conjugate();
    *this *= c;
    a_ /= n;
    b_ /= n;
    if (b_ == 0) d_ = 0;
    return *this;
}

QuadNum QuadNum::operator-() const {
    QuadNum r(*this);
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

std::string QuadNum::to_string() const {
    if (b_ == 0) return a_.get_str();
    std::string s;
    if (a_ != 0) s = a_.get_str();
    mpq_class mag = abs(b_);
    if (b_ < 0)
        s += "-";
    else if (a_ != 0)
        s += "+";
    if (mag != 1) s += mag.get_str() + "*";
    s += "sqrt(" + d_.get_str() + ")";
    return s;
}

namespace {

class QuadParser {
public:
    explicit QuadParser(const std::string& s) : s_(s) {}

    QuadNum run() {
        skip();
        QuadNum v;
        if (peek() == '(') {
            ++pos_;
            v = sum();
            skip();
            expect(')');
            skip();
            if (peek() == '/') {
                ++pos_;
                skip();
                mpq_class den = number();
                if (den == 0) fail("division by zero");
                v /= QuadNum(den);
            }
        } else {
            v = sum();
        }
        skip();
        if (pos_ != s_.size()) fail("trailing characters");
        return v;
    }

private:
    QuadNum sum() {
        QuadNum total;
        bool first = true;
        while (true) {
            skip();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = s_[pos_++] == '-' ? -1 : 1;
            } else if (!first) {
                break;
            }
            first = false;
            skip();
            QuadNum t = term();
            total += sign > 0 ? t : -t;
            skip();
            if (peek() != '+' && peek() != '-') break;
        }
        return total;
    }

    QuadNum term() {
        if (s_.compare(pos_, 4, "sqrt") == 0) return surd(1);
        mpq_class c = number();
        skip();
        if (peek() == '*') {
            ++pos_;
            skip();
            if (s_.compare(pos_, 4, "sqrt") != 0) fail("expected sqrt after '*'");
            return surd(c);
        }
        return QuadNum(c);
    }

    QuadNum surd(const mpq_class& c) {
        pos_ += 4;
        skip();
        expect('(');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected radicand");
        mpz_class d(s_.substr(start, pos_ - start));
        skip();
        expect(')');
        if (d == 0) return QuadNum();
        return QuadNum(0, c, d);
    }

    mpq_class number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                    s_[pos_] == '/' || s_[pos_] == 'e' || s_[pos_] == 'E'))
            ++pos_;
        if (start == pos_) fail("expected number");
        return parse_rational(s_.substr(start, pos_ - start));
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("cannot parse '" + s_ + "' as a quadratic number: " + msg);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

QuadNum parse_quadratic(const std::string& text) { return QuadParser(text).run(); }

mpq_class parse_rational(const std::string& text, unsigned precision) {
    auto fail = [&](const std::string& why) -> mpq_class {
        throw ParseError("cannot parse '" + text + "' as a rational: " + why);
    };
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) return fail("empty");
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    if (i == s.size()) return fail("missing digits");
    auto all_digits = [](const std::string& t) {
        return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    std::string body = s.substr(i);
    auto slash = body.find('/');
    if (slash != std::string::npos) {
        std::string p = body.substr(0, slash), q = body.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q)) return fail("fraction needs integer numerator and denominator");
        mpz_class den(q);
        if (den == 0) return fail("zero denominator");
        mpq_class r(mpz_class(p), den);
        r.canonicalize();
        return neg ? mpq_class(-r) : r;
    }
    long long exp10 = 0;
    auto epos = body.find_first_of("eE");
    if (epos != std::string::npos) {
        std::string e = body.substr(epos + 1);
        bool eneg = false;
        if (!e.empty() && (e[0] == '+' || e[0] == '-')) {
            eneg = e[0] == '-';
            e = e.substr(1);
        }
        if (!all_digits(e) || e.size() > 6) return fail("bad exponent");
        exp10 = std::stoll(e) * (eneg ? -1 : 1);
        body = body.substr(0, epos);
    }
    std::string intpart = body, frac;
    auto dot = body.find('.');
    if (dot != std::string::npos) {
        intpart = body.substr(0, dot);
        frac = body.substr(dot + 1);
    }
    if (intpart.empty() && frac.empty()) return fail("missing digits");
    if ((!intpart.empty() && !all_digits(intpart)) || (!frac.empty() && !all_digits(frac)))
        return fail("unexpected character");
    std::string digits = intpart + frac;
    exp10 -= static_cast<long long>(frac.size());
    std::size_t lead = digits.find_first_not_of('0');
    if (lead == std::string::npos) return mpq_class(0);
    digits = digits.substr(lead);
    mpz_class mant(digits);
    if (precision > 0 && digits.size() > precision) {
        std::size_t drop = digits.size() - precision;
        mpz_class p = pow10(drop), q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), mant.get_mpz_t(), p.get_mpz_t());
        if (2 * r >= p) ++q;
        mant = q;
        exp10 += static_cast<long long>(drop);
    }
    mpq_class r = exp10 >= 0 ? mpq_class(mant * pow10(static_cast<unsigned long>(exp10)))
                             : mpq_class(mant, pow10(static_cast<unsigned long>(-exp10)));
    r.canonicalize();
    return neg ? mpq_class(-r) : r;
}

std::string format_fixed(const mpq_class& x, unsigned places) {
    mpq_class scaled = abs(x) * mpq_class(pow10(places));
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    if (2 * r >= scaled.get_den()) ++q;
    std::string digits = q.get_str();
    if (digits.size() <= places) digits = std::string(places + 1 - digits.size(), '0') + digits;
    std::string out = digits.substr(0, digits.size() - places);
    if (places) out += "." + digits.substr(digits.size() - places);
    if (x < 0 && q != 0) out = "-" + out;
    return out;
}

}  // namespace clusteraf
