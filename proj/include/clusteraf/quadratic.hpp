#pragma once

#include <string>

#include <gmpxx.h>

namespace clusteraf {

/// Exact element a + b*sqrt(d) of a real quadratic field, with a, b rational
/// and d a squarefree integer greater than 1. Rationals have d == 0.
/// Mixing two different fields throws ValidationError.
class QuadNum {
public:
    QuadNum() : a_(0), b_(0), d_(0) {}
    QuadNum(const mpq_class& a) : a_(a), b_(0), d_(0) { a_.canonicalize(); }  // NOLINT: implicit by design
    QuadNum(long a) : QuadNum(mpq_class(a)) {}              // NOLINT
    /// Normalizes d to its squarefree part; d must be a positive integer.
    QuadNum(const mpq_class& a, const mpq_class& b, const mpz_class& d);

    static QuadNum sqrt(const mpz_class& d) { return QuadNum(0, 1, d); }

    const mpq_class& rational_part() const noexcept { return a_; }
    const mpq_class& surd_part() const noexcept { return b_; }
    const mpz_class& radicand() const noexcept { return d_; }
    bool is_rational() const noexcept { return b_ == 0; }
    bool is_zero() const noexcept { return a_ == 0 && b_ == 0; }

    int sign() const;
    mpz_class floor() const;
    QuadNum conjugate() const;
    mpq_class norm() const;   ///< a^2 - d b^2
    mpq_class trace() const;  ///< 2a
    /// Approximation with at least `bits` bits of precision.
    mpf_class approx(unsigned long bits = 256) const;
    double to_double() const;

    QuadNum& operator+=(const QuadNum& o);
    QuadNum& operator-=(const QuadNum& o);
    QuadNum& operator*=(const QuadNum& o);
    QuadNum& operator/=(const QuadNum& o);
    QuadNum operator-() const;

    friend QuadNum operator+(QuadNum x, const QuadNum& y) { return x += y; }
    friend QuadNum operator-(QuadNum x, const QuadNum& y) { return x -= y; }
    friend QuadNum operator*(QuadNum x, const QuadNum& y) { return x *= y; }
    friend QuadNum operator/(QuadNum x, const QuadNum& y) { return x /= y; }
    friend bool operator==(const QuadNum& x, const QuadNum& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
    }
    friend bool operator<(const QuadNum& x, const QuadNum& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QuadNum& x, const QuadNum& y) { return y < x; }
    friend bool operator<=(const QuadNum& x, const QuadNum& y) { return !(y < x); }
    friend bool operator>=(const QuadNum& x, const QuadNum& y) { return !(x < y); }

    /// Forms such as "3/4", "-1/2+1/2*sqrt(5)" or "sqrt(2)".
    std::string to_string() const;

private:
    void unify(const QuadNum& o);
    void normalize();

    mpq_class a_, b_;
    mpz_class d_;
};

QuadNum parse_quadratic(const std::string& text);

/// Parses "p/q", an integer, or a decimal such as "-0.618e-2" exactly,
/// rounding decimals to `precision` significant digits.
mpq_class parse_rational(const std::string& text, unsigned precision = 64);

/// Decimal rendering rounded half away from zero to `places` decimals.
std::string format_fixed(const mpq_class& x, unsigned places);

}  // namespace clusteraf
