#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace clusteraf {

using Exponents = std::vector<int>;

/// Exact Laurent polynomial in `arity` variables with arbitrary-precision
/// integer coefficients.
///
/// Terms are kept in a map keyed by exponent vector in descending
/// lexicographic order (x1 > x2 > ... > xm). No stored coefficient is zero,
/// so two values are equal iff their term maps are equal.
class LaurentPoly {
public:
    using TermMap = std::map<Exponents, mpz_class, std::greater<Exponents>>;

    explicit LaurentPoly(std::size_t arity = 0) : arity_(arity) {}

    static LaurentPoly constant(std::size_t arity, const mpz_class& c);
    /// x_{index+1}^power (index is 0-based).
    static LaurentPoly variable(std::size_t arity, std::size_t index, int power = 1);
    static LaurentPoly monomial(Exponents exps, const mpz_class& c);

    std::size_t arity() const noexcept { return arity_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    const TermMap& terms() const noexcept { return terms_; }

    bool is_monomial() const noexcept { return terms_.size() == 1; }
    /// Componentwise minimum exponent over all terms; the monomial
    /// denominator is x^(-min) restricted to negative entries.
    Exponents min_exponents() const;
    /// Monomial part of the denominator: max(0, -min_exponents()).
    Exponents denominator_exponents() const;
    int total_degree_span() const;

    /// Adds c * x^e; a zero result erases the term.
    void add_term(const Exponents& e, const mpz_class& c);

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly operator-() const;

    LaurentPoly pow(unsigned e) const;
    /// Multiplies by x^shift.
    LaurentPoly shifted(const Exponents& shift) const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

    /// Text form `c*x1^e1*...*xm^em + ...` in canonical order.
    std::string to_string() const;

private:
    std::size_t arity_;
    TermMap terms_;
};

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

/// Exact quotient num/den, or nullopt when den does not divide num in
/// Z[x^{+-1}]. Throws ValidationError if den is zero or arities differ.
std::optional<LaurentPoly> div_exact(const LaurentPoly& num, const LaurentPoly& den);

/// Substitutes x_i -> x_{perm[i]} (0-based). perm must be a bijection.
LaurentPoly relabel(const LaurentPoly& p, std::span<const std::size_t> perm);

/// True iff p is nonzero and every coefficient is positive.
bool is_positive(const LaurentPoly& p);

/// Parses the text form produced by to_string(); variables are x1..x{arity}.
LaurentPoly parse_laurent(const std::string& text, std::size_t arity);

}  // namespace clusteraf
