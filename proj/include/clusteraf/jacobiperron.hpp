#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "clusteraf/diagram.hpp"
#include "clusteraf/quadratic.hpp"

namespace clusteraf {

/// Jacobi-Perron expansion of the direction (1, theta), theta in R^{n-1}.
///
/// The integer part floor(theta) is held apart; the digit vectors belong to
/// the fractional part alpha in [0,1)^{n-1}. One step of the map sends alpha
/// to the fractional parts of (alpha_2/alpha_1, ..., alpha_{n-1}/alpha_1,
/// 1/alpha_1), whose integer parts form the digit vector. For n = 2 the digits
/// are the partial quotients a_1, a_2, ... of the regular continued fraction.
struct JPExpansion {
    std::size_t n = 2;
    std::vector<mpz_class> integer_part;            ///< length n-1
    std::vector<std::vector<std::int64_t>> digits;  ///< each of length n-1
    bool finite = false;                            ///< alpha reached zero

    friend bool operator==(const JPExpansion&, const JPExpansion&) = default;
};

/// Throws DegenerateInput when alpha_1 vanishes while another coordinate does not.
JPExpansion jp_expand(const std::vector<mpq_class>& theta, std::size_t steps);
/// All coordinates must lie in one quadratic field.
JPExpansion jp_expand(const std::vector<QuadNum>& theta, std::size_t steps);
/// Double input is accepted for at most 15 steps (ValidationError beyond).
JPExpansion jp_expand(const std::vector<double>& theta, std::size_t steps);

/// n x n digit matrix: rows (b_{n-1}, 0, ..., 0, 1), (1, 0, ..., 0) and, for
/// i = 1..n-2, b_i in the first column with a 1 in column i.
BratteliDiagram::Matrix digit_matrix(const std::vector<std::int64_t>& b);

/// Column vectors v_0 = e_1 and v_k = M(b_1)...M(b_k) e_1 for k <= depth;
/// v_k is proportional to the k-th approximation of (1, alpha). For n = 2,
/// v_k = (q_k, p_k).
std::vector<std::vector<mpz_class>> k0_convergents(const JPExpansion& e, std::size_t depth);

/// Exact rational approximation (1, theta_k) after k digits; equals (1, theta)
/// once a finite expansion is exhausted.
std::vector<mpq_class> jp_convergent(const JPExpansion& e, std::size_t k);

/// Diagram with n vertices per level and multiplicity matrix M(b_k) from level
/// k-1 to level k, for k = 1..depth.
BratteliDiagram af_from_digits(const JPExpansion& e, std::size_t depth);

/// n = 2 only: the closed-open set of reals sharing floor(theta) and the first
/// k digits, returned as its two rational endpoints in increasing order.
std::pair<mpq_class, mpq_class> digit_cylinder(const JPExpansion& e, std::size_t k);

/// Half the distance from theta to the nearer endpoint of its depth-k cylinder;
/// every theta' closer than this shares the first k digits.
QuadNum continuity_radius(const QuadNum& theta, std::size_t k);

/// Regular continued fraction [a0; a1, a2, ...] of a rational, by Euclid.
std::vector<mpz_class> continued_fraction(const mpq_class& x);

}  // namespace clusteraf
