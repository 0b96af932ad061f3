#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "clusteraf/exchange.hpp"

namespace clusteraf {

struct SurfaceParams {
    int g = 0;
    int n = 1;
    int m = 0;  ///< arcs, 6g-6+3n
    int d = 0;  ///< 6g-6+2n
};

/// Throws ValidationError unless g >= 0, n >= 1 and 2g-2+n > 0.
SurfaceParams surface_params(int g, int n);
/// All (g, n) with 6g-6+3n = m; throws ValidationError when there is none.
std::vector<std::pair<int, int>> pairs_for_rank(int m);

/// Three arcs (0-based) bounding a triangle, listed in the stated direction.
struct Triangle {
    std::array<std::size_t, 3> arcs{};
    bool clockwise = true;

    /// The arcs in clockwise order.
    std::array<std::size_t, 3> cw() const {
        return clockwise ? arcs : std::array<std::size_t, 3>{arcs[2], arcs[1], arcs[0]};
    }
    friend bool operator==(const Triangle&, const Triangle&) = default;
};

struct Triangulation {
    int g = 0;
    int n = 1;
    std::size_t arcs = 0;
    std::vector<Triangle> triangles;

    /// Checks arc counts, two sides per arc, absence of self-folded
    /// triangles, and the puncture and Euler counts against (g, n).
    void validate() const;
    /// Puncture class of each corner: corners[t][i] sits between clockwise
    /// sides i and i+1 of triangle t.
    std::vector<std::array<std::size_t, 3>> corner_punctures() const;
    std::size_t puncture_count() const;
    /// Endpoints (puncture classes) of an arc.
    std::pair<std::size_t, std::size_t> arc_endpoints(std::size_t arc) const;

    friend bool operator==(const Triangulation&, const Triangulation&) = default;
};

ExchangeMatrix bt_from_triangulation(const Triangulation& t);

/// Sides of the quadrilateral around an arc, in clockwise order a, b, c, d,
/// so that a faces c and b faces d.
struct Quadrilateral {
    std::size_t diagonal;
    std::array<std::size_t, 4> sides;
    std::size_t t1, t2;
};

/// nullopt when the arc does not bound two distinct triangles forming a
/// quadrilateral whose flip stays free of self-folded triangles.
std::optional<Quadrilateral> quadrilateral(const Triangulation& t, std::size_t arc);
bool is_flippable(const Triangulation& t, std::size_t arc);

/// lambda(d0) * lambda(d1) = lambda(s0) * lambda(s2) + lambda(s1) * lambda(s3).
/// Indices refer to LambdaLengths::registry.
struct PtolemyRelation {
    std::array<std::size_t, 4> sides;
    std::array<std::size_t, 2> diagonals;
    friend bool operator==(const PtolemyRelation&, const PtolemyRelation&) = default;
};

/// Positive lambda lengths. Every arc ever present keeps its registry entry,
/// so relations recorded before a flip stay checkable afterwards.
struct LambdaLengths {
    std::vector<mpq_class> registry;
    std::vector<std::size_t> slot;  ///< current arc -> registry index
    std::vector<PtolemyRelation> relations;

    const mpq_class& at(std::size_t arc) const { return registry[slot.at(arc)]; }
    std::vector<mpq_class> current() const;
    /// Left minus right side of each relation.
    std::vector<mpq_class> residuals() const;
    bool relations_hold() const;
    bool positive() const;

    friend bool operator==(const LambdaLengths&, const LambdaLengths&) = default;
};

/// One relation per puncture: distinct flippable arcs are assigned to as many
/// punctures as possible (a maximum matching, larger arc indices preferred),
/// each arc k ending at its puncture and constrained by lambda(k)^2 = ac + bd with
/// a, b, c, d the sides of its quadrilateral. Punctures without a candidate
/// contribute nothing.
std::vector<PtolemyRelation> initial_relations(const Triangulation& t);

/// Wraps values with the initial relations. Throws ValidationError when a value
/// is not positive or the arc count differs; relations_hold() reports the rest.
LambdaLengths make_lambda_lengths(const Triangulation& t, std::vector<mpq_class> values);

/// (lambda_a lambda_c + lambda_b lambda_d) / lambda_k.
mpq_class ptolemy_flip_value(const mpq_class& a, const mpq_class& b, const mpq_class& c, const mpq_class& d,
                             const mpq_class& k);

struct FlipResult {
    Triangulation triangulation;
    LambdaLengths lambdas;
};

/// Replaces arc k by the other diagonal of its quadrilateral; the new arc keeps
/// index k. Throws ValidationError when k is not flippable.
FlipResult flip(const Triangulation& t, const LambdaLengths& l, std::size_t k);
Triangulation flip(const Triangulation& t, std::size_t k);

/// Rank over Q of the Jacobian of the relation polynomials at `point`, one
/// variable per current arc. Throws ValidationError when a relation mentions
/// a registry entry that is no longer the length of a current arc.
std::size_t ptolemy_jacobian_rank(const LambdaLengths& l, const std::vector<mpq_class>& point);

/// Fixed test surfaces.
Triangulation torus_one_puncture();   ///< S_{1,1}, the Markov triangulation
Triangulation sphere_three_punctures();
Triangulation sphere_four_punctures();
Triangulation torus_two_punctures();
Triangulation sphere_five_punctures();

}  // namespace clusteraf
