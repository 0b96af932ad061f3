#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clusteraf/laurent.hpp"

namespace clusteraf {

/// Skew-symmetric integer matrix of a seed. Indices are 0-based.
class ExchangeMatrix {
public:
    using Row = std::vector<std::int64_t>;

    ExchangeMatrix() = default;
    /// Throws ValidationError unless rows form a square skew-symmetric matrix.
    explicit ExchangeMatrix(std::vector<Row> rows);

    static ExchangeMatrix zero(std::size_t m);
    /// Circulant matrix whose first row is `first_row`; must be skew-symmetric.
    static ExchangeMatrix circulant(const Row& first_row);

    std::size_t rank() const noexcept { return b_.size(); }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return b_[i][j]; }
    const std::vector<Row>& rows() const noexcept { return b_; }

    ExchangeMatrix operator-() const;
    /// Conjugation by a relabeling: result(perm[i], perm[j]) = b(i, j).
    ExchangeMatrix relabeled(std::span<const std::size_t> perm) const;

    friend bool operator==(const ExchangeMatrix&, const ExchangeMatrix&) = default;
    friend auto operator<=>(const ExchangeMatrix& a, const ExchangeMatrix& b) { return a.b_ <=> b.b_; }

    std::string to_string() const;

private:
    std::vector<Row> b_;
};

/// Matrix of the Markov quiver (double arrows 1->2->3->1).
ExchangeMatrix markov_matrix();

ExchangeMatrix matrix_mutate(const ExchangeMatrix& b, std::size_t k);

/// Quiver on vertices 0..n-1; arrows stored as a multiset of ordered pairs.
struct Quiver {
    std::size_t vertices = 0;
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> arrows;  ///< multiplicity per pair

    /// Throws ValidationError on loops, 2-cycles or out-of-range endpoints.
    void validate() const;
    std::int64_t count(std::size_t i, std::size_t j) const;
    friend bool operator==(const Quiver&, const Quiver&) = default;
};

Quiver quiver_mutate(const Quiver& q, std::size_t k);
ExchangeMatrix to_matrix(const Quiver& q);
Quiver to_quiver(const ExchangeMatrix& b);

struct Seed {
    std::vector<LaurentPoly> cluster;
    ExchangeMatrix matrix;

    std::size_t rank() const noexcept { return cluster.size(); }
    friend bool operator==(const Seed&, const Seed&) = default;
};

/// Seed (x1, ..., xm; b) in the initial variables.
Seed initial_seed(const ExchangeMatrix& b);
/// Throws ValidationError if the cluster does not match the matrix rank.
void validate_seed(const Seed& s);

/// Throws InternalError if the exchange relation fails to divide exactly.
Seed seed_mutate(const Seed& s, std::size_t k);
Seed seed_mutate_word(Seed s, std::span<const std::size_t> word);

struct MutationClass {
    bool finite = false;
    std::size_t orbit_size = 0;           ///< matrices found (up to the bound when not finite)
    std::vector<ExchangeMatrix> orbit;    ///< in discovery order, empty when not finite
};

/// Breadth-first search of the mutation class up to literal equality, or up
/// to simultaneous row/column permutation when permutation_closure is set.
MutationClass is_mutation_finite(const ExchangeMatrix& b, std::size_t bound,
                                 bool permutation_closure = false);

/// Lexicographically least matrix among all simultaneous relabelings.
ExchangeMatrix permutation_canonical(const ExchangeMatrix& b);

}  // namespace clusteraf
