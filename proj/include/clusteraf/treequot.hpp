#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "clusteraf/diagram.hpp"
#include "clusteraf/exchange.hpp"

namespace clusteraf {

/// Direction word from the root, 0-based directions.
using Path = std::vector<std::size_t>;

/// 1-based rendering such as "13" (or "1.10" when the rank exceeds 9).
std::string path_label(const Path& p, std::size_t rank);

struct MutationTreeNode {
    Seed seed;
    std::size_t level = 0;
    Path path;
};

/// Nodes grouped by level; within a level they are in lexicographic path order.
struct MutationTree {
    std::vector<std::vector<MutationTreeNode>> levels;
    std::size_t node_count() const;
};

constexpr std::size_t default_node_budget = 1000000;

/// Node cap from CLUSTER_AF_BUDGET when set, otherwise `fallback`.
std::size_t node_budget_from_env(std::size_t fallback = default_node_budget);

/// Complete m-ary tree of mutated seeds. Throws BudgetExceeded when the node
/// count would exceed `budget`.
MutationTree build_mutation_tree(const Seed& root, std::size_t depth,
                                 std::size_t budget = default_node_budget, unsigned threads = 1);

enum class MatrixMatch {
    Conjugated,  ///< rho applied to rows and columns before comparing
    Strict       ///< matrices compared entrywise as stored
};

/// Cyclic shift r (rho(i) = i + r mod m) carrying seed a onto seed b, if any.
/// The cluster entry at position i of a, relabeled by rho, must equal the
/// entry at position rho(i) of b.
std::optional<std::size_t> cyclic_match(const Seed& a, const Seed& b,
                                        MatrixMatch mode = MatrixMatch::Conjugated);

/// Same level and a cyclic relabeling carries one seed onto the other.
bool l_equivalent(const MutationTreeNode& a, const MutationTreeNode& b,
                  MatrixMatch mode = MatrixMatch::Conjugated);

enum class MergePolicy {
    FigureFaithful,  ///< only neighbouring subtrees meet; seeds compared relative to their common ancestor
    Literal,         ///< figure-faithful plus merging of identical seeds
    Absolute         ///< every pair of same-level nodes, seeds compared over the root variables
};

std::string to_string(MergePolicy p);
/// Accepts "figure-faithful", "literal" and "absolute"; throws ParseError otherwise.
MergePolicy parse_policy(const std::string& s);

struct MergeRecord {
    Path a, b;                  ///< representative paths of the merged vertices
    Path witness_a, witness_b;  ///< tree nodes whose seeds matched
    std::size_t shift = 0;      ///< rho(i) = i + shift mod m
};

struct LevelQuotient {
    std::size_t level = 0;
    std::vector<std::vector<Path>> classes;  ///< members of each diagram vertex, sorted
    std::vector<MergeRecord> merges;
};

struct TreeQuotient {
    BratteliDiagram diagram;
    std::vector<LevelQuotient> quotients;  ///< one per level, level 0 included
    MergePolicy policy = MergePolicy::FigureFaithful;
    MatrixMatch match = MatrixMatch::Conjugated;
    /// Every member of a vertex sends the same number of tree edges into
    /// each vertex of the next level.
    bool representative_independent = true;
};

struct QuotientOptions {
    MergePolicy policy = MergePolicy::FigureFaithful;
    MatrixMatch match = MatrixMatch::Conjugated;
    std::size_t budget = default_node_budget;
    unsigned threads = 1;
};

/// Mutation tree modulo l-equivalence, truncated after `depth` levels. A
/// budget overrun yields the levels finished so far with diagram.incomplete set.
TreeQuotient build_bratteli(const Seed& root, std::size_t depth, const QuotientOptions& opt = {});

}  // namespace clusteraf
