#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "clusteraf/bratteli.hpp"
#include "clusteraf/exchange.hpp"
#include "clusteraf/jacobiperron.hpp"
#include "clusteraf/laurent.hpp"
#include "clusteraf/surface.hpp"
#include "clusteraf/treequot.hpp"

namespace clusteraf {

using Json = nlohmann::ordered_json;

// Indices of cluster variables, quiver vertices, arcs and vertex sets are
// 1-based in JSON. Rationals and big integers are strings. Every from_json
// throws ParseError on malformed input and ValidationError when the parsed
// value breaks an invariant.

Json to_json(const ExchangeMatrix& b);
ExchangeMatrix matrix_from_json(const Json& j);

Json to_json(const Quiver& q);
Quiver quiver_from_json(const Json& j);

/// {"matrix": [[..]], "cluster": ["x1", ...]}; a missing cluster means the
/// initial one.
Json to_json(const Seed& s);
Seed seed_from_json(const Json& j);

Json to_json(const MutationTree& t);

Json to_json(const BratteliDiagram& d);
BratteliDiagram diagram_from_json(const Json& j);

Json to_json(const VertexSet& s);
VertexSet vertex_set_from_json(const Json& j);

Json to_json(const TreeQuotient& q, std::size_t rank);
TreeQuotient quotient_from_json(const Json& j);

Json to_json(const JPExpansion& e);
JPExpansion expansion_from_json(const Json& j);

Json to_json(const Triangulation& t);
Triangulation triangulation_from_json(const Json& j);

Json to_json(const LambdaLengths& l);
LambdaLengths lambdas_from_json(const Json& j);

/// Inverse of path_label.
Path parse_path_label(const std::string& s, std::size_t rank);

/// Reads a whole file as JSON; ParseError when unreadable or malformed.
Json read_json_file(const std::string& path);

/// Graphviz rendering with one rank=same subgraph per level; labels[n][v]
/// names vertex v of level n when given.
std::string to_dot(const BratteliDiagram& d, const std::vector<std::vector<std::string>>& labels = {},
                   const std::string& name = "bratteli");

}  // namespace clusteraf
