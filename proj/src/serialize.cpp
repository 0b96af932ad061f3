#include "clusteraf/serialize.hpp"

#include <fstream>
#include <sstream>

#include "clusteraf/error.hpp"

namespace clusteraf {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field '") + key + "'");
    return *it;
}

template <class T>
T get(const Json& j, const char* what) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        bad(std::string("field '") + what + "' has the wrong type");
    }
}

std::size_t index1(const Json& j, std::size_t bound, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    auto v = j.get<long long>();
    if (v < 1 || static_cast<std::size_t>(v) > bound)
        throw ValidationError(std::string(what) + " " + std::to_string(v) + " out of range 1.." + std::to_string(bound));
    return static_cast<std::size_t>(v - 1);
}

mpq_class rational_of(const Json& j, const char* what) {
    if (j.is_number_integer()) return mpq_class(mpz_class(std::to_string(j.get<long long>())));
    if (!j.is_string()) bad(std::string(what) + " must be a rational string");
    mpq_class q;
    const std::string s = j.get<std::string>();
    try {
        q = mpq_class(s);
    } catch (const std::invalid_argument&) {
        bad(std::string(what) + " '" + s + "' is not a rational");
    }
    if (q.get_den() == 0) bad(std::string(what) + " has a zero denominator");
    q.canonicalize();
    return q;
}

mpz_class integer_of(const Json& j, const char* what) {
    mpq_class q = rational_of(j, what);
    if (q.get_den() != 1) bad(std::string(what) + " must be an integer");
    return q.get_num();
}

Json matrix_rows(const BratteliDiagram::Matrix& m) {
    Json a = Json::array();
    for (const auto& r : m) a.push_back(r);
    return a;
}

BratteliDiagram::Matrix matrix_of(const Json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array of rows");
    BratteliDiagram::Matrix m;
    for (const auto& r : j) m.push_back(get<std::vector<std::int64_t>>(r, what));
    return m;
}

Json path_list(const std::vector<Path>& ps, std::size_t rank) {
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(path_label(p, rank));
    return a;
}

}  // namespace

Json to_json(const ExchangeMatrix& b) { return matrix_rows(b.rows()); }

ExchangeMatrix matrix_from_json(const Json& j) { return ExchangeMatrix(matrix_of(j, "matrix")); }

Json to_json(const Quiver& q) {
    Json arrows = Json::array();
    for (const auto& [e, c] : q.arrows) arrows.push_back({e.first + 1, e.second + 1, c});
    return Json{{"vertices", q.vertices}, {"arrows", arrows}};
}

Quiver quiver_from_json(const Json& j) {
    Quiver q;
    q.vertices = get<std::size_t>(field(j, "vertices"), "vertices");
    for (const auto& a : field(j, "arrows")) {
        if (!a.is_array() || a.size() != 3) bad("each arrow is [from, to, count]");
        std::size_t from = index1(a[0], q.vertices, "arrow tail"), to = index1(a[1], q.vertices, "arrow head");
        q.arrows[{from, to}] += get<std::int64_t>(a[2], "arrow count");
    }
    q.validate();
    return q;
}

Json to_json(const Seed& s) {
    Json c = Json::array();
    for (const auto& x : s.cluster) c.push_back(x.to_string());
    return Json{{"rank", s.rank()}, {"matrix", to_json(s.matrix)}, {"cluster", c}};
}

Seed seed_from_json(const Json& j) {
    ExchangeMatrix b = matrix_from_json(field(j, "matrix"));
    Seed s = initial_seed(b);
    if (j.contains("rank") && get<std::size_t>(j["rank"], "rank") != b.rank())
        throw ValidationError("seed rank disagrees with its matrix");
    if (j.contains("cluster")) {
        const auto& c = j["cluster"];
        if (!c.is_array() || c.size() != b.rank()) throw ValidationError("cluster needs one entry per row of the matrix");
        for (std::size_t i = 0; i < c.size(); ++i)
            s.cluster[i] = parse_laurent(get<std::string>(c[i], "cluster"), b.rank());
    }
    validate_seed(s);
    return s;
}

Json to_json(const MutationTree& t) {
    Json levels = Json::array();
    for (const auto& lv : t.levels) {
        Json nodes = Json::array();
        for (const auto& n : lv) {
            std::size_t m = n.seed.rank();
            Json c = Json::array();
            for (const auto& x : n.seed.cluster) c.push_back(x.to_string());
            nodes.push_back({{"path", path_label(n.path, m)}, {"cluster", c}, {"matrix", to_json(n.seed.matrix)}});
        }
        levels.push_back(nodes);
    }
    return Json{{"nodes", t.node_count()}, {"levels", levels}};
}

Json to_json(const BratteliDiagram& d) {
    Json e = Json::array();
    for (const auto& m : d.edges) e.push_back(matrix_rows(m));
    return Json{{"levels", d.widths}, {"edges", e}, {"incomplete", d.incomplete}, {"degenerate", d.degenerate}};
}

BratteliDiagram diagram_from_json(const Json& j) {
    BratteliDiagram d;
    d.widths = get<std::vector<std::size_t>>(field(j, "levels"), "levels");
    for (const auto& m : field(j, "edges")) d.edges.push_back(matrix_of(m, "edges"));
    if (j.contains("incomplete")) d.incomplete = get<bool>(j["incomplete"], "incomplete");
    if (j.contains("degenerate")) d.degenerate = get<bool>(j["degenerate"], "degenerate");
    d.validate();
    return d;
}

Json to_json(const VertexSet& s) {
    Json a = Json::array();
    for (const auto& lv : s.levels) {
        Json l = Json::array();
        for (auto v : lv) l.push_back(v + 1);
        a.push_back(l);
    }
    return Json{{"levels", a}};
}

VertexSet vertex_set_from_json(const Json& j) {
    VertexSet s;
    const auto& lv = field(j, "levels");
    if (!lv.is_array()) bad("vertex set levels must be an array");
    s.levels.resize(lv.size());
    for (std::size_t n = 0; n < lv.size(); ++n)
        for (const auto& v : lv[n]) {
            auto x = get<long long>(v, "vertex");
            if (x < 1) throw ValidationError("vertex indices start at 1");
            s.insert(n, static_cast<std::size_t>(x - 1));
        }
    return s;
}

Json to_json(const TreeQuotient& q, std::size_t rank) {
    Json quotients = Json::array(), merges = Json::array();
    for (const auto& lq : q.quotients) {
        Json cls = Json::array(), ms = Json::array();
        for (const auto& c : lq.classes) cls.push_back(path_list(c, rank));
        for (const auto& m : lq.merges) {
            ms.push_back({{"a", path_label(m.a, rank)},
                          {"b", path_label(m.b, rank)},
                          {"witness_a", path_label(m.witness_a, rank)},
                          {"witness_b", path_label(m.witness_b, rank)},
                          {"shift", m.shift}});
            merges.push_back(Json::array({"mu" + path_label(m.a, rank), "mu" + path_label(m.b, rank)}));
        }
        quotients.push_back({{"level", lq.level}, {"classes", cls}, {"merges", ms}});
    }
    return Json{{"policy", to_string(q.policy)},
                {"match", q.match == MatrixMatch::Conjugated ? "conjugated" : "strict"},
                {"rank", rank},
                {"levels", q.diagram.widths},
                {"merges", merges},
                {"representative_independent", q.representative_independent},
                {"diagram", to_json(q.diagram)},
                {"quotients", quotients}};
}

TreeQuotient quotient_from_json(const Json& j) {
    TreeQuotient q;
    q.policy = parse_policy(get<std::string>(field(j, "policy"), "policy"));
    std::string match = get<std::string>(field(j, "match"), "match");
    if (match == "conjugated")
        q.match = MatrixMatch::Conjugated;
    else if (match == "strict")
        q.match = MatrixMatch::Strict;
    else
        bad("unknown match mode '" + match + "'");
    std::size_t rank = get<std::size_t>(field(j, "rank"), "rank");
    q.representative_independent = get<bool>(field(j, "representative_independent"), "representative_independent");
    q.diagram = diagram_from_json(field(j, "diagram"));
    for (const auto& lj : field(j, "quotients")) {
        LevelQuotient lq;
        lq.level = get<std::size_t>(field(lj, "level"), "level");
        for (const auto& c : field(lj, "classes")) {
            std::vector<Path> members;
            for (const auto& p : c) members.push_back(parse_path_label(get<std::string>(p, "class"), rank));
            lq.classes.push_back(std::move(members));
        }
        for (const auto& mj : field(lj, "merges")) {
            MergeRecord m;
            m.a = parse_path_label(get<std::string>(field(mj, "a"), "a"), rank);
            m.b = parse_path_label(get<std::string>(field(mj, "b"), "b"), rank);
            m.witness_a = parse_path_label(get<std::string>(field(mj, "witness_a"), "witness_a"), rank);
            m.witness_b = parse_path_label(get<std::string>(field(mj, "witness_b"), "witness_b"), rank);
            m.shift = get<std::size_t>(field(mj, "shift"), "shift");
            lq.merges.push_back(std::move(m));
        }
        q.quotients.push_back(std::move(lq));
    }
    return q;
}

Json to_json(const JPExpansion& e) {
    Json ip = Json::array();
    for (const auto& z : e.integer_part) ip.push_back(z.get_str());
    return Json{{"n", e.n}, {"integer_part", ip}, {"digits", e.digits}, {"finite", e.finite}};
}

JPExpansion expansion_from_json(const Json& j) {
    JPExpansion e;
    e.n = get<std::size_t>(field(j, "n"), "n");
    if (e.n < 2) throw ValidationError("expansion needs n >= 2");
    for (const auto& z : field(j, "integer_part")) e.integer_part.push_back(integer_of(z, "integer part"));
    e.digits = get<std::vector<std::vector<std::int64_t>>>(field(j, "digits"), "digits");
    e.finite = get<bool>(field(j, "finite"), "finite");
    if (e.integer_part.size() != e.n - 1) throw ValidationError("integer part needs n-1 entries");
    for (const auto& b : e.digits) {
        if (b.size() != e.n - 1) throw ValidationError("each digit vector needs n-1 entries");
        for (auto v : b)
            if (v < 0) throw ValidationError("digits must be non-negative");
    }
    return e;
}

Json to_json(const Triangulation& t) {
    Json tris = Json::array();
    for (const auto& tr : t.triangles)
        tris.push_back({{"arcs", {tr.arcs[0] + 1, tr.arcs[1] + 1, tr.arcs[2] + 1}},
                        {"orientation", tr.clockwise ? "cw" : "ccw"}});
    return Json{{"genus", t.g}, {"punctures", t.n}, {"arcs", t.arcs}, {"triangles", tris}};
}

Triangulation triangulation_from_json(const Json& j) {
    Triangulation t;
    t.g = get<int>(field(j, "genus"), "genus");
    t.n = get<int>(field(j, "punctures"), "punctures");
    t.arcs = get<std::size_t>(field(j, "arcs"), "arcs");
    for (const auto& tj : field(j, "triangles")) {
        Triangle tr;
        const auto& a = field(tj, "arcs");
        if (!a.is_array() || a.size() != 3) bad("a triangle lists three arcs");
        for (std::size_t i = 0; i < 3; ++i) tr.arcs[i] = index1(a[i], t.arcs, "arc");
        if (tj.contains("orientation")) {
            std::string o = get<std::string>(tj["orientation"], "orientation");
            if (o == "cw")
                tr.clockwise = true;
            else if (o == "ccw")
                tr.clockwise = false;
            else
                bad("orientation must be cw or ccw");
        }
        t.triangles.push_back(tr);
    }
    t.validate();
    return t;
}

Json to_json(const LambdaLengths& l) {
    Json reg = Json::array(), slot = Json::array(), rel = Json::array();
    for (const auto& v : l.registry) reg.push_back(v.get_str());
    for (auto s : l.slot) slot.push_back(s + 1);
    for (const auto& r : l.relations)
        rel.push_back({{"sides", {r.sides[0] + 1, r.sides[1] + 1, r.sides[2] + 1, r.sides[3] + 1}},
                       {"diagonals", {r.diagonals[0] + 1, r.diagonals[1] + 1}}});
    return Json{{"current", [&] {
                     Json c = Json::array();
                     for (const auto& v : l.current()) c.push_back(v.get_str());
                     return c;
                 }()},
                {"registry", reg},
                {"slot", slot},
                {"relations", rel}};
}

LambdaLengths lambdas_from_json(const Json& j) {
    LambdaLengths l;
    for (const auto& v : field(j, "registry")) l.registry.push_back(rational_of(v, "lambda length"));
    const std::size_t r = l.registry.size();
    for (const auto& s : field(j, "slot")) l.slot.push_back(index1(s, r, "slot"));
    for (const auto& rj : field(j, "relations")) {
        PtolemyRelation p{};
        const auto& s = field(rj, "sides");
        const auto& d = field(rj, "diagonals");
        if (!s.is_array() || s.size() != 4 || !d.is_array() || d.size() != 2)
            bad("a relation has four sides and two diagonals");
        for (std::size_t i = 0; i < 4; ++i) p.sides[i] = index1(s[i], r, "side");
        for (std::size_t i = 0; i < 2; ++i) p.diagonals[i] = index1(d[i], r, "diagonal");
        l.relations.push_back(p);
    }
    return l;
}

Path parse_path_label(const std::string& s, std::size_t rank) {
    Path p;
    if (s.empty()) return p;
    auto push = [&](const std::string& tok) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            bad("bad path label '" + s + "'");
        unsigned long v = std::stoul(tok);
        if (v < 1 || v > rank) throw ValidationError("path label '" + s + "' leaves 1.." + std::to_string(rank));
        p.push_back(v - 1);
    };
    if (rank > 9) {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, '.')) push(tok);
    } else {
        for (char c : s) push(std::string(1, c));
    }
    return p;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        bad("'" + path + "' is not valid JSON: " + e.what());
    }
}

std::string to_dot(const BratteliDiagram& d, const std::vector<std::vector<std::string>>& labels,
                   const std::string& name) {
    auto quote = [](const std::string& s) {
        std::string r = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') r += '\\';
            r += c;
        }
        return r + "\"";
    };
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n  rankdir=TB;\n  node [shape=circle, fontsize=10];\n";
    for (std::size_t n = 0; n < d.levels(); ++n) {
        os << "  subgraph level" << n << " {\n    rank=same;\n";
        for (std::size_t v = 0; v < d.widths[n]; ++v) {
            std::string label = n < labels.size() && v < labels[n].size() ? labels[n][v] : std::to_string(v + 1);
            os << "    v" << n << '_' << v << " [label=" << quote(label) << "];\n";
        }
        os << "  }\n";
    }
    for (std::size_t n = 0; n < d.edges.size(); ++n)
        for (std::size_t u = 0; u < d.edges[n].size(); ++u)
            for (std::size_t v = 0; v < d.edges[n][u].size(); ++v) {
                auto k = d.edges[n][u][v];
                if (k == 0) continue;
                os << "  v" << n << '_' << u << " -> v" << n + 1 << '_' << v;
                if (k > 1) os << " [label=" << quote(std::to_string(k)) << "]";
                os << ";\n";
            }
    os << "}\n";
    return os.str();
}

}  // namespace clusteraf
