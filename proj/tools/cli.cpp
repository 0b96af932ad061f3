#include "cli.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "clusteraf/bratteli.hpp"
#include "clusteraf/error.hpp"
#include "clusteraf/jacobiperron.hpp"
#include "clusteraf/modular.hpp"
#include "clusteraf/quadratic.hpp"
#include "clusteraf/serialize.hpp"
#include "clusteraf/surface.hpp"
#include "clusteraf/treequot.hpp"

namespace clusteraf::cli {

namespace {

struct Options {
    std::string seed, policy = "figure-faithful", theta, format, word, lambdas, scale;
    std::vector<std::string> matrices;
    std::size_t depth = 2, steps = 10, arc = 0, d = 2;
    unsigned threads = 1, precision = 12;
    std::optional<std::size_t> budget;
    std::optional<double> t;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

std::string fixed(double x, unsigned places) {
    if (places > 15) throw ValidationError("floating-point output carries at most 15 decimals");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", static_cast<int>(places), x);
    std::string s = buf;
    if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s = s.substr(1);
    return s;
}

std::string fixed(const QuadNum& x, unsigned places) {
    mpf_class f = x.approx(64 + 4 * places);
    return format_fixed(mpq_class(f), places);
}

std::string format_or(const Options& o, const std::string& fallback) { return o.format.empty() ? fallback : o.format; }

void need_format(const std::string& f, std::initializer_list<const char*> allowed) {
    for (auto a : allowed)
        if (f == a) return;
    throw ValidationError("format '" + f + "' is not available for this command");
}

Seed load_seed(const Options& o) {
    if (o.seed.empty()) throw ValidationError("--seed FILE is required");
    return seed_from_json(read_json_file(o.seed));
}

Triangulation load_triangulation(const Options& o) {
    if (o.seed.empty()) throw ValidationError("--seed FILE with a triangulation is required");
    return triangulation_from_json(read_json_file(o.seed));
}

std::vector<QuadNum> parse_theta(const Options& o) {
    if (o.theta.empty()) throw ValidationError("--theta is required");
    std::vector<QuadNum> th;
    for (const auto& c : split(o.theta, ',')) th.push_back(parse_quadratic(c));
    return th;
}

std::vector<mpq_class> parse_values(const std::string& s) {
    std::vector<mpq_class> v;
    for (const auto& c : split(s, ',')) v.push_back(parse_rational(c));
    return v;
}

std::size_t budget_of(const Options& o) { return o.budget ? *o.budget : node_budget_from_env(); }

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int cmd_mutate(const Options& o, std::ostream& out) {
    need_format(format_or(o, "json"), {"json"});
    Seed s = load_seed(o);
    std::vector<std::size_t> word;
    if (!o.word.empty())
        for (const auto& w : split(o.word, ',')) {
            std::size_t used = 0;
            long k = 0;
            try {
                k = std::stol(w, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != w.size()) throw ParseError("mutation word entry '" + w + "' is not an integer");
            if (k < 1 || static_cast<std::size_t>(k) > s.rank())
                throw ValidationError("direction " + w + " out of range 1.." + std::to_string(s.rank()));
            word.push_back(static_cast<std::size_t>(k - 1));
        }
    emit(out, to_json(seed_mutate_word(s, word)));
    return Ok;
}

int cmd_tree(const Options& o, std::ostream& out) {
    std::string f = format_or(o, "json");
    need_format(f, {"json", "dot"});
    Seed s = load_seed(o);
    MutationTree t = build_mutation_tree(s, o.depth, budget_of(o), o.threads);
    if (f == "json") {
        emit(out, to_json(t));
        return Ok;
    }
    const std::size_t m = s.rank();
    BratteliDiagram d;
    std::vector<std::vector<std::string>> labels;
    for (std::size_t n = 0; n < t.levels.size(); ++n) {
        d.widths.push_back(t.levels[n].size());
        labels.emplace_back();
        for (const auto& node : t.levels[n]) labels.back().push_back(n ? "mu" + path_label(node.path, m) : "x");
        if (n) {
            BratteliDiagram::Matrix e(t.levels[n - 1].size(), std::vector<std::int64_t>(t.levels[n].size(), 0));
            for (std::size_t u = 0; u < e.size(); ++u)
                for (std::size_t k = 0; k < m; ++k) e[u][u * m + k] = 1;
            d.edges.push_back(std::move(e));
        }
    }
    out << to_dot(d, labels, "mutation_tree");
    return Ok;
}

int cmd_bratteli(const Options& o, std::ostream& out, std::ostream& err) {
    std::string f = format_or(o, "json");
    need_format(f, {"json", "dot"});
    Seed s = load_seed(o);
    QuotientOptions q;
    q.policy = parse_policy(o.policy);
    q.budget = budget_of(o);
    q.threads = o.threads;
    TreeQuotient r = build_bratteli(s, o.depth, q);
    if (f == "json") {
        emit(out, to_json(r, s.rank()));
    } else {
        std::vector<std::vector<std::string>> labels;
        for (const auto& lq : r.quotients) {
            labels.emplace_back();
            for (const auto& c : lq.classes) {
                std::string l;
                for (const auto& p : c) l += (l.empty() ? "" : "=") + (p.empty() ? std::string("x") : path_label(p, s.rank()));
                labels.back().push_back(l);
            }
        }
        out << to_dot(r.diagram, labels);
    }
    if (r.diagram.incomplete) {
        err << "error: node budget " << q.budget << " exhausted after " << r.diagram.levels() - 1 << " levels\n";
        return Budget;
    }
    return Ok;
}

int cmd_jp(const Options& o, std::ostream& out) {
    need_format(format_or(o, "json"), {"json"});
    auto th = parse_theta(o);
    JPExpansion e = jp_expand(th, o.steps);
    Json j = to_json(e);
    Json conv = Json::array();
    for (std::size_t k = 1; k <= e.digits.size(); ++k) {
        auto c = jp_convergent(e, k);
        Json exact = Json::array(), dec = Json::array();
        for (std::size_t i = 1; i < c.size(); ++i) {
            exact.push_back(c[i].get_str());
            dec.push_back(format_fixed(c[i], o.precision));
        }
        conv.push_back({{"k", k}, {"theta", exact}, {"decimal", dec}});
    }
    j["convergents"] = conv;
    Json k0 = Json::array();
    for (const auto& v : k0_convergents(e, e.digits.size())) {
        Json row = Json::array();
        for (const auto& z : v) row.push_back(z.get_str());
        k0.push_back(row);
    }
    j["k0"] = k0;
    emit(out, j);
    return Ok;
}

int cmd_af(const Options& o, std::ostream& out) {
    std::string f = format_or(o, "json");
    need_format(f, {"json", "dot"});
    JPExpansion e = jp_expand(parse_theta(o), o.steps);
    BratteliDiagram d = af_from_digits(e, e.digits.size());
    if (f == "json") {
        Json j{{"expansion", to_json(e)}, {"diagram", to_json(d)}};
        Json dims = Json::array();
        for (const auto& lv : path_counts(d)) {
            Json r = Json::array();
            for (const auto& z : lv) r.push_back(z.get_str());
            dims.push_back(r);
        }
        j["dimensions"] = dims;
        emit(out, j);
    } else {
        out << to_dot(d, {}, "af");
    }
    return Ok;
}

Json relations_json(const LambdaLengths& l) {
    Json j = to_json(l);
    j["relations_hold"] = l.relations_hold();
    return j;
}

int cmd_triangulate(const Options& o, std::ostream& out) {
    need_format(format_or(o, "json"), {"json"});
    Triangulation t = load_triangulation(o);
    SurfaceParams p = surface_params(t.g, t.n);
    Json flippable = Json::array(), ends = Json::array();
    for (std::size_t a = 0; a < t.arcs; ++a) {
        if (is_flippable(t, a)) flippable.push_back(a + 1);
        auto [x, y] = t.arc_endpoints(a);
        ends.push_back({x + 1, y + 1});
    }
    Json rel = Json::array();
    for (const auto& r : initial_relations(t))
        rel.push_back({{"sides", {r.sides[0] + 1, r.sides[1] + 1, r.sides[2] + 1, r.sides[3] + 1}},
                       {"diagonal", r.diagonals[0] + 1}});
    Json j{{"triangulation", to_json(t)},
           {"rank", p.m},
           {"dimension", p.d},
           {"matrix", to_json(bt_from_triangulation(t))},
           {"arc_endpoints", ends},
           {"flippable", flippable},
           {"ptolemy_relations", rel}};
    if (!o.lambdas.empty()) j["lambdas"] = relations_json(make_lambda_lengths(t, parse_values(o.lambdas)));
    emit(out, j);
    return Ok;
}

int cmd_flip(const Options& o, std::ostream& out) {
    need_format(format_or(o, "json"), {"json"});
    Triangulation t = load_triangulation(o);
    if (o.arc < 1 || o.arc > t.arcs) throw ValidationError("--arc must lie in 1.." + std::to_string(t.arcs));
    std::size_t k = o.arc - 1;
    Json j;
    if (!o.lambdas.empty()) {
        FlipResult r = flip(t, make_lambda_lengths(t, parse_values(o.lambdas)), k);
        j = Json{{"triangulation", to_json(r.triangulation)},
                 {"matrix", to_json(bt_from_triangulation(r.triangulation))},
                 {"lambdas", relations_json(r.lambdas)}};
    } else {
        Triangulation r = flip(t, k);
        j = Json{{"triangulation", to_json(r)}, {"matrix", to_json(bt_from_triangulation(r))}};
    }
    j["mutation_agrees"] = j["matrix"] == to_json(matrix_mutate(bt_from_triangulation(t), k));
    emit(out, j);
    return Ok;
}

int cmd_sigma(const Options& o, std::ostream& out) {
    need_format(format_or(o, "json"), {"json"});
    if (o.lambdas.empty()) throw ValidationError("--lambdas is required");
    if (o.scale.empty() == !o.t) throw ValidationError("give exactly one of --scale and --t");
    auto values = parse_values(o.lambdas);
    Json j;
    if (!o.scale.empty()) {
        FlowParam f = FlowParam::exact(parse_rational(o.scale));
        j["t"] = fixed(f.t, o.precision);
        if (!o.seed.empty()) {
            Triangulation t = load_triangulation(o);
            LambdaLengths l = make_lambda_lengths(t, values);
            j["before"] = relations_json(l);
            j["after"] = relations_json(sigma_scale(l, f));
        } else {
            Json v = Json::array();
            for (const auto& x : sigma_scale(values, f)) v.push_back(x.get_str());
            j["values"] = v;
        }
    } else {
        FlowParam f{*o.t, std::nullopt};
        std::vector<double> dv;
        for (const auto& x : values) dv.push_back(x.get_d());
        Json v = Json::array();
        for (double x : sigma_scale(dv, f)) v.push_back(fixed(x, o.precision));
        j["t"] = fixed(f.t, o.precision);
        j["values"] = v;
    }
    emit(out, j);
    return Ok;
}

int cmd_connes(const Options& o, std::ostream& out) {
    std::string f = format_or(o, "text");
    need_format(f, {"text", "json"});
    std::vector<SL2Z> ms;
    for (const auto& m : o.matrices) {
        std::stringstream ss(m);
        std::string tok;
        while (ss >> tok) ms.push_back(parse_sl2(tok));
    }
    auto sample = connes_sample(ms);
    if (f == "text") {
        for (double v : sample) out << fixed(v, o.precision) << '\n';
    } else {
        Json samples = Json::array(), vals = Json::array();
        for (const auto& m : ms) {
            auto s = dilatation(m);
            Json e{{"matrix", to_string(m)}, {"trace", s.trace}, {"classification", to_string(s.classification)}};
            if (s.dilatation) {
                e["dilatation"] = s.dilatation->to_string();
                e["dilatation_decimal"] = fixed(*s.dilatation, o.precision);
                e["log_dilatation"] = fixed(*s.log_dilatation, o.precision);
            }
            samples.push_back(e);
        }
        for (double v : sample) vals.push_back(fixed(v, o.precision));
        emit(out, Json{{"samples", samples}, {"log_dilatations", vals}});
    }
    return Ok;
}

std::vector<std::vector<std::string>> fraction_labels(const FareyDiagram& f) {
    std::vector<std::vector<std::string>> labels;
    for (std::size_t n = 0; n < f.labels.size(); ++n) {
        labels.emplace_back();
        if (n == 0) labels.back().push_back("root");
        for (const auto& fr : f.labels[n]) labels.back().push_back(fr.p.get_str() + "/" + fr.q.get_str());
    }
    return labels;
}

int cmd_farey(const Options& o, std::ostream& out) {
    std::string f = format_or(o, "json");
    need_format(f, {"json", "dot"});
    FareyDiagram fd = farey_diagram(o.depth);
    if (f == "json") {
        emit(out, Json{{"diagram", to_json(fd.diagram)}, {"labels", fraction_labels(fd)}});
    } else {
        out << to_dot(fd.diagram, fraction_labels(fd), "farey");
    }
    return Ok;
}

int cmd_ideal(const Options& o, std::ostream& out) {
    std::string f = format_or(o, "json");
    need_format(f, {"json", "dot"});
    auto th = parse_theta(o);
    if (th.size() != 1) throw ValidationError("ideal needs a single theta");
    FareyDiagram fd = farey_diagram(o.depth);
    JPExpansion e = jp_expand(th, o.depth);
    StripCut c = strip_cut(fd, e, o.d);
    BratteliDiagram q = quotient_diagram(fd.diagram, c.complement);
    if (f == "dot") {
        out << to_dot(q, {}, "quotient");
        return Ok;
    }
    Json j{{"expansion", to_json(e)},
           {"selected", to_json(c.selected)},
           {"ideal", to_json(c.complement)},
           {"ideal_hereditary_saturated", is_hereditary_saturated(fd.diagram, c.complement)},
           {"quotient", to_json(q)}};
    if (!q.degenerate && q.levels() > 1 && e.digits.size() + 1 >= q.levels() - 1) {
        BratteliDiagram af = af_from_digits(e, q.levels() - 2);
        j["quotient_matches_af"] = level_isomorphic(drop_levels(q, 1), af);
    }
    emit(out, j);
    return Ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cluster algebras, Bratteli diagrams and AF-algebras", "clusteraf"};
    app.require_subcommand(1);
    Options o;
    std::size_t budget = 0;
    double t = 0;

    auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "JSON file (seed or triangulation)"); };
    auto add_format = [&](CLI::App* c) {
        c->add_option("--format", o.format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));
    };
    auto add_common = [&](CLI::App* c) {
        add_format(c);
        c->add_option("--precision", o.precision, "decimal places")->check(CLI::Range(0u, 60u));
    };
    auto add_tree = [&](CLI::App* c) {
        add_seed(c);
        c->add_option("--depth", o.depth, "levels below the root");
        c->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 256u));
        c->add_option("--budget", budget, "node cap");
    };

    auto* mutate = app.add_subcommand("mutate", "Mutate a seed along a word");
    add_seed(mutate);
    add_common(mutate);
    mutate->add_option("--word", o.word, "comma separated directions, 1-based");
    auto* tree = app.add_subcommand("tree", "Mutation tree");
    add_tree(tree);
    add_common(tree);
    auto* bratteli = app.add_subcommand("bratteli", "Mutation tree modulo l-equivalence");
    add_tree(bratteli);
    add_common(bratteli);
    bratteli->add_option("--policy", o.policy, "figure-faithful, literal or absolute");
    auto* jp = app.add_subcommand("jp", "Jacobi-Perron expansion");
    auto* af = app.add_subcommand("af", "AF diagram of a Jacobi-Perron expansion");
    for (auto* c : {jp, af}) {
        c->add_option("--theta", o.theta, "comma separated coordinates")->required();
        c->add_option("--steps", o.steps, "maximum number of steps");
        add_common(c);
    }
    auto* tri = app.add_subcommand("triangulate", "Exchange matrix of a triangulation");
    auto* flp = app.add_subcommand("flip", "Flip an arc");
    for (auto* c : {tri, flp}) {
        add_seed(c);
        add_common(c);
        c->add_option("--lambdas", o.lambdas, "comma separated positive rationals");
    }
    flp->add_option("--arc", o.arc, "arc to flip, 1-based")->required();
    auto* sigma = app.add_subcommand("sigma", "Scale lambda lengths");
    add_seed(sigma);
    add_common(sigma);
    sigma->add_option("--lambdas", o.lambdas, "comma separated positive rationals");
    sigma->add_option("--scale", o.scale, "exact rational factor");
    auto* topt = sigma->add_option("--t", t, "flow time");
    auto* connes = app.add_subcommand("connes", "Log-dilatations of SL(2,Z) matrices");
    add_common(connes);
    connes->add_option("--matrices", o.matrices, "matrices a,b;c,d");
    auto* farey = app.add_subcommand("farey", "Farey mediant diagram");
    add_common(farey);
    farey->add_option("--depth", o.depth, "levels below the root");
    auto* ideal = app.add_subcommand("ideal", "Strip ideal of the Farey diagram");
    add_common(ideal);
    ideal->add_option("--theta", o.theta, "theta")->required();
    ideal->add_option("--depth", o.depth, "Farey depth");
    ideal->add_option("--d", o.d, "strip width");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return Parse;
    }
    for (auto* c : app.get_subcommands()) {
        if (auto* b = c->get_option_no_throw("--budget"); b && b->count()) o.budget = budget;
    }
    if (topt->count()) o.t = t;

    try {
        if (mutate->parsed()) return cmd_mutate(o, out);
        if (tree->parsed()) return cmd_tree(o, out);
        if (bratteli->parsed()) return cmd_bratteli(o, out, err);
        if (jp->parsed()) return cmd_jp(o, out);
        if (af->parsed()) return cmd_af(o, out);
        if (tri->parsed()) return cmd_triangulate(o, out);
        if (flp->parsed()) return cmd_flip(o, out);
        if (sigma->parsed()) return cmd_sigma(o, out);
        if (connes->parsed()) return cmd_connes(o, out);
        if (farey->parsed()) return cmd_farey(o, out);
        if (ideal->parsed()) return cmd_ideal(o, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return Parse;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return Validation;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return Budget;
    } catch (const DegenerateInput& e) {
        err << "degenerate input: " << e.what() << '\n';
        return Degenerate;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return Other;
    }
    return Other;
}

}  // namespace clusteraf::cli
