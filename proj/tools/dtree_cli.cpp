// dtree: batch front end for the decorated-tree algebra.
//
// Exit status: 0 success, 1 identity failure (check), 2 usage or configuration error.

#include "dtree.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace dtree;

struct Options {
    std::string config_path;
    std::optional<int> dim;
    std::optional<long> budget;
    std::optional<long> order;
    std::optional<int> max_edges;
    std::string kinds;
    std::string format = "text";
    std::string at;
    bool deformed = false;
    bool inverse = false;
    bool reduced = false;
    bool planted = false;
    std::string antipode_kind = "na";
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Config make_config(const Options& o)
{
    Config c = o.config_path.empty() ? Config{} : load_config(o.config_path);
    if (o.dim) {
        c.session.dim = *o.dim;
        c.session.scaling.assign(static_cast<size_t>(*o.dim), 1);
        c.node_cap = MultiIndex::from(std::vector<int>(static_cast<size_t>(*o.dim), 1));
        c.edge_cap = c.node_cap;
    }
    if (!o.kinds.empty()) {
        c.session.kinds.clear();
        std::string name;
        for (char ch : o.kinds + ",") {
            if (ch != ',') {
                name += ch;
                continue;
            }
            if (!name.empty()) c.session.kinds.push_back({name, 2, true});
            name.clear();
        }
    }
    c.session.validate();
    if (o.budget) c.budget = *o.budget;
    if (c.budget < 0) throw UsageError("budget must be >= 0");
    if (o.order) c.order = *o.order;
    if (o.max_edges) c.max_edges = *o.max_edges;
    return c;
}

Site parse_site(const std::string& at)
{
    if (at.empty() || at == "all") return Site::all();
    if (at == "root") return Site::root();
    if (at == "nonroot") return Site::nonroot();
    try {
        size_t used = 0;
        int v = std::stoi(at, &used);
        if (used == at.size() && v >= 0) return Site::at(v);
    } catch (const std::exception&) {
    }
    throw UsageError("--at expects root, nonroot, all or a vertex id");
}

template <class X>
void emit(const X& x, const Config& c, const Options& o)
{
    if (o.format == "json")
        std::cout << to_json(x, c.session).dump(2) << "\n";
    else
        std::cout << format(x, c.session) << "\n";
}

// Applies a per-basis-element coproduct linearly.
template <class T, class B, class F>
T linear(const LinComb<B>& x, F&& f)
{
    T out;
    for (auto& [b, c] : x) out.axpy(c, f(b));
    return out;
}

int run_check(const std::string& which, const Config& c, const Options& o)
{
    DeskScale ds = DeskScale::from(c);
    bool found = false, all_ok = true;
    json reports = json::array();
    for (auto& info : suites()) {
        if (which != "all" && which != info.name) continue;
        found = true;
        SuiteReport r = run_suite(info, ds);
        all_ok = all_ok && r.ok();
        if (o.format == "json") {
            json checks = json::array();
            for (auto& k : r.checks)
                checks.push_back({{"name", k.name}, {"ok", k.ok}, {"cases", k.cases}, {"witness", k.witness}});
            reports.push_back({{"suite", r.suite}, {"criterion", r.criterion}, {"ok", r.ok()}, {"checks", checks}});
        } else {
            std::cout << "suite " << r.suite << " (criterion " << r.criterion << "): " << (r.ok() ? "PASS" : "FAIL") << "\n";
            for (auto& k : r.checks) {
                std::cout << "  " << (k.ok ? "ok   " : "FAIL ") << k.name << " [" << k.cases << " cases]\n";
                if (!k.ok) std::cout << "       counterexample: " << k.witness << "\n";
            }
        }
    }
    if (!found) throw UsageError("unknown suite '" + which + "'");
    if (o.format == "json")
        std::cout << json{{"schema", kJsonSchema}, {"kind", "check"}, {"ok", all_ok}, {"suites", reports}}.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact algebra of decorated rooted trees"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--config", o.config_path, "JSON session file");
    app.add_option("--dim", o.dim, "number of components d+1 of the multi-indices");
    app.add_option("--budget", o.budget, "truncation bound on polynomial legs");
    app.add_option("--order", o.order, "order cap for the numerical-analysis coproduct");
    app.add_option("--max-edges", o.max_edges, "enumeration bound on edges");
    app.add_option("--kinds", o.kinds, "comma separated edge kind names");
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> args;
    std::string which;

    auto* enumerate_cmd = app.add_subcommand("enumerate", "list basis trees up to --max-edges edges");
    enumerate_cmd->add_flag("--planted", o.planted, "list planted trees instead");

    auto* graft_cmd = app.add_subcommand("graft", "sigma graft_a tau");
    auto* dgraft_cmd = app.add_subcommand("deform-graft", "deformed grafting");
    for (auto* sc : {graft_cmd, dgraft_cmd}) {
        sc->add_option("operands", args, "sigma, edge label, tau")->required();
        sc->add_option("--at", o.at, "vertex id of tau");
    }

    auto* theta_cmd = app.add_subcommand("theta", "apply Theta");
    theta_cmd->add_option("expr", args, "tree expression")->required();
    theta_cmd->add_flag("--inverse", o.inverse, "apply the inverse map");

    auto* plug_cmd = app.add_subcommand("plug", "sigma plugged into tau");
    auto* insert_cmd = app.add_subcommand("insert", "sigma inserted into tau");
    for (auto* sc : {plug_cmd, insert_cmd}) {
        sc->add_option("operands", args, "sigma and tau")->required();
        sc->add_flag("--deformed", o.deformed, "Taylor-deformed product");
        sc->add_option("--at", o.at, "root, nonroot, all or a vertex id");
    }

    auto* star_cmd = app.add_subcommand("star", "associative products: 0 (planted forests), 1 (forests), 2 and plain (trees)");
    star_cmd->add_option("which", which, "0, 1, 2 or plain")->required()->check(CLI::IsMember({"0", "1", "2", "plain"}));
    star_cmd->add_option("operands", args, "two expressions")->required();

    auto* coproduct_cmd = app.add_subcommand("coproduct", "dck, d2, d1, na, rc or rn");
    coproduct_cmd->add_option("which", which, "dck, d2, d1, na, rc or rn")
        ->required()
        ->check(CLI::IsMember({"dck", "d2", "d1", "na", "rc", "rn"}));
    coproduct_cmd->add_option("expr", args, "expression")->required();
    coproduct_cmd->add_flag("--reduced", o.reduced, "dck and na: reduced coproduct of a tree");

    auto* pair_cmd = app.add_subcommand("pair", "pairing of two tree expressions");
    pair_cmd->add_option("operands", args, "two tree expressions")->required();

    auto* antipode_cmd = app.add_subcommand("antipode", "antipode on planted forests");
    antipode_cmd->add_option("expr", args, "planted forest expression")->required();
    antipode_cmd->add_option("--kind", o.antipode_kind, "na or dck")->check(CLI::IsMember({"na", "dck"}));

    auto* check_cmd = app.add_subcommand("check", "run an identity suite or all of them");
    check_cmd->add_option("suite", which, "suite name or all")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Config c = make_config(o);
        const Session& s = c.session;
        auto need = [&](size_t n) {
            if (args.size() != n) throw UsageError("expected " + std::to_string(n) + " arguments");
        };

        if (*enumerate_cmd) {
            DeskScale ds = DeskScale::from(c);
            if (o.planted) {
                for (auto& p : ds.planted(c.max_edges)) std::cout << format(p, s) << "\n";
            } else {
                auto trees = ds.trees(c.max_edges);
                if (o.format == "json") {
                    json items = json::array();
                    for (auto& t : trees) items.push_back(to_json(t, s));
                    std::cout << json{{"schema", kJsonSchema}, {"kind", "list"}, {"basis", "tree"}, {"items", items}}.dump(2)
                              << "\n";
                } else {
                    for (auto& t : trees) std::cout << format(t, s) << "\n";
                }
            }
        } else if (*graft_cmd || *dgraft_cmd) {
            need(3);
            auto x = parse_trees(args[0], s);
            Edge a = parse_edge(args[1], s);
            auto y = parse_trees(args[2], s);
            if (!o.at.empty()) {
                Site site = parse_site(o.at);
                if (site.kind != Site::At) throw UsageError("graft --at expects a vertex id");
                LinComb<Tree> out;
                for (auto& [u, cu] : x)
                    for (auto& [v, cv] : y)
                        out.axpy(cu * cv, *dgraft_cmd ? deformed_graft(u, a, v, site.v) : graft(u, a, v, site.v));
                emit(out, c, o);
            } else {
                emit(dtree::graft(x, a, y, static_cast<bool>(*dgraft_cmd)), c, o);
            }
        } else if (*theta_cmd) {
            need(1);
            auto x = parse_trees(args[0], s);
            emit(o.inverse ? theta_inverse(x) : dtree::theta(x), c, o);
        } else if (*plug_cmd || *insert_cmd) {
            need(2);
            auto x = parse_trees(args[0], s);
            auto y = parse_trees(args[1], s);
            Site site = parse_site(o.at);
            emit(*plug_cmd ? dtree::plug(x, y, o.deformed, site) : dtree::insert(x, y, o.deformed, site), c, o);
        } else if (*star_cmd) {
            need(2);
            if (which == "0") {
                auto& go = planted_structure(true);
                emit(go.star(parse_planted_forests(args[0], s), parse_planted_forests(args[1], s)), c, o);
            } else if (which == "1") {
                auto& go = insertion_structure(true);
                emit(go.star(parse_forests(args[0], s), parse_forests(args[1], s)), c, o);
            } else {
                emit(star_plug(parse_trees(args[0], s), parse_trees(args[1], s), which == "2"), c, o);
            }
        } else if (*coproduct_cmd) {
            need(1);
            Coproducts cp(s, c.budget);
            DegreeAssignment d = DegreeAssignment::from(s, c.order);
            if (which == "dck" || which == "na") {
                if (o.reduced) {
                    auto x = parse_trees(args[0], s);
                    if (which == "dck")
                        emit(linear<Tensor<PlantedForest, Tree>>(x, [&](const Tree& t) { return cp.dck_bar(t); }), c, o);
                    else
                        emit(linear<Tensor<Tree, PlantedForest>>(x, [&](const Tree& t) { return delta_na_bar(t, cp, d); }), c, o);
                } else {
                    auto x = parse_planted_forests(args[0], s);
                    if (which == "dck")
                        emit(linear<Tensor<PlantedForest, PlantedForest>>(x, [&](const PlantedForest& f) { return cp.dck(f); }), c,
                             o);
                    else
                        emit(linear<Tensor<PlantedForest, PlantedForest>>(
                                 x, [&](const PlantedForest& f) { return delta_na(f, cp, d); }),
                             c, o);
                }
            } else {
                auto x = parse_trees(args[0], s);
                if (which == "d2")
                    emit(linear<Tensor<Tree, Tree>>(x, [&](const Tree& t) { return cp.delta2(t); }), c, o);
                else if (which == "d1")
                    emit(linear<Tensor<Forest, Tree>>(x, [&](const Tree& t) { return cp.delta1(t); }), c, o);
                else if (which == "rc")
                    emit(linear<Tensor<Tree, Tree>>(x, [&](const Tree& t) { return delta_rc(t, cp); }), c, o);
                else
                    emit(linear<Tensor<Forest, Tree>>(x, [&](const Tree& t) { return delta_rn(t, cp); }), c, o);
            }
        } else if (*pair_cmd) {
            need(2);
            Rational r = pairing(parse_trees(args[0], s), parse_trees(args[1], s));
            if (o.format == "json")
                std::cout << json{{"schema", kJsonSchema}, {"kind", "scalar"}, {"value", to_string(r)}}.dump(2) << "\n";
            else
                std::cout << to_string(r) << "\n";
        } else if (*antipode_cmd) {
            need(1);
            Coproducts cp(s, c.budget);
            Antipode sa(cp, o.antipode_kind == "dck" ? AntipodeKind::DCK : AntipodeKind::NA);
            emit(sa(parse_planted_forests(args[0], s)), c, o);
        } else if (*check_cmd) {
            return run_check(which, c, o);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
