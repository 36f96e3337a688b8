#pragma once

// Text grammar and structured (JSON) serialization.
//
//   lincomb := term (('+'|'-') term)*      term := [rational '*'] expr
//   tree    := 'X' ['_' gen] '^' mindex ['[' branch (',' branch)* ']'] | '•' nat | '1'
//   branch  := '(' kind ',' mindex ')' '->' tree
//   planted := branch                      forest := tree ('·' tree)* | '1'
//   tensor  := expr '⊗' expr
//
// '1' denotes •0 where a tree is expected and the empty product elsewhere.

#include "config.hpp"
#include "lincomb.hpp"
#include "tree.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dtree {

inline constexpr const char* kJsonSchema = "dtree-json/1";

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& msg, size_t p) : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

// ---- formatting -----------------------------------------------------------------

inline std::string format(const MultiIndex& k)
{
    std::string s = "(";
    for (int i = 0; i < k.dim; ++i) {
        if (i) s += ",";
        s += std::to_string(k[i]);
    }
    return s + ")";
}

inline std::string format(const Edge& e, const Session& s)
{
    return "(" + s.kinds.at(static_cast<size_t>(e.kind)).name + "," + format(e.idx) + ")";
}

inline std::string format(const Tree& t, const Session& s)
{
    std::string r = "X";
    if (t.gen >= 0) r += "_" + s.generators.at(static_cast<size_t>(t.gen));
    r += "^" + format(t.n);
    if (!t.ch.empty()) {
        r += "[";
        for (size_t i = 0; i < t.ch.size(); ++i) {
            if (i) r += ",";
            r += format(t.ch[i].e, s) + "->" + format(t.ch[i].t, s);
        }
        r += "]";
    }
    return r;
}

inline std::string format(const Planted& p, const Session& s)
{
    return format(p.e, s) + "->" + format(p.body, s);
}

template <class B>
std::string format(const Multiset<B>& f, const Session& s)
{
    if (f.empty()) return "1";
    std::string r;
    for (size_t i = 0; i < f.items.size(); ++i) {
        if (i) r += "·";
        r += format(f.items[i], s);
    }
    return r;
}

// Inside tensors •0 is the unit and prints as 1.
inline std::string format_leg(const Tree& t, const Session& s)
{
    return t.is_unit() ? "1" : format(t, s);
}
template <class B>
std::string format_leg(const Multiset<B>& f, const Session& s)
{
    return format(f, s);
}
inline std::string format_leg(const Distinguished& d, const Session& s)
{
    return "{" + format(d.marked, s) + "}" + (d.rest.empty() ? "" : "·" + format(d.rest, s));
}

template <class A, class B>
std::string format(const std::pair<A, B>& p, const Session& s)
{
    return format_leg(p.first, s) + "⊗" + format_leg(p.second, s);
}

template <class A, class B, class C>
std::string format(const std::tuple<A, B, C>& p, const Session& s)
{
    return format_leg(std::get<0>(p), s) + "⊗" + format_leg(std::get<1>(p), s) + "⊗" + format_leg(std::get<2>(p), s);
}

// Terms in descending canonical order; unit coefficients are omitted.
template <class B>
std::string format(const LinComb<B>& x, const Session& s)
{
    if (x.empty()) return "0";
    std::string r;
    bool first = true;
    for (auto it = x.rbegin(); it != x.rend(); ++it) {
        Rational c = it->second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            r += neg ? "-" : "";
        else
            r += neg ? " - " : " + ";
        if (c != 1) r += to_string(c) + "*";
        r += format(it->first, s);
        first = false;
    }
    return r;
}

// ---- parsing --------------------------------------------------------------------------

class Parser {
public:
    Parser(const std::string& text, const Session& s) : t_(text), s_(s) {}

    template <class F>
    auto lincomb(F&& expr)
    {
        using B = decltype(expr(*this));
        LinComb<B> out;
        skip();
        bool neg = false;
        if (eat("-")) neg = true;
        else eat("+");
        for (;;) {
            auto [c, b] = term(expr);
            out.add(std::move(b), neg ? Rational(-c) : c);
            skip();
            if (pos_ == t_.size()) break;
            if (eat("+")) neg = false;
            else if (eat("-")) neg = true;
            else fail("expected '+', '-' or end of input");
        }
        return out;
    }

    Tree tree()
    {
        skip();
        if (peek("•")) {
            size_t at = pos_;
            eat("•");
            if (s_.dim != 1) throw ParseError("leaf shorthand '•' needs dimension 1", at);
            MultiIndex k(1);
            k[0] = static_cast<int>(nat());
            return Tree(k);
        }
        if (peek_unit()) {
            eat("1");
            return Tree(s_.zero());
        }
        expect("X");
        int gen = -1;
        if (eat("_")) {
            size_t at = pos_;
            std::string g = ident();
            auto id = s_.generator_id(g);
            if (!id) throw ParseError("undeclared generator '" + g + "'", at);
            gen = *id;
        }
        expect("^");
        Tree t(mindex());
        t.gen = gen;
        if (eat("[")) {
            do {
                auto [e, sub] = branch();
                t.ch.push_back(Branch{e, std::move(sub)});
            } while (eat(","));
            expect("]");
        }
        std::sort(t.ch.begin(), t.ch.end());
        return t;
    }

    Planted planted()
    {
        auto [e, body] = branch();
        return Planted{e, std::move(body)};
    }

    Forest forest()
    {
        if (peek_unit()) {
            eat("1");
            return Forest{};
        }
        std::vector<Tree> xs{tree()};
        while (eat("·")) xs.push_back(tree());
        return Forest(std::move(xs));
    }

    PlantedForest planted_forest()
    {
        if (peek_unit()) {
            eat("1");
            return PlantedForest{};
        }
        std::vector<Planted> xs{planted()};
        while (eat("·")) xs.push_back(planted());
        return PlantedForest(std::move(xs));
    }

    // (kind,(i_0,…,i_d))
    Edge edge()
    {
        expect("(");
        size_t at = (skip(), pos_);
        std::string k = ident();
        auto id = s_.kind_id(k);
        if (!id) throw ParseError("undeclared edge kind '" + k + "'", at);
        expect(",");
        MultiIndex i = mindex();
        expect(")");
        return Edge{*id, i};
    }

    template <class L, class R>
    auto pair(L&& l, R&& r)
    {
        auto a = l(*this);
        expect("⊗");
        auto b = r(*this);
        return std::make_pair(std::move(a), std::move(b));
    }

    void finish()
    {
        skip();
        if (pos_ != t_.size()) fail("unexpected trailing input");
    }

private:
    template <class F>
    auto term(F&& expr)
    {
        skip();
        Rational c = 1;
        if (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_])) && !peek_unit()) {
            c = rational();
            expect("*");
        }
        auto b = expr(*this);
        return std::make_pair(c, std::move(b));
    }

    // "1" standing alone (not the start of a coefficient like "1/2" or "1*").
    bool peek_unit()
    {
        skip();
        if (pos_ >= t_.size() || t_[pos_] != '1') return false;
        size_t q = pos_ + 1;
        while (q < t_.size() && std::isspace(static_cast<unsigned char>(t_[q]))) ++q;
        if (q < t_.size() && (std::isdigit(static_cast<unsigned char>(t_[q])) || t_[q] == '/' || t_[q] == '*')) return false;
        return true;
    }

    std::pair<Edge, Tree> branch()
    {
        Edge e = edge();
        expect("->");
        return {e, tree()};
    }

    MultiIndex mindex()
    {
        size_t at = (skip(), pos_);
        expect("(");
        std::vector<int> xs{static_cast<int>(nat())};
        while (eat(",")) xs.push_back(static_cast<int>(nat()));
        expect(")");
        if (static_cast<int>(xs.size()) != s_.dim)
            throw ParseError("dimension mismatch: multi-index has " + std::to_string(xs.size()) +
                                 " entries, session dimension is " + std::to_string(s_.dim),
                             at);
        return MultiIndex::from(xs);
    }

    Rational rational()
    {
        skip();
        size_t at = pos_;
        std::string num = std::to_string(nat());
        if (eat("/")) {
            long d = nat();
            if (d == 0) throw ParseError("zero denominator", at);
            num += "/" + std::to_string(d);
        }
        return parse_rational(num);
    }

    long nat()
    {
        skip();
        size_t start = pos_;
        while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a natural number");
        if (pos_ - start > 9) throw ParseError("number too large", start);
        return std::stol(t_.substr(start, pos_ - start));
    }

    std::string ident()
    {
        skip();
        size_t start = pos_;
        while (pos_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '_')) ++pos_;
        if (start == pos_) fail("expected an identifier");
        return t_.substr(start, pos_ - start);
    }

    void skip()
    {
        while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    }
    bool peek(const std::string& tok)
    {
        skip();
        return t_.compare(pos_, tok.size(), tok) == 0;
    }
    bool eat(const std::string& tok)
    {
        if (!peek(tok)) return false;
        pos_ += tok.size();
        return true;
    }
    void expect(const std::string& tok)
    {
        if (!eat(tok)) fail("expected '" + tok + "'");
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

    std::string t_;
    const Session& s_;
    size_t pos_ = 0;
};

inline LinComb<Tree> parse_trees(const std::string& text, const Session& s)
{
    Parser p(text, s);
    return p.lincomb([](Parser& q) { return q.tree(); });
}

inline Tree parse_tree(const std::string& text, const Session& s)
{
    Parser p(text, s);
    Tree t = p.tree();
    p.finish();
    return t;
}

inline Edge parse_edge(const std::string& text, const Session& s)
{
    Parser p(text, s);
    Edge e = p.edge();
    p.finish();
    return e;
}

inline LinComb<Forest> parse_forests(const std::string& text, const Session& s)
{
    Parser p(text, s);
    return p.lincomb([](Parser& q) { return q.forest(); });
}

inline LinComb<PlantedForest> parse_planted_forests(const std::string& text, const Session& s)
{
    Parser p(text, s);
    return p.lincomb([](Parser& q) { return q.planted_forest(); });
}

inline LinComb<Planted> parse_planted(const std::string& text, const Session& s)
{
    Parser p(text, s);
    return p.lincomb([](Parser& q) { return q.planted(); });
}

// ---- JSON -----------------------------------------------------------------------------

using json = nlohmann::json;

inline json to_json(const MultiIndex& k)
{
    json a = json::array();
    for (int i = 0; i < k.dim; ++i) a.push_back(k[i]);
    return a;
}

inline json to_json(const Edge& e, const Session& s)
{
    return {{"kind", s.kinds.at(static_cast<size_t>(e.kind)).name}, {"index", to_json(e.idx)}};
}

inline json to_json(const Tree& t, const Session& s)
{
    json j = {{"index", to_json(t.n)}};
    if (t.gen >= 0) j["generator"] = s.generators.at(static_cast<size_t>(t.gen));
    json ch = json::array();
    for (auto& b : t.ch) ch.push_back({{"edge", to_json(b.e, s)}, {"tree", to_json(b.t, s)}});
    j["children"] = ch;
    return j;
}

inline json to_json(const Planted& p, const Session& s)
{
    return {{"edge", to_json(p.e, s)}, {"tree", to_json(p.body, s)}};
}

inline json to_json(const Forest& f, const Session& s)
{
    json a = json::array();
    for (auto& t : f.items) a.push_back(to_json(t, s));
    return {{"trees", a}};
}

inline json to_json(const PlantedForest& f, const Session& s)
{
    json a = json::array();
    for (auto& p : f.items) a.push_back(to_json(p, s));
    return {{"planted", a}};
}

inline json to_json(const Distinguished& d, const Session& s)
{
    return {{"marked", to_json(d.marked, s)}, {"rest", to_json(d.rest, s)}};
}

template <class B>
struct BasisName;
template <>
struct BasisName<Tree> {
    static constexpr const char* value = "tree";
};
template <>
struct BasisName<Planted> {
    static constexpr const char* value = "planted";
};
template <>
struct BasisName<Forest> {
    static constexpr const char* value = "forest";
};
template <>
struct BasisName<PlantedForest> {
    static constexpr const char* value = "planted_forest";
};
template <>
struct BasisName<Distinguished> {
    static constexpr const char* value = "distinguished";
};

template <class B>
json to_json(const LinComb<B>& x, const Session& s)
{
    json terms = json::array();
    for (auto it = x.rbegin(); it != x.rend(); ++it)
        terms.push_back({{"coeff", to_string(it->second)}, {"value", to_json(it->first, s)}});
    return {{"schema", kJsonSchema}, {"kind", "lincomb"}, {"basis", BasisName<B>::value}, {"terms", terms}};
}

template <class A, class B>
json to_json(const Tensor<A, B>& x, const Session& s)
{
    json terms = json::array();
    for (auto it = x.rbegin(); it != x.rend(); ++it)
        terms.push_back({{"coeff", to_string(it->second)},
                         {"left", to_json(it->first.first, s)},
                         {"right", to_json(it->first.second, s)}});
    return {{"schema", kJsonSchema},
            {"kind", "tensor"},
            {"left_basis", BasisName<A>::value},
            {"right_basis", BasisName<B>::value},
            {"terms", terms}};
}

inline MultiIndex multiindex_from_json(const json& j, const Session& s)
{
    std::vector<int> xs = j.get<std::vector<int>>();
    if (static_cast<int>(xs.size()) != s.dim) throw std::invalid_argument("dimension mismatch in JSON multi-index");
    for (int x : xs)
        if (x < 0) throw std::invalid_argument("negative entry in JSON multi-index");
    return MultiIndex::from(xs);
}

inline Tree tree_from_json(const json& j, const Session& s)
{
    Tree t(multiindex_from_json(j.at("index"), s));
    if (j.contains("generator")) {
        auto id = s.generator_id(j["generator"].get<std::string>());
        if (!id) throw std::invalid_argument("undeclared generator in JSON");
        t.gen = *id;
    }
    for (auto& c : j.at("children")) {
        auto k = s.kind_id(c.at("edge").at("kind").get<std::string>());
        if (!k) throw std::invalid_argument("undeclared edge kind in JSON");
        t.ch.push_back(Branch{Edge{*k, multiindex_from_json(c.at("edge").at("index"), s)}, tree_from_json(c.at("tree"), s)});
    }
    std::sort(t.ch.begin(), t.ch.end());
    return t;
}

inline LinComb<Tree> trees_from_json(const json& j, const Session& s)
{
    if (j.value("schema", "") != kJsonSchema || j.value("basis", "") != "tree")
        throw std::invalid_argument("not a tree lincomb document");
    LinComb<Tree> out;
    for (auto& t : j.at("terms")) out.add(tree_from_json(t.at("value"), s), parse_rational(t.at("coeff").get<std::string>()));
    return out;
}

// ---- configuration file ------------------------------------------------------------------

// Session plus CLI defaults, loaded from a JSON file:
// {"dimension":1, "scaling":[1], "kinds":[{"name":"t","degree":"2","integration":true}],
//  "generators":[], "budget":2, "order":null,
//  "enumeration":{"max_edges":2,"node_cap":[1],"edge_cap":[1]}}
struct Config {
    Session session;
    long budget = 2;
    std::optional<long> order;
    int max_edges = 2;
    MultiIndex node_cap{1};
    MultiIndex edge_cap{1};
};

inline Config config_from_json(const json& j)
{
    Config c;
    Session& s = c.session;
    s.dim = j.value("dimension", 1);
    s.scaling = j.contains("scaling") ? j["scaling"].get<std::vector<int>>() : std::vector<int>(static_cast<size_t>(s.dim), 1);
    if (j.contains("kinds")) {
        s.kinds.clear();
        for (auto& k : j["kinds"]) {
            EdgeKind e;
            e.name = k.at("name").get<std::string>();
            if (k.contains("degree")) {
                const json& d = k["degree"];
                e.degree = d.is_string() ? parse_rational(d.get<std::string>()) : Rational(d.get<long>());
            }
            e.integration = k.value("integration", false);
            s.kinds.push_back(e);
        }
    }
    if (j.contains("generators")) s.generators = j["generators"].get<std::vector<std::string>>();
    s.validate();
    c.budget = j.value("budget", 2L);
    if (c.budget < 0) throw std::invalid_argument("budget must be >= 0");
    if (j.contains("order") && !j["order"].is_null()) c.order = j["order"].get<long>();
    c.node_cap = s.constant(1);
    c.edge_cap = s.constant(1);
    if (j.contains("enumeration")) {
        const json& e = j["enumeration"];
        c.max_edges = e.value("max_edges", 2);
        if (e.contains("node_cap")) c.node_cap = multiindex_from_json(e["node_cap"], s);
        if (e.contains("edge_cap")) c.edge_cap = multiindex_from_json(e["edge_cap"], s);
    }
    return c;
}

inline Config load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad config: ") + e.what());
    }
}

} // namespace dtree
