#pragma once

#include "config.hpp"
#include "lincomb.hpp"
#include "multiindex.hpp"

#include <algorithm>
#include <compare>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dtree {

struct Edge {
    int kind = 0;
    MultiIndex idx;

    auto operator<=>(const Edge&) const = default;
    bool operator==(const Edge&) const = default;
};

struct Branch;

// X^n (optionally tagged by a generator) with an unordered multiset of
// decorated branches. Children are kept sorted, so structural equality is
// tree equality.
struct Tree {
    MultiIndex n;
    int gen = -1;
    std::vector<Branch> ch;

    Tree() = default;
    explicit Tree(const MultiIndex& k) : n(k) {}

    std::strong_ordering operator<=>(const Tree& o) const;
    bool operator==(const Tree& o) const;

    bool is_unit() const { return gen < 0 && n.is_zero() && ch.empty(); }
    int dim() const { return n.dim; }
    size_t edges() const;
    size_t vertices() const { return edges() + 1; }
};

struct Branch {
    Edge e;
    Tree t;

    std::strong_ordering operator<=>(const Branch& o) const
    {
        if (auto c = e <=> o.e; c != 0) return c;
        return t <=> o.t;
    }
    bool operator==(const Branch& o) const { return e == o.e && t == o.t; }
};

inline std::strong_ordering Tree::operator<=>(const Tree& o) const
{
    if (auto c = n <=> o.n; c != 0) return c;
    if (auto c = gen <=> o.gen; c != 0) return c;
    return std::lexicographical_compare_three_way(ch.begin(), ch.end(), o.ch.begin(), o.ch.end());
}

inline bool Tree::operator==(const Tree& o) const
{
    return n == o.n && gen == o.gen && ch == o.ch;
}

inline size_t Tree::edges() const
{
    size_t e = ch.size();
    for (auto& b : ch) e += b.t.edges();
    return e;
}

inline size_t hash_mix(size_t h, size_t x)
{
    x += 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    return h ^ (x ^ (x >> 31));
}

inline size_t hash_value(const MultiIndex& k)
{
    size_t h = static_cast<size_t>(k.dim);
    for (int i = 0; i < k.dim; ++i) h = hash_mix(h, static_cast<size_t>(k[i]));
    return h;
}

inline size_t hash_value(const Tree& t)
{
    size_t h = hash_mix(hash_value(t.n), static_cast<size_t>(t.gen + 1));
    for (auto& b : t.ch) {
        h = hash_mix(h, static_cast<size_t>(b.e.kind));
        h = hash_mix(h, hash_value(b.e.idx));
        h = hash_mix(h, hash_value(b.t));
    }
    return hash_mix(h, t.ch.size());
}

struct TreeHash {
    size_t operator()(const Tree& t) const { return hash_value(t); }
};

inline Tree canonicalize(Tree t)
{
    for (auto& b : t.ch) b.t = canonicalize(std::move(b.t));
    std::sort(t.ch.begin(), t.ch.end());
    return t;
}

// Builds X^k[branches] with canonically ordered children (subtrees are
// assumed canonical already).
inline Tree make_tree(const MultiIndex& k, std::vector<Branch> ch = {})
{
    Tree t(k);
    t.ch = std::move(ch);
    std::sort(t.ch.begin(), t.ch.end());
    return t;
}

inline Branch branch(const Edge& e, Tree t)
{
    return Branch{e, std::move(t)};
}

// Tree product: roots are identified and their decorations added.
inline Tree tree_product(const Tree& a, const Tree& b)
{
    if (a.gen >= 0 && b.gen >= 0) throw std::invalid_argument("tree product of two generator-tagged roots");
    Tree r(a.n + b.n);
    r.gen = a.gen >= 0 ? a.gen : b.gen;
    r.ch.reserve(a.ch.size() + b.ch.size());
    std::merge(a.ch.begin(), a.ch.end(), b.ch.begin(), b.ch.end(), std::back_inserter(r.ch));
    return r;
}

// I_a(τ), the planted tree; its root carries no decoration.
struct Planted {
    Edge e;
    Tree body;

    std::strong_ordering operator<=>(const Planted& o) const
    {
        if (auto c = e <=> o.e; c != 0) return c;
        return body <=> o.body;
    }
    bool operator==(const Planted&) const = default;

    size_t edges() const { return 1 + body.edges(); }
    // The planted tree seen as the tree •0 with a single branch.
    Tree as_tree() const { return make_tree(MultiIndex(body.dim()), {Branch{e, body}}); }
};
inline size_t hash_value(const Planted& p)
{
    return hash_mix(hash_mix(static_cast<size_t>(p.e.kind), hash_value(p.e.idx)), hash_value(p.body));
}


template <class B>
inline bool is_unit_item(const B&)
{
    return false;
}
inline bool is_unit_item(const Tree& t)
{
    return t.is_unit();
}

// Commutative monomial (multiset) of basis elements; the empty one is 1.
// Trees equal to •0 are dropped, which identifies •0 with the unit.
template <class B>
struct Multiset {
    std::vector<B> items;

    Multiset() = default;
    explicit Multiset(std::vector<B> xs) : items(std::move(xs)) { normalize(); }
    explicit Multiset(const B& x)
    {
        if (!is_unit_item(x)) items.push_back(x);
    }

    void normalize()
    {
        std::erase_if(items, [](const B& b) { return is_unit_item(b); });
        std::sort(items.begin(), items.end());
    }

    auto operator<=>(const Multiset&) const = default;
    bool operator==(const Multiset&) const = default;

    bool empty() const { return items.empty(); }
    size_t size() const { return items.size(); }
    size_t edges() const
    {
        size_t e = 0;
        for (auto& x : items) e += x.edges();
        return e;
    }
};
template <class B>
size_t hash_value(const Multiset<B>& m)
{
    size_t h = m.items.size();
    for (auto& x : m.items) h = hash_mix(h, hash_value(x));
    return h;
}


template <class B>
Multiset<B> operator*(const Multiset<B>& a, const Multiset<B>& b)
{
    Multiset<B> r;
    r.items.reserve(a.items.size() + b.items.size());
    std::merge(a.items.begin(), a.items.end(), b.items.begin(), b.items.end(), std::back_inserter(r.items));
    return r;
}

using Forest = Multiset<Tree>;
using PlantedForest = Multiset<Planted>;

// One marked tree together with a forest; the marked tree is never dropped.
struct Distinguished {
    Tree marked;
    Forest rest;

    auto operator<=>(const Distinguished&) const = default;
    bool operator==(const Distinguished&) const = default;
};

inline Distinguished operator*(const Distinguished& a, const Distinguished& b)
{
    return {tree_product(a.marked, b.marked), a.rest * b.rest};
}

// The forgetful map 𝒞 : (τ, f) -> τ f.
inline Forest forget_mark(const Distinguished& d)
{
    return Forest(d.marked) * d.rest;
}

// ---- symmetry factors -------------------------------------------------------

inline Integer symmetry_factor(const Tree& t)
{
    Integer r = mfactorial(t.n);
    size_t i = 0;
    while (i < t.ch.size()) {
        size_t j = i;
        while (j < t.ch.size() && t.ch[j] == t.ch[i]) ++j;
        Integer s = symmetry_factor(t.ch[i].t);
        long beta = static_cast<long>(j - i);
        Integer p;
        mpz_pow_ui(p.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(beta));
        r *= p * factorial(beta);
        i = j;
    }
    return r;
}

inline Integer symmetry_factor(const Planted& p)
{
    return symmetry_factor(p.body);
}

template <class B>
Integer symmetry_factor(const Multiset<B>& f)
{
    Integer r = 1;
    size_t i = 0;
    while (i < f.items.size()) {
        size_t j = i;
        while (j < f.items.size() && f.items[j] == f.items[i]) ++j;
        Integer s = symmetry_factor(f.items[i]);
        long beta = static_cast<long>(j - i);
        Integer p;
        mpz_pow_ui(p.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(beta));
        r *= p * factorial(beta);
        i = j;
    }
    return r;
}

inline Integer symmetry_factor(const Distinguished& d)
{
    return symmetry_factor(d.marked) * symmetry_factor(d.rest);
}

template <class A, class B>
Integer symmetry_factor(const std::pair<A, B>& p)
{
    return symmetry_factor(p.first) * symmetry_factor(p.second);
}

template <class A, class B, class C>
Integer symmetry_factor(const std::tuple<A, B, C>& p)
{
    return symmetry_factor(std::get<0>(p)) * symmetry_factor(std::get<1>(p)) * symmetry_factor(std::get<2>(p));
}

// ⟨x, y⟩ with ⟨b, b'⟩ = δ_{b,b'} S(b); tensors pair factorwise.
template <class B>
Rational pairing(const LinComb<B>& x, const LinComb<B>& y)
{
    Rational r = 0;
    const auto& small = x.size() <= y.size() ? x : y;
    const auto& big = x.size() <= y.size() ? y : x;
    for (auto& [b, c] : small) {
        Rational d = big.coeff(b);
        if (d != 0) r += c * d * Rational(symmetry_factor(b));
    }
    return r;
}

// ---- grading ------------------------------------------------------------------

inline long grading(const Tree& t, const std::vector<int>& s)
{
    long g = 0;
    for (auto& b : t.ch) g += b.e.idx.weighted(s) + grading(b.t, s);
    return g;
}
inline long grading(const Planted& p, const std::vector<int>& s)
{
    return p.e.idx.weighted(s) + grading(p.body, s);
}
template <class B>
long grading(const Multiset<B>& f, const std::vector<int>& s)
{
    long g = 0;
    for (auto& x : f.items) g += grading(x, s);
    return g;
}
inline long grading(const Distinguished& d, const std::vector<int>& s)
{
    return grading(d.marked, s) + grading(d.rest, s);
}
template <class A, class B>
long grading(const std::pair<A, B>& p, const std::vector<int>& s)
{
    return grading(p.first, s) + grading(p.second, s);
}
template <class A, class B, class C>
long grading(const std::tuple<A, B, C>& p, const std::vector<int>& s)
{
    return grading(std::get<0>(p), s) + grading(std::get<1>(p), s) + grading(std::get<2>(p), s);
}

// ---- labelled (flat) trees -----------------------------------------------------

// Vertex-labelled tree: vertex 0 is the root, parent[0] = -1, edge[v] is the
// edge from v to its parent. Operations that must keep track of particular
// vertices (shape-preserving maps, plugging at a chosen vertex) work here.
struct Flat {
    std::vector<int> parent;
    std::vector<MultiIndex> node;
    std::vector<int> gen;
    std::vector<Edge> edge;

    auto operator<=>(const Flat&) const = default;
    bool operator==(const Flat&) const = default;

    int size() const { return static_cast<int>(parent.size()); }
    int add(int p, const Edge& e, const MultiIndex& n, int g = -1)
    {
        parent.push_back(p);
        edge.push_back(e);
        node.push_back(n);
        gen.push_back(g);
        return size() - 1;
    }
    std::vector<int> children(int v) const
    {
        std::vector<int> r;
        for (int u = 0; u < size(); ++u)
            if (parent[static_cast<size_t>(u)] == v) r.push_back(u);
        return r;
    }
};

namespace detail {
inline void flatten(const Tree& t, int p, const Edge& e, Flat& f)
{
    int v = f.add(p, e, t.n, t.gen);
    for (auto& b : t.ch) flatten(b.t, v, b.e, f);
}
inline Tree unflatten(const Flat& f, const std::vector<std::vector<int>>& kids, int v)
{
    Tree t(f.node[static_cast<size_t>(v)]);
    t.gen = f.gen[static_cast<size_t>(v)];
    for (int u : kids[static_cast<size_t>(v)]) t.ch.push_back(Branch{f.edge[static_cast<size_t>(u)], unflatten(f, kids, u)});
    std::sort(t.ch.begin(), t.ch.end());
    return t;
}
} // namespace detail

// Vertices are numbered in preorder of the canonical child order; these are
// the vertex ids used throughout (and by the CLI --at option).
inline Flat to_flat(const Tree& t)
{
    Flat f;
    detail::flatten(t, -1, Edge{0, MultiIndex(t.dim())}, f);
    return f;
}

inline Tree from_flat(const Flat& f)
{
    std::vector<std::vector<int>> kids(static_cast<size_t>(f.size()));
    for (int u = 1; u < f.size(); ++u) kids[static_cast<size_t>(f.parent[static_cast<size_t>(u)])].push_back(u);
    return detail::unflatten(f, kids, 0);
}

// Appends a copy of t below vertex at, joined by edge e; returns the new root id.
inline int attach(Flat& f, int at, const Edge& e, const Tree& t)
{
    int base = f.size();
    detail::flatten(t, at, e, f);
    return base;
}

inline LinComb<Tree> to_trees(const LinComb<Flat>& x)
{
    return relabel(x, [](const Flat& f) { return from_flat(f); });
}

// ↑_v^ω (v given) or ↑^ω = Σ_v ↑_v^ω; negative components kill the term.
inline LinComb<Tree> uparrow(const Tree& t, const MultiIndex& w, std::optional<int> at = std::nullopt)
{
    LinComb<Tree> out;
    Flat f = to_flat(t);
    int lo = at ? *at : 0;
    int hi = at ? *at + 1 : f.size();
    if (at && (*at < 0 || *at >= f.size())) throw std::out_of_range("vertex id out of range");
    for (int v = lo; v < hi; ++v) {
        Flat g = f;
        g.node[static_cast<size_t>(v)] += w;
        if (g.node[static_cast<size_t>(v)].nonneg()) out.add(from_flat(g), 1);
    }
    return out;
}

inline LinComb<Tree> uparrow(const LinComb<Tree>& x, const MultiIndex& w, std::optional<int> at = std::nullopt)
{
    return lin(x, [&](const Tree& t) { return uparrow(t, w, at); });
}

} // namespace dtree
