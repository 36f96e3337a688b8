#pragma once

// Slow reference implementations on explicitly labelled trees. Nothing here
// calls the operation it is used to test; trees are only rebuilt through
// make_tree/branch.

#include "dtree.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

using namespace dtree;

// Vertex 0 is the root; edge[v] is the edge from parent[v] to v (unused for the root).
struct LTree {
    std::vector<int> parent;
    std::vector<MultiIndex> node;
    std::vector<Edge> edge;

    int size() const { return static_cast<int>(node.size()); }

    int add(int p, const MultiIndex& n, const Edge& e)
    {
        parent.push_back(p);
        node.push_back(n);
        edge.push_back(e);
        return size() - 1;
    }
};

inline void label_into(const Tree& t, int p, const Edge& e, LTree& out)
{
    int v = out.add(p, t.n, e);
    for (auto& b : t.ch) label_into(b.t, v, b.e, out);
}

inline LTree label(const Tree& t)
{
    LTree out;
    label_into(t, -1, Edge{}, out);
    return out;
}

inline Tree build(const LTree& f, int v = 0)
{
    std::vector<Branch> ch;
    for (int u = 0; u < f.size(); ++u)
        if (f.parent[u] == v) ch.push_back(branch(f.edge[u], build(f, u)));
    return make_tree(f.node[v], std::move(ch));
}

// Appends a copy of s below vertex v through an edge e.
inline LTree attach(LTree f, int v, const Edge& e, const Tree& s)
{
    label_into(s, v, e, f);
    return f;
}

// Number of vertex bijections preserving root, parents, node and edge labels.
inline long automorphisms(const LTree& f)
{
    std::vector<int> perm(static_cast<size_t>(f.size()));
    std::iota(perm.begin(), perm.end(), 0);
    long count = 0;
    do {
        if (perm[0] != 0) continue;
        bool ok = true;
        for (int v = 1; v < f.size() && ok; ++v) {
            int w = perm[static_cast<size_t>(v)];
            ok = f.node[v] == f.node[w] && f.edge[v] == f.edge[w] &&
                 perm[static_cast<size_t>(f.parent[v])] == f.parent[w];
        }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

inline Integer fact(long n)
{
    Integer r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Integer choose(const MultiIndex& n, const MultiIndex& k)
{
    Integer r = 1;
    for (int i = 0; i < n.dim; ++i) {
        if (k[i] < 0 || k[i] > n[i]) return 0;
        r *= fact(n[i]) / (fact(k[i]) * fact(n[i] - k[i]));
    }
    return r;
}

// n! / (ℓ_1! ... ℓ_m! (n - Σℓ)!), componentwise.
inline Integer choose(const MultiIndex& n, const std::vector<MultiIndex>& ls)
{
    Integer r = 1;
    for (int i = 0; i < n.dim; ++i) {
        long rest = n[i];
        Integer den = 1;
        for (auto& l : ls) {
            if (l[i] < 0) return 0;
            rest -= l[i];
            den *= fact(l[i]);
        }
        if (rest < 0) return 0;
        r *= fact(n[i]) / (den * fact(rest));
    }
    return r;
}

inline Integer symmetry(const Tree& t)
{
    LTree f = label(t);
    Integer r = automorphisms(f);
    for (auto& n : f.node)
        for (int i = 0; i < n.dim; ++i) r *= fact(n[i]);
    return r;
}

// All ℓ with 0 <= ℓ <= hi componentwise.
inline std::vector<MultiIndex> box(const MultiIndex& hi)
{
    std::vector<MultiIndex> out;
    MultiIndex cur(hi.dim);
    std::function<void(int)> rec = [&](int i) {
        if (i == hi.dim) {
            out.push_back(cur);
            return;
        }
        for (int x = 0; x <= hi[i]; ++x) {
            cur[i] = x;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

inline LinComb<Tree> graft(const Tree& s, const Edge& a, const Tree& t)
{
    LTree f = label(t);
    LinComb<Tree> out;
    for (int v = 0; v < f.size(); ++v) out.add(build(attach(f, v, a, s)), 1);
    return out;
}

inline LinComb<Tree> deformed_graft(const Tree& s, const Edge& a, const Tree& t)
{
    LTree f = label(t);
    LinComb<Tree> out;
    for (int v = 0; v < f.size(); ++v)
        for (auto& l : box(a.idx)) {
            Integer c = choose(f.node[v], l);
            if (c == 0) continue;
            LTree g = attach(f, v, Edge{a.kind, a.idx - l}, s);
            g.node[v] -= l;
            out.add(build(g), Rational(c));
        }
    return out;
}

// Root of s merged with vertex v of t, with the root branches of s lowered by ls.
inline Tree plug_at(const Tree& s, const LTree& f, int v, const std::vector<MultiIndex>& ls)
{
    LTree g = f;
    MultiIndex lsum(s.n.dim);
    for (auto& l : ls) lsum += l;
    g.node[v] += s.n;
    g.node[v] -= lsum;
    for (size_t i = 0; i < s.ch.size(); ++i) {
        const Branch& b = s.ch[i];
        g = attach(g, v, Edge{b.e.kind, b.e.idx - ls[i]}, b.t);
    }
    return build(g);
}

inline LinComb<Tree> plug(const Tree& s, const Tree& t)
{
    LTree f = label(t);
    LinComb<Tree> out;
    std::vector<MultiIndex> zero(s.ch.size(), MultiIndex(s.n.dim));
    for (int v = 0; v < f.size(); ++v) out.add(plug_at(s, f, v, zero), 1);
    return out;
}

inline LinComb<Tree> deformed_plug(const Tree& s, const Tree& t)
{
    LTree f = label(t);
    LinComb<Tree> out;
    for (int v = 0; v < f.size(); ++v) {
        std::vector<MultiIndex> ls;
        std::function<void(size_t)> rec = [&](size_t i) {
            if (i == s.ch.size()) {
                Integer c = choose(f.node[v], ls);
                if (c != 0) out.add(plug_at(s, f, v, ls), Rational(c));
                return;
            }
            for (auto& l : box(s.ch[i].e.idx)) {
                ls.push_back(l);
                rec(i + 1);
                ls.pop_back();
            }
        };
        rec(0);
    }
    return out;
}

// Θ(X^n ∏ I_{a_i}(τ_i)) = Σ_ℓ C(n; ℓ) X^{n-|ℓ|} ∏ I_{a_i-ℓ_i}(Θ τ_i)
inline LinComb<Tree> theta(const Tree& t)
{
    std::vector<LinComb<Tree>> kids;
    for (auto& b : t.ch) kids.push_back(oracle::theta(b.t));
    LinComb<Tree> out;
    std::vector<MultiIndex> ls;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == t.ch.size()) {
            Integer c = choose(t.n, ls);
            if (c == 0) return;
            MultiIndex n = t.n;
            for (auto& l : ls) n -= l;
            // expand the product of the children's images
            std::vector<std::pair<std::vector<Branch>, Rational>> acc{{{}, Rational(c)}};
            for (size_t j = 0; j < t.ch.size(); ++j) {
                std::vector<std::pair<std::vector<Branch>, Rational>> next;
                Edge e{t.ch[j].e.kind, t.ch[j].e.idx - ls[j]};
                for (auto& [bs, w] : acc)
                    for (auto& [k, d] : kids[j]) {
                        auto b2 = bs;
                        b2.push_back(branch(e, k));
                        next.emplace_back(std::move(b2), w * d);
                    }
                acc = std::move(next);
            }
            for (auto& [bs, w] : acc) out.add(make_tree(n, bs), w);
            return;
        }
        for (auto& l : box(t.ch[i].e.idx)) {
            ls.push_back(l);
            rec(i + 1);
            ls.pop_back();
        }
    };
    rec(0);
    return out;
}

// Admissible cuts: every set of edges with at most one edge on each root path.
// Cut subtrees are planted on their edge; the trunk stays on the right.
inline Tensor<PlantedForest, Tree> admissible_cuts(const Tree& t)
{
    LTree f = label(t);
    int m = f.size() - 1;
    auto above = [&](int u, int v) {
        for (int w = f.parent[v]; w >= 0; w = f.parent[w])
            if (w == u) return true;
        return false;
    };
    Tensor<PlantedForest, Tree> out;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> cut;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) cut.push_back(i + 1);
        bool ok = true;
        for (int u : cut)
            for (int v : cut)
                if (u != v && above(u, v)) ok = false;
        if (!ok) continue;
        std::vector<Planted> left;
        LTree trunk;
        std::vector<int> map(static_cast<size_t>(f.size()), -1);
        for (int v = 0; v < f.size(); ++v) {
            bool removed = false;
            for (int u : cut)
                if (u == v || above(u, v)) removed = true;
            if (removed) continue;
            map[static_cast<size_t>(v)] =
                trunk.add(v == 0 ? -1 : map[static_cast<size_t>(f.parent[v])], f.node[v], f.edge[v]);
        }
        for (int u : cut) left.push_back(Planted{f.edge[u], build(f, u)});
        out.add({PlantedForest(left), build(trunk)}, 1);
    }
    return out;
}

} // namespace oracle
