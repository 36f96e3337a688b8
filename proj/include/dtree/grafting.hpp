#pragma once

// Grafting products ↷^a, their Taylor deformation ↷̂^a, planted versions,
// brace elements and the isomorphism Θ.

#include "tree.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace dtree {

// σ ↷_v^a τ
inline Tree graft_at(const Tree& s, const Edge& a, const Tree& t, int v)
{
    Flat f = to_flat(t);
    if (v < 0 || v >= f.size()) throw std::out_of_range("vertex id out of range");
    attach(f, v, a, s);
    return from_flat(f);
}

namespace detail {
inline void insert_sorted(std::vector<Branch>& ch, Branch b)
{
    ch.insert(std::lower_bound(ch.begin(), ch.end(), b), std::move(b));
}

// One tree per vertex of t, children kept canonical without a full re-sort.
inline void graft_each(const Tree& s, const Edge& a, const Tree& t, std::vector<Tree>& out)
{
    Tree r = t;
    insert_sorted(r.ch, Branch{a, s});
    out.push_back(std::move(r));
    for (size_t i = 0; i < t.ch.size(); ++i) {
        std::vector<Tree> sub;
        graft_each(s, a, t.ch[i].t, sub);
        for (auto& u : sub) {
            Tree q = t;
            q.ch.erase(q.ch.begin() + static_cast<std::ptrdiff_t>(i));
            insert_sorted(q.ch, Branch{t.ch[i].e, std::move(u)});
            out.push_back(std::move(q));
        }
    }
}
} // namespace detail

inline LinComb<Tree> graft(const Tree& s, const Edge& a, const Tree& t, std::optional<int> at = std::nullopt)
{
    LinComb<Tree> out;
    if (at) {
        out.add(graft_at(s, a, t, *at), 1);
        return out;
    }
    std::vector<Tree> all;
    detail::graft_each(s, a, t, all);
    for (auto& x : all) out.add(std::move(x), 1);
    return out;
}

// σ ↷^{a,ω} τ = Σ_v ↑_v^ω (σ ↷_v^a τ)
inline LinComb<Tree> graft_omega(const Tree& s, const Edge& a, const MultiIndex& w, const Tree& t)
{
    LinComb<Tree> out;
    Flat f = to_flat(t);
    for (int v = 0; v < f.size(); ++v) {
        Flat g = f;
        attach(g, v, a, s);
        g.node[static_cast<size_t>(v)] += w;
        if (g.node[static_cast<size_t>(v)].nonneg()) out.add(from_flat(g), 1);
    }
    return out;
}

// Σ_ℓ C(n_v, ℓ) σ ↷_v^{a-ℓ} (↑_v^{-ℓ} τ), on a labelled τ.
inline void deformed_graft_flat(const Tree& s, const Edge& a, const Flat& f, int v, const Rational& c,
                                LinComb<Tree>& out)
{
    const MultiIndex& nv = f.node[static_cast<size_t>(v)];
    for_each_below(nv.min(a.idx), [&](const MultiIndex& l) {
        Flat g = f;
        g.node[static_cast<size_t>(v)] -= l;
        attach(g, v, Edge{a.kind, a.idx - l}, s);
        out.add(from_flat(g), c * Rational(mbinomial(nv, l)));
    });
}

inline LinComb<Tree> deformed_graft(const Tree& s, const Edge& a, const Tree& t, std::optional<int> at = std::nullopt)
{
    LinComb<Tree> out;
    Flat f = to_flat(t);
    if (at) {
        if (*at < 0 || *at >= f.size()) throw std::out_of_range("vertex id out of range");
        deformed_graft_flat(s, a, f, *at, 1, out);
        return out;
    }
    for (int v = 0; v < f.size(); ++v) deformed_graft_flat(s, a, f, v, 1, out);
    return out;
}

inline LinComb<Tree> graft(const LinComb<Tree>& x, const Edge& a, const LinComb<Tree>& y, bool deformed)
{
    return bilin(x, y, [&](const Tree& s, const Tree& t) { return deformed ? deformed_graft(s, a, t) : graft(s, a, t); });
}

// I_a(σ) ↷ I_b(τ) = I_b(σ ↷^a τ), same with hats. Nothing is grafted on the
// undecorated planted root.
inline LinComb<Planted> planted_graft(const Planted& p, const Planted& q, bool deformed)
{
    LinComb<Tree> body = deformed ? deformed_graft(p.body, p.e, q.body) : graft(p.body, p.e, q.body);
    return relabel(body, [&](const Tree& t) { return Planted{q.e, t}; });
}

// ---- Θ ------------------------------------------------------------------------------

// Θ on a labelled tree. Θ keeps the shape: every vertex v lowers the indices
// of its child edges by ℓ_e, loses Σℓ_e itself, with weight C(n_v; (ℓ_e)).
inline LinComb<Flat> theta_flat(const Flat& f)
{
    LinComb<Flat> out;
    std::vector<std::vector<int>> kids(static_cast<size_t>(f.size()));
    for (int u = 1; u < f.size(); ++u) kids[static_cast<size_t>(f.parent[static_cast<size_t>(u)])].push_back(u);

    Flat g = f;
    std::vector<MultiIndex> ls;
    std::function<void(int, size_t, Integer)> rec = [&](int v, size_t j, Integer c) {
        if (v == f.size()) {
            out.add(g, Rational(c));
            return;
        }
        const auto& kv = kids[static_cast<size_t>(v)];
        if (j == kv.size()) {
            Integer w = multinomial(f.node[static_cast<size_t>(v)], ls);
            if (w == 0) return;
            MultiIndex nv = f.node[static_cast<size_t>(v)];
            for (auto& l : ls) nv -= l;
            g.node[static_cast<size_t>(v)] = nv;
            std::vector<MultiIndex> saved;
            saved.swap(ls);
            rec(v + 1, 0, c * w);
            ls.swap(saved);
            g.node[static_cast<size_t>(v)] = f.node[static_cast<size_t>(v)];
            return;
        }
        int u = kv[j];
        const Edge& e = f.edge[static_cast<size_t>(u)];
        for_each_below(e.idx.min(f.node[static_cast<size_t>(v)]), [&](const MultiIndex& l) {
            g.edge[static_cast<size_t>(u)].idx = e.idx - l;
            ls.push_back(l);
            rec(v, j + 1, c);
            ls.pop_back();
        });
        g.edge[static_cast<size_t>(u)].idx = e.idx;
    };
    rec(0, 0, 1);
    return out;
}

// Inverse of an operator of the form id + N with N nilpotent (strictly
// lowering the grading): iterate y <- x - N y until stable.
template <class B, class F>
LinComb<B> invert_unitriangular(const LinComb<B>& x, F&& apply)
{
    LinComb<B> y = x;
    for (;;) {
        LinComb<B> next = x - (lin(y, apply) - y);
        if (next == y) return y;
        y = std::move(next);
    }
}

inline LinComb<Flat> theta_inverse_flat(const LinComb<Flat>& x)
{
    return invert_unitriangular(x, [](const Flat& f) { return theta_flat(f); });
}

inline LinComb<Tree> theta(const Tree& t)
{
    return to_trees(theta_flat(to_flat(t)));
}

inline LinComb<Tree> theta(const LinComb<Tree>& x)
{
    return lin(x, [](const Tree& t) { return theta(t); });
}

inline LinComb<Tree> theta_inverse(const LinComb<Tree>& x)
{
    return invert_unitriangular(x, [](const Tree& t) { return theta(t); });
}

inline LinComb<Tree> theta_inverse(const Tree& t)
{
    return theta_inverse(LinComb<Tree>(t));
}

// ↑̂^ω := Θ^{-1} ↑^ω Θ
inline LinComb<Tree> uparrow_hat(const Tree& t, const MultiIndex& w)
{
    return theta_inverse(uparrow(theta(t), w));
}

// ---- brace elements ------------------------------------------------------------------

// (x_1 … x_n) ↷^{a_1…a_n} z, via
// x_1 ↷ ((x_2…x_n) ↷ z) - Σ_{i≥2} (x_2 … (x_1 ↷ x_i) … x_n) ↷ z.
inline LinComb<Tree> brace_graft(const std::vector<std::pair<LinComb<Tree>, Edge>>& xs, const LinComb<Tree>& z,
                                 bool deformed)
{
    if (xs.empty()) return z;
    const auto& [x1, a1] = xs.front();
    std::vector<std::pair<LinComb<Tree>, Edge>> rest(xs.begin() + 1, xs.end());
    LinComb<Tree> out = graft(x1, a1, brace_graft(rest, z, deformed), deformed);
    for (size_t i = 0; i < rest.size(); ++i) {
        auto mod = rest;
        mod[i].first = graft(x1, a1, rest[i].first, deformed);
        out -= brace_graft(mod, z, deformed);
    }
    return out;
}

inline LinComb<Tree> brace_graft(const std::vector<std::pair<Tree, Edge>>& xs, const Tree& z, bool deformed)
{
    std::vector<std::pair<LinComb<Tree>, Edge>> ys;
    for (auto& [t, a] : xs) ys.push_back({LinComb<Tree>(t), a});
    return brace_graft(ys, LinComb<Tree>(z), deformed);
}

// Simultaneous grafting of labelled planted items onto the vertices of a
// labelled tree, summed over all maps items -> vertices. With deformation the
// vertex v receiving items i ∈ S_v contributes C(n_v; (ℓ_i)) and lowers n_v by Σℓ_i
// and each edge a_i by ℓ_i. Returns labelled results (original ids kept).
inline LinComb<Flat> multi_graft_flat(const std::vector<Planted>& items, const Flat& f, bool deformed)
{
    LinComb<Flat> out;
    std::vector<int> target(items.size());
    std::function<void(size_t)> assign = [&](size_t i) {
        if (i == items.size()) {
            // per-vertex ℓ choices
            std::vector<MultiIndex> ls(items.size(), MultiIndex(f.node[0].dim));
            std::function<void(size_t)> choose = [&](size_t j) {
                if (j == items.size()) {
                    Integer c = 1;
                    Flat h = f;
                    for (int v = 0; v < f.size(); ++v) {
                        std::vector<MultiIndex> at;
                        for (size_t k = 0; k < items.size(); ++k)
                            if (target[k] == v) at.push_back(ls[k]);
                        if (at.empty()) continue;
                        c *= multinomial(f.node[static_cast<size_t>(v)], at);
                        if (c == 0) return;
                        for (auto& l : at) h.node[static_cast<size_t>(v)] -= l;
                    }
                    for (size_t k = 0; k < items.size(); ++k)
                        attach(h, target[k], Edge{items[k].e.kind, items[k].e.idx - ls[k]}, items[k].body);
                    out.add(std::move(h), Rational(c));
                    return;
                }
                if (!deformed) {
                    choose(j + 1);
                    return;
                }
                for_each_below(items[j].e.idx.min(f.node[static_cast<size_t>(target[j])]), [&](const MultiIndex& l) {
                    ls[j] = l;
                    choose(j + 1);
                });
                ls[j] = MultiIndex(f.node[0].dim);
            };
            choose(0);
            return;
        }
        for (int v = 0; v < f.size(); ++v) {
            target[i] = v;
            assign(i + 1);
        }
    };
    assign(0);
    return out;
}

} // namespace dtree
