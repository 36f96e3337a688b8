#pragma once

// Plugging ▷ and its deformations ▷̂, ▷̃; root merging K and its adjoint K*;
// the products ★ / ★₂ on trees; insertion ▶ / ▶̂ and ★₁.

#include "grafting.hpp"
#include "guin_oudom.hpp"
#include "tree.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace dtree {

// Which vertices of the target a vertex-indexed sum runs over.
struct Site {
    enum Kind { All, Root, NonRoot, At } kind = All;
    int v = 0;

    static Site all() { return {All, 0}; }
    static Site root() { return {Root, 0}; }
    static Site nonroot() { return {NonRoot, 0}; }
    static Site at(int v) { return {At, v}; }

    bool includes(int u) const
    {
        switch (kind) {
        case All: return true;
        case Root: return u == 0;
        case NonRoot: return u != 0;
        case At: return u == v;
        }
        return false;
    }
    void validate(int size) const
    {
        if (kind == At && (v < 0 || v >= size)) throw std::out_of_range("vertex id out of range");
    }
};

// σ ▷_v τ on a labelled τ: the branches of σ hang from v, decorations add.
inline void plug_into(Flat& f, int v, const Tree& s)
{
    f.node[static_cast<size_t>(v)] += s.n;
    for (auto& b : s.ch) attach(f, v, b.e, b.t);
}

inline LinComb<Tree> plug(const Tree& s, const Tree& t, Site site = Site::all())
{
    LinComb<Tree> out;
    Flat f = to_flat(t);
    site.validate(f.size());
    for (int v = 0; v < f.size(); ++v) {
        if (!site.includes(v)) continue;
        Flat g = f;
        plug_into(g, v, s);
        out.add(from_flat(g), 1);
    }
    return out;
}

// Σ_ℓ C(n_v; ℓ) (X^k ∏ I_{a_i-ℓ_i}(σ_i)) ▷_v (↑_v^{-|ℓ|} τ), emitted on labelled trees.
template <class Emit>
void deformed_plug_into(const Tree& s, const Flat& f, int v, const Rational& c, Emit&& emit)
{
    const MultiIndex& nv = f.node[static_cast<size_t>(v)];
    std::vector<MultiIndex> ls(s.ch.size(), MultiIndex(nv.dim));
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == s.ch.size()) {
            Integer w = multinomial(nv, ls);
            if (w == 0) return;
            Flat g = f;
            MultiIndex m = nv + s.n;
            for (auto& l : ls) m -= l;
            g.node[static_cast<size_t>(v)] = m;
            for (size_t j = 0; j < s.ch.size(); ++j)
                attach(g, v, Edge{s.ch[j].e.kind, s.ch[j].e.idx - ls[j]}, s.ch[j].t);
            emit(std::move(g), c * Rational(w));
            return;
        }
        for_each_below(s.ch[i].e.idx.min(nv), [&](const MultiIndex& l) {
            ls[i] = l;
            rec(i + 1);
        });
        ls[i] = MultiIndex(nv.dim);
    };
    rec(0);
}

inline LinComb<Tree> deformed_plug(const Tree& s, const Tree& t, Site site = Site::all())
{
    LinComb<Tree> out;
    Flat f = to_flat(t);
    site.validate(f.size());
    for (int v = 0; v < f.size(); ++v) {
        if (!site.includes(v)) continue;
        deformed_plug_into(s, f, v, 1, [&](Flat&& g, const Rational& c) { out.add(from_flat(g), c); });
    }
    return out;
}

inline LinComb<Tree> plug(const LinComb<Tree>& x, const LinComb<Tree>& y, bool deformed, Site site = Site::all())
{
    return bilin(x, y, [&](const Tree& s, const Tree& t) { return deformed ? deformed_plug(s, t, site) : plug(s, t, site); });
}

// Closed form of ▷̃^root: for σ = X^k ∏ I_{a_i}(σ_i), τ = X^k̄ ∏ I_{ā_j}(τ_j),
// Σ C(k̄; ℓ) C(k; ℓ̄) X^{k+k̄-|ℓ|-|ℓ̄|} ∏ I_{a_i-ℓ_i}(σ_i) ∏ I_{ā_j-ℓ̄_j}(τ_j).
inline LinComb<Tree> tilde_plug_root(const Tree& s, const Tree& t)
{
    LinComb<Tree> out;
    std::vector<Branch> bs;
    std::vector<const MultiIndex*> caps;
    for (auto& b : s.ch) {
        bs.push_back(b);
        caps.push_back(&t.n);
    }
    for (auto& b : t.ch) {
        bs.push_back(b);
        caps.push_back(&s.n);
    }
    size_t ns = s.ch.size();
    int d = s.dim();
    std::vector<MultiIndex> ls(bs.size(), MultiIndex(d));
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == bs.size()) {
            std::vector<MultiIndex> l1(ls.begin(), ls.begin() + static_cast<long>(ns));
            std::vector<MultiIndex> l2(ls.begin() + static_cast<long>(ns), ls.end());
            Integer w = multinomial(t.n, l1) * multinomial(s.n, l2);
            if (w == 0) return;
            MultiIndex root = s.n + t.n;
            std::vector<Branch> ch;
            for (size_t j = 0; j < bs.size(); ++j) {
                root -= ls[j];
                ch.push_back(Branch{Edge{bs[j].e.kind, bs[j].e.idx - ls[j]}, bs[j].t});
            }
            out.add(make_tree(root, std::move(ch)), Rational(w));
            return;
        }
        for_each_below(bs[i].e.idx.min(*caps[i]), [&](const MultiIndex& l) {
            ls[i] = l;
            rec(i + 1);
        });
        ls[i] = MultiIndex(d);
    };
    rec(0);
    return out;
}

// σ ▷̃_v τ := Θ(Θ^{-1}σ ▷_v Θ^{-1}τ), with the vertex ids of τ kept.
inline LinComb<Flat> tilde_plug_flat(const Tree& s, const Tree& t, int v)
{
    LinComb<Tree> sinv = theta_inverse(s);
    LinComb<Flat> tinv = theta_inverse_flat(LinComb<Flat>(to_flat(t)));
    if (v < 0 || v >= static_cast<int>(t.vertices())) throw std::out_of_range("vertex id out of range");
    LinComb<Flat> out;
    for (auto& [a, ca] : sinv)
        for (auto& [g, cg] : tinv) {
            Flat h = g;
            plug_into(h, v, a);
            out.axpy(ca * cg, theta_flat(h));
        }
    return out;
}

// Root mode uses the closed form; other sites use the Θ-transported definition.
inline LinComb<Tree> tilde_plug(const Tree& s, const Tree& t, Site site = Site::root())
{
    if (site.kind == Site::Root) return tilde_plug_root(s, t);
    LinComb<Tree> out;
    int nv = static_cast<int>(t.vertices());
    site.validate(nv);
    for (int v = 0; v < nv; ++v)
        if (site.includes(v)) out += to_trees(tilde_plug_flat(s, t, v));
    return out;
}

// Second route to ▷̂_v: σ ▷̂_v τ = ↑_v^{n_σ}(Πσ ▷̃_v τ), Π zeroing the root decoration.
inline LinComb<Tree> plug_via_uparrow(const Tree& s, const Tree& t, int v)
{
    Tree ps = s;
    ps.n = MultiIndex(s.dim());
    LinComb<Tree> out;
    for (auto& [f, c] : tilde_plug_flat(ps, t, v)) {
        Flat g = f;
        g.node[static_cast<size_t>(v)] += s.n;
        out.add(from_flat(g), c);
    }
    return out;
}

// ---- K and K* ----------------------------------------------------------------------------

// K: merges all trees of a forest at the root; K(1) = •0.
inline Tree merge_roots(const Forest& f, int dim)
{
    Tree r{MultiIndex(dim)};
    for (auto& t : f.items) r = tree_product(r, t);
    return r;
}

namespace detail {

// Multisets of non-zero multi-indices summing to r, parts non-increasing.
inline void vector_partitions(const MultiIndex& r, const MultiIndex& bound, std::vector<MultiIndex>& cur,
                              std::vector<std::vector<MultiIndex>>& out)
{
    if (r.is_zero()) {
        out.push_back(cur);
        return;
    }
    for_each_below(r, [&](const MultiIndex& p) {
        if (p.is_zero() || bound < p) return;
        cur.push_back(p);
        vector_partitions(r - p, p, cur, out);
        cur.pop_back();
    });
}

// Ordered decompositions r = c_1 + … + c_m with c_i >= 0.
inline void compositions(const MultiIndex& r, size_t m, std::vector<MultiIndex>& cur,
                         std::vector<std::vector<MultiIndex>>& out)
{
    if (cur.size() + 1 == m) {
        cur.push_back(r);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for_each_below(r, [&](const MultiIndex& p) {
        cur.push_back(p);
        compositions(r - p, m, cur, out);
        cur.pop_back();
    });
}

inline void set_partitions(size_t m, std::vector<int>& label, int blocks, std::vector<std::vector<int>>& out)
{
    if (label.size() == m) {
        out.push_back(label);
        return;
    }
    for (int b = 0; b <= blocks; ++b) {
        label.push_back(b);
        set_partitions(m, label, b == blocks ? blocks + 1 : blocks, out);
        label.pop_back();
    }
}

} // namespace detail

// All forests f with K f = τ (pure monomial blocks carry a non-zero exponent).
inline std::set<Forest> block_splittings(const Tree& t)
{
    std::set<Forest> out;
    size_t m = t.ch.size();
    std::vector<std::vector<int>> parts;
    std::vector<int> label;
    detail::set_partitions(m, label, 0, parts);
    for (const auto& p : parts) {
        int nblocks = 0;
        for (int b : p) nblocks = std::max(nblocks, b + 1);
        std::vector<std::vector<Branch>> blocks(static_cast<size_t>(nblocks));
        for (size_t i = 0; i < m; ++i) blocks[static_cast<size_t>(p[i])].push_back(t.ch[i]);
        for_each_below(t.n, [&](const MultiIndex& pure) {
            MultiIndex rest = t.n - pure;
            if (nblocks == 0 && !rest.is_zero()) return;
            std::vector<std::vector<MultiIndex>> pures, comps;
            std::vector<MultiIndex> cur;
            detail::vector_partitions(pure, pure, cur, pures);
            if (nblocks > 0)
                detail::compositions(rest, static_cast<size_t>(nblocks), cur, comps);
            else
                comps.push_back({});
            for (auto& pp : pures)
                for (auto& cc : comps) {
                    std::vector<Tree> items;
                    for (auto& k : pp) items.push_back(Tree(k));
                    for (int b = 0; b < nblocks; ++b)
                        items.push_back(make_tree(cc[static_cast<size_t>(b)], blocks[static_cast<size_t>(b)]));
                    out.insert(Forest(std::move(items)));
                }
        });
    }
    return out;
}

// K*τ = Σ_{Kf = τ} S(τ)/S(f) f, the adjoint of K for the symmetry-factor pairing.
inline const LinComb<Forest>& split_blocks(const Tree& t)
{
    thread_local std::map<Tree, LinComb<Forest>> cache;
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    LinComb<Forest> out;
    Integer st = symmetry_factor(t);
    for (const Forest& f : block_splittings(t)) out.add(f, Rational(st) / Rational(symmetry_factor(f)));
    return cache.emplace(t, std::move(out)).first->second;
}

// Places the items of a forest at pairwise distinct vertices of τ (allowed by
// site), each by ▷ or ▷̂, summed over injective maps of the labelled items.
// This is the extension of the plugging product to S(T) acting on a tree.
inline LinComb<Tree> place(const Forest& f, const Tree& t, bool deformed, Site site = Site::all())
{
    LinComb<Tree> out;
    Flat base = to_flat(t);
    if (f.items.size() > static_cast<size_t>(base.size())) return out;
    std::vector<char> used(static_cast<size_t>(base.size()), 0);
    std::function<void(size_t, const Flat&, const Rational&)> rec = [&](size_t i, const Flat& g, const Rational& c) {
        if (i == f.items.size()) {
            out.add(from_flat(g), c);
            return;
        }
        for (int v = 0; v < base.size(); ++v) {
            if (used[static_cast<size_t>(v)] || !site.includes(v)) continue;
            used[static_cast<size_t>(v)] = 1;
            if (deformed) {
                deformed_plug_into(f.items[i], g, v, c, [&](Flat&& h, const Rational& w) { rec(i + 1, h, w); });
            } else {
                Flat h = g;
                plug_into(h, v, f.items[i]);
                rec(i + 1, h, c);
            }
            used[static_cast<size_t>(v)] = 0;
        }
    };
    rec(0, base, 1);
    return out;
}

inline LinComb<Tree> place(const LinComb<Forest>& x, const Tree& t, bool deformed, Site site = Site::all())
{
    return lin(x, [&](const Forest& f) { return place(f, t, deformed, site); });
}

// σ ★₂ τ = (K*σ) ▷̂ τ ; undeformed: σ ★ τ = (K*σ) ▷ τ.
inline const LinComb<Tree>& star_plug(const Tree& s, const Tree& t, bool deformed)
{
    thread_local std::map<std::tuple<Tree, Tree, bool>, LinComb<Tree>> cache;
    auto key = std::make_tuple(s, t, deformed);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    LinComb<Tree> out = place(split_blocks(s), t, deformed);
    return cache.emplace(std::move(key), std::move(out)).first->second;
}

inline LinComb<Tree> star_plug(const LinComb<Tree>& x, const LinComb<Tree>& y, bool deformed)
{
    return bilin(x, y, [&](const Tree& s, const Tree& t) { return star_plug(s, t, deformed); });
}

// ---- insertion ------------------------------------------------------------------------------

struct SubtreeTrunk {
    Tree subtree; // P_v(τ), keeps n_v
    Flat trunk;   // T_v(τ) as a labelled tree, n_v set to zero
    int v;        // id of v inside trunk
};

inline SubtreeTrunk subtree_trunk_flat(const Tree& t, int v)
{
    Flat f = to_flat(t);
    if (v < 0 || v >= f.size()) throw std::out_of_range("vertex id out of range");
    std::vector<char> above(static_cast<size_t>(f.size()), 0);
    for (int u = v + 1; u < f.size(); ++u) {
        int p = f.parent[static_cast<size_t>(u)];
        if (p == v || (p > v && above[static_cast<size_t>(p)])) above[static_cast<size_t>(u)] = 1;
    }
    Flat sub, trunk;
    std::vector<int> sid(static_cast<size_t>(f.size()), -1), tid(static_cast<size_t>(f.size()), -1);
    for (int u = 0; u < f.size(); ++u) {
        size_t uu = static_cast<size_t>(u);
        if (u == v || above[uu]) {
            int p = u == v ? -1 : sid[static_cast<size_t>(f.parent[uu])];
            sid[uu] = sub.add(p, f.edge[uu], f.node[uu], f.gen[uu]);
        }
        if (!above[uu]) {
            int p = u == 0 ? -1 : tid[static_cast<size_t>(f.parent[uu])];
            tid[uu] = trunk.add(p, f.edge[uu], u == v ? MultiIndex(f.node[uu].dim) : f.node[uu], f.gen[uu]);
        }
    }
    return {from_flat(sub), trunk, tid[static_cast<size_t>(v)]};
}

inline std::pair<Tree, Tree> subtree_trunk(const Tree& t, int v)
{
    auto st = subtree_trunk_flat(t, v);
    return {st.subtree, from_flat(st.trunk)};
}

// σ ▶_v τ = (P_v(τ) ★ σ) ▷_v T_v(τ); deformed: ★ replaced by ★₂.
inline LinComb<Tree> insert_at(const Tree& s, const Tree& t, int v, bool deformed)
{
    auto st = subtree_trunk_flat(t, v);
    LinComb<Tree> out;
    for (auto& [r, c] : star_plug(st.subtree, s, deformed)) {
        Flat g = st.trunk;
        plug_into(g, st.v, r);
        out.add(from_flat(g), c);
    }
    return out;
}

inline const LinComb<Tree>& insert(const Tree& s, const Tree& t, bool deformed, Site site = Site::all())
{
    thread_local std::map<std::tuple<Tree, Tree, bool, int, int>, LinComb<Tree>> cache;
    auto key = std::make_tuple(s, t, deformed, static_cast<int>(site.kind), site.v);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    LinComb<Tree> out;
    int nv = static_cast<int>(t.vertices());
    site.validate(nv);
    for (int v = 0; v < nv; ++v)
        if (site.includes(v)) out += insert_at(s, t, v, deformed);
    return cache.emplace(std::move(key), std::move(out)).first->second;
}

inline LinComb<Tree> insert(const LinComb<Tree>& x, const LinComb<Tree>& y, bool deformed, Site site = Site::all())
{
    return bilin(x, y, [&](const Tree& s, const Tree& t) { return insert(s, t, deformed, site); });
}

// Guin-Oudom structures for ▶̂ (giving ★₁) and ▶.
inline GuinOudom<Tree>& insertion_structure(bool deformed)
{
    thread_local GuinOudom<Tree> hat([](const Tree& a, const Tree& b) { return insert(a, b, true); });
    thread_local GuinOudom<Tree> plain([](const Tree& a, const Tree& b) { return insert(a, b, false); });
    return deformed ? hat : plain;
}

inline LinComb<Forest> star1(const Forest& w, const Forest& v)
{
    return insertion_structure(true).star(w, v);
}

// Guin-Oudom structure of the plugging products; its bullet must agree with place().
inline GuinOudom<Tree>& plugging_structure(bool deformed)
{
    thread_local GuinOudom<Tree> hat([](const Tree& a, const Tree& b) { return deformed_plug(a, b); });
    thread_local GuinOudom<Tree> plain([](const Tree& a, const Tree& b) { return plug(a, b); });
    return deformed ? hat : plain;
}

// Planted grafting structure; its star is ★₀.
inline GuinOudom<Planted>& planted_structure(bool deformed)
{
    thread_local GuinOudom<Planted> hat([](const Planted& a, const Planted& b) { return planted_graft(a, b, true); });
    thread_local GuinOudom<Planted> plain([](const Planted& a, const Planted& b) { return planted_graft(a, b, false); });
    return deformed ? hat : plain;
}

inline LinComb<PlantedForest> star0(const PlantedForest& w, const PlantedForest& v)
{
    return planted_structure(true).star(w, v);
}

// The branches of σ as planted trees.
inline std::vector<Planted> root_branches(const Tree& s)
{
    std::vector<Planted> out;
    for (auto& b : s.ch) out.push_back(Planted{b.e, b.t});
    return out;
}

// ↑̃^k_{N} = Σ_{k = Σ_{v∈N} k_v} ∏ ↑_v^{k_v}, N = vertices 0..count-1 of a labelled tree.
inline LinComb<Flat> split_uparrow(const LinComb<Flat>& x, const MultiIndex& k, int count)
{
    std::vector<std::vector<MultiIndex>> comps;
    std::vector<MultiIndex> cur;
    detail::compositions(k, static_cast<size_t>(count), cur, comps);
    LinComb<Flat> out;
    for (auto& [f, c] : x)
        for (auto& comp : comps) {
            Flat g = f;
            for (int v = 0; v < count; ++v) g.node[static_cast<size_t>(v)] += comp[static_cast<size_t>(v)];
            out.add(std::move(g), c);
        }
    return out;
}

// Both sides of I_b(σ ★₂ τ) = ↑̃^k_{N_τ}(∏ I_{a_i}(σ_i) ↷̂ I_b(τ)).
inline std::pair<LinComb<Planted>, LinComb<Planted>> link_identity_sides(const Tree& s, const Tree& t, const Edge& b)
{
    auto wrap = [&](const Tree& x) { return Planted{b, x}; };
    LinComb<Planted> lhs = relabel(star_plug(s, t, true), wrap);
    LinComb<Flat> grafted = multi_graft_flat(root_branches(s), to_flat(t), true);
    LinComb<Planted> rhs = relabel(to_trees(split_uparrow(grafted, s.n, static_cast<int>(t.vertices()))), wrap);
    return {lhs, rhs};
}

inline bool link_identity_check(const Tree& s, const Tree& t, const Edge& b)
{
    auto [l, r] = link_identity_sides(s, t, b);
    return l == r;
}

} // namespace dtree
