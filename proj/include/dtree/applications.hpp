#pragma once

// Numerical-analysis and regularity-structure maps built on the coproducts:
// Δ_NA, Δ_RC, Δ_RN, degrees and projected coactions, antipodes, the Birkhoff
// twist, renormalisation maps and the cointeraction identities.

#include "coproducts.hpp"
#include "grafting.hpp"
#include "plugging.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dtree {

struct DegreeAssignment {
    std::vector<Rational> kind_degree;
    std::vector<int> scaling;
    std::vector<bool> integration;
    std::optional<long> order_cap;

    static DegreeAssignment from(const Session& s, std::optional<long> cap = std::nullopt)
    {
        DegreeAssignment d;
        for (auto& k : s.kinds) {
            d.kind_degree.push_back(k.degree);
            d.integration.push_back(k.integration);
        }
        d.scaling = s.scaling;
        d.order_cap = cap;
        return d;
    }
};

// Σ_v |n_v|_s + Σ_e (deg(kind) − |idx|_s)
inline Rational degree(const Tree& t, const DegreeAssignment& d)
{
    Rational r = t.n.weighted(d.scaling);
    for (auto& b : t.ch) {
        if (b.e.kind < 0 || static_cast<size_t>(b.e.kind) >= d.kind_degree.size())
            throw std::invalid_argument("undeclared edge kind");
        r += d.kind_degree[static_cast<size_t>(b.e.kind)] - b.e.idx.weighted(d.scaling) + degree(b.t, d);
    }
    return r;
}

inline Rational degree(const Planted& p, const DegreeAssignment& d)
{
    return degree(p.as_tree(), d);
}

// Size used by the order cap: node polynomial degrees, edge derivative orders
// and one per integration-type edge.
inline long na_size(const Tree& t, const DegreeAssignment& d)
{
    long r = t.n.norm1();
    for (auto& b : t.ch) {
        r += b.e.idx.norm1() + na_size(b.t, d);
        if (d.integration.at(static_cast<size_t>(b.e.kind))) ++r;
    }
    return r;
}

inline long na_size(const PlantedForest& f, const DegreeAssignment& d)
{
    long r = 0;
    for (auto& p : f.items) r += na_size(p.as_tree(), d);
    return r;
}

template <class A>
Tensor<A, PlantedForest> apply_order_cap(Tensor<A, PlantedForest> x, const DegreeAssignment& d)
{
    if (!d.order_cap) return x;
    long cap = *d.order_cap;
    return x.filter([&](const std::pair<A, PlantedForest>& p) { return na_size(p.second, d) <= cap; });
}

// ---- Δ_NA ----------------------------------------------------------------------------------

inline Tensor<Tree, PlantedForest> delta_na_bar(const Tree& t, const Coproducts& cp, const DegreeAssignment& d)
{
    return apply_order_cap(flip(cp.dck_bar(t)), d);
}

inline Tensor<PlantedForest, PlantedForest> delta_na(const PlantedForest& f, const Coproducts& cp, const DegreeAssignment& d)
{
    return apply_order_cap(flip(cp.dck(f)), d);
}

// Direct recursion: Δ̄_NA X^k = X^k ⊗ 1,
// Δ̄_NA I_a(τ) = (I_a ⊗ id)Δ̄_NA τ + Σ_n X^n/n! ⊗ I_{a+n}(τ), multiplicative (tree ⊗ forest).
inline Tensor<Tree, PlantedForest> delta_na_bar_direct(const Tree& t, const Coproducts& cp)
{
    Tensor<Tree, PlantedForest> acc;
    acc.add({Tree(t.n), PlantedForest{}}, 1);
    const MultiIndex zero(t.dim());
    for (auto& b : t.ch) {
        Tensor<Tree, PlantedForest> d;
        for (auto& [p, c] : delta_na_bar_direct(b.t, cp)) d.add({make_tree(zero, {Branch{b.e, p.first}}), p.second}, c);
        cp.for_each_ell([&](const MultiIndex& n, const Rational& w) {
            d.add({Tree(n), PlantedForest(Planted{Edge{b.e.kind, b.e.idx + n}, b.t})}, w);
        });
        acc = tensor_product(acc, d, tree_product, [](const PlantedForest& x, const PlantedForest& y) { return x * y; });
    }
    return acc;
}

// Δ_NA I_a(τ) = (I_a ⊗ id)Δ̄_NA τ + 1 ⊗ I_a(τ), multiplicative for the forest product.
inline Tensor<PlantedForest, PlantedForest> delta_na_direct(const PlantedForest& f, const Coproducts& cp)
{
    Tensor<PlantedForest, PlantedForest> acc;
    acc.add({PlantedForest{}, PlantedForest{}}, 1);
    for (auto& p : f.items) {
        Tensor<PlantedForest, PlantedForest> d;
        for (auto& [q, c] : delta_na_bar_direct(p.body, cp)) d.add({PlantedForest(Planted{p.e, q.first}), q.second}, c);
        d.add({PlantedForest{}, PlantedForest(p)}, 1);
        auto mul = [](const PlantedForest& x, const PlantedForest& y) { return x * y; };
        acc = tensor_product(acc, d, mul, mul);
    }
    return acc;
}

// ---- Δ_RC -----------------------------------------------------------------------------------

inline Tensor<Tree, Tree> delta_rc(const Tree& t, const Coproducts& cp)
{
    return flip(cp.delta2(t));
}

// Δ_RC X^k = Σ C(k,ℓ) X^ℓ ⊗ X^{k−ℓ}, Δ_RC I_a(τ) = (I_a ⊗ id)Δ_RC τ + Σ_n X^n/n! ⊗ I_{a+n}(τ).
inline Tensor<Tree, Tree> delta_rc_direct(const Tree& t, const Coproducts& cp)
{
    Tensor<Tree, Tree> acc;
    for_each_below(t.n, [&](const MultiIndex& l) { acc.add({Tree(l), Tree(t.n - l)}, Rational(mbinomial(t.n, l))); });
    const MultiIndex zero(t.dim());
    for (auto& b : t.ch) {
        Tensor<Tree, Tree> d;
        for (auto& [p, c] : delta_rc_direct(b.t, cp)) d.add({make_tree(zero, {Branch{b.e, p.first}}), p.second}, c);
        cp.for_each_ell([&](const MultiIndex& n, const Rational& w) {
            d.add({Tree(n), make_tree(zero, {Branch{Edge{b.e.kind, b.e.idx + n}, b.t}})}, w);
        });
        acc = tensor_product(acc, d, tree_product, tree_product);
    }
    return acc;
}

// ---- Δ_RN --------------------------------------------------------------------------------------

inline Forest as_forest(const Tree& t)
{
    return Forest(t);
}

Tensor<Forest, Tree> delta_rn(const Tree& t, const Coproducts& cp);

// Δ_RN^{non-root}(X^k ∏ I_a(τ)) = (1 ⊗ X^k) ∏ (id ⊗ I_a) Δ_RN τ
inline Tensor<Forest, Tree> delta_rn_nonroot(const Tree& t, const Coproducts& cp)
{
    Tensor<Forest, Tree> acc;
    acc.add({Forest{}, Tree(t.n)}, 1);
    const MultiIndex zero(t.dim());
    for (auto& b : t.ch) {
        Tensor<Forest, Tree> d;
        for (auto& [p, c] : delta_rn(b.t, cp)) d.add({p.first, make_tree(zero, {Branch{b.e, p.second}})}, c);
        acc = tensor_product(acc, d, [](const Forest& x, const Forest& y) { return x * y; }, tree_product);
    }
    return acc;
}

// Δ_RN = (M ⊗ id)(id ⊗ Δ_RN^{non-root}) Δ_RC
inline Tensor<Forest, Tree> delta_rn(const Tree& t, const Coproducts& cp)
{
    thread_local std::map<std::pair<Tree, long>, Tensor<Forest, Tree>> cache;
    auto key = std::make_pair(t, cp.budget());
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    Tensor<Forest, Tree> out;
    for (auto& [rc, c] : delta_rc_direct(t, cp))
        for (auto& [gh, e] : delta_rn_nonroot(rc.second, cp)) out.add({as_forest(rc.first) * gh.first, gh.second}, c * e);
    cache.emplace(key, out);
    return out;
}

// ---- projected coactions ----------------------------------------------------------------------------

// Δ⁺: Δ_RC terms whose right leg has only positive-degree root branches.
inline Tensor<Tree, Tree> coaction_plus(const Tree& t, const Coproducts& cp, const DegreeAssignment& d)
{
    return delta_rc(t, cp).filter([&](const std::pair<Tree, Tree>& p) {
        for (auto& b : p.second.ch)
            if (degree(Planted{b.e, b.t}, d) <= 0) return false;
        return true;
    });
}

// Δ⁻: Δ_RN terms whose extracted trees all have negative degree and are not single nodes.
inline Tensor<Forest, Tree> coaction_minus(const Tree& t, const Coproducts& cp, const DegreeAssignment& d)
{
    return delta_rn(t, cp).filter([&](const std::pair<Forest, Tree>& p) {
        for (auto& x : p.first.items)
            if (x.ch.empty() || degree(x, d) >= 0) return false;
        return true;
    });
}

// ---- antipodes on planted forests ---------------------------------------------------------------------

enum class AntipodeKind { NA, DCK };

// S(p) = −p − Σ' S(p′) p″ over the reduced coproduct, extended multiplicatively;
// terms whose ℓ-excess exceeds the budget are dropped.
class Antipode {
public:
    Antipode(const Coproducts& cp, AntipodeKind k) : cp_(cp), kind_(k) {}

    Tensor<PlantedForest, PlantedForest> coproduct(const PlantedForest& f) const
    {
        return kind_ == AntipodeKind::DCK ? cp_.dck(f) : flip(cp_.dck(f));
    }

    const LinComb<PlantedForest>& operator()(const Planted& p) const
    {
        if (auto it = cache_.find(p); it != cache_.end()) return it->second;
        PlantedForest pf(p);
        LinComb<PlantedForest> out;
        out.add(pf, -1);
        for (auto& [lr, c] : coproduct(pf)) {
            if (lr.first.empty() || lr.second.empty()) continue;
            for (auto& [s, e] : (*this)(lr.first)) out.add(s * lr.second, -c * e);
        }
        out = truncate(out, pf);
        return cache_.emplace(p, std::move(out)).first->second;
    }

    LinComb<PlantedForest> operator()(const PlantedForest& f) const
    {
        LinComb<PlantedForest> acc(PlantedForest{});
        for (auto& p : f.items) acc = mono_product(acc, (*this)(p));
        return truncate(acc, f);
    }

    LinComb<PlantedForest> operator()(const LinComb<PlantedForest>& x) const
    {
        return lin(x, [&](const PlantedForest& f) { return (*this)(f); });
    }

    // m(S ⊗ id)Δ x and m(id ⊗ S)Δ x, truncated to the budget.
    std::pair<LinComb<PlantedForest>, LinComb<PlantedForest>> convolutions(const PlantedForest& f) const
    {
        LinComb<PlantedForest> left, right;
        for (auto& [lr, c] : coproduct(f)) {
            for (auto& [s, e] : (*this)(lr.first)) left.add(s * lr.second, c * e);
            for (auto& [s, e] : (*this)(lr.second)) right.add(lr.first * s, c * e);
        }
        return {truncate(left, f), truncate(right, f)};
    }

private:
    LinComb<PlantedForest> truncate(const LinComb<PlantedForest>& x, const PlantedForest& in) const
    {
        return x.filter([&](const PlantedForest& y) { return cp_.excess(y, in) <= cp_.budget(); });
    }

    const Coproducts& cp_;
    AntipodeKind kind_;
    mutable std::map<Planted, LinComb<PlantedForest>> cache_;
};

// ---- Birkhoff twist ------------------------------------------------------------------------------------

// Π̂(x) = (Π ⊗ (Q ∘ Π A ·))Δ̄_NA x; Π is evaluated on a planted forest through X^0 ∏ I_a(τ).
template <class V>
V birkhoff_twist(const std::function<V(const Tree&)>& pi, const std::function<V(const V&)>& q, const LinComb<Tree>& x,
                 const Coproducts& cp, const DegreeAssignment& d)
{
    Antipode a(cp, AntipodeKind::NA);
    const MultiIndex zero(cp.session().dim);
    auto pi_forest = [&](const PlantedForest& f) {
        std::vector<Branch> ch;
        for (auto& p : f.items) ch.push_back(Branch{p.e, p.body});
        return pi(make_tree(zero, ch));
    };
    V total = V(Rational(0));
    for (auto& [t, ct] : x)
        for (auto& [lr, c] : delta_na_bar(t, cp, d)) {
            V right = V(Rational(1));
            if (!lr.second.empty()) {
                V acc = V(Rational(0));
                for (auto& [f, e] : a(lr.second)) acc = acc + V(e) * pi_forest(f);
                right = q(acc);
            }
            total = total + V(ct * c) * pi(lr.first) * right;
        }
    return total;
}

// ---- renormalisation maps -------------------------------------------------------------------------------

using TreeMap = std::function<LinComb<Tree>(const Tree&)>;

LinComb<Tree> renorm_map(const TreeMap& r, const Tree& t);

// M∘(X^k ∏ I_a(τ)) = X^k ∏ I_a(Mτ)
inline LinComb<Tree> renorm_circ(const TreeMap& r, const Tree& t)
{
    LinComb<Tree> acc(Tree(t.n));
    const MultiIndex zero(t.dim());
    for (auto& b : t.ch) {
        LinComb<Tree> planted = relabel(renorm_map(r, b.t), [&](const Tree& x) { return make_tree(zero, {Branch{b.e, x}}); });
        acc = bilin(acc, planted, [](const Tree& x, const Tree& y) { return LinComb<Tree>(tree_product(x, y)); });
    }
    return acc;
}

// M = M∘ R
inline LinComb<Tree> renorm_map(const TreeMap& r, const Tree& t)
{
    return lin(r(t), [&](const Tree& u) { return renorm_circ(r, u); });
}

inline LinComb<Tree> renorm_map(const TreeMap& r, const LinComb<Tree>& x)
{
    return lin(x, [&](const Tree& t) { return renorm_map(r, t); });
}

template <class L, class R>
Tensor<L, R> truncate_excess(const Tensor<L, R>& x, const Tree& in, const Coproducts& cp)
{
    return x.filter([&](const std::pair<L, R>& p) { return cp.excess(p, in) <= cp.budget(); });
}

struct IdentityReport {
    bool ok = true;
    size_t checked = 0;
    std::optional<Tree> counterexample;

    void record(bool good, const Tree& t)
    {
        ++checked;
        if (!good && ok) {
            ok = false;
            counterexample = t;
        }
    }
};

// (id ⊗ R)Δ₂ = Δ₂ R
inline IdentityReport check_R_compat(const TreeMap& r, const std::vector<Tree>& basis, const Coproducts& cp)
{
    IdentityReport rep;
    for (auto& t : basis) {
        Tensor<Tree, Tree> lhs, rhs;
        for (auto& [p, c] : cp.delta2(t))
            for (auto& [u, e] : r(p.second)) lhs.add({p.first, u}, c * e);
        for (auto& [u, e] : r(t))
            for (auto& [p, c] : cp.delta2(u)) rhs.add(p, c * e);
        rep.record(truncate_excess(lhs, t, cp) == truncate_excess(rhs, t, cp), t);
    }
    return rep;
}

// (M∘ ⊗ M)Δ₂ = Δ₂ M
inline IdentityReport check_M_cointeraction(const TreeMap& r, const std::vector<Tree>& basis, const Coproducts& cp)
{
    IdentityReport rep;
    for (auto& t : basis) {
        Tensor<Tree, Tree> lhs, rhs;
        for (auto& [p, c] : cp.delta2(t))
            for (auto& [u, e] : renorm_circ(r, p.first))
                for (auto& [v, f] : renorm_map(r, p.second)) lhs.add({u, v}, c * e * f);
        for (auto& [u, e] : renorm_map(r, t))
            for (auto& [p, c] : cp.delta2(u)) rhs.add(p, c * e);
        rep.record(truncate_excess(lhs, t, cp) == truncate_excess(rhs, t, cp), t);
    }
    return rep;
}

// ---- cointeraction identities ----------------------------------------------------------------------------

enum class CointeractionKind { Graft, Plug };

namespace detail {

using TreeProduct = std::function<LinComb<Tree>(const Tree&, const Tree&)>;

// w • y for a forest w = x_1 … x_k acting on a single tree through a pre-Lie product:
// (x v) • y = x ▷ (v • y) − (x ▷ v) • y.
inline LinComb<Tree> forest_act(const std::vector<Tree>& w, const LinComb<Tree>& y, const TreeProduct& prod)
{
    if (w.empty()) return y;
    auto on = [&](const Tree& x, const LinComb<Tree>& z) {
        return lin(z, [&](const Tree& u) { return prod(x, u); });
    };
    if (w.size() == 1) return on(w[0], y);
    std::vector<Tree> v(w.begin() + 1, w.end());
    LinComb<Tree> out = on(w[0], forest_act(v, y, prod));
    for (size_t i = 0; i < v.size(); ++i) {
        for (auto& [u, c] : prod(w[0], v[i])) {
            std::vector<Tree> m = v;
            m[i] = u;
            out.axpy(-c, forest_act(m, y, prod));
        }
    }
    return out;
}

} // namespace detail

// w •^nr τ for τ = X^k ∏ I_{a_i}(σ_i): the factors of w are shared out among the
// branches and each share acts on its σ_i through the insertion product. Dual to Δ∘.
inline LinComb<Tree> insert_forest_nonroot(const Forest& w, const Tree& t, bool deformed)
{
    detail::TreeProduct ins = [deformed](const Tree& a, const Tree& b) { return insert(a, b, deformed); };
    LinComb<Tree> out;
    std::function<void(const Forest&, size_t, Tree&, const Rational&)> rec = [&](const Forest& left, size_t i, Tree& cur,
                                                                                   const Rational& c) {
        if (i == t.ch.size()) {
            if (left.empty()) out.add(canonicalize(cur), c);
            return;
        }
        for (auto& u : unshuffle(left))
            for (auto& [m, d] : detail::forest_act(u.left.items, LinComb<Tree>(t.ch[i].t), ins)) {
                cur.ch[i].t = m;
                rec(u.right, i + 1, cur, c * d * Rational(u.coeff));
            }
        cur.ch[i].t = t.ch[i].t;
    };
    Tree cur = t;
    rec(w, 0, cur, Rational(1));
    return out;
}

// Both sides of
//   graft: Σ (τ⁽¹⁾ ▶ τ₁) ↷^a (τ⁽²⁾ ▶ τ₂) = τ ▶ (τ₁ ↷^a τ₂)
//   plug:  Σ (τ⁽¹⁾ ▶^{non-root} τ₁) ★ (τ⁽²⁾ ▶ τ₂) = τ ▶ (τ₁ ★ τ₂)
// deformed: ▶̂, ↷̂^a and ★₂; otherwise ▶, ↷^a and ★. Sweedler sums use the unshuffle of τ.
inline std::pair<LinComb<Tree>, LinComb<Tree>> cointeraction_sides(CointeractionKind kind, const Forest& tau, const Tree& t1,
                                                                   const Tree& t2, const Edge& a, bool deformed)
{
    detail::TreeProduct ins = [deformed](const Tree& x, const Tree& y) { return insert(x, y, deformed); };
    detail::TreeProduct ins_nr = [deformed](const Tree& x, const Tree& y) {
        return y.ch.empty() ? LinComb<Tree>{} : insert(x, y, deformed, Site::nonroot());
    };
    detail::TreeProduct mul = [&](const Tree& x, const Tree& y) {
        if (kind == CointeractionKind::Plug) return star_plug(x, y, deformed);
        return deformed ? deformed_graft(x, a, y) : graft(x, a, y);
    };
    const detail::TreeProduct& first = kind == CointeractionKind::Plug ? ins_nr : ins;

    LinComb<Tree> lhs;
    for (auto& u : unshuffle(tau)) {
        auto l = detail::forest_act(u.left.items, LinComb<Tree>(t1), first);
        auto r = detail::forest_act(u.right.items, LinComb<Tree>(t2), ins);
        lhs.axpy(Rational(u.coeff), bilin(l, r, mul));
    }
    LinComb<Tree> rhs = detail::forest_act(tau.items, mul(t1, t2), ins);
    return {lhs, rhs};
}

inline bool cointeraction_check(CointeractionKind kind, const Forest& tau, const Tree& t1, const Tree& t2, const Edge& a,
                                bool deformed)
{
    auto [l, r] = cointeraction_sides(kind, tau, t1, t2, a, deformed);
    return l == r;
}

// M^{(13)(2)(4)}(Δ_RN ⊗ Δ_RN^{non-root})Δ_RC = (id ⊗ Δ_RC)Δ_RN, both in S ⊗ T ⊗ T.
inline std::pair<Tensor3<Forest, Tree, Tree>, Tensor3<Forest, Tree, Tree>> rc_rn_sides(const Tree& t, const Coproducts& cp)
{
    Tensor3<Forest, Tree, Tree> lhs, rhs;
    for (auto& [ab, c] : delta_rc(t, cp))
        for (auto& [f1, e1] : delta_rn(ab.first, cp))
            for (auto& [f3, e3] : delta_rn_nonroot(ab.second, cp))
                lhs.add({f1.first * f3.first, f1.second, f3.second}, c * e1 * e3);
    for (auto& [fc, c] : delta_rn(t, cp))
        for (auto& [xy, e] : delta_rc(fc.second, cp)) rhs.add({fc.first, xy.first, xy.second}, c * e);
    auto cut = [&](const Tensor3<Forest, Tree, Tree>& x) {
        return x.filter([&](const std::tuple<Forest, Tree, Tree>& p) { return cp.excess(p, t) <= cp.budget(); });
    };
    return {cut(lhs), cut(rhs)};
}

} // namespace dtree
