#pragma once

// Truncated coproducts dual to the products: Δ_DCK (with Δ̄_DCK, Δ̄^root),
// Δ_DP / Δ₂, Δ∘ / Δ₁, the unshuffle Δ and the polynomial splitting on Ŝ(T).
// Every Σ_ℓ clause keeps only ℓ with |ℓ|_s <= budget.

#include "config.hpp"
#include "guin_oudom.hpp"
#include "tree.hpp"

#include <map>
#include <utility>

namespace dtree {

inline Tensor<Forest, Forest> delta_unshuffle(const Forest& f)
{
    Tensor<Forest, Forest> out;
    for (auto& u : unshuffle(f)) out.add({u.left, u.right}, Rational(u.coeff));
    return out;
}

inline Tensor<PlantedForest, PlantedForest> delta_unshuffle(const PlantedForest& f)
{
    Tensor<PlantedForest, PlantedForest> out;
    for (auto& u : unshuffle(f)) out.add({u.left, u.right}, Rational(u.coeff));
    return out;
}

// Δ on Ŝ(T): X is primitive inside the marked tree (ΔX^k = Σ C(k,ℓ) X^ℓ ⊗ X^{k-ℓ}),
// branches of the marked tree and trees of the forest are primitive.
inline Tensor<Distinguished, Distinguished> delta_polysplit(const Distinguished& x)
{
    Tensor<Distinguished, Distinguished> out;
    const Tree& m = x.marked;
    Multiset<Branch> bs;
    bs.items = m.ch;
    auto branch_splits = unshuffle(bs);
    auto forest_splits = unshuffle(x.rest);
    for_each_below(m.n, [&](const MultiIndex& l) {
        Integer c = mbinomial(m.n, l);
        for (auto& b : branch_splits)
            for (auto& f : forest_splits) {
                Tree lm = make_tree(l, b.left.items);
                Tree rm = make_tree(m.n - l, b.right.items);
                out.add({Distinguished{lm, f.left}, Distinguished{rm, f.right}}, Rational(c * b.coeff * f.coeff));
            }
    });
    return out;
}

class Coproducts {
public:
    Coproducts(const Session& s, long budget) : s_(s), budget_(budget) {}

    long budget() const { return budget_; }
    const Session& session() const { return s_; }

    // Δ̄_DCK : T -> S(P) ⊗ T
    const Tensor<PlantedForest, Tree>& dck_bar(const Tree& t) const
    {
        return memo(dck_bar_, t, [&] {
            Tensor<PlantedForest, Tree> acc;
            acc.add({PlantedForest{}, Tree(t.n)}, 1);
            for (auto& b : t.ch) {
                Tensor<PlantedForest, Tree> d;
                for (auto& [p, c] : dck_bar(b.t)) d.add({p.first, planted_tree(b.e, p.second)}, c);
                add_poly_terms(b, d, [](const Planted& q, const Tree& x) {
                    return std::make_pair(PlantedForest(q), x);
                });
                acc = tensor_product(acc, d, mul_forest<Planted>, tree_product);
            }
            return acc;
        });
    }

    // Δ̄^root_DCK: only the Σ_ℓ clause on every root branch.
    Tensor<PlantedForest, Tree> dck_root(const Tree& t) const
    {
        Tensor<PlantedForest, Tree> acc;
        acc.add({PlantedForest{}, Tree(t.n)}, 1);
        for (auto& b : t.ch) {
            Tensor<PlantedForest, Tree> d;
            add_poly_terms(b, d, [](const Planted& q, const Tree& x) { return std::make_pair(PlantedForest(q), x); });
            acc = tensor_product(acc, d, mul_forest<Planted>, tree_product);
        }
        return acc;
    }

    // Δ_DCK I_a(τ) = (id ⊗ I_a) Δ̄_DCK τ + I_a(τ) ⊗ 1
    const Tensor<PlantedForest, PlantedForest>& dck(const Planted& p) const
    {
        return memo(dck_, p, [&] {
            Tensor<PlantedForest, PlantedForest> out;
            for (auto& [q, c] : dck_bar(p.body)) out.add({q.first, PlantedForest(Planted{p.e, q.second})}, c);
            out.add({PlantedForest(p), PlantedForest{}}, 1);
            return out;
        });
    }

    Tensor<PlantedForest, PlantedForest> dck(const PlantedForest& f) const
    {
        Tensor<PlantedForest, PlantedForest> acc;
        acc.add({PlantedForest{}, PlantedForest{}}, 1);
        for (auto& p : f.items) acc = tensor_product(acc, dck(p), mul_forest<Planted>, mul_forest<Planted>);
        return acc;
    }

    // Δ₂ : T -> T ⊗ T, X primitive, multiplicative for the tree product.
    const Tensor<Tree, Tree>& delta2(const Tree& t) const
    {
        return memo(d2_, t, [&] {
            Tensor<Tree, Tree> acc;
            for_each_below(t.n, [&](const MultiIndex& l) { acc.add({Tree(l), Tree(t.n - l)}, Rational(mbinomial(t.n, l))); });
            for (auto& b : t.ch) {
                Tensor<Tree, Tree> d;
                for (auto& [p, c] : delta2(b.t)) d.add({p.first, planted_tree(b.e, p.second)}, c);
                add_poly_terms(b, d, [](const Planted& q, const Tree& x) { return std::make_pair(q.as_tree(), x); });
                acc = tensor_product(acc, d, tree_product, tree_product);
            }
            return acc;
        });
    }

    // Δ_DP : T -> Ŝ(T) ⊗ T
    const Tensor<Distinguished, Tree>& delta_dp(const Tree& t) const
    {
        return memo(dp_, t, [&] {
            Tensor<Distinguished, Tree> acc;
            for_each_below(t.n, [&](const MultiIndex& l) {
                acc.add({Distinguished{Tree(l), Forest{}}, Tree(t.n - l)}, Rational(mbinomial(t.n, l)));
            });
            for (auto& b : t.ch) {
                Tensor<Distinguished, Tree> d;
                for (auto& [p, c] : delta_dp(b.t))
                    d.add({Distinguished{Tree(s_.zero()), forget_mark(p.first)}, planted_tree(b.e, p.second)}, c);
                add_poly_terms(b, d, [](const Planted& q, const Tree& x) {
                    return std::make_pair(Distinguished{q.as_tree(), Forest{}}, x);
                });
                acc = tensor_product(acc, d, mul_dist, tree_product);
            }
            return acc;
        });
    }

    // Δ̄_DP(X^k ∏ I_a(τ)) = (1 ⊗ X^k) ∏ (𝒞 ⊗ I_a) Δ_DP τ, dual to the non-root plugging.
    Tensor<Forest, Tree> delta_dp_bar(const Tree& t) const
    {
        Tensor<Forest, Tree> acc;
        acc.add({Forest{}, Tree(t.n)}, 1);
        for (auto& b : t.ch) {
            Tensor<Forest, Tree> d;
            for (auto& [p, c] : delta_dp(b.t)) d.add({forget_mark(p.first), planted_tree(b.e, p.second)}, c);
            acc = tensor_product(acc, d, mul_forest<Tree>, tree_product);
        }
        return acc;
    }

    // Δ₂ = (𝒞 ⊗ id) Δ_DP : T -> S(T) ⊗ T
    const Tensor<Forest, Tree>& delta2_forest(const Tree& t) const
    {
        return memo(d2f_, t, [&] {
            Tensor<Forest, Tree> out;
            for (auto& [p, c] : delta_dp(t)) out.add({forget_mark(p.first), p.second}, c);
            return out;
        });
    }

    // Multiplicative extension to S(T) -> S(T) ⊗ S(T).
    Tensor<Forest, Forest> delta2_forest(const Forest& f) const
    {
        return on_forest(f, [&](const Tree& t) { return delta2_forest(t); });
    }

    // Δ∘ X^k = 1 ⊗ X^k, Δ∘ I_a(τ) = (id ⊗ I_a) Δ₁ τ, multiplicative for the tree product.
    const Tensor<Forest, Tree>& delta_circ(const Tree& t) const
    {
        return memo(dc_, t, [&] {
            Tensor<Forest, Tree> acc;
            acc.add({Forest{}, Tree(t.n)}, 1);
            for (auto& b : t.ch) {
                Tensor<Forest, Tree> d;
                for (auto& [p, c] : delta1(b.t)) d.add({p.first, planted_tree(b.e, p.second)}, c);
                acc = tensor_product(acc, d, mul_forest<Tree>, tree_product);
            }
            return acc;
        });
    }

    // Δ₁ = M^{(13)(2)} (Δ∘ ⊗ id) Δ₂
    const Tensor<Forest, Tree>& delta1(const Tree& t) const
    {
        return memo(d1_, t, [&] {
            Tensor<Forest, Tree> out;
            for (auto& [pt, c] : delta2(t))
                for (auto& [gh, e] : delta_circ(pt.first)) out.add({gh.first * Forest(pt.second), gh.second}, c * e);
            return out;
        });
    }

    Tensor<Forest, Forest> delta1(const Forest& f) const
    {
        return on_forest(f, [&](const Tree& t) { return delta1(t); });
    }

    // The ℓ-grading excess of a term relative to its input (total |ℓ|_s used).
    template <class X, class In>
    long excess(const X& term, const In& input) const
    {
        return grading(term, s_.scaling) - grading(input, s_.scaling);
    }

    // Calls f(ℓ, 1/ℓ!) for |ℓ|_s <= budget.
    template <class F>
    void for_each_ell(F&& f) const
    {
        for_each_weighted(s_.dim, s_.scaling, budget_, [&](const MultiIndex& l) { f(l, Rational(1) / Rational(mfactorial(l))); });
    }

private:
    template <class B>
    static Multiset<B> mul_forest(const Multiset<B>& a, const Multiset<B>& b)
    {
        return a * b;
    }
    static Distinguished mul_dist(const Distinguished& a, const Distinguished& b) { return a * b; }

    static Tree planted_tree(const Edge& e, const Tree& body) { return Planted{e, body}.as_tree(); }

    // Adds Σ_ℓ (1/ℓ!) I_{a+ℓ}(τ) ⊗ X^ℓ in the representation given by make.
    template <class L, class Make>
    void add_poly_terms(const Branch& b, Tensor<L, Tree>& d, Make&& make) const
    {
        for_each_ell([&](const MultiIndex& l, const Rational& w) {
            d.add(make(Planted{Edge{b.e.kind, b.e.idx + l}, b.t}, Tree(l)), w);
        });
    }

    template <class F>
    static Tensor<Forest, Forest> on_forest(const Forest& f, F&& per_tree)
    {
        Tensor<Forest, Forest> acc;
        acc.add({Forest{}, Forest{}}, 1);
        for (auto& t : f.items) {
            Tensor<Forest, Forest> d;
            for (auto& [p, c] : per_tree(t)) d.add({p.first, Forest(p.second)}, c);
            acc = tensor_product(acc, d, mul_forest<Tree>, mul_forest<Tree>);
        }
        return acc;
    }

    template <class K, class V, class F>
    static const V& memo(std::map<K, V>& cache, const K& key, F&& compute)
    {
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        V v = compute();
        return cache.emplace(key, std::move(v)).first->second;
    }

    Session s_;
    long budget_;
    mutable std::map<Tree, Tensor<PlantedForest, Tree>> dck_bar_;
    mutable std::map<Planted, Tensor<PlantedForest, PlantedForest>> dck_;
    mutable std::map<Tree, Tensor<Tree, Tree>> d2_;
    mutable std::map<Tree, Tensor<Distinguished, Tree>> dp_;
    mutable std::map<Tree, Tensor<Forest, Tree>> d2f_;
    mutable std::map<Tree, Tensor<Forest, Tree>> dc_;
    mutable std::map<Tree, Tensor<Forest, Tree>> d1_;
};

} // namespace dtree
