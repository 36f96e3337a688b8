#pragma once

// Guin-Oudom construction: a pre-Lie product on a basis B is extended to the
// symmetric algebra S(B) (the bullet •) and yields the associative product
// w ★ v = Σ (w⁽¹⁾ • v) w⁽²⁾.

#include "lincomb.hpp"
#include "tree.hpp"

#include <algorithm>
#include <functional>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace dtree {

template <class B>
struct Unshuffle {
    Integer coeff;
    Multiset<B> left, right;
};

// Δ x^m = Σ_j C(m,j) x^j ⊗ x^{m-j} for each distinct factor; multiplicative.
template <class B>
std::vector<Unshuffle<B>> unshuffle(const Multiset<B>& w)
{
    std::vector<std::pair<B, long>> groups;
    for (auto& x : w.items) {
        if (!groups.empty() && groups.back().first == x)
            ++groups.back().second;
        else
            groups.push_back({x, 1});
    }
    std::vector<Unshuffle<B>> out{{1, {}, {}}};
    for (auto& [x, m] : groups) {
        std::vector<Unshuffle<B>> next;
        for (auto& u : out)
            for (long j = 0; j <= m; ++j) {
                Unshuffle<B> v = u;
                v.coeff *= binomial(m, j);
                for (long i = 0; i < j; ++i) v.left.items.push_back(x);
                for (long i = j; i < m; ++i) v.right.items.push_back(x);
                next.push_back(std::move(v));
            }
        out = std::move(next);
    }
    for (auto& u : out) {
        u.left.normalize();
        u.right.normalize();
    }
    return out;
}

template <class B>
LinComb<Multiset<B>> mono_product(const LinComb<Multiset<B>>& x, const LinComb<Multiset<B>>& y)
{
    LinComb<Multiset<B>> out;
    for (auto& [a, ca] : x)
        for (auto& [b, cb] : y) out.add(a * b, ca * cb);
    return out;
}

template <class B>
class GuinOudom {
public:
    using Mono = Multiset<B>;
    using Product = std::function<LinComb<B>(const B&, const B&)>;

    explicit GuinOudom(Product p) : prod_(std::move(p)) {}

    const LinComb<B>& product(const B& x, const B& y) const
    {
        auto key = std::make_pair(x, y);
        auto it = prod_cache_.find(key);
        if (it != prod_cache_.end()) return it->second;
        return prod_cache_.emplace(std::move(key), prod_(x, y)).first->second;
    }

    // x ▷ (y_1 … y_k) = Σ_i y_1 … (x ▷ y_i) … y_k
    LinComb<Mono> extend(const B& x, const Mono& w) const
    {
        LinComb<Mono> out;
        for (size_t i = 0; i < w.items.size(); ++i) {
            if (i > 0 && w.items[i] == w.items[i - 1]) continue;
            long mult = 0;
            for (auto& y : w.items) mult += (y == w.items[i]);
            Mono rest;
            for (size_t j = 0; j < w.items.size(); ++j)
                if (j != i) rest.items.push_back(w.items[j]);
            for (auto& [b, c] : product(x, w.items[i])) out.add(Mono(b) * rest, c * mult);
        }
        return out;
    }

    LinComb<Mono> extend(const B& x, const LinComb<Mono>& w) const
    {
        return lin(w, [&](const Mono& m) { return extend(x, m); });
    }

    // 1•w = w, u•1 = ε(u), w•(y v) = Σ (w⁽¹⁾•y)(w⁽²⁾•v), (x v)•y = x▷(v•y) - (x▷v)•y
    const LinComb<Mono>& bullet(const Mono& w, const Mono& u) const
    {
        auto key = std::make_pair(w, u);
        auto it = bullet_cache_.find(key);
        if (it != bullet_cache_.end()) return it->second;
        LinComb<Mono> out = compute_bullet(w, u);
        return bullet_cache_.emplace(std::move(key), std::move(out)).first->second;
    }

    LinComb<Mono> bullet(const LinComb<Mono>& w, const LinComb<Mono>& u) const
    {
        return bilin(w, u, [&](const Mono& a, const Mono& b) { return bullet(a, b); });
    }

    LinComb<Mono> star(const Mono& w, const Mono& v) const
    {
        LinComb<Mono> out;
        for (auto& s : unshuffle(w)) {
            const auto& left = bullet(s.left, v);
            for (auto& [m, c] : left) out.add(m * s.right, c * Rational(s.coeff));
        }
        return out;
    }

    LinComb<Mono> star(const LinComb<Mono>& w, const LinComb<Mono>& v) const
    {
        return bilin(w, v, [&](const Mono& a, const Mono& b) { return star(a, b); });
    }

private:
    LinComb<Mono> compute_bullet(const Mono& w, const Mono& u) const
    {
        LinComb<Mono> out;
        if (u.empty()) {
            if (w.empty()) out.add(Mono{}, 1);
            return out;
        }
        if (w.empty()) {
            out.add(u, 1);
            return out;
        }
        if (u.size() > 1) {
            Mono y(u.items.front());
            Mono v;
            v.items.assign(u.items.begin() + 1, u.items.end());
            for (auto& s : unshuffle(w)) {
                const auto& a = bullet(s.left, y);
                if (a.empty()) continue;
                const auto& b = bullet(s.right, v);
                if (b.empty()) continue;
                out.axpy(Rational(s.coeff), mono_product(a, b));
            }
            return out;
        }
        const B& y = u.items.front();
        if (w.size() == 1) {
            for (auto& [b, c] : product(w.items.front(), y)) out.add(Mono(b), c);
            return out;
        }
        const B& x = w.items.front();
        Mono v;
        v.items.assign(w.items.begin() + 1, w.items.end());
        out += extend(x, bullet(v, u));
        for (auto& [m, c] : extend(x, v)) out.axpy(-c, bullet(m, u));
        return out;
    }

    template <class X>
    struct PairHash {
        size_t operator()(const std::pair<X, X>& p) const { return hash_mix(hash_value(p.first), hash_value(p.second)); }
    };

    Product prod_;
    mutable std::unordered_map<std::pair<B, B>, LinComb<B>, PairHash<B>> prod_cache_;
    mutable std::unordered_map<std::pair<Mono, Mono>, LinComb<Mono>, PairHash<Mono>> bullet_cache_;
};

// Basis elements replaced by integer ids, with memoized products on ids.
// Sums are sorted (id, coeff) vectors; used by the exhaustive identity checks.
// With C = long long every product coefficient must be an integer (checked).
template <class B, class C = Rational>
class InternedAlgebra {
public:
    using Sum = std::vector<std::pair<int, C>>;
    using Product = std::function<LinComb<B>(int op, const B&, const B&)>;

    explicit InternedAlgebra(Product p) : prod_(std::move(p)) {}

    int id(const B& b)
    {
        auto [it, fresh] = ids_.try_emplace(b, static_cast<int>(items_.size()));
        if (fresh) items_.push_back(b);
        return it->second;
    }
    const B& item(int i) const { return items_[static_cast<size_t>(i)]; }

    // Ids below the pin mark are kept; clear_scratch() forgets every other id
    // together with all memoized products.
    void pin() { pinned_ = static_cast<int>(items_.size()); }
    void clear_scratch()
    {
        memo_ = {};
        std::erase_if(ids_, [&](const auto& kv) { return kv.second >= pinned_; });
        items_.resize(static_cast<size_t>(pinned_));
    }

    const Sum& mul(int op, int x, int y)
    {
        auto key = (static_cast<uint64_t>(op) << 56) | (static_cast<uint64_t>(x) << 28) | static_cast<uint64_t>(y);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Sum out;
        for (auto& [b, c] : prod_(op, item(x), item(y))) out.emplace_back(id(b), coeff(c));
        return memo_.emplace(key, std::move(out)).first->second;
    }

    // Σ c·(u op y) over u in x, or Σ c·(y op u) when left is false.
    void mul_into(int op, const Sum& x, int y, bool sum_on_left, const C& scale, Sum& acc)
    {
        for (auto& [u, c] : x)
            for (auto& [w, d] : sum_on_left ? mul(op, u, y) : mul(op, y, u)) acc.emplace_back(w, scale * c * d);
    }

    static Sum normalize(Sum s)
    {
        std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        Sum out;
        for (auto& [i, c] : s) {
            if (!out.empty() && out.back().first == i)
                out.back().second += c;
            else
                out.emplace_back(i, c);
        }
        std::erase_if(out, [](const auto& p) { return p.second == 0; });
        return out;
    }

    // x op₁ (y op₂ z) − (x op₁ y) op₂ z
    Sum associator(int op1, int x, int op2, int y, int z)
    {
        Sum acc;
        mul_into(op1, mul(op2, y, z), x, false, C(1), acc);
        mul_into(op2, mul(op1, x, y), z, true, C(-1), acc);
        return normalize(std::move(acc));
    }

private:
    static C coeff(const Rational& c)
    {
        if constexpr (std::is_same_v<C, Rational>) {
            return c;
        } else {
            if (c.get_den() != 1 || !c.get_num().fits_slong_p()) throw std::domain_error("non-integer coefficient");
            return static_cast<C>(c.get_num().get_si());
        }
    }

    Product prod_;
    struct Hash {
        size_t operator()(const B& b) const { return hash_value(b); }
    };
    std::unordered_map<B, int, Hash> ids_;
    std::vector<B> items_;
    std::unordered_map<uint64_t, Sum> memo_;
    int pinned_ = 0;
};

template <class B>
struct PrelieReport {
    bool ok = true;
    size_t triples = 0;
    std::optional<std::tuple<B, B, B>> counterexample;
};

// Checks x▷(y▷z) - (x▷y)▷z = y▷(x▷z) - (y▷x)▷z on all triples of the basis,
// optionally only those with at most max_total edges in all.
namespace detail {
template <class C, class B, class P>
PrelieReport<B> check_prelie_with(P& prod, const std::vector<B>& basis, std::optional<size_t> max_total)
{
    InternedAlgebra<B, C> alg([&](int, const B& x, const B& y) { return prod(x, y); });
    std::vector<int> ids;
    for (auto& b : basis) ids.push_back(alg.id(b));
    alg.pin();
    PrelieReport<B> rep;
    for (size_t k = 0; k < basis.size(); ++k, alg.clear_scratch())
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = i + 1; j < basis.size(); ++j) {
                if (max_total && basis[i].edges() + basis[j].edges() + basis[k].edges() > *max_total) continue;
                ++rep.triples;
                if (alg.associator(0, ids[i], 0, ids[j], ids[k]) != alg.associator(0, ids[j], 0, ids[i], ids[k])) {
                    rep.ok = false;
                    rep.counterexample = std::make_tuple(basis[i], basis[j], basis[k]);
                    return rep;
                }
            }
    return rep;
}
} // namespace detail

// Checks x▷(y▷z) - (x▷y)▷z = y▷(x▷z) - (y▷x)▷z on all triples of the basis,
// optionally only those with at most max_total edges in all.
template <class B, class P>
PrelieReport<B> check_prelie(P&& prod, const std::vector<B>& basis, std::optional<size_t> max_total = std::nullopt)
{
    try {
        return detail::check_prelie_with<long long>(prod, basis, max_total);
    } catch (const std::domain_error&) {
        return detail::check_prelie_with<Rational>(prod, basis, max_total);
    }
}

} // namespace dtree
