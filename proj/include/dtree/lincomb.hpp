#pragma once

// Finite formal sums with exact rational coefficients over an ordered basis.

#include "rational.hpp"

#include <map>
#include <tuple>
#include <utility>

namespace dtree {

template <class B>
class LinComb {
public:
    using basis_type = B;
    using map_type = std::map<B, Rational>;

    LinComb() = default;
    explicit LinComb(const B& b, const Rational& c = 1) { add(b, c); }

    void add(const B& b, const Rational& c)
    {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(b, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    void add(B&& b, const Rational& c)
    {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(std::move(b), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coeff(const B& b) const
    {
        auto it = terms_.find(b);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }
    auto rbegin() const { return terms_.rbegin(); }
    auto rend() const { return terms_.rend(); }
    const map_type& terms() const { return terms_; }

    LinComb& operator+=(const LinComb& o)
    {
        for (auto& [b, c] : o.terms_) add(b, c);
        return *this;
    }
    LinComb& operator-=(const LinComb& o)
    {
        for (auto& [b, c] : o.terms_) add(b, -c);
        return *this;
    }
    LinComb& operator*=(const Rational& c)
    {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& kv : terms_) kv.second *= c;
        return *this;
    }
    // Adds c * o.
    void axpy(const Rational& c, const LinComb& o)
    {
        if (c == 0) return;
        for (auto& [b, d] : o.terms_) add(b, c * d);
    }

    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator*(const Rational& c, LinComb a) { return a *= c; }
    friend LinComb operator-(LinComb a) { return a *= Rational(-1); }
    bool operator==(const LinComb& o) const { return terms_ == o.terms_; }

    template <class Pred>
    LinComb filter(Pred p) const
    {
        LinComb r;
        for (auto& [b, c] : terms_)
            if (p(b)) r.terms_.emplace(b, c);
        return r;
    }

private:
    map_type terms_;
};

// Linear extension of f : B -> LinComb<C>.
template <class B, class F>
auto lin(const LinComb<B>& x, F&& f)
{
    using R = decltype(f(std::declval<const B&>()));
    R out;
    for (auto& [b, c] : x) out.axpy(c, f(b));
    return out;
}

// Bilinear extension of f : A x B -> LinComb<C>.
template <class A, class B, class F>
auto bilin(const LinComb<A>& x, const LinComb<B>& y, F&& f)
{
    using R = decltype(f(std::declval<const A&>(), std::declval<const B&>()));
    R out;
    for (auto& [a, ca] : x)
        for (auto& [b, cb] : y) out.axpy(ca * cb, f(a, b));
    return out;
}

// Linear extension of a basis map g : B -> C.
template <class B, class G>
auto relabel(const LinComb<B>& x, G&& g)
{
    using C = std::decay_t<decltype(g(std::declval<const B&>()))>;
    LinComb<C> out;
    for (auto& [b, c] : x) out.add(g(b), c);
    return out;
}

template <class A, class B>
using Tensor = LinComb<std::pair<A, B>>;

template <class A, class B, class C>
using Tensor3 = LinComb<std::tuple<A, B, C>>;

template <class A, class B>
Tensor<A, B> tensor(const LinComb<A>& x, const LinComb<B>& y)
{
    Tensor<A, B> out;
    for (auto& [a, ca] : x)
        for (auto& [b, cb] : y) out.add({a, b}, ca * cb);
    return out;
}

// Product of two tensors with legwise products ml, mr (basis-level, single result).
template <class A, class B, class ML, class MR>
Tensor<A, B> tensor_product(const Tensor<A, B>& x, const Tensor<A, B>& y, ML&& ml, MR&& mr)
{
    Tensor<A, B> out;
    for (auto& [p, cp] : x)
        for (auto& [q, cq] : y) out.add({ml(p.first, q.first), mr(p.second, q.second)}, cp * cq);
    return out;
}

template <class A, class B>
Tensor<B, A> flip(const Tensor<A, B>& x)
{
    Tensor<B, A> out;
    for (auto& [p, c] : x) out.add({p.second, p.first}, c);
    return out;
}

} // namespace dtree
