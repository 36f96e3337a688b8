#pragma once

#include "rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dtree {

inline constexpr int kMaxDim = 8;

// Element of Z^{d+1}; decorations use the non-negative part N^{d+1}.
// Signed entries are allowed so that shifts like ↑^{-ℓ} can be expressed,
// validity is checked with nonneg().
struct MultiIndex {
    int dim = 0;
    std::array<int, kMaxDim> v{};

    MultiIndex() = default;
    explicit MultiIndex(int d) : dim(d)
    {
        if (d < 1 || d > kMaxDim) throw std::invalid_argument("multi-index dimension out of range");
    }
    MultiIndex(std::initializer_list<int> xs) : dim(static_cast<int>(xs.size()))
    {
        if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("multi-index dimension out of range");
        int i = 0;
        for (int x : xs) v[i++] = x;
    }
    static MultiIndex from(const std::vector<int>& xs)
    {
        MultiIndex m(static_cast<int>(xs.size()));
        for (int i = 0; i < m.dim; ++i) m.v[i] = xs[i];
        return m;
    }
    static MultiIndex unit(int d, int i, int value = 1)
    {
        MultiIndex m(d);
        m.v[i] = value;
        return m;
    }

    int& operator[](int i) { return v[i]; }
    int operator[](int i) const { return v[i]; }

    auto operator<=>(const MultiIndex&) const = default;
    bool operator==(const MultiIndex&) const = default;

    bool nonneg() const
    {
        for (int i = 0; i < dim; ++i)
            if (v[i] < 0) return false;
        return true;
    }
    bool is_zero() const
    {
        for (int i = 0; i < dim; ++i)
            if (v[i] != 0) return false;
        return true;
    }
    bool leq(const MultiIndex& o) const
    {
        for (int i = 0; i < dim; ++i)
            if (v[i] > o.v[i]) return false;
        return true;
    }
    long norm1() const
    {
        long s = 0;
        for (int i = 0; i < dim; ++i) s += v[i] < 0 ? -v[i] : v[i];
        return s;
    }
    // |n|_s = Σ s_i n_i
    long weighted(const std::vector<int>& s) const
    {
        long r = 0;
        for (int i = 0; i < dim; ++i) r += static_cast<long>(s[static_cast<size_t>(i)]) * v[i];
        return r;
    }

    MultiIndex& operator+=(const MultiIndex& o)
    {
        for (int i = 0; i < dim; ++i) v[i] += o.v[i];
        return *this;
    }
    MultiIndex& operator-=(const MultiIndex& o)
    {
        for (int i = 0; i < dim; ++i) v[i] -= o.v[i];
        return *this;
    }
    friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }
    friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) { return a -= b; }
    MultiIndex operator-() const
    {
        MultiIndex r(*this);
        for (int i = 0; i < dim; ++i) r.v[i] = -r.v[i];
        return r;
    }
    MultiIndex min(const MultiIndex& o) const
    {
        MultiIndex r(*this);
        for (int i = 0; i < dim; ++i) r.v[i] = v[i] < o.v[i] ? v[i] : o.v[i];
        return r;
    }
};

// Partial subtraction: empty when a component would become negative.
inline std::optional<MultiIndex> checked_sub(const MultiIndex& a, const MultiIndex& b)
{
    MultiIndex r = a - b;
    if (!r.nonneg()) return std::nullopt;
    return r;
}

inline Integer mfactorial(const MultiIndex& k)
{
    Integer r = 1;
    for (int i = 0; i < k.dim; ++i) r *= factorial(k[i]);
    return r;
}

inline Integer mbinomial(const MultiIndex& n, const MultiIndex& k)
{
    Integer r = 1;
    for (int i = 0; i < n.dim; ++i) {
        r *= binomial(n[i], k[i]);
        if (r == 0) break;
    }
    return r;
}

// C(n; ℓ_1..ℓ_m) = n! / ((n - Σℓ)! ∏ ℓ_j!), componentwise; zero when n - Σℓ < 0.
template <class Range>
Integer multinomial(const MultiIndex& n, const Range& ls)
{
    Integer r = 1;
    for (int i = 0; i < n.dim; ++i) {
        long rest = n[i];
        for (const MultiIndex& l : ls) {
            if (l[i] < 0) return 0;
            r *= binomial(rest, l[i]);
            rest -= l[i];
            if (rest < 0) return 0;
        }
    }
    return r;
}

// Calls f(ℓ) for every 0 <= ℓ <= hi (lexicographic order).
template <class F>
void for_each_below(const MultiIndex& hi, F&& f)
{
    if (!hi.nonneg()) return;
    MultiIndex l(hi.dim);
    while (true) {
        f(static_cast<const MultiIndex&>(l));
        int i = hi.dim - 1;
        while (i >= 0 && l[i] == hi[i]) {
            l[i] = 0;
            --i;
        }
        if (i < 0) return;
        ++l[i];
    }
}

// Calls f(ℓ) for every ℓ in N^{dim} with |ℓ|_s <= budget.
template <class F>
void for_each_weighted(int dim, const std::vector<int>& s, long budget, F&& f)
{
    if (budget < 0) return;
    MultiIndex hi(dim);
    for (int i = 0; i < dim; ++i) hi[i] = static_cast<int>(budget / s[static_cast<size_t>(i)]);
    for_each_below(hi, [&](const MultiIndex& l) {
        if (l.weighted(s) <= budget) f(l);
    });
}

} // namespace dtree
