#pragma once

// Exact integers and rationals (GMP), plus the factorial-type coefficients
// used everywhere in the tree algebra.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace dtree {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer factorial(long n)
{
    if (n < 0) return 0;
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// Zero outside 0 <= k <= n.
inline Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

// Accepts "int" or "int/nat"; result is canonicalized.
inline Rational parse_rational(const std::string& s)
{
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

} // namespace dtree
