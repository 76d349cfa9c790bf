#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace divmet {

// Arbitrary-precision integers and exact rationals. No floating point
// appears anywhere in the library; every value comparison is decided in
// exact arithmetic.
using Nat = mpz_class;  // non-negative by convention, checked at API boundaries
using Int = mpz_class;
using Rat = mpq_class;  // kept canonical (gcd(num,den)=1, den>0)

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_of(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p/q" or "p". Used by the CLI and the prime-power-value JSON format.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Int n(s);
            return Rat(n);
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        return make_rat(num, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational: '" + s + "'");
    }
}

// Renders "p/q", or "p" when the denominator is 1. Never decimals.
inline std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Nat parse_nat(const std::string& s) {
    Int n;
    try {
        n = Int(s);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed natural number: '" + s + "'");
    }
    if (n < 0) throw std::invalid_argument("expected a non-negative integer: '" + s + "'");
    return n;
}

}  // namespace divmet
