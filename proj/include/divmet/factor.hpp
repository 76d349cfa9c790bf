#pragma once

#include <vector>

#include "divmet/rational.hpp"

namespace divmet {

struct PrimePower {
    Nat prime;
    unsigned exponent;  // >= 1
};

// Sorted (prime, exponent) pairs; the substrate for all function evaluation.
struct Factorization {
    Nat n;
    std::vector<PrimePower> pairs;  // strictly increasing by prime

    Nat reconstruct() const;
    unsigned big_omega() const;  // sum of exponents
    unsigned small_omega() const { return static_cast<unsigned>(pairs.size()); }
    bool squarefree() const;
};

// Deterministic trial division with a 2/3/5 wheel. Desk-scale correctness
// over asymptotic speed; the scanners use segmented sieving instead.
Factorization factorize(const Nat& n);

bool is_prime(const Nat& n);

// D_n (all divisors, sorted) and P*_n (prime powers p^i | n, i >= 1, sorted).
struct DivisorSet {
    Nat n;
    std::vector<Nat> divisors;
    std::vector<Nat> prime_powers;
};

DivisorSet divisor_set(const Nat& n);

// gcd extended to integer arguments: gcd(|x|, n), with gcd(0, n) = n.
// Total on Z and periodic with period n; the result always lies in D_n.
Nat gcd_z(const Int& x, const Nat& n);

// Squarefree kernel: product of the distinct primes dividing n. rad(1) = 1.
Nat rad(const Nat& n);

}  // namespace divmet
