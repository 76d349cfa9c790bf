#include "divmet/factor.hpp"

#include <algorithm>
#include <stdexcept>

namespace divmet {

Nat Factorization::reconstruct() const {
    Nat prod = 1;
    for (const auto& pp : pairs) {
        Nat q;
        mpz_pow_ui(q.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
        prod *= q;
    }
    return prod;
}

unsigned Factorization::big_omega() const {
    unsigned s = 0;
    for (const auto& pp : pairs) s += pp.exponent;
    return s;
}

bool Factorization::squarefree() const {
    for (const auto& pp : pairs)
        if (pp.exponent > 1) return false;
    return true;
}

namespace {

// 2/3/5 wheel: after stripping 2, 3, 5, candidate divisors advance by these gaps.
constexpr unsigned long kWheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};

void strip(Nat& m, const Nat& p, Factorization& out) {
    unsigned e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++e;
    }
    if (e > 0) out.pairs.push_back({p, e});
}

}  // namespace

Factorization factorize(const Nat& n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization out;
    out.n = n;
    Nat m = n;
    strip(m, 2, out);
    strip(m, 3, out);
    strip(m, 5, out);
    Nat d = 7;
    size_t wi = 0;
    while (m > 1 && d * d <= m) {
        strip(m, d, out);
        d += kWheel[wi];
        wi = (wi + 1) & 7;
    }
    if (m > 1) out.pairs.push_back({m, 1});
    return out;
}

bool is_prime(const Nat& n) {
    if (n < 2) return false;
    Factorization f = factorize(n);
    return f.pairs.size() == 1 && f.pairs[0].exponent == 1;
}

DivisorSet divisor_set(const Nat& n) {
    if (n < 1) throw std::invalid_argument("divisor_set: n must be >= 1");
    Factorization f = factorize(n);
    DivisorSet out;
    out.n = n;
    out.divisors.push_back(1);
    for (const auto& pp : f.pairs) {
        size_t old = out.divisors.size();
        Nat q = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            q *= pp.prime;
            out.prime_powers.push_back(q);
            for (size_t i = 0; i < old; ++i) out.divisors.push_back(out.divisors[i] * q);
        }
    }
    std::sort(out.divisors.begin(), out.divisors.end());
    std::sort(out.prime_powers.begin(), out.prime_powers.end());
    return out;
}

Nat gcd_z(const Int& x, const Nat& n) {
    if (n < 1) throw std::invalid_argument("gcd_z: n must be >= 1");
    if (x == 0) return n;
    Nat ax = abs(x);
    Nat g;
    mpz_gcd(g.get_mpz_t(), ax.get_mpz_t(), n.get_mpz_t());
    return g;
}

Nat rad(const Nat& n) {
    Factorization f = factorize(n);
    Nat r = 1;
    for (const auto& pp : f.pairs) r *= pp.prime;
    return r;
}

}  // namespace divmet
