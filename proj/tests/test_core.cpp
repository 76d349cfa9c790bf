#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "divmet/factor.hpp"
#include "divmet/partitions.hpp"

using namespace divmet;

namespace {

// Independent naive trial division (no wheel), for cross-checking factorize.
std::vector<std::pair<unsigned long, unsigned>> naive_factor(unsigned long n) {
    std::vector<std::pair<unsigned long, unsigned>> out;
    for (unsigned long p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// Literal enumeration of partitions of k with parts <= maxp; each leaf is
// one partition.
unsigned long enum_partitions(unsigned long k, unsigned long maxp) {
    if (k == 0) return 1;
    unsigned long total = 0;
    for (unsigned long part = std::min(k, maxp); part >= 1; --part)
        total += enum_partitions(k - part, part);
    return total;
}

}  // namespace

TEST_CASE("factorize matches forced examples") {
    auto f1 = factorize(12);
    REQUIRE(f1.pairs.size() == 2);
    CHECK(f1.pairs[0].prime == 2);
    CHECK(f1.pairs[0].exponent == 2);
    CHECK(f1.pairs[1].prime == 3);
    CHECK(f1.pairs[1].exponent == 1);

    CHECK(factorize(1).pairs.empty());

    auto oracle = naive_factor(30000);
    auto f2 = factorize(30000);
    REQUIRE(f2.pairs.size() == oracle.size());
    for (size_t i = 0; i < oracle.size(); ++i) {
        CHECK(f2.pairs[i].prime == oracle[i].first);
        CHECK(f2.pairs[i].exponent == oracle[i].second);
    }
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorization reconstructs and counts divisors for all n <= 10^4") {
    for (unsigned long n = 1; n <= 10000; ++n) {
        Factorization f = factorize(n);
        REQUIRE(f.reconstruct() == n);
        auto oracle = naive_factor(n);
        REQUIRE(f.pairs.size() == oracle.size());
        DivisorSet ds = divisor_set(n);
        unsigned long count = 1;
        for (const auto& [p, e] : oracle) count *= e + 1;
        REQUIRE(ds.divisors.size() == count);
        REQUIRE(ds.prime_powers.size() == f.big_omega());
        for (const auto& d : ds.divisors) REQUIRE(n % mpz_get_ui(d.get_mpz_t()) == 0);
        REQUIRE(std::is_sorted(ds.divisors.begin(), ds.divisors.end()));
    }
}

TEST_CASE("divisor_set examples") {
    DivisorSet d12 = divisor_set(12);
    CHECK(d12.divisors == std::vector<Nat>{1, 2, 3, 4, 6, 12});
    CHECK(d12.prime_powers == std::vector<Nat>{2, 3, 4});

    DivisorSet d13 = divisor_set(13);
    CHECK(d13.divisors == std::vector<Nat>{1, 13});
    CHECK(d13.prime_powers == std::vector<Nat>{13});

    CHECK(divisor_set(5040).divisors.size() == 60);  // prod(alpha_i + 1) = 60
    CHECK_THROWS_AS(divisor_set(0), std::invalid_argument);
}

TEST_CASE("gcd_z conventions and periodicity") {
    CHECK(gcd_z(35, 6) == 1);
    CHECK(gcd_z(0, 6) == 6);
    CHECK(gcd_z(-8, 6) == 2);
    for (long n : {2L, 6L, 12L, 30L}) {
        for (long x = -3 * n; x <= 3 * n; ++x) {
            CHECK(gcd_z(x + n, n) == gcd_z(x, n));
            Nat g = gcd_z(x, n);
            CHECK(mpz_divisible_p(Nat(n).get_mpz_t(), g.get_mpz_t()));
        }
    }
}

TEST_CASE("rad") {
    CHECK(rad(12) == 6);
    CHECK(rad(1) == 1);
    CHECK(rad(30000) == 30);
}

TEST_CASE("is_prime at desk scale") {
    std::vector<unsigned long> primes;
    for (unsigned long n = 2; n <= 200; ++n)
        if (is_prime(n)) primes.push_back(n);
    CHECK(primes[0] == 2);
    CHECK(primes[24] == 97);  // 25 primes below 100
    CHECK(!is_prime(1));
}

TEST_CASE("partition_count against the enumeration oracle") {
    CHECK(partition_count(0) == 1);
    CHECK(enum_partitions(5, 5) == 7);
    CHECK(partition_count(5) == 7);
    CHECK(enum_partitions(10, 10) == 42);
    CHECK(partition_count(10) == 42);
    for (unsigned long k = 0; k <= 40; ++k)
        REQUIRE(partition_count(k) == enum_partitions(k, k ? k : 1));
    CHECK(partition_count(23) == 1255);
}

TEST_CASE("Rat canonical form") {
    Rat q = make_rat(Nat(6), Nat(-4));
    CHECK(q.get_den() > 0);
    Nat g;
    mpz_gcd(g.get_mpz_t(), Nat(abs(q.get_num())).get_mpz_t(), Nat(q.get_den()).get_mpz_t());
    CHECK(g == 1);
    CHECK(q == make_rat(Nat(-3), Nat(2)));
    CHECK(rat_str(q) == "-3/2");
    CHECK(parse_rat("-3/2") == q);
    CHECK(parse_rat("12") == Rat(12));
    CHECK_THROWS_AS(parse_rat("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(make_rat(Nat(1), Nat(0)), std::invalid_argument);
}
