#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "divmet/orders.hpp"
#include "divmet/report_json.hpp"

using namespace divmet;

namespace {

PseudometricSpec spec(const char* f, Combinator c, unsigned long n) {
    return make_spec(resolve_function(f), c, Nat(n));
}

// A modest matrix for the property tests; the acceptance suite runs the
// full one.
std::vector<PseudometricSpec> sample_matrix() {
    std::vector<PseudometricSpec> specs;
    for (unsigned long n : {6ul, 12ul, 24ul, 30ul, 60ul}) {
        for (const char* f : {"bigomega", "ld", "deriv", "xminus1"})
            specs.push_back(spec(f, Combinator::AddF, n));
        for (const char* g : {"sigma", "nd", "phi"}) specs.push_back(spec(g, Combinator::AddG, n));
        for (const char* h : {"recip", "phi_over_x", "mu2", "nd_over_x"}) {
            specs.push_back(spec(h, Combinator::AddH, n));
            specs.push_back(spec(h, Combinator::MulH, n));
        }
        specs.push_back(spec("bigomega", Combinator::DeltaAddF, n));
        specs.push_back(spec("recip", Combinator::DeltaAddH, n));
        specs.push_back(spec("phi_over_x", Combinator::DeltaMulH, n));
    }
    return specs;
}

}  // namespace

TEST_CASE("distance hand evaluations") {
    PseudometricSpec s = spec("recip", Combinator::AddH, 6);
    CHECK(distance(s, 2, 3) == make_rat(7, 6));  // 2 - 1/2 - 1/3
    CHECK(distance(s, 5, 5) == 0);
    CHECK(distance(s, 1, 35) == 0);  // gcd(35,6)=1: zero distance with 1 != 35

    CHECK(distance(spec("recip", Combinator::MulH, 6), 2, 3) == make_rat(5, 6));
    CHECK(distance(spec("bigomega", Combinator::AddF, 12), 4, 6) == 4);

    CHECK_THROWS_AS(make_spec(resolve_function("log"), Combinator::AddF, Nat(6)),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_spec(resolve_function("sigma"), Combinator::AddH, Nat(6)),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_spec(resolve_function("recip"), Combinator::AddF, Nat(6)),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_spec(resolve_function("recip"), Combinator::AddH, Nat(1)),
                    std::invalid_argument);
}

TEST_CASE("build_table agrees with distance() and is symmetric") {
    for (const auto& s : sample_matrix()) {
        DistanceTable t = build_table(s);
        for (size_t i = 0; i < t.index.size(); ++i)
            for (size_t j = 0; j < t.index.size(); ++j) {
                REQUIRE(t.entries[i][j] == distance(s, t.index[i], t.index[j]));
                REQUIRE(t.entries[i][j] == t.entries[j][i]);
            }
    }
}

TEST_CASE("periodicity of the extension, and the D_n table determines it") {
    for (const auto& s : sample_matrix()) {
        DistanceTable t = build_table(s);
        long n = mpz_get_si(s.n.get_mpz_t());
        for (long x = -2 * n; x <= 2 * n; x += 3)
            for (long y = -2 * n; y <= 2 * n; y += 5) {
                REQUIRE(distance(s, x + n, y) == distance(s, x, y));
                REQUIRE(distance(s, x, y + n) == distance(s, x, y));
                REQUIRE(distance(s, x, y) ==
                        t.entries[t.find(gcd_z(x, s.n))][t.find(gcd_z(y, s.n))]);
            }
    }
}

TEST_CASE("random prime-power-defined functions satisfy the axioms they claim") {
    std::mt19937 rng(987654);
    std::uniform_int_distribution<int> num(0, 40);
    for (unsigned long n : {12ul, 24ul, 60ul, 360ul}) {
        auto pps = divisor_set(Nat(n)).prime_powers;
        for (int trial = 0; trial < 20; ++trial) {
            // h in I0: random values in [0, 1]
            std::map<Nat, Rat> hv;
            for (const auto& q : pps) hv[q] = make_rat(num(rng), 40);
            ArithmeticFunction h = from_prime_power_values(hv, FnClass::Multiplicative, Nat(n));
            for (Combinator c : {Combinator::AddH, Combinator::MulH}) {
                REQUIRE(verify_pseudometric(build_table(make_spec(h, c, Nat(n)))).all_axioms_ok());
            }
            // the reduced forms must pass whenever the exponent condition held
            if (h.delta_safe)
                for (Combinator c : {Combinator::DeltaAddH, Combinator::DeltaMulH})
                    REQUIRE(
                        verify_pseudometric(build_table(make_spec(h, c, Nat(n)))).all_axioms_ok());

            // f in A0: random non-negative values
            std::map<Nat, Rat> fv;
            for (const auto& q : pps) fv[q] = make_rat(num(rng), 7);
            ArithmeticFunction f = from_prime_power_values(fv, FnClass::Additive, Nat(n));
            REQUIRE(verify_pseudometric(build_table(make_spec(f, Combinator::AddF, Nat(n))))
                        .all_axioms_ok());
            if (f.delta_safe)
                REQUIRE(
                    verify_pseudometric(build_table(make_spec(f, Combinator::DeltaAddF, Nat(n))))
                        .all_axioms_ok());
        }
    }
}

TEST_CASE("exhaustive verification passes for theorem-backed specs") {
    AxiomReport r = verify_pseudometric(build_table(spec("recip", Combinator::AddH, 360)));
    CHECK(r.all_axioms_ok());
    for (const auto& s : sample_matrix()) {
        if (!combinator_sound(s.function, s.comb)) continue;
        AxiomReport rep = verify_pseudometric(build_table(s));
        REQUIRE(rep.all_axioms_ok());
    }
    // the trivial function: all distances zero, all axioms hold
    AxiomReport triv = verify_pseudometric(build_table(spec("one", Combinator::AddH, 12)));
    CHECK(triv.all_axioms_ok());
}

TEST_CASE("coprime-reduced additive form on M0 values violates the triangle") {
    PseudometricSpec s = spec("xminus1", Combinator::DeltaAddF, 24);
    CHECK(distance(s, 2, 6) == 2);
    CHECK(distance(s, 6, 24) == 3);
    CHECK(distance(s, 2, 24) == 11);  // 5 = d(2,6)+d(6,24) < d(2,24)
    AxiomReport rep = verify_pseudometric(build_table(s));
    CHECK(!rep.triangle_ok);
    bool witness_found = false;
    for (const auto& [x, y, z] : rep.triangle_witnesses)
        if (x == 2 && y == 6 && z == 24) witness_found = true;
    CHECK(witness_found);
}

TEST_CASE("coprime-reduced forms are not sound for every I0 function") {
    // exponent sequences that grow slower than their products break the
    // reduced triangle even inside I
    PseudometricSpec s = spec("sigma_over_x2", Combinator::DeltaAddH, 4);
    CHECK(distance(s, 1, 2) == make_rat(1, 4));
    CHECK(distance(s, 2, 4) == make_rat(1, 4));
    CHECK(distance(s, 1, 4) == make_rat(9, 16));  // > 1/2
    AxiomReport rep = verify_pseudometric(build_table(s));
    CHECK(!rep.triangle_ok);
    bool witness_found = false;
    for (const auto& [x, y, z] : rep.triangle_witnesses)
        if (x == 1 && y == 2 && z == 4) witness_found = true;
    CHECK(witness_found);
    CHECK(!combinator_sound(resolve_function("sigma_over_x2"), Combinator::DeltaAddH));
    CHECK(combinator_sound(resolve_function("phi_over_x"), Combinator::DeltaAddH));
    CHECK(combinator_sound(resolve_function("recip"), Combinator::DeltaMulH));
    CHECK(!combinator_sound(resolve_function("nd_over_x"), Combinator::DeltaMulH));
}

TEST_CASE("parallel and serial verification agree") {
    for (const char* name : {"recip", "mu2"}) {
        DistanceTable t = build_table(spec(name, Combinator::AddH, 360));
        AxiomReport a = verify_pseudometric(t);
        AxiomReport b = verify_pseudometric_serial(t);
        CHECK(a.all_axioms_ok() == b.all_axioms_ok());
        CHECK(a.triangle_violation_count == b.triangle_violation_count);
        CHECK(a.triangle_witnesses == b.triangle_witnesses);
    }
    DistanceTable bad = build_table(spec("xminus1", Combinator::DeltaAddF, 24));
    AxiomReport a = verify_pseudometric(bad);
    AxiomReport b = verify_pseudometric_serial(bad);
    CHECK(a.triangle_violation_count == b.triangle_violation_count);
    CHECK(a.triangle_witnesses == b.triangle_witnesses);
}

TEST_CASE("identity of indiscernibles") {
    CHECK(verify_indiscernibles(build_table(spec("recip", Combinator::MulH, 12))).indiscernibles_ok);
    CHECK(verify_indiscernibles(build_table(spec("sigma", Combinator::AddG, 30))).indiscernibles_ok);
    AxiomReport triv = verify_indiscernibles(build_table(spec("one", Combinator::AddH, 12)));
    CHECK(!triv.indiscernibles_ok);

    // chi_n: a metric on D_n, but the extension to Z identifies 1 with
    // every integer coprime to n
    DistanceTable chi = build_table(spec("chi:6", Combinator::AddH, 6));
    CHECK(verify_indiscernibles(chi).indiscernibles_ok);
    AxiomReport win = verify_indiscernibles_window(chi, 1, 12);
    CHECK(!win.indiscernibles_ok);
    CHECK_THROWS_AS(verify_indiscernibles_window(chi, 5, 4), std::invalid_argument);
}

TEST_CASE("equivalence of the preorder conditions, and the one false direction") {
    for (const auto& s : sample_matrix()) {
        if (!combinator_sound(s.function, s.comb)) continue;
        EquivPOReport r = equiv_po_report(build_table(s));
        REQUIRE(r.center_injective == r.generating_injective);
        REQUIRE(r.center_injective == r.partial_order);
        if (r.center_injective) REQUIRE(r.metric);
    }
    // metric does NOT imply injective d(1,.): Omega under AddF at n = 12
    EquivPOReport r = equiv_po_report(build_table(spec("bigomega", Combinator::AddF, 12)));
    CHECK(r.metric);
    CHECK(!r.center_injective);
}

TEST_CASE("pseudometric monoid") {
    DistanceTable a = build_table(spec("bigomega", Combinator::AddF, 60));
    DistanceTable b = build_table(spec("omega", Combinator::AddF, 60));
    ArithmeticFunction sum_fn =
        pointwise_sum(resolve_function("bigomega"), resolve_function("omega"));
    DistanceTable c = build_table(make_spec(sum_fn, Combinator::AddF, Nat(60)));
    DistanceTable ab = combine_sum(a, b);
    CHECK(ab.entries == c.entries);
    CHECK(combine_sum(a, b).entries == combine_sum(b, a).entries);

    DistanceTable z = build_table(spec("zero", Combinator::AddF, 60));
    CHECK(combine_sum(a, z).entries == a.entries);
    CHECK(verify_pseudometric(ab).all_axioms_ok());
    CHECK_THROWS_AS(combine_sum(a, build_table(spec("omega", Combinator::AddF, 30))),
                    std::invalid_argument);
}

TEST_CASE("scaling") {
    DistanceTable t = build_table(spec("recip", Combinator::AddH, 6));
    CHECK(scale(Rat(1), t).entries == t.entries);
    DistanceTable t32 = scale(make_rat(3, 2), t);
    CHECK(t32.entries[t.find(2)][t.find(3)] == make_rat(7, 4));
    CHECK_THROWS_AS(scale(Rat(0), t), std::invalid_argument);
    CHECK_THROWS_AS(scale(Rat(-2), t), std::invalid_argument);

    for (const auto& s : sample_matrix()) {
        DistanceTable base = build_table(s);
        auto base_ranks = induced_preorder(base).ranks();
        for (const char* lam : {"1/3", "2", "17/5"}) {
            DistanceTable scaled = scale(parse_rat(lam), base);
            REQUIRE(verify_pseudometric(scaled).all_axioms_ok() ==
                    verify_pseudometric(base).all_axioms_ok());
            REQUIRE(induced_preorder(scaled).ranks() == base_ranks);
        }
    }
}

TEST_CASE("the four pseudometric families are pairwise disjoint") {
    FamilyDisjointnessReport r = family_disjointness(Nat(6), resolve_function("bigomega"),
                                                     resolve_function("sigma"),
                                                     resolve_function("recip"));
    CHECK(r.pairwise_distinct);
    DistanceTable addh = build_table(spec("recip", Combinator::AddH, 6));
    DistanceTable mulh = build_table(spec("recip", Combinator::MulH, 6));
    CHECK(addh.entries[addh.find(2)][addh.find(3)] == make_rat(7, 6));
    CHECK(mulh.entries[mulh.find(2)][mulh.find(3)] == make_rat(5, 6));
    CHECK_THROWS_AS(family_disjointness(Nat(4), resolve_function("bigomega"),
                                        resolve_function("sigma"), resolve_function("recip")),
                    std::invalid_argument);
}

TEST_CASE("centred form: additive combinators are 1-centred, MulH is not") {
    for (const auto& s : sample_matrix()) {
        DistanceTable t = build_table(s);
        size_t one = t.find(1);
        bool centred = s.comb == Combinator::AddF || s.comb == Combinator::AddG ||
                       s.comb == Combinator::AddH;
        if (centred) {
            for (size_t i = 0; i < t.index.size(); ++i)
                for (size_t j = 0; j < t.index.size(); ++j) {
                    if (i == j) continue;
                    REQUIRE(t.entries[i][j] == t.entries[one][i] + t.entries[one][j]);
                }
        } else {
            // the generating function still induces a pseudometric with the
            // same preorder
            DistanceTable companion = t;
            companion.description = "centred companion";
            for (size_t i = 0; i < t.index.size(); ++i)
                for (size_t j = 0; j < t.index.size(); ++j)
                    companion.entries[i][j] =
                        i == j ? Rat(0) : t.entries[one][i] + t.entries[one][j];
            REQUIRE(verify_pseudometric(companion).all_axioms_ok());
            REQUIRE(induced_preorder(companion).ranks() == induced_preorder(t).ranks());
        }
    }
}

TEST_CASE("table and report JSON round-trip through their schemas") {
    DistanceTable t = build_table(spec("recip", Combinator::AddH, 12));
    ordered_json j = table_json(t);
    CHECK(ordered_json::parse(j.dump()).dump() == j.dump());
    CHECK(j.at("schema") == "divmet.table/1");
    CHECK(j.at("entries")[1][2] == "7/6");
    ordered_json a = axiom_report_json(verify_pseudometric(t));
    CHECK(ordered_json::parse(a.dump()).dump() == a.dump());
}

TEST_CASE("coprime-reduced distances coincide with the plain ones on coprime pairs") {
    struct Pair {
        const char* fn;
        Combinator plain, delta;
    };
    for (const auto& [fn, plain, delta] :
         {Pair{"bigomega", Combinator::AddF, Combinator::DeltaAddF},
          Pair{"ld", Combinator::AddF, Combinator::DeltaAddF},
          Pair{"recip", Combinator::AddH, Combinator::DeltaAddH},
          Pair{"phi_over_x", Combinator::MulH, Combinator::DeltaMulH}}) {
        for (unsigned long n : {12ul, 30ul, 360ul}) {
            PseudometricSpec sp = spec(fn, plain, n);
            PseudometricSpec sd = spec(fn, delta, n);
            auto divisors = divisor_set(Nat(n)).divisors;
            for (const auto& x : divisors)
                for (const auto& y : divisors) {
                    Nat g;
                    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                    Rat dp = distance(sp, x, y), dd = distance(sd, x, y);
                    if (g == 1) REQUIRE(dp == dd);
                    REQUIRE(dd <= dp);  // recorded observation, not a theorem
                }
        }
    }
}
