#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>
#include <random>

#include "divmet/orders.hpp"

using namespace divmet;

namespace {

PseudometricSpec spec(const char* f, Combinator c, unsigned long n) {
    return make_spec(resolve_function(f), c, Nat(n));
}

std::vector<PseudometricSpec> sample_matrix() {
    std::vector<PseudometricSpec> specs;
    for (unsigned long n : {6ul, 12ul, 30ul, 60ul}) {
        specs.push_back(spec("bigomega", Combinator::AddF, n));
        specs.push_back(spec("sigma", Combinator::AddG, n));
        specs.push_back(spec("recip", Combinator::AddH, n));
        specs.push_back(spec("phi_over_x", Combinator::MulH, n));
        specs.push_back(spec("chi:6", Combinator::AddH, n));
        specs.push_back(spec("mu2", Combinator::MulH, n));
    }
    return specs;
}

DivisorPartition blocks_of(std::initializer_list<std::initializer_list<unsigned long>> bs,
                           unsigned long n) {
    DivisorPartition p;
    p.n = n;
    for (const auto& b : bs) {
        std::vector<Nat> blk;
        for (unsigned long d : b) blk.push_back(d);
        p.blocks.push_back(blk);
    }
    return p;
}

}  // namespace

TEST_CASE("induced preorder keys") {
    Preorder p = induced_preorder(spec("recip", Combinator::AddH, 12));
    for (size_t i = 0; i + 1 < p.key.size(); ++i)
        CHECK(p.key[i] < p.key[i + 1]);  // 1 - 1/x strictly increasing along D_12

    Preorder triv = induced_preorder(spec("one", Combinator::AddH, 12));
    for (const auto& k : triv.key) CHECK(k == 0);
    CHECK(quotient_by_preorder(triv).blocks.size() == 1);

    // totality: every pair is comparable; the key of 1 is minimal
    for (const auto& s : sample_matrix()) {
        Preorder q = induced_preorder(s);
        for (size_t i = 0; i < q.key.size(); ++i) {
            CHECK(q.key[0] <= q.key[i]);  // index is sorted, so index[0] == 1
            for (size_t j = 0; j < q.key.size(); ++j) {
                int c = q.compare(i, j);
                CHECK((c == -1 || c == 0 || c == 1));
                CHECK(c == -q.compare(j, i));
            }
        }
    }
}

TEST_CASE("compare_extended") {
    PseudometricSpec s6 = spec("recip", Combinator::AddH, 6);
    CHECK(compare_extended(s6, 5, 8) == Cmp::Less);  // gcd images 1 and 2
    CHECK(compare_extended(s6, 35, 1) == Cmp::Equivalent);
    for (long x = -7; x <= 7; ++x) CHECK(compare_extended(s6, x, x + 6) == Cmp::Equivalent);

    PseudometricSpec s12 = spec("recip", Combinator::AddH, 12);
    CHECK(compare_extended(s12, 8, 9) == Cmp::Greater);  // key(4) > key(3), so 9 < 8
}

TEST_CASE("commuting diagram: extended comparison equals table-key comparison") {
    for (const auto& s : sample_matrix()) {
        DistanceTable t = build_table(s);
        size_t one = t.find(1);
        long n = mpz_get_si(s.n.get_mpz_t());
        for (long x = -2 * n; x <= 2 * n; ++x)
            for (long y = -2 * n; y <= 2 * n; y += 7) {
                Rat kx = t.entries[one][t.find(gcd_z(x, s.n))];
                Rat ky = t.entries[one][t.find(gcd_z(y, s.n))];
                Cmp expect = kx < ky ? Cmp::Less : (ky < kx ? Cmp::Greater : Cmp::Equivalent);
                REQUIRE(compare_extended(s, x, y) == expect);
            }
    }
}

TEST_CASE("quotients by metric and by preorder") {
    DistanceTable metric = build_table(spec("recip", Combinator::MulH, 12));
    DivisorPartition qm = quotient_by_metric(metric);
    CHECK(qm.blocks.size() == 6);  // all singletons

    DivisorPartition triv = quotient_by_metric(build_table(spec("one", Combinator::AddH, 12)));
    CHECK(triv.blocks.size() == 1);

    // chi_12 under AddH: every off-diagonal distance is 1 or 2
    DivisorPartition chi = quotient_by_metric(build_table(spec("chi:12", Combinator::AddH, 12)));
    CHECK(chi.blocks.size() == 6);

    std::map<Nat, Rat> vals{{Nat(2), make_rat(1, 2)}, {Nat(3), make_rat(3, 5)},
                            {Nat(4), make_rat(3, 10)}};
    ArithmeticFunction h = from_prime_power_values(vals, FnClass::Multiplicative, Nat(12));
    DivisorPartition qp = quotient_by_preorder(preorder_from_function(h, Nat(12)));
    CHECK(qp == blocks_of({{1}, {2}, {3}, {4, 6}, {12}}, 12));

    for (unsigned long n : {6ul, 12ul, 30ul}) {
        DivisorPartition two = quotient_by_preorder(
            induced_preorder(spec(("chi:" + std::to_string(n)).c_str(), Combinator::AddH, n)));
        CHECK(two.blocks.size() == 2);
    }

    // for a metric spec the two quotients coincide (all singletons)
    DivisorPartition qp2 = quotient_by_preorder(induced_preorder(metric));
    CHECK(qp2 == qm);
}

TEST_CASE("refinement") {
    for (const auto& s : sample_matrix()) {
        DistanceTable t = build_table(s);
        DivisorPartition qm = quotient_by_metric(t);
        DivisorPartition qp = quotient_by_preorder(induced_preorder(t));
        REQUIRE(refinement_check(qm, qp));
        REQUIRE(refinement_check(qm, qm));
        REQUIRE(refinement_check(qp, qp));
    }
    DivisorPartition singletons = blocks_of({{1}, {2}, {3}, {6}}, 6);
    DivisorPartition coarse = blocks_of({{1}, {2, 3, 6}}, 6);
    CHECK(refinement_check(singletons, coarse));
    CHECK(!refinement_check(coarse, singletons));
    CHECK_THROWS_AS(refinement_check(singletons, blocks_of({{1}}, 12)), std::invalid_argument);
}

TEST_CASE("window extension") {
    DistanceTable t = build_table(spec("recip", Combinator::MulH, 6));
    DivisorPartition p = quotient_by_metric(t);
    WindowPartition w = extend_to_window(p, 1, 18);
    CHECK(w.block_id[2 - 1] == w.block_id[8 - 1]);
    CHECK(w.block_id[8 - 1] == w.block_id[14 - 1]);
    CHECK(w.block_count == p.blocks.size());

    // [1, n] reproduces the D_n assignment
    WindowPartition wn = extend_to_window(p, 1, 6);
    for (const auto& d : divisor_set(Nat(6)).divisors)
        CHECK(wn.block_id[mpz_get_ui(d.get_mpz_t()) - 1] == p.block_of(d));

    // periodicity, including negative windows
    WindowPartition wneg = extend_to_window(p, -6, 12);
    for (long x = -6; x <= 6; ++x) CHECK(wneg.block_id[x + 6] == wneg.block_id[x + 6 + 6]);

    CHECK_THROWS_AS(extend_to_window(p, 3, 2), std::invalid_argument);
}

TEST_CASE("permutation invariance of the quotient set") {
    // identity permutation
    std::map<Nat, Rat> v12{{Nat(2), make_rat(1, 2)}, {Nat(3), make_rat(3, 5)},
                           {Nat(4), make_rat(3, 10)}};
    PermutationReport id = permutation_invariance(v12, {0, 1, 2}, Nat(12));
    CHECK(id.feasible);
    CHECK(id.partitions_equal);

    // swapping the two prime values keeps h(6) = h(2)h(3) and the {4,6} block
    PermutationReport swap23 = permutation_invariance(v12, {1, 0, 2}, Nat(12));
    CHECK(swap23.feasible);
    CHECK(swap23.partitions_equal);
    CHECK(swap23.p1 == blocks_of({{1}, {2}, {3}, {4, 6}, {12}}, 12));

    // value-level extension breaks when the permuted values split h(4) = h(6)
    PermutationReport swap24 = permutation_invariance(v12, {2, 1, 0}, Nat(12));
    CHECK(!swap24.feasible);

    CHECK_THROWS_AS(permutation_invariance(v12, {0, 1}, Nat(12)), std::invalid_argument);
    CHECK_THROWS_AS(permutation_invariance(v12, {0, 0, 1}, Nat(12)), std::invalid_argument);

    // the worked n = 6 pair: different values, same quotient
    std::map<Nat, Rat> h1v{{Nat(2), make_rat(3, 10)}, {Nat(3), make_rat(6, 10)}};
    std::map<Nat, Rat> h2v{{Nat(2), make_rat(2, 10)}, {Nat(3), make_rat(5, 10)}};
    ArithmeticFunction h1 = from_prime_power_values(h1v, FnClass::Multiplicative, Nat(6));
    ArithmeticFunction h2 = from_prime_power_values(h2v, FnClass::Multiplicative, Nat(6));
    CHECK(quotient_by_preorder(preorder_from_function(h1, Nat(6))) ==
          quotient_by_preorder(preorder_from_function(h2, Nat(6))));
    CHECK(quotient_by_preorder(preorder_from_function(h1, Nat(6))) ==
          blocks_of({{1}, {2}, {3}, {6}}, 6));

    // seeded random permutations with distinct prime-reciprocal values
    std::mt19937 rng(1234);
    for (unsigned long n : {12ul, 60ul}) {
        auto pps = divisor_set(Nat(n)).prime_powers;
        std::vector<unsigned long> qpool{3, 5, 7, 11, 13, 17, 19};
        std::map<Nat, Rat> values;
        for (size_t i = 0; i < pps.size(); ++i) values[pps[i]] = make_rat(1, qpool[i]);
        std::vector<size_t> perm(pps.size());
        std::iota(perm.begin(), perm.end(), 0);
        for (int trial = 0; trial < 25; ++trial) {
            std::shuffle(perm.begin(), perm.end(), rng);
            PermutationReport rep = permutation_invariance(values, perm, Nat(n));
            REQUIRE(rep.feasible);
            REQUIRE(rep.partitions_equal);
        }
    }
}

TEST_CASE("triple equivalence") {
    TripleEquivalenceReport r1 = triple_equivalence(resolve_function("recip"), Nat(30));
    CHECK(r1.in_gt0);
    CHECK(r1.four_way_equal);
    std::vector<size_t> increasing(divisor_set(Nat(30)).divisors.size());
    std::iota(increasing.begin(), increasing.end(), 0);
    CHECK(r1.ranks == increasing);

    TripleEquivalenceReport r2 = triple_equivalence(resolve_function("chi:6"), Nat(6));
    CHECK(!r2.in_gt0);
    CHECK(r2.addh_mulh_equal);
    size_t classes = *std::max_element(r2.ranks.begin(), r2.ranks.end()) + 1;
    CHECK(classes == 2);

    TripleEquivalenceReport r3 = triple_equivalence(resolve_function("one"), Nat(12));
    CHECK(r3.in_gt0);
    CHECK(r3.four_way_equal);
    CHECK(*std::max_element(r3.ranks.begin(), r3.ranks.end()) == 0);
}

TEST_CASE("class-count lemmas") {
    ClassCountReport r1 = class_count_checks(resolve_function("recip"), Nat(12));
    CHECK(r1.max_three_applicable);
    CHECK(r1.max_three_holds);
    CHECK(r1.partition.blocks.size() == 6);
    CHECK(r1.finest_applicable);
    CHECK(r1.finest_holds);
    CHECK(r1.all_applicable_hold);

    ClassCountReport r2 = class_count_checks(resolve_function("phi_over_x"), Nat(30));
    CHECK(r2.coprime_extra_applicable);
    CHECK(r2.coprime_extra_holds);
    CHECK(r2.all_applicable_hold);

    std::map<Nat, Rat> zeros{{Nat(2), Rat(0)}, {Nat(3), Rat(0)}, {Nat(4), Rat(0)}};
    ArithmeticFunction hz = from_prime_power_values(zeros, FnClass::Multiplicative, Nat(12));
    ClassCountReport r3 = class_count_checks(hz, Nat(12));
    CHECK(r3.coarsest_applicable);
    CHECK(r3.coarsest_holds);
    CHECK(r3.partition.blocks.size() == 2);
    CHECK(r3.all_applicable_hold);
}

TEST_CASE("coprime pairs from squarefree collisions") {
    ArithmeticFunction h = resolve_function("half_pow_bigomega");
    auto [a, b] = coprime_squarefree_transfer(h, Nat(14), Nat(15));
    CHECK(a == 14);
    CHECK(b == 15);
    auto [c, d] = coprime_squarefree_transfer(h, Nat(6), Nat(10));
    CHECK(c == 3);
    CHECK(d == 5);
    CHECK_THROWS_AS(coprime_squarefree_transfer(h, Nat(6), Nat(6)), std::invalid_argument);
    CHECK_THROWS_AS(coprime_squarefree_transfer(h, Nat(4), Nat(6)), std::invalid_argument);
    CHECK_THROWS_AS(coprime_squarefree_transfer(h, Nat(5), Nat(6)), std::invalid_argument);
}

TEST_CASE("the two routes to the preorder equivalence relation agree") {
    // x ~ y via (x <= y and y <= x) versus via key equality
    for (const auto& s : sample_matrix()) {
        Preorder p = induced_preorder(s);
        std::vector<bool> seen(p.index.size(), false);
        std::vector<std::vector<Nat>> blocks;
        for (size_t i = 0; i < p.index.size(); ++i) {
            if (seen[i]) continue;
            std::vector<Nat> blk{p.index[i]};
            seen[i] = true;
            for (size_t j = i + 1; j < p.index.size(); ++j)
                if (!seen[j] && p.compare(i, j) == 0 && p.compare(j, i) == 0) {
                    blk.push_back(p.index[j]);
                    seen[j] = true;
                }
            blocks.push_back(blk);
        }
        DivisorPartition mutual;
        mutual.n = p.n;
        mutual.blocks = blocks;  // already canonical: ascending scan of a sorted index
        REQUIRE(mutual == quotient_by_preorder(p));
    }
}

TEST_CASE("prime-power moduli realize every class count from 2 to k+1") {
    // n = 2^4: D_16 = {1,2,4,8,16}; choosing the values on the prime powers
    // tunes the quotient between the coarsest non-trivial and the finest
    std::vector<std::vector<Rat>> assignments{
        {make_rat(1, 3), make_rat(1, 3), make_rat(1, 3), make_rat(1, 3)},  // 2 classes
        {make_rat(1, 3), make_rat(1, 3), make_rat(1, 3), make_rat(1, 5)},  // 3
        {make_rat(1, 3), make_rat(1, 3), make_rat(1, 5), make_rat(1, 7)},  // 4
        {make_rat(1, 3), make_rat(1, 5), make_rat(1, 7), make_rat(1, 11)}, // 5
    };
    auto pps = divisor_set(Nat(16)).prime_powers;
    for (size_t want = 0; want < assignments.size(); ++want) {
        std::map<Nat, Rat> vals;
        for (size_t i = 0; i < pps.size(); ++i) vals[pps[i]] = assignments[want][i];
        ArithmeticFunction h = from_prime_power_values(vals, FnClass::Multiplicative, Nat(16));
        DivisorPartition p = quotient_by_preorder(preorder_from_function(h, Nat(16)));
        CHECK(p.blocks.size() == want + 2);
    }
}

TEST_CASE("principal characters with modulus away from n") {
    // k coprime to n: chi_k is identically 1 on D_n, the trivial partition
    DivisorPartition p5 = quotient_by_preorder(
        induced_preorder(make_spec(resolve_function("chi:5"), Combinator::AddH, Nat(6))));
    CHECK(p5.blocks.size() == 1);

    // k sharing some but not all primes with n: two classes, split by
    // whether the gcd image shares a factor with k (3 lands with 1 here)
    DivisorPartition p10 = quotient_by_preorder(
        induced_preorder(make_spec(resolve_function("chi:10"), Combinator::AddH, Nat(6))));
    REQUIRE(p10.blocks.size() == 2);
    CHECK(p10.blocks[0] == std::vector<Nat>{1, 3});
    CHECK(p10.blocks[1] == std::vector<Nat>{2, 6});

    // chi_6 and eps coincide on D_6 and induce the same two classes
    DivisorPartition pchi = quotient_by_preorder(
        induced_preorder(make_spec(resolve_function("chi:6"), Combinator::AddH, Nat(6))));
    DivisorPartition peps = quotient_by_preorder(
        induced_preorder(make_spec(resolve_function("eps"), Combinator::AddH, Nat(6))));
    CHECK(pchi == peps);
    for (const auto& d : divisor_set(Nat(6)).divisors)
        CHECK(resolve_function("chi:6")(d).exact_value() ==
              resolve_function("eps")(d).exact_value());
}

TEST_CASE("finest partition from any injective key with minimal key at 1") {
    for (unsigned long n : {6ul, 12ul, 30ul, 360ul}) {
        Preorder p = preorder_from_function(resolve_function("recip"), Nat(n));
        CHECK(quotient_by_preorder(p).blocks.size() == p.index.size());
        Preorder plog = preorder_from_function(resolve_function("log"), Nat(n));
        CHECK(quotient_by_preorder(plog).blocks.size() == plog.index.size());
    }
}
