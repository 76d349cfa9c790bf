#pragma once

#include <map>
#include <string>
#include <vector>

#include "divmet/metrics.hpp"

namespace divmet {

// Total preorder on D_n: x <= y iff key(x) <= key(y). Keys are exact
// distances d(1,.) for pseudometric specs, or oriented comparison
// surrogates for OrderKey functions.
struct Preorder {
    Nat n;
    std::vector<Nat> index;  // D_n sorted
    std::vector<Rat> key;
    std::string source;

    // Dense ranks: 0 for the minimal key class, increasing with the key.
    std::vector<size_t> ranks() const;
    int compare(size_t i, size_t j) const;  // -1, 0, +1
};

Preorder induced_preorder(const DistanceTable& t);
Preorder induced_preorder(const PseudometricSpec& spec);
// Preorder induced by the function directly (no combinator). For H-role
// functions the key is negated so that the ordering matches d(1,.) = 1 - h.
Preorder preorder_from_function(const ArithmeticFunction& f, const Nat& n);

enum class Cmp { Less, Equivalent, Greater };
// Extended relation on Z: compares the gcd images' keys.
Cmp compare_extended(const PseudometricSpec& spec, const Int& x, const Int& y);

// Canonical partition: blocks sorted internally, blocks ordered by minimal
// element, so equality of partitions is structural equality.
struct DivisorPartition {
    Nat n;
    std::vector<std::vector<Nat>> blocks;

    bool operator==(const DivisorPartition& o) const { return n == o.n && blocks == o.blocks; }
    size_t block_of(const Nat& d) const;  // index into blocks, throws if d not covered
    // Block sizes over D_n \ {1}, descending: the shape the census bound
    // p(nd(n)-1) counts ("apart from permutations").
    std::vector<unsigned long> pattern() const;
};

DivisorPartition quotient_by_metric(const DistanceTable& t);      // zero-distance classes
DivisorPartition quotient_by_preorder(const Preorder& p);         // equal-key classes
bool refinement_check(const DivisorPartition& p1, const DivisorPartition& p2);  // p1 within p2

struct WindowPartition {
    Int a, b;
    std::vector<size_t> block_id;  // block index of gcd(x, n), for x = a..b
    size_t block_count;            // number of distinct blocks realized on the window
};
WindowPartition extend_to_window(const DivisorPartition& p, const Int& a, const Int& b);

// Constructs h2 by permuting h1's prime-power values, extends it
// multiplicatively, and compares the quotient partitions. The value-level
// extension nu exists only if equal h1 values stay equal under h2; an
// infeasible permutation is reported, not asserted on.
struct PermutationReport {
    bool feasible = false;
    bool partitions_equal = false;
    DivisorPartition p1, p2;
};
PermutationReport permutation_invariance(const std::map<Nat, Rat>& h1_values,
                                         const std::vector<size_t>& perm, const Nat& n);

// Rank vectors of the four preorders derived from one I-family function:
// (-ln h, AddF-style), (1/h, AddG), (h, AddH), (h, MulH). For h positive on
// D_n all four must coincide; with a zero value only AddH/MulH remain.
struct TripleEquivalenceReport {
    bool in_gt0 = false;
    bool four_way_equal = false;
    bool addh_mulh_equal = false;
    std::vector<size_t> ranks;  // the AddH rank vector over D_n
};
TripleEquivalenceReport triple_equivalence(const ArithmeticFunction& h, const Nat& n);

// Evaluates which of the class-count lemma hypotheses hold for (h, n) and
// checks the corresponding conclusions on the computed quotient partition.
struct ClassCountReport {
    ClassReport cls;
    DivisorPartition partition;
    bool coprime_extra_applicable = false, coprime_extra_holds = false;  // I2: [1] = {1}
    bool max_three_applicable = false, max_three_holds = false;          // I, omega(n)>=2: >=3 blocks
    bool not_all_equal_applicable = false, not_all_equal_holds = false;  // some h(x) != h(y), x,y>1
    bool finest_applicable = false, finest_holds = false;                // injective: all singletons
    bool coarsest_applicable = false, coarsest_holds = false;            // h=0 on P*_n: 2 blocks
    bool all_applicable_hold = true;
};
ClassCountReport class_count_checks(const ArithmeticFunction& h, const Nat& n);

// From squarefree s != t with h(s) = h(t), produces the coprime pair
// (s/g, t/g), g = gcd(s,t), with equal h values. Hypothesis violations throw.
std::pair<Nat, Nat> coprime_squarefree_transfer(const ArithmeticFunction& h, const Nat& s,
                                                const Nat& t);

}  // namespace divmet
