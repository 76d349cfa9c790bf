#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "divmet/functions.hpp"

namespace divmet {

// How function values combine into distances d(x,y) for x != y, applied to
// the gcd images a = gcd(x,n), b = gcd(y,n):
//   AddF   f(a) + f(b)                 requires S0
//   AddG   g(a) + g(b) - 2             requires M0
//   AddH   2 - h(a) - h(b)             requires I0
//   MulH   1 - h(a)*h(b)               requires I0
// Delta* variants first reduce the arguments by their gcd g = gcd(a,b):
//   DeltaAddF  f(a/g) + f(b/g)         accepted for S0
//   DeltaAddH  2 - h(a/g) - h(b/g)     accepted for I0
//   DeltaMulH  1 - h(a/g)*h(b/g)       accepted for I0
// The Delta* triangle inequality holds only for functions whose exponent
// sequences are monotone and sub-/super-multiplicative (delta_safe); it
// fails already on D_4 for sigma/x^2 under DeltaAddH and for x-1 under
// DeltaAddF. Non-safe pairs remain buildable so the exhaustive verifier can
// exhibit the violations.
enum class Combinator { AddF, AddG, AddH, MulH, DeltaAddF, DeltaAddH, DeltaMulH };

std::string combinator_str(Combinator c);
std::optional<Combinator> parse_combinator(const std::string& s);

// Class the combinator can be built with at all.
bool combinator_accepts(const ArithmeticFunction& f, Combinator c);
// Class for which the triangle inequality is theorem-backed.
bool combinator_sound(const ArithmeticFunction& f, Combinator c);

struct PseudometricSpec {
    ArithmeticFunction function;
    Combinator comb;
    Nat n;
};

// Validates class compatibility (accepted level), n >= 2 and exactness.
PseudometricSpec make_spec(ArithmeticFunction f, Combinator c, Nat n);

// d^(n)(x, y) on Z: 0 for x == y, else the combinator formula on the gcd
// images. Periodic with period n in both arguments.
Rat distance(const PseudometricSpec& spec, const Int& x, const Int& y);

struct DistanceTable {
    Nat n;
    std::vector<Nat> index;                 // D_n sorted
    std::vector<std::vector<Rat>> entries;  // |D_n| x |D_n|
    std::string description;
    std::optional<PseudometricSpec> spec;   // absent for combined/scaled tables

    const Rat& at(size_t i, size_t j) const { return entries[i][j]; }
    size_t find(const Nat& d) const;  // index of divisor, throws if absent
};

DistanceTable build_table(const PseudometricSpec& spec);

struct AxiomReport {
    bool identity_ok = true;
    bool symmetry_ok = true;
    bool triangle_ok = true;
    std::vector<Nat> identity_witnesses;
    std::vector<std::pair<Nat, Nat>> symmetry_witnesses;
    std::vector<std::tuple<Nat, Nat, Nat>> triangle_witnesses;  // d(x,z) > d(x,y)+d(y,z)
    unsigned long triangle_violation_count = 0;                 // true count (witness list is capped)

    bool indiscernibles_checked = false;
    bool indiscernibles_ok = true;
    std::vector<std::pair<Int, Int>> indiscernible_witnesses;  // x != y with d(x,y) = 0

    bool all_axioms_ok() const { return identity_ok && symmetry_ok && triangle_ok; }
};

// Exhaustive check of identity, symmetry and the triangle inequality over
// all |D_n|^3 ordered triples, in exact arithmetic. The parallel kernel
// partitions the triple loop by outer index; results are merged in index
// order so the report does not depend on the thread count.
AxiomReport verify_pseudometric(const DistanceTable& t);
AxiomReport verify_pseudometric_serial(const DistanceTable& t);  // reference implementation

// d(x,y) = 0  ==>  x = y, over all D_n pairs.
AxiomReport verify_indiscernibles(const DistanceTable& t);
// Same check over an integer window [a, b] through the gcd extension; any
// window longer than n fails (x and x+n are indiscernible), which is the
// extension argument against metrics on Z.
AxiomReport verify_indiscernibles_window(const DistanceTable& t, const Int& a, const Int& b);

// The four conditions around the induced preorder, evaluated independently:
// (a) metric, (b) x -> d(1,x) injective, (c) generating function injective,
// (d) induced preorder antisymmetric. (b), (c), (d) are mutually equivalent
// and each implies (a); the converse fails (Omega under AddF at n = 12).
struct EquivPOReport {
    bool metric = false;
    bool center_injective = false;
    bool generating_injective = false;
    bool partial_order = false;
};
EquivPOReport equiv_po_report(const DistanceTable& t);

// Pointwise sum: the monoid operation on pseudometrics over a common D_n.
DistanceTable combine_sum(const DistanceTable& t1, const DistanceTable& t2);

// Pointwise positive scaling; the induced preorder is unchanged.
DistanceTable scale(const Rat& lambda, const DistanceTable& t);

// Builds (f,AddF), (g,AddG), (h,AddH), (h,MulH) for f in A0, g in M, h in I2
// and checks the four tables are pairwise distinct. Requires n with at least
// two distinct prime divisors.
struct FamilyDisjointnessReport {
    Nat n;
    std::vector<std::string> table_names;
    std::vector<std::pair<std::string, std::string>> equal_pairs;
    bool pairwise_distinct = false;
};
FamilyDisjointnessReport family_disjointness(const Nat& n, const ArithmeticFunction& f,
                                             const ArithmeticFunction& g,
                                             const ArithmeticFunction& h);

}  // namespace divmet
