#include "divmet/orders.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace divmet {

std::vector<size_t> Preorder::ranks() const {
    std::vector<size_t> order(key.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return key[a] < key[b]; });
    std::vector<size_t> r(key.size(), 0);
    size_t rank = 0;
    for (size_t pos = 0; pos < order.size(); ++pos) {
        if (pos > 0 && key[order[pos]] != key[order[pos - 1]]) ++rank;
        r[order[pos]] = rank;
    }
    return r;
}

int Preorder::compare(size_t i, size_t j) const {
    if (key[i] < key[j]) return -1;
    if (key[j] < key[i]) return 1;
    return 0;
}

Preorder induced_preorder(const DistanceTable& t) {
    Preorder p;
    p.n = t.n;
    p.index = t.index;
    p.source = t.description;
    size_t one = t.find(1);
    p.key.reserve(t.index.size());
    for (size_t i = 0; i < t.index.size(); ++i) p.key.push_back(t.entries[one][i]);
    return p;
}

Preorder induced_preorder(const PseudometricSpec& spec) {
    Preorder p;
    p.n = spec.n;
    p.index = divisor_set(spec.n).divisors;
    p.source = spec.function.name + "," + combinator_str(spec.comb) + ",n=" + spec.n.get_str();
    p.key.reserve(p.index.size());
    for (const auto& d : p.index) p.key.push_back(distance(spec, 1, d));
    return p;
}

Preorder preorder_from_function(const ArithmeticFunction& f, const Nat& n) {
    if (n < 2) throw std::invalid_argument("preorder_from_function: n must be >= 2");
    Preorder p;
    p.n = n;
    p.index = divisor_set(n).divisors;
    p.source = f.name + ",n=" + n.get_str();
    p.key.reserve(p.index.size());
    for (const auto& d : p.index) {
        Rat k = f(d).key;
        p.key.push_back(f.role == OrderRole::H ? Rat(-k) : k);
    }
    return p;
}

Cmp compare_extended(const PseudometricSpec& spec, const Int& x, const Int& y) {
    Rat kx = distance(spec, 1, gcd_z(x, spec.n));
    Rat ky = distance(spec, 1, gcd_z(y, spec.n));
    if (kx < ky) return Cmp::Less;
    if (ky < kx) return Cmp::Greater;
    return Cmp::Equivalent;
}

size_t DivisorPartition::block_of(const Nat& d) const {
    for (size_t b = 0; b < blocks.size(); ++b)
        if (std::binary_search(blocks[b].begin(), blocks[b].end(), d)) return b;
    throw std::invalid_argument(d.get_str() + " is not covered by the partition of D_" + n.get_str());
}

std::vector<unsigned long> DivisorPartition::pattern() const {
    std::vector<unsigned long> sizes;
    for (const auto& b : blocks) {
        unsigned long s = b.size();
        if (std::binary_search(b.begin(), b.end(), Nat(1))) --s;  // 1's slot is fixed, not free
        if (s > 0) sizes.push_back(s);
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

namespace {

DivisorPartition canonicalize(const Nat& n, std::vector<std::vector<Nat>> blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const std::vector<Nat>& a, const std::vector<Nat>& b) { return a.front() < b.front(); });
    DivisorPartition p;
    p.n = n;
    p.blocks = std::move(blocks);
    return p;
}

}  // namespace

DivisorPartition quotient_by_metric(const DistanceTable& t) {
    const size_t m = t.index.size();
    std::vector<bool> seen(m, false);
    std::vector<std::vector<Nat>> blocks;
    for (size_t i = 0; i < m; ++i) {
        if (seen[i]) continue;
        std::vector<Nat> block{t.index[i]};
        seen[i] = true;
        for (size_t j = i + 1; j < m; ++j)
            if (!seen[j] && t.entries[i][j] == 0) {
                block.push_back(t.index[j]);
                seen[j] = true;
            }
        blocks.push_back(std::move(block));
    }
    return canonicalize(t.n, std::move(blocks));
}

DivisorPartition quotient_by_preorder(const Preorder& p) {
    std::map<Rat, std::vector<Nat>> by_key;
    for (size_t i = 0; i < p.index.size(); ++i) by_key[p.key[i]].push_back(p.index[i]);
    std::vector<std::vector<Nat>> blocks;
    for (auto& [k, b] : by_key) blocks.push_back(std::move(b));
    return canonicalize(p.n, std::move(blocks));
}

bool refinement_check(const DivisorPartition& p1, const DivisorPartition& p2) {
    if (p1.n != p2.n) throw std::invalid_argument("refinement_check: modulus mismatch");
    for (const auto& b : p1.blocks) {
        size_t target = p2.block_of(b.front());
        for (const auto& d : b)
            if (p2.block_of(d) != target) return false;
    }
    return true;
}

WindowPartition extend_to_window(const DivisorPartition& p, const Int& a, const Int& b) {
    if (a > b) throw std::invalid_argument("extend_to_window: empty window");
    WindowPartition w;
    w.a = a;
    w.b = b;
    std::set<size_t> realized;
    for (Int x = a; x <= b; ++x) {
        size_t id = p.block_of(gcd_z(x, p.n));
        w.block_id.push_back(id);
        realized.insert(id);
    }
    w.block_count = realized.size();
    return w;
}

PermutationReport permutation_invariance(const std::map<Nat, Rat>& h1_values,
                                         const std::vector<size_t>& perm, const Nat& n) {
    DivisorSet ds = divisor_set(n);
    const auto& pps = ds.prime_powers;
    if (perm.size() != pps.size())
        throw std::invalid_argument("permutation_invariance: permutation size must equal |P*_n|");
    std::vector<bool> hit(perm.size(), false);
    for (size_t i : perm) {
        if (i >= perm.size() || hit[i])
            throw std::invalid_argument("permutation_invariance: not a bijection");
        hit[i] = true;
    }

    ArithmeticFunction h1 = from_prime_power_values(h1_values, FnClass::Multiplicative, n, "h1");
    std::map<Nat, Rat> h2_values;
    for (size_t i = 0; i < pps.size(); ++i) h2_values[pps[i]] = h1_values.at(pps[perm[i]]);
    ArithmeticFunction h2 = from_prime_power_values(h2_values, FnClass::Multiplicative, n, "h2");

    std::vector<Rat> v1, v2;
    for (const auto& d : ds.divisors) {
        v1.push_back(h1(d).exact_value());
        v2.push_back(h2(d).exact_value());
    }

    PermutationReport rep;
    rep.feasible = true;
    for (size_t i = 0; i < v1.size() && rep.feasible; ++i)
        for (size_t j = i + 1; j < v1.size(); ++j)
            if ((v1[i] == v1[j]) != (v2[i] == v2[j])) {
                rep.feasible = false;
                break;
            }
    rep.p1 = quotient_by_preorder(preorder_from_function(h1, n));
    rep.p2 = quotient_by_preorder(preorder_from_function(h2, n));
    rep.partitions_equal = rep.p1 == rep.p2;
    return rep;
}

TripleEquivalenceReport triple_equivalence(const ArithmeticFunction& h, const Nat& n) {
    if (h.kind != ValueKind::Exact)
        throw std::invalid_argument("triple_equivalence: h must be exact-valued");
    DivisorSet ds = divisor_set(n);
    std::vector<Rat> hv;
    for (const auto& d : ds.divisors) hv.push_back(h(d).exact_value());

    TripleEquivalenceReport rep;
    rep.in_gt0 = std::all_of(hv.begin(), hv.end(), [](const Rat& v) { return v > 0; });

    auto ranks_of = [&](const std::vector<Rat>& keys) {
        Preorder p;
        p.n = n;
        p.index = ds.divisors;
        p.key = keys;
        return p.ranks();
    };

    // AddH and MulH keys d(1,x) agree literally (h(1) = 1); they are still
    // derived through the two distance formulas independently.
    PseudometricSpec addh = make_spec(h, Combinator::AddH, n);
    PseudometricSpec mulh = make_spec(h, Combinator::MulH, n);
    std::vector<Rat> k_addh, k_mulh;
    for (const auto& d : ds.divisors) {
        k_addh.push_back(distance(addh, 1, d));
        k_mulh.push_back(distance(mulh, 1, d));
    }
    std::vector<size_t> r_addh = ranks_of(k_addh), r_mulh = ranks_of(k_mulh);
    rep.addh_mulh_equal = r_addh == r_mulh;
    rep.ranks = r_addh;

    if (rep.in_gt0) {
        std::vector<Rat> k_f, k_g;  // -ln h surrogate; g = 1/h under AddG
        for (const auto& v : hv) {
            k_f.push_back(Rat(-v));
            k_g.push_back(Rat(1) / v - 1);
        }
        rep.four_way_equal =
            ranks_of(k_f) == r_addh && ranks_of(k_g) == r_addh && rep.addh_mulh_equal;
    }
    return rep;
}

ClassCountReport class_count_checks(const ArithmeticFunction& h, const Nat& n) {
    ClassCountReport rep;
    rep.cls = classify(h, n);
    rep.partition = quotient_by_preorder(preorder_from_function(h, n));

    DivisorSet ds = divisor_set(n);
    std::vector<Rat> hv;
    bool exact = h.kind == ValueKind::Exact;
    for (const auto& d : ds.divisors) hv.push_back(h(d).key);

    const ClassMembership& on = rep.cls.on_dn ? *rep.cls.on_dn : rep.cls.global;
    unsigned omega_n = factorize(n).small_omega();

    auto record = [&](bool applicable, bool holds, bool& app_out, bool& holds_out) {
        app_out = applicable;
        holds_out = holds;
        if (applicable && !holds) rep.all_applicable_hold = false;
    };

    // I2: the class of 1 is a singleton.
    bool one_singleton = rep.partition.blocks[rep.partition.block_of(1)].size() == 1;
    record(exact && on.i2, one_singleton, rep.coprime_extra_applicable, rep.coprime_extra_holds);

    // I with omega(n) >= 2: at least three classes.
    record(exact && on.i && omega_n >= 2, rep.partition.blocks.size() >= 3,
           rep.max_three_applicable, rep.max_three_holds);

    // ... because some two divisors > 1 take different values.
    bool differ = false;
    for (size_t i = 1; i < hv.size() && !differ; ++i)
        for (size_t j = i + 1; j < hv.size(); ++j)
            if (hv[i] != hv[j]) {
                differ = true;
                break;
            }
    record(exact && on.i && omega_n >= 2, differ, rep.not_all_equal_applicable,
           rep.not_all_equal_holds);

    // Injective values with h > 0 on D_n: the finest partition.
    bool injective = true;
    for (size_t i = 0; i < hv.size() && injective; ++i)
        for (size_t j = i + 1; j < hv.size(); ++j)
            if (hv[i] == hv[j]) {
                injective = false;
                break;
            }
    bool all_singletons = rep.partition.blocks.size() == ds.divisors.size();
    record(injective, all_singletons, rep.finest_applicable, rep.finest_holds);

    // h vanishing on all of P*_n: exactly the two classes [1] and [n].
    bool zero_on_pp = exact;
    if (exact)
        for (const auto& q : ds.prime_powers)
            if (h(q).exact_value() != 0) {
                zero_on_pp = false;
                break;
            }
    record(zero_on_pp, rep.partition.blocks.size() == 2, rep.coarsest_applicable,
           rep.coarsest_holds);

    return rep;
}

std::pair<Nat, Nat> coprime_squarefree_transfer(const ArithmeticFunction& h, const Nat& s,
                                                const Nat& t) {
    if (s == t) throw std::invalid_argument("coprime_squarefree_transfer: s and t must differ");
    if (!factorize(s).squarefree() || !factorize(t).squarefree())
        throw std::invalid_argument("coprime_squarefree_transfer: s and t must be squarefree");
    if (!is_multiplicative_class(h.declared_class))
        throw std::invalid_argument("coprime_squarefree_transfer: h must be multiplicative");
    Rat hs = h(s).exact_value(), ht = h(t).exact_value();
    if (hs != ht) throw std::invalid_argument("coprime_squarefree_transfer: h(s) != h(t)");
    Nat g;
    mpz_gcd(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t());
    if (h(g).exact_value() == 0)
        throw std::invalid_argument("coprime_squarefree_transfer: h(gcd(s,t)) = 0");
    Nat s2 = s / g, t2 = t / g;
    if (h(s2).exact_value() != h(t2).exact_value())
        throw std::logic_error("coprime_squarefree_transfer: reduced values differ");
    return {s2, t2};
}

}  // namespace divmet
