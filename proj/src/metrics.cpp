#include "divmet/metrics.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace divmet {

namespace {
constexpr size_t kWitnessCap = 10000;
}

std::string combinator_str(Combinator c) {
    switch (c) {
        case Combinator::AddF: return "addf";
        case Combinator::AddG: return "addg";
        case Combinator::AddH: return "addh";
        case Combinator::MulH: return "mulh";
        case Combinator::DeltaAddF: return "delta-addf";
        case Combinator::DeltaAddH: return "delta-addh";
        case Combinator::DeltaMulH: return "delta-mulh";
    }
    return "?";
}

std::optional<Combinator> parse_combinator(const std::string& s) {
    if (s == "addf") return Combinator::AddF;
    if (s == "addg") return Combinator::AddG;
    if (s == "addh") return Combinator::AddH;
    if (s == "mulh") return Combinator::MulH;
    if (s == "delta-addf") return Combinator::DeltaAddF;
    if (s == "delta-addh") return Combinator::DeltaAddH;
    if (s == "delta-mulh") return Combinator::DeltaMulH;
    return std::nullopt;
}

bool combinator_accepts(const ArithmeticFunction& f, Combinator c) {
    const auto& g = f.global_class;
    switch (c) {
        case Combinator::AddF:
        case Combinator::DeltaAddF: return g.s0 || g.a0;
        case Combinator::AddG: return g.m0;
        case Combinator::AddH:
        case Combinator::MulH:
        case Combinator::DeltaAddH:
        case Combinator::DeltaMulH: return g.i0;
    }
    return false;
}

bool combinator_sound(const ArithmeticFunction& f, Combinator c) {
    switch (c) {
        case Combinator::DeltaAddF: return f.global_class.a0 && f.delta_safe;
        case Combinator::DeltaAddH:
        case Combinator::DeltaMulH: return f.global_class.i0 && f.delta_safe;
        default: return combinator_accepts(f, c);
    }
}

PseudometricSpec make_spec(ArithmeticFunction f, Combinator c, Nat n) {
    if (n < 2) throw std::invalid_argument("pseudometric spec: n must be >= 2");
    if (f.kind != ValueKind::Exact)
        throw std::invalid_argument("pseudometric spec: OrderKey function '" + f.name +
                                    "' admits no distances, only preorders");
    if (!combinator_accepts(f, c))
        throw std::invalid_argument("pseudometric spec: " + f.name + " is not class-compatible with " +
                                    combinator_str(c));
    return PseudometricSpec{std::move(f), c, std::move(n)};
}

namespace {

Rat combine(Combinator c, const Rat& va, const Rat& vb) {
    switch (c) {
        case Combinator::AddF:
        case Combinator::DeltaAddF: return va + vb;
        case Combinator::AddG: return va + vb - 2;
        case Combinator::AddH:
        case Combinator::DeltaAddH: return Rat(2) - va - vb;
        case Combinator::MulH:
        case Combinator::DeltaMulH: return Rat(1) - va * vb;
    }
    return Rat(0);
}

bool is_delta(Combinator c) {
    return c == Combinator::DeltaAddF || c == Combinator::DeltaAddH || c == Combinator::DeltaMulH;
}

}  // namespace

Rat distance(const PseudometricSpec& spec, const Int& x, const Int& y) {
    if (x == y) return Rat(0);
    Nat a = gcd_z(x, spec.n);
    Nat b = gcd_z(y, spec.n);
    if (a == b) return Rat(0);
    if (is_delta(spec.comb)) {
        Nat g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        a /= g;
        b /= g;
    }
    return combine(spec.comb, spec.function(a).exact_value(), spec.function(b).exact_value());
}

size_t DistanceTable::find(const Nat& d) const {
    auto it = std::lower_bound(index.begin(), index.end(), d);
    if (it == index.end() || *it != d)
        throw std::invalid_argument(d.get_str() + " is not a divisor of " + n.get_str());
    return static_cast<size_t>(it - index.begin());
}

DistanceTable build_table(const PseudometricSpec& spec) {
    DistanceTable t;
    t.n = spec.n;
    t.index = divisor_set(spec.n).divisors;
    t.description = spec.function.name + "," + combinator_str(spec.comb) + ",n=" + spec.n.get_str();
    t.spec = spec;

    const size_t m = t.index.size();
    std::map<Nat, Rat> vals;  // all arguments the formula can see are divisors of n
    for (const auto& d : t.index) vals[d] = spec.function(d).exact_value();

    t.entries.assign(m, std::vector<Rat>(m, Rat(0)));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
            Nat a = t.index[i], b = t.index[j];
            if (is_delta(spec.comb)) {
                Nat g;
                mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                a /= g;
                b /= g;
            }
            Rat d = combine(spec.comb, vals.at(a), vals.at(b));
            t.entries[i][j] = d;
            t.entries[j][i] = d;
        }
    return t;
}

namespace {

// Scaled-integer view of a table: all entries as mpz numerators over one
// common denominator, so the O(|D_n|^3) triangle loop runs on integer
// add/compare instead of canonicalizing rationals.
struct ScaledTable {
    std::vector<std::vector<Nat>> num;
};

ScaledTable scale_to_integers(const DistanceTable& t) {
    const size_t m = t.index.size();
    Nat lcm = 1;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.entries[i][j].get_den().get_mpz_t());
    ScaledTable s;
    s.num.assign(m, std::vector<Nat>(m));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            const Rat& q = t.entries[i][j];
            s.num[i][j] = q.get_num() * (lcm / q.get_den());
        }
    return s;
}

void check_identity_symmetry(const DistanceTable& t, AxiomReport& rep) {
    const size_t m = t.index.size();
    for (size_t i = 0; i < m; ++i)
        if (t.entries[i][i] != 0) {
            rep.identity_ok = false;
            rep.identity_witnesses.push_back(t.index[i]);
        }
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (t.entries[i][j] != t.entries[j][i]) {
                rep.symmetry_ok = false;
                rep.symmetry_witnesses.emplace_back(t.index[i], t.index[j]);
            }
}

}  // namespace

AxiomReport verify_pseudometric_serial(const DistanceTable& t) {
    AxiomReport rep;
    check_identity_symmetry(t, rep);
    const size_t m = t.index.size();
    ScaledTable s = scale_to_integers(t);
    Nat sum;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            for (size_t k = 0; k < m; ++k) {
                sum = s.num[i][j] + s.num[j][k];
                if (s.num[i][k] > sum) {
                    rep.triangle_ok = false;
                    ++rep.triangle_violation_count;
                    if (rep.triangle_witnesses.size() < kWitnessCap)
                        rep.triangle_witnesses.emplace_back(t.index[i], t.index[j], t.index[k]);
                }
            }
    return rep;
}

AxiomReport verify_pseudometric(const DistanceTable& t) {
    AxiomReport rep;
    check_identity_symmetry(t, rep);
    const size_t m = t.index.size();
    ScaledTable s = scale_to_integers(t);

    std::vector<std::vector<std::tuple<Nat, Nat, Nat>>> local(m);
    std::vector<unsigned long> counts(m, 0);
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < m; ++i) {
        Nat sum;
        for (size_t j = 0; j < m; ++j)
            for (size_t k = 0; k < m; ++k) {
                sum = s.num[i][j] + s.num[j][k];
                if (s.num[i][k] > sum) {
                    ++counts[i];
                    if (local[i].size() < kWitnessCap)
                        local[i].emplace_back(t.index[i], t.index[j], t.index[k]);
                }
            }
    }
    for (size_t i = 0; i < m; ++i) {
        rep.triangle_violation_count += counts[i];
        for (auto& w : local[i])
            if (rep.triangle_witnesses.size() < kWitnessCap) rep.triangle_witnesses.push_back(std::move(w));
    }
    rep.triangle_ok = rep.triangle_violation_count == 0;
    return rep;
}

AxiomReport verify_indiscernibles(const DistanceTable& t) {
    AxiomReport rep;
    rep.indiscernibles_checked = true;
    const size_t m = t.index.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (t.entries[i][j] == 0) {
                rep.indiscernibles_ok = false;
                if (rep.indiscernible_witnesses.size() < kWitnessCap)
                    rep.indiscernible_witnesses.emplace_back(t.index[i], t.index[j]);
            }
    return rep;
}

AxiomReport verify_indiscernibles_window(const DistanceTable& t, const Int& a, const Int& b) {
    if (a > b) throw std::invalid_argument("verify_indiscernibles_window: empty window");
    AxiomReport rep;
    rep.indiscernibles_checked = true;
    for (Int x = a; x <= b; ++x)
        for (Int y = x + 1; y <= b; ++y) {
            size_t i = t.find(gcd_z(x, t.n));
            size_t j = t.find(gcd_z(y, t.n));
            if (i == j || t.entries[i][j] == 0) {
                rep.indiscernibles_ok = false;
                if (rep.indiscernible_witnesses.size() < 100)
                    rep.indiscernible_witnesses.emplace_back(x, y);
            }
        }
    return rep;
}

EquivPOReport equiv_po_report(const DistanceTable& t) {
    EquivPOReport rep;
    const size_t m = t.index.size();
    size_t one = t.find(1);

    rep.metric = verify_indiscernibles(t).indiscernibles_ok;

    rep.center_injective = true;
    for (size_t i = 0; i < m && rep.center_injective; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (t.entries[one][i] == t.entries[one][j]) {
                rep.center_injective = false;
                break;
            }

    // f_d recomputed from its definition rather than read off the row.
    std::vector<Rat> fd(m);
    for (size_t i = 0; i < m; ++i)
        fd[i] = t.index[i] == 1 ? Rat(0) : t.entries[one][i];
    rep.generating_injective = true;
    for (size_t i = 0; i < m && rep.generating_injective; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (fd[i] == fd[j]) {
                rep.generating_injective = false;
                break;
            }

    // x <= y and y <= x imply x = y, via explicit key comparisons.
    rep.partial_order = true;
    for (size_t i = 0; i < m && rep.partial_order; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (fd[i] <= fd[j] && fd[j] <= fd[i]) {
                rep.partial_order = false;
                break;
            }
    return rep;
}

DistanceTable combine_sum(const DistanceTable& t1, const DistanceTable& t2) {
    if (t1.n != t2.n)
        throw std::invalid_argument("combine_sum: modulus mismatch (" + t1.n.get_str() + " vs " +
                                    t2.n.get_str() + ")");
    DistanceTable out;
    out.n = t1.n;
    out.index = t1.index;
    out.description = "(" + t1.description + ") + (" + t2.description + ")";
    const size_t m = out.index.size();
    out.entries.assign(m, std::vector<Rat>(m));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) out.entries[i][j] = t1.entries[i][j] + t2.entries[i][j];
    return out;
}

DistanceTable scale(const Rat& lambda, const DistanceTable& t) {
    if (lambda <= 0) throw std::invalid_argument("scale: lambda must be > 0");
    DistanceTable out;
    out.n = t.n;
    out.index = t.index;
    out.description = rat_str(lambda) + " * (" + t.description + ")";
    const size_t m = out.index.size();
    out.entries.assign(m, std::vector<Rat>(m));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) out.entries[i][j] = lambda * t.entries[i][j];
    return out;
}

FamilyDisjointnessReport family_disjointness(const Nat& n, const ArithmeticFunction& f,
                                             const ArithmeticFunction& g,
                                             const ArithmeticFunction& h) {
    if (factorize(n).small_omega() < 2)
        throw std::invalid_argument("family_disjointness: n must have at least two prime divisors");
    if (!f.global_class.a0)
        throw std::invalid_argument("family_disjointness: f must be in A0");
    if (!g.global_class.m) throw std::invalid_argument("family_disjointness: g must be in M");
    if (!h.global_class.i2) throw std::invalid_argument("family_disjointness: h must be in I2");

    std::vector<DistanceTable> tables;
    tables.push_back(build_table(make_spec(f, Combinator::AddF, n)));
    tables.push_back(build_table(make_spec(g, Combinator::AddG, n)));
    tables.push_back(build_table(make_spec(h, Combinator::AddH, n)));
    tables.push_back(build_table(make_spec(h, Combinator::MulH, n)));

    FamilyDisjointnessReport rep;
    rep.n = n;
    for (const auto& t : tables) rep.table_names.push_back(t.description);
    for (size_t a = 0; a < tables.size(); ++a)
        for (size_t b = a + 1; b < tables.size(); ++b)
            if (tables[a].entries == tables[b].entries)
                rep.equal_pairs.emplace_back(rep.table_names[a], rep.table_names[b]);
    rep.pairwise_distinct = rep.equal_pairs.empty();
    return rep;
}

}  // namespace divmet
