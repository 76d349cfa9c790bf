#include "divmet/functions.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

#include "divmet/scan_ids.hpp"

namespace divmet {

bool is_additive_class(FnClass c) {
    return c == FnClass::Additive || c == FnClass::TotallyAdditive;
}
bool is_multiplicative_class(FnClass c) {
    return c == FnClass::Multiplicative || c == FnClass::TotallyMultiplicative;
}

std::string fn_class_str(FnClass c) {
    switch (c) {
        case FnClass::Additive: return "additive";
        case FnClass::TotallyAdditive: return "totally-additive";
        case FnClass::Multiplicative: return "multiplicative";
        case FnClass::TotallyMultiplicative: return "totally-multiplicative";
        case FnClass::Neither: return "neither";
    }
    return "?";
}

std::vector<std::string> ClassMembership::names() const {
    std::vector<std::string> out;
    if (s0) out.push_back("S0");
    if (s) out.push_back("S");
    if (a0) out.push_back("A0");
    if (a) out.push_back("A");
    if (m0) out.push_back("M0");
    if (m) out.push_back("M");
    if (i0) out.push_back("I0");
    if (i1) out.push_back("I1");
    if (i2) out.push_back("I2");
    if (i) out.push_back("I");
    return out;
}

Value ArithmeticFunction::operator()(const Nat& x) const {
    if (x < 1) throw std::invalid_argument(name + ": argument must be >= 1");
    return eval_fn(x);
}

namespace {

Nat pow_nat(const Nat& p, unsigned e) {
    Nat q;
    mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), e);
    return q;
}

Nat nd_of(const Factorization& f) {
    Nat r = 1;
    for (const auto& pp : f.pairs) r *= (pp.exponent + 1);
    return r;
}

Nat sigma_of(const Factorization& f) {
    Nat r = 1;
    for (const auto& pp : f.pairs) r *= (pow_nat(pp.prime, pp.exponent + 1) - 1) / (pp.prime - 1);
    return r;
}

Nat phi_of(const Factorization& f) {
    Nat r = 1;
    for (const auto& pp : f.pairs) r *= pow_nat(pp.prime, pp.exponent - 1) * (pp.prime - 1);
    return r;
}

// P(p^a) = (a+1) p^a - a p^{a-1}; multiplicative.
Nat pillai_of(const Factorization& f) {
    Nat r = 1;
    for (const auto& pp : f.pairs)
        r *= pow_nat(pp.prime, pp.exponent) * (pp.exponent + 1) -
             pow_nat(pp.prime, pp.exponent - 1) * pp.exponent;
    return r;
}

Rat ld_of(const Factorization& f) {
    Rat r = 0;
    for (const auto& pp : f.pairs) r += make_rat(pp.exponent, pp.prime);
    return r;
}

Nat upsilon_big_of(const Factorization& f) {
    Nat r = 0;
    for (const auto& pp : f.pairs) r += pp.prime * pp.exponent;
    return r;
}

Nat upsilon_of(const Factorization& f) {
    Nat r = 0;
    for (const auto& pp : f.pairs) r += pp.prime;
    return r;
}

using Eval = std::function<Value(const Nat&)>;

Eval exact_of(Rat (*fn)(const Factorization&)) {
    return [fn](const Nat& x) { return Value::exact(fn(factorize(x))); };
}

ClassMembership cm(std::initializer_list<const char*> flags) {
    ClassMembership c;
    for (const char* f : flags) {
        std::string s(f);
        if (s == "S0") c.s0 = true;
        else if (s == "S") c.s = true;
        else if (s == "A0") c.a0 = true;
        else if (s == "A") c.a = true;
        else if (s == "M0") c.m0 = true;
        else if (s == "M") c.m = true;
        else if (s == "I0") c.i0 = true;
        else if (s == "I1") c.i1 = true;
        else if (s == "I2") c.i2 = true;
        else if (s == "I") c.i = true;
    }
    return c;
}

ArithmeticFunction make_fn(std::string name, FnClass cls, OrderRole role, ClassMembership m,
                           Eval eval, int scan_id) {
    ArithmeticFunction f;
    f.name = std::move(name);
    f.declared_class = cls;
    f.kind = ValueKind::Exact;
    f.role = role;
    f.global_class = m;
    f.eval_fn = std::move(eval);
    f.scan_id = scan_id;
    return f;
}

std::vector<ArithmeticFunction> build_catalog() {
    std::vector<ArithmeticFunction> cat;
    const auto F = OrderRole::F;
    const auto G = OrderRole::G;
    const auto H = OrderRole::H;

    cat.push_back(make_fn(
        "zero", FnClass::TotallyAdditive, F, cm({"S0", "A0"}),
        [](const Nat&) { return Value::exact(Rat(0)); }, kScanZero));
    cat.push_back(make_fn(
        "one", FnClass::TotallyMultiplicative, H, cm({"M0", "I0", "I1"}),
        [](const Nat&) { return Value::exact(Rat(1)); }, kScanOne));
    cat.push_back(make_fn(
        "id", FnClass::TotallyMultiplicative, G, cm({"M0", "M"}),
        [](const Nat& x) { return Value::exact(Rat(x)); }, kScanIdentity));
    cat.push_back(make_fn(
        "recip", FnClass::TotallyMultiplicative, H, cm({"I0", "I1", "I2", "I"}),
        [](const Nat& x) { return Value::exact(make_rat(1, x)); }, kScanRecip));
    cat.push_back(make_fn(
        "xminus1", FnClass::Neither, F, cm({"S0", "S"}),
        [](const Nat& x) { return Value::exact(Rat(x - 1)); }, kScanXMinus1));
    cat.push_back(make_fn(
        "one_minus_eps", FnClass::Neither, F, cm({"S0", "S"}),
        [](const Nat& x) { return Value::exact(Rat(x == 1 ? 0 : 1)); }, kScanOneMinusEps));

    cat.push_back(make_fn(
        "bigomega", FnClass::TotallyAdditive, F, cm({"S0", "S", "A0", "A"}),
        [](const Nat& x) { return Value::exact(Rat(factorize(x).big_omega())); }, kScanBigOmega));
    cat.push_back(make_fn(
        "omega", FnClass::Additive, F, cm({"S0", "S", "A0", "A"}),
        [](const Nat& x) { return Value::exact(Rat(factorize(x).small_omega())); }, kScanOmega));
    cat.push_back(make_fn(
        "bigupsilon", FnClass::TotallyAdditive, F, cm({"S0", "S", "A0", "A"}),
        [](const Nat& x) { return Value::exact(Rat(upsilon_big_of(factorize(x)))); },
        kScanBigUpsilon));
    cat.push_back(make_fn(
        "upsilon", FnClass::Additive, F, cm({"S0", "S", "A0", "A"}),
        [](const Nat& x) { return Value::exact(Rat(upsilon_of(factorize(x)))); }, kScanUpsilon));
    cat.push_back(make_fn("ld", FnClass::TotallyAdditive, F, cm({"S0", "S", "A0", "A"}),
                          exact_of(ld_of), kScanLd));
    cat.push_back(make_fn(
        "deriv", FnClass::Neither, F, cm({"S0", "S"}),
        [](const Nat& x) {
            Rat d = ld_of(factorize(x)) * Rat(x);  // D(x) = x * ld(x), an integer
            return Value::exact(d);
        },
        kScanDeriv));

    cat.push_back(make_fn(
        "nd", FnClass::Multiplicative, G, cm({"M0", "M"}),
        [](const Nat& x) { return Value::exact(Rat(nd_of(factorize(x)))); }, kScanNd));
    cat.push_back(make_fn(
        "sigma", FnClass::Multiplicative, G, cm({"M0", "M"}),
        [](const Nat& x) { return Value::exact(Rat(sigma_of(factorize(x)))); }, kScanSigma));
    cat.push_back(make_fn(
        "phi", FnClass::Multiplicative, G, cm({"M0"}),
        [](const Nat& x) { return Value::exact(Rat(phi_of(factorize(x)))); }, kScanPhi));
    cat.push_back(make_fn(
        "pillai", FnClass::Multiplicative, G, cm({"M0", "M"}),
        [](const Nat& x) { return Value::exact(Rat(pillai_of(factorize(x)))); }, kScanPillai));

    cat.push_back(make_fn(
        "mu2", FnClass::Multiplicative, H, cm({"I0"}),
        [](const Nat& x) { return Value::exact(Rat(factorize(x).squarefree() ? 1 : 0)); },
        kScanMu2));
    cat.push_back(make_fn(
        "mu2_over_x", FnClass::Multiplicative, H, cm({"I0", "I2"}),
        [](const Nat& x) {
            return Value::exact(factorize(x).squarefree() ? make_rat(1, x) : Rat(0));
        },
        kScanMu2OverX));
    cat.push_back(make_fn(
        "eps", FnClass::TotallyMultiplicative, H, cm({"I0", "I2"}),
        [](const Nat& x) { return Value::exact(Rat(x == 1 ? 1 : 0)); }, kScanEps));

    cat.push_back(make_fn(
        "nd_over_x", FnClass::Multiplicative, H, cm({"I0", "I1"}),
        [](const Nat& x) { return Value::exact(make_rat(nd_of(factorize(x)), x)); }, kScanNdOverX));
    cat.push_back(make_fn(
        "nd_over_x2", FnClass::Multiplicative, H, cm({"I0", "I1", "I2", "I"}),
        [](const Nat& x) { return Value::exact(make_rat(nd_of(factorize(x)), x * x)); },
        kScanNdOverX2));
    cat.push_back(make_fn(
        "sigma_over_x", FnClass::Multiplicative, G, cm({"M0", "M"}),
        [](const Nat& x) { return Value::exact(make_rat(sigma_of(factorize(x)), x)); },
        kScanSigmaOverX));
    cat.push_back(make_fn(
        "sigma_over_x2", FnClass::Multiplicative, H, cm({"I0", "I1", "I2", "I"}),
        [](const Nat& x) { return Value::exact(make_rat(sigma_of(factorize(x)), x * x)); },
        kScanSigmaOverX2));
    cat.push_back(make_fn(
        "phi_over_x", FnClass::Multiplicative, H, cm({"I0", "I1", "I2", "I"}),
        [](const Nat& x) { return Value::exact(make_rat(phi_of(factorize(x)), x)); },
        kScanPhiOverX));
    cat.push_back(make_fn(
        "phi_over_x2", FnClass::Multiplicative, H, cm({"I0", "I1", "I2", "I"}),
        [](const Nat& x) { return Value::exact(make_rat(phi_of(factorize(x)), x * x)); },
        kScanPhiOverX2));

    cat.push_back(make_fn(
        "x_over_nd", FnClass::Multiplicative, G, cm({"M0"}),
        [](const Nat& x) { return Value::exact(make_rat(x, nd_of(factorize(x)))); }, kScanXOverNd));
    cat.push_back(make_fn(
        "x2_over_nd", FnClass::Multiplicative, G, cm({"M0", "M"}),
        [](const Nat& x) { return Value::exact(make_rat(x * x, nd_of(factorize(x)))); },
        kScanX2OverNd));
    cat.push_back(make_fn(
        "x_over_sigma", FnClass::Multiplicative, H, cm({"I0", "I1", "I2", "I"}),
        [](const Nat& x) { return Value::exact(make_rat(x, sigma_of(factorize(x)))); },
        kScanXOverSigma));
    cat.push_back(make_fn(
        "x2_over_sigma", FnClass::Multiplicative, G, cm({"M0", "M"}),
        [](const Nat& x) { return Value::exact(make_rat(x * x, sigma_of(factorize(x)))); },
        kScanX2OverSigma));
    cat.push_back(make_fn(
        "x_over_phi", FnClass::Multiplicative, G, cm({"M0", "M"}),
        [](const Nat& x) { return Value::exact(make_rat(x, phi_of(factorize(x)))); },
        kScanXOverPhi));
    cat.push_back(make_fn(
        "x2_over_phi", FnClass::Multiplicative, G, cm({"M0", "M"}),
        [](const Nat& x) { return Value::exact(make_rat(x * x, phi_of(factorize(x)))); },
        kScanX2OverPhi));

    cat.push_back(make_fn(
        "recip_nd", FnClass::Multiplicative, H, cm({"I0", "I1", "I2", "I"}),
        [](const Nat& x) { return Value::exact(make_rat(1, nd_of(factorize(x)))); }, kScanRecipNd));
    cat.push_back(make_fn(
        "recip_sigma", FnClass::Multiplicative, H, cm({"I0", "I1", "I2", "I"}),
        [](const Nat& x) { return Value::exact(make_rat(1, sigma_of(factorize(x)))); },
        kScanRecipSigma));
    cat.push_back(make_fn(
        "recip_phi", FnClass::Multiplicative, H, cm({"I0", "I1"}),
        [](const Nat& x) { return Value::exact(make_rat(1, phi_of(factorize(x)))); },
        kScanRecipPhi));
    cat.push_back(make_fn(
        "recip_pillai", FnClass::Multiplicative, H, cm({"I0", "I1", "I2", "I"}),
        [](const Nat& x) { return Value::exact(make_rat(1, pillai_of(factorize(x)))); },
        kScanRecipPillai));

    cat.push_back(make_fn(
        "pillai_norm", FnClass::Multiplicative, H, cm({"I0", "I1", "I2", "I"}),
        [](const Nat& x) {
            Factorization f = factorize(x);
            return Value::exact(make_rat(pillai_of(f), x * nd_of(f)));
        },
        kScanPillaiNorm));
    cat.push_back(make_fn(
        "x_nd_over_pillai", FnClass::Multiplicative, G, cm({"M0", "M"}),
        [](const Nat& x) {
            Factorization f = factorize(x);
            return Value::exact(make_rat(x * nd_of(f), pillai_of(f)));
        },
        kScanXNdOverPillai));

    cat.push_back(make_fn(
        "half_pow_bigomega", FnClass::TotallyMultiplicative, H, cm({"I0", "I1", "I2", "I"}),
        [](const Nat& x) {
            return Value::exact(make_rat(1, pow_nat(2, factorize(x).big_omega())));
        },
        kScanHalfPowBigOmega));

    // Irrational-valued entries, represented by exact comparison surrogates.
    {
        ArithmeticFunction logf;
        logf.name = "log";
        logf.declared_class = FnClass::TotallyAdditive;
        logf.kind = ValueKind::OrderKey;
        logf.role = F;
        logf.global_class = cm({"S0", "S", "A0", "A"});
        logf.eval_fn = [](const Nat& x) { return Value::order_key(Rat(x), "log"); };
        cat.push_back(std::move(logf));
    }

    // Entries whose exponent sequences are monotone and sub-/super-
    // multiplicative, so the coprime-reduced triangle inequality is provable.
    for (const char* name :
         {"zero", "bigomega", "omega", "bigupsilon", "upsilon", "ld", "one", "recip", "eps",
          "half_pow_bigomega", "phi_over_x", "phi_over_x2", "x_over_sigma", "recip_nd",
          "recip_sigma", "recip_pillai", "pillai_norm"})
        for (auto& f : cat)
            if (f.name == name) f.delta_safe = true;

    return cat;
}

ArithmeticFunction make_chi(unsigned long k, bool over_x) {
    if (k < 2) throw std::invalid_argument("chi: modulus must be >= 2");
    ArithmeticFunction f;
    f.name = (over_x ? std::string("chi_over_x:") : std::string("chi:")) + std::to_string(k);
    f.declared_class = FnClass::TotallyMultiplicative;
    f.kind = ValueKind::Exact;
    f.role = OrderRole::H;
    f.global_class = over_x ? cm({"I0", "I2"}) : cm({"I0"});
    Nat kn(static_cast<unsigned long>(k));
    f.eval_fn = [kn, over_x](const Nat& x) {
        Nat g;
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), kn.get_mpz_t());
        if (g > 1) return Value::exact(Rat(0));
        return Value::exact(over_x ? make_rat(1, x) : Rat(1));
    };
    f.scan_id = over_x ? kScanChiOverX : kScanChi;
    f.scan_param = k;
    f.delta_safe = true;  // completely multiplicative
    return f;
}

ArithmeticFunction make_exp(const ArithmeticFunction& base, bool negated) {
    if (base.kind != ValueKind::Exact || !base.global_class.a0)
        throw std::invalid_argument("exp: base must be an exact admissible additive function");
    ArithmeticFunction f;
    f.name = (negated ? std::string("exp_neg:") : std::string("exp:")) + base.name;
    f.declared_class = base.declared_class == FnClass::TotallyAdditive
                           ? FnClass::TotallyMultiplicative
                           : FnClass::Multiplicative;
    f.kind = ValueKind::OrderKey;
    if (negated) {
        f.role = OrderRole::H;
        f.global_class.i0 = f.global_class.i1 = true;
        f.global_class.i2 = f.global_class.i = base.global_class.s;
    } else {
        f.role = OrderRole::G;
        f.global_class.m0 = true;
        f.global_class.m = base.global_class.s;
    }
    auto ev = base.eval_fn;
    std::string label = f.name;
    f.eval_fn = [ev, negated, label](const Nat& x) {
        Rat v = ev(x).exact_value();
        return Value::order_key(negated ? Rat(-v) : v, label);
    };
    return f;
}

ArithmeticFunction make_neg_log(const ArithmeticFunction& h) {
    if (h.kind != ValueKind::Exact)
        throw std::invalid_argument("neg_log: base must be exact-valued");
    if (!h.global_class.i1)
        throw std::domain_error("neg_log: no equivalent additive function, " + h.name +
                                " has (or may have) zero values");
    ArithmeticFunction f;
    f.name = "neg_log:" + h.name;
    f.declared_class = h.declared_class == FnClass::TotallyMultiplicative
                           ? FnClass::TotallyAdditive
                           : FnClass::Additive;
    f.kind = ValueKind::OrderKey;
    f.role = OrderRole::F;
    f.global_class.s0 = f.global_class.a0 = true;
    f.global_class.s = f.global_class.a = h.global_class.i2;
    auto ev = h.eval_fn;
    std::string label = f.name;
    // -ln(h) is strictly decreasing in h, so -h is an order-faithful surrogate.
    f.eval_fn = [ev, label](const Nat& x) {
        return Value::order_key(Rat(-ev(x).exact_value()), label);
    };
    return f;
}

ArithmeticFunction parse_ppv_json(const std::string& spec);

}  // namespace

const std::vector<ArithmeticFunction>& catalog() {
    static const std::vector<ArithmeticFunction> cat = build_catalog();
    return cat;
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> out;
    for (const auto& f : catalog()) out.push_back(f.name);
    out.push_back("chi:K");
    out.push_back("chi_over_x:K");
    out.push_back("exp:F");
    out.push_back("exp_neg:F");
    out.push_back("neg_log:H");
    return out;
}

ArithmeticFunction resolve_function(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') return parse_ppv_json(spec);
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string param = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
    if (colon == std::string::npos) {
        for (const auto& f : catalog())
            if (f.name == spec) return f;
        throw std::invalid_argument("unknown function name: '" + spec + "'");
    }
    if (head == "chi" || head == "chi_over_x") {
        unsigned long k = std::stoul(param);
        return make_chi(k, head == "chi_over_x");
    }
    if (head == "exp" || head == "exp_neg") return make_exp(resolve_function(param), head == "exp_neg");
    if (head == "neg_log") return make_neg_log(resolve_function(param));
    throw std::invalid_argument("unknown function name: '" + spec + "'");
}

namespace {

ArithmeticFunction parse_ppv_json(const std::string& spec) {
    nlohmann::json j = nlohmann::json::parse(spec);
    std::string cls_s = j.at("class").get<std::string>();
    FnClass cls;
    if (cls_s == "multiplicative") cls = FnClass::Multiplicative;
    else if (cls_s == "additive") cls = FnClass::Additive;
    else throw std::invalid_argument("prime-power function class must be multiplicative or additive");
    Nat n = parse_nat(j.at("n").is_string() ? j.at("n").get<std::string>()
                                            : std::to_string(j.at("n").get<long long>()));
    std::map<Nat, Rat> values;
    for (auto& [key, val] : j.at("values").items())
        values[parse_nat(key)] = parse_rat(val.get<std::string>());
    return from_prime_power_values(values, cls, n);
}

}  // namespace

ClassReport classify(const ArithmeticFunction& f, const std::optional<Nat>& n_opt) {
    ClassReport rep;
    rep.global = f.global_class;
    if (!n_opt) return rep;
    const Nat& n = *n_opt;
    if (n < 2) throw std::invalid_argument("classify: n must be >= 2");
    rep.scope_n = n;
    if (f.kind != ValueKind::Exact) return rep;  // surrogate ranges are not literal values

    DivisorSet ds = divisor_set(n);
    std::vector<Rat> vals;
    vals.reserve(ds.divisors.size());
    for (const auto& d : ds.divisors) vals.push_back(f(d).exact_value());

    bool add_law = true, mul_law = true;
    for (size_t i = 0; i < ds.divisors.size(); ++i)
        for (size_t j = i; j < ds.divisors.size(); ++j) {
            const Nat& d1 = ds.divisors[i];
            const Nat& d2 = ds.divisors[j];
            Nat g;
            mpz_gcd(g.get_mpz_t(), d1.get_mpz_t(), d2.get_mpz_t());
            if (g != 1) continue;
            Nat prod = d1 * d2;
            if (!mpz_divisible_p(n.get_mpz_t(), prod.get_mpz_t())) continue;
            Rat vp = f(prod).exact_value();
            if (vp != vals[i] + vals[j]) add_law = false;
            if (vp != vals[i] * vals[j]) mul_law = false;
        }

    bool ge0 = true, gt0_tail = true, ge1 = true, gt1_tail = true, le1 = true, lt1_tail = true;
    bool any_zero = false, all_pos = true;
    for (size_t i = 0; i < ds.divisors.size(); ++i) {
        const Rat& v = vals[i];
        bool is_one_elt = ds.divisors[i] == 1;
        if (v < 0) ge0 = false;
        if (v < 1) ge1 = false;
        if (v > 1) le1 = false;
        if (!is_one_elt) {
            if (v <= 0) gt0_tail = false;
            if (v <= 1) gt1_tail = false;
            if (v >= 1) lt1_tail = false;
        }
        if (v == 0) any_zero = true;
        if (v <= 0) all_pos = false;
    }

    ClassMembership on;
    bool f1_zero = vals.front() == 0;  // divisors sorted, so index 0 is 1
    bool f1_one = vals.front() == 1;
    on.s0 = f1_zero && ge0;
    on.s = on.s0 && gt0_tail;
    on.a0 = add_law && on.s0;
    on.a = on.a0 && gt0_tail;
    on.m0 = mul_law && f1_one && ge1;
    on.m = on.m0 && gt1_tail;
    on.i0 = mul_law && f1_one && ge0 && le1;
    on.i1 = on.i0 && gt0_tail;
    on.i2 = on.i0 && lt1_tail;
    on.i = on.i1 && on.i2;
    rep.on_dn = on;

    if (f.global_class.i0 || on.i0) {
        rep.in_gt0 = all_pos;
        rep.in_eq0 = any_zero;
    }
    return rep;
}

namespace {

bool s0_compatible(const ArithmeticFunction& f) {
    return f.global_class.s0 || is_additive_class(f.declared_class);
}

}  // namespace

ArithmeticFunction pointwise_sum(const ArithmeticFunction& f1, const ArithmeticFunction& f2) {
    if (f1.kind != ValueKind::Exact || f2.kind != ValueKind::Exact)
        throw std::invalid_argument("pointwise_sum: OrderKey operands rejected");
    if (!s0_compatible(f1) || !s0_compatible(f2))
        throw std::invalid_argument("pointwise_sum: operands must be additive or S0");
    ArithmeticFunction out;
    out.name = "(" + f1.name + "+" + f2.name + ")";
    if (f1.declared_class == FnClass::TotallyAdditive && f2.declared_class == FnClass::TotallyAdditive)
        out.declared_class = FnClass::TotallyAdditive;
    else if (is_additive_class(f1.declared_class) && is_additive_class(f2.declared_class))
        out.declared_class = FnClass::Additive;
    else
        out.declared_class = FnClass::Neither;
    out.kind = ValueKind::Exact;
    out.role = OrderRole::F;
    out.global_class.s0 = f1.global_class.s0 && f2.global_class.s0;
    out.global_class.s = out.global_class.s0 && (f1.global_class.s || f2.global_class.s);
    out.global_class.a0 = f1.global_class.a0 && f2.global_class.a0;
    out.global_class.a = out.global_class.a0 && (f1.global_class.a || f2.global_class.a);
    out.delta_safe = f1.delta_safe && f2.delta_safe;
    auto e1 = f1.eval_fn, e2 = f2.eval_fn;
    out.eval_fn = [e1, e2](const Nat& x) {
        return Value::exact(e1(x).exact_value() + e2(x).exact_value());
    };
    return out;
}

ArithmeticFunction pointwise_product(const ArithmeticFunction& g1, const ArithmeticFunction& g2) {
    if (g1.kind != ValueKind::Exact || g2.kind != ValueKind::Exact)
        throw std::invalid_argument("pointwise_product: OrderKey operands rejected");
    bool mult = is_multiplicative_class(g1.declared_class) && is_multiplicative_class(g2.declared_class);
    bool s0 = g1.global_class.s0 && g2.global_class.s0;
    if (!mult && !s0)
        throw std::invalid_argument("pointwise_product: operands must both be multiplicative or both S0");
    ArithmeticFunction out;
    out.name = "(" + g1.name + "*" + g2.name + ")";
    if (mult)
        out.declared_class = (g1.declared_class == FnClass::TotallyMultiplicative &&
                              g2.declared_class == FnClass::TotallyMultiplicative)
                                 ? FnClass::TotallyMultiplicative
                                 : FnClass::Multiplicative;
    else
        out.declared_class = FnClass::Neither;
    out.kind = ValueKind::Exact;
    out.global_class.s0 = s0;
    out.global_class.s = s0 && g1.global_class.s && g2.global_class.s;
    out.global_class.m0 = g1.global_class.m0 && g2.global_class.m0;
    out.global_class.m = out.global_class.m0 && (g1.global_class.m || g2.global_class.m);
    out.global_class.i0 = g1.global_class.i0 && g2.global_class.i0;
    out.global_class.i1 = g1.global_class.i1 && g2.global_class.i1;
    out.global_class.i2 = out.global_class.i0 && (g1.global_class.i2 || g2.global_class.i2);
    out.global_class.i = out.global_class.i1 && out.global_class.i2;
    out.role = out.global_class.i0 ? OrderRole::H : (mult ? OrderRole::G : OrderRole::F);
    out.delta_safe = g1.delta_safe && g2.delta_safe;
    auto e1 = g1.eval_fn, e2 = g2.eval_fn;
    out.eval_fn = [e1, e2](const Nat& x) {
        return Value::exact(e1(x).exact_value() * e2(x).exact_value());
    };
    return out;
}

Triple make_triple(const ArithmeticFunction& h) {
    if (h.kind != ValueKind::Exact) throw std::invalid_argument("make_triple: h must be exact-valued");
    if (!h.global_class.i1)
        throw std::domain_error("make_triple: " + h.name +
                                " is not in I1; a zero value admits no additive or M0 companion");
    Triple t;
    t.h = h;
    t.f = make_neg_log(h);

    ArithmeticFunction g;
    g.name = "recip_of:" + h.name;
    g.declared_class = h.declared_class;
    g.kind = ValueKind::Exact;
    g.role = OrderRole::G;
    g.global_class.m0 = true;
    g.global_class.m = h.global_class.i2;
    auto ev = h.eval_fn;
    std::string hname = h.name;
    g.eval_fn = [ev, hname](const Nat& x) {
        Rat v = ev(x).exact_value();
        if (v == 0)
            throw std::domain_error("make_triple: " + hname + " vanishes at " + x.get_str() +
                                    "; no reciprocal companion");
        return Value::exact(Rat(1) / v);
    };
    t.g = g;
    return t;
}

ArithmeticFunction from_prime_power_values(const std::map<Nat, Rat>& values, FnClass cls,
                                           const Nat& n, const std::string& name) {
    if (n < 2) throw std::invalid_argument("from_prime_power_values: n must be >= 2");
    if (!(cls == FnClass::Multiplicative || cls == FnClass::Additive))
        throw std::invalid_argument("from_prime_power_values: class must be multiplicative or additive");
    DivisorSet ds = divisor_set(n);
    for (const auto& pp : ds.prime_powers)
        if (!values.count(pp))
            throw std::invalid_argument("from_prime_power_values: missing value for prime power " +
                                        pp.get_str());
    for (const auto& [k, v] : values) {
        if (std::find(ds.prime_powers.begin(), ds.prime_powers.end(), k) == ds.prime_powers.end())
            throw std::invalid_argument("from_prime_power_values: " + k.get_str() +
                                        " is not a prime power dividing " + n.get_str());
        if (v < 0)
            throw std::invalid_argument("from_prime_power_values: negative value at " + k.get_str());
    }

    ArithmeticFunction f;
    f.name = name.empty() ? ("ppv:" + n.get_str()) : name;
    f.declared_class = cls;
    f.kind = ValueKind::Exact;
    bool mult = cls == FnClass::Multiplicative;

    bool all_pos = true, all_le1 = true, all_lt1 = true, all_ge1 = true, all_gt1 = true;
    for (const auto& [k, v] : values) {
        if (v <= 0) all_pos = false;
        if (v > 1) all_le1 = false;
        if (v >= 1) all_lt1 = false;
        if (v < 1) all_ge1 = false;
        if (v <= 1) all_gt1 = false;
    }
    if (mult) {
        f.global_class.m0 = all_ge1;
        f.global_class.m = all_gt1;
        f.global_class.i0 = all_le1;
        f.global_class.i1 = all_le1 && all_pos;
        f.global_class.i2 = all_le1 && all_lt1;
        f.global_class.i = f.global_class.i1 && f.global_class.i2;
        f.role = f.global_class.i0 ? OrderRole::H : OrderRole::G;
    } else {
        f.global_class.s0 = f.global_class.a0 = true;
        f.global_class.s = f.global_class.a = all_pos;
        f.role = OrderRole::F;
    }

    // exponent-sequence condition per prime: monotone and sub-/super-
    // multiplicative, which is what makes the coprime-reduced forms sound
    f.delta_safe = true;
    for (const auto& pp : factorize(n).pairs) {
        std::vector<Rat> seq{mult ? Rat(1) : Rat(0)};  // value at p^0
        Nat q = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            q *= pp.prime;
            seq.push_back(values.at(q));
        }
        for (unsigned i = 1; i < seq.size() && f.delta_safe; ++i) {
            if (mult ? seq[i] > seq[i - 1] : seq[i] < seq[i - 1]) f.delta_safe = false;
            for (unsigned j = 1; i + j < seq.size(); ++j)
                if (mult ? seq[i + j] < seq[i] * seq[j] : seq[i + j] > seq[i] + seq[j])
                    f.delta_safe = false;
        }
    }

    Nat modulus = n;
    auto vals = values;
    f.eval_fn = [vals, mult, modulus](const Nat& x) {
        if (!mpz_divisible_p(modulus.get_mpz_t(), x.get_mpz_t()))
            throw std::domain_error("prime-power-defined function is undefined off D_" +
                                    modulus.get_str() + " (argument " + x.get_str() + ")");
        Factorization fac = factorize(x);
        Rat acc = mult ? Rat(1) : Rat(0);
        for (const auto& pp : fac.pairs) {
            Nat q;
            mpz_pow_ui(q.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
            const Rat& v = vals.at(q);
            if (mult)
                acc *= v;
            else
                acc += v;
        }
        return Value::exact(acc);
    };
    return f;
}

}  // namespace divmet
