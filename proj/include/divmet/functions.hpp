#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divmet/factor.hpp"
#include "divmet/value.hpp"

namespace divmet {

enum class FnClass { Additive, TotallyAdditive, Multiplicative, TotallyMultiplicative, Neither };

bool is_additive_class(FnClass c);
bool is_multiplicative_class(FnClass c);
std::string fn_class_str(FnClass c);

// Which admissible family a function's values track. Determines the
// orientation of preorder keys for OrderKey surrogates (an H-role surrogate
// orders like h, but the induced preorder orders like 1-h).
enum class OrderRole { F, G, H };

// Membership flags for the admissible classes. S0 = {f(1)=0, f>=0};
// A0/A additive, M0/M multiplicative >=1/>1, I0..I inverse multiplicative.
struct ClassMembership {
    bool s0 = false, s = false;
    bool a0 = false, a = false;
    bool m0 = false, m = false;
    bool i0 = false, i1 = false, i2 = false, i = false;

    std::vector<std::string> names() const;
};

// Modulus-relative classes of I0 functions: h > 0 everywhere on D_n, or
// h = 0 somewhere on D_n.
struct ClassReport {
    ClassMembership global;                   // from catalog metadata
    std::optional<ClassMembership> on_dn;     // verified exhaustively on D_n
    bool in_gt0 = false;                      // h in I^(n)_{>0}
    bool in_eq0 = false;                      // h in I^(n)_{=0}
    Nat scope_n = 0;                          // 0 when no modulus supplied
};

struct ArithmeticFunction {
    std::string name;  // includes parameter, e.g. "chi:6"
    FnClass declared_class = FnClass::Neither;
    ValueKind kind = ValueKind::Exact;
    OrderRole role = OrderRole::F;
    ClassMembership global_class;
    std::function<Value(const Nat&)> eval_fn;
    int scan_id = -1;                // dispatch id for the u64 scanner fast path, -1 if unsupported
    unsigned long scan_param = 0;    // parameter for the fast path (chi modulus)
    // The prime-power values are monotone and sub-/super-multiplicative in
    // the exponent (f(p^{i+j}) <= f(p^i)+f(p^j) additively, h(p^{i+j}) >=
    // h(p^i)h(p^j) multiplicatively). Under this condition the coprime-
    // reduced distances decompose per prime into a weighted L1 distance on
    // exponent vectors, which makes their triangle inequality provable; the
    // general claim fails (sigma/x^2 violates it on D_4).
    bool delta_safe = false;

    Value operator()(const Nat& x) const;
};

// Built-in catalog. Parameterized entries are instantiated by resolve():
//   chi:K, chi_over_x:K          principal Dirichlet character of modulus K
//   exp:F, exp_neg:F             OrderKey e^{f} / e^{-f} for an additive F
//   neg_log:H                    OrderKey -ln(h) for an I1 function H
// A leading '{' resolves a prime-power-defined function from JSON
// {"class": "multiplicative"|"additive", "values": {"2": "1/2", ...}, "n": N}.
const std::vector<ArithmeticFunction>& catalog();
ArithmeticFunction resolve_function(const std::string& spec);
std::vector<std::string> catalog_names();

ClassReport classify(const ArithmeticFunction& f, const std::optional<Nat>& n = std::nullopt);

// Pointwise sum/product. Sum requires two S0-compatible functions (additive
// classes preserved); product requires two multiplicative ones or two S0
// ones. OrderKey operands are rejected.
ArithmeticFunction pointwise_sum(const ArithmeticFunction& f1, const ArithmeticFunction& f2);
ArithmeticFunction pointwise_product(const ArithmeticFunction& g1, const ArithmeticFunction& g2);

// The triple (f, g, h) of Cor. equivalent preorders: f = -ln(h) as an
// OrderKey, g = 1/h exact. h must be positive on the evaluation range;
// a zero value of h is rejected when g or f is evaluated there.
struct Triple {
    ArithmeticFunction f, g, h;
};
Triple make_triple(const ArithmeticFunction& h);

// Multiplicative or additive extension of values given on all of P*_n.
// Defined on D_n only; evaluation off D_n is rejected.
ArithmeticFunction from_prime_power_values(const std::map<Nat, Rat>& values, FnClass cls,
                                           const Nat& n, const std::string& name = {});

}  // namespace divmet
