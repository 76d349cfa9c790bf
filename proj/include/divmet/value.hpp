#pragma once

#include <stdexcept>
#include <string>

#include "divmet/rational.hpp"

namespace divmet {

enum class ValueKind { Exact, OrderKey };

// Codomain of arithmetic functions. Exact values are rationals and may enter
// distance arithmetic. OrderKey values are exact rational surrogates for
// irrational-valued functions (log x, e^{±f}, -ln h): their comparisons
// provably match the real function's comparisons (monotone transform), but
// they never participate in sums or products.
struct Value {
    ValueKind kind = ValueKind::Exact;
    Rat key;            // the value itself, or the comparison surrogate
    std::string label;  // OrderKey provenance, empty for Exact

    static Value exact(Rat q) { return Value{ValueKind::Exact, std::move(q), {}}; }
    static Value order_key(Rat k, std::string lbl) {
        return Value{ValueKind::OrderKey, std::move(k), std::move(lbl)};
    }

    const Rat& exact_value() const {
        if (kind != ValueKind::Exact)
            throw std::domain_error("OrderKey value used in an arithmetic context (" + label + ")");
        return key;
    }

    friend bool operator==(const Value& a, const Value& b) { return a.key == b.key; }
    friend bool operator<(const Value& a, const Value& b) { return a.key < b.key; }
    friend bool operator<=(const Value& a, const Value& b) { return a.key <= b.key; }
};

}  // namespace divmet
