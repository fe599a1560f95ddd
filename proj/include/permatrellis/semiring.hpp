#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>

#include "scalar.hpp"

namespace permatrellis {

/// Instrumented operation tallies. Under min-plus, the semiring "add" is a
/// comparison and the semiring "mul" is a scalar addition, matching the
/// Held-Karp accounting.
struct OpCounter {
    std::uint64_t mults = 0;
    std::uint64_t adds = 0;
    std::uint64_t comparisons = 0;

    void reset() { mults = adds = comparisons = 0; }
    OpCounter& operator+=(const OpCounter& o) {
        mults += o.mults;
        adds += o.adds;
        comparisons += o.comparisons;
        return *this;
    }
    friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

enum class SemiringKind { SumProductExact, SumProductFloat, MinPlus };

struct SumProductExact {
    using Value = Rational;
    static constexpr SemiringKind kind = SemiringKind::SumProductExact;
    static Value zero() { return Rational(0); }
    static Value one() { return Rational(1); }
    static Value add(const Value& x, const Value& y) { return x + y; }
    static Value mul(const Value& x, const Value& y) { return x * y; }
};

struct SumProductFloat {
    using Value = double;
    static constexpr SemiringKind kind = SemiringKind::SumProductFloat;
    static Value zero() { return 0.0; }
    static Value one() { return 1.0; }
    static Value add(Value x, Value y) { return x + y; }
    static Value mul(Value x, Value y) { return x * y; }
};

/// Tropical semiring: "add" = min, "mul" = +, zero = +inf, one = 0.
/// Ties under min are broken by the first operand (first encountered wins).
struct MinPlus {
    using Value = double;
    static constexpr SemiringKind kind = SemiringKind::MinPlus;
    static Value zero() { return std::numeric_limits<double>::infinity(); }
    static Value one() { return 0.0; }
    static Value add(Value x, Value y) { return y < x ? y : x; }
    static Value mul(Value x, Value y) { return x + y; }
};

template <typename S>
typename S::Value counted_add(OpCounter& ctr, const typename S::Value& x,
                              const typename S::Value& y) {
    if constexpr (S::kind == SemiringKind::MinPlus)
        ++ctr.comparisons;
    else
        ++ctr.adds;
    return S::add(x, y);
}

template <typename S>
typename S::Value counted_mul(OpCounter& ctr, const typename S::Value& x,
                              const typename S::Value& y) {
    if constexpr (S::kind == SemiringKind::MinPlus)
        ++ctr.adds;
    else
        ++ctr.mults;
    return S::mul(x, y);
}

// Semiring selection by scalar type (sum-product side only).
template <typename V>
struct SumProductFor;
template <>
struct SumProductFor<Rational> {
    using type = SumProductExact;
};
template <>
struct SumProductFor<double> {
    using type = SumProductFloat;
};

}  // namespace permatrellis
