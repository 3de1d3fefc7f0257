#pragma once

// Exact comparisons between numbers of the form (offset + sqrt(radicand)) / denom.
// Every boundary point the class-number formulas care about (sqrt(m p) and
// 1/2 + 1/2 sqrt(4 m p + 3 p - 4)) has this shape, so interval membership can
// be decided with integer arithmetic alone.

#include <compare>

#include "qclass/arith.hpp"

namespace qclass {

struct QuadraticSurd {
    i128 offset = 0;
    i128 radicand = 0;  // >= 0
    i128 denom = 1;     // > 0

    static constexpr QuadraticSurd integer(i128 k) { return {k, 0, 1}; }
    static constexpr QuadraticSurd root(i128 x) { return {0, x, 1}; }
};

namespace detail {

// sign(c * sqrt(x) - t) for c >= 0, x >= 0.
inline int sign_scaled_root_minus(i128 c, i128 x, i128 t) {
    if (c == 0 || x == 0) return t > 0 ? -1 : (t < 0 ? 1 : 0);
    if (t < 0) return 1;
    i128 lhs = checked_mul(checked_mul(c, c), x);
    i128 rhs = checked_mul(t, t);
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

// sign((d + sqrt(x)) - sqrt(y)) for integers d and x, y >= 0.
inline int sign_shifted_root_diff(i128 d, i128 x, i128 y) {
    // t = y - x - d^2; squaring both (non-negative) sides reduces the question
    // to the sign of 2 d sqrt(x) - t.
    if (d >= 0) {
        i128 t = checked_sub(checked_sub(y, x), checked_mul(d, d));
        return sign_scaled_root_minus(checked_mul(2, d), x, t);
    }
    // d < 0: if d + sqrt(x) < 0 the left side is negative outright.
    if (x < checked_mul(d, d)) return -1;
    i128 t = checked_sub(checked_sub(y, x), checked_mul(d, d));
    // sign(2 d sqrt(x) - t) == -sign(2|d| sqrt(x) + t)
    if (t >= 0) return (t == 0 && x == 0) ? 0 : -1;
    return -sign_scaled_root_minus(checked_mul(2, -d), x, -t);
}

} // namespace detail

/// Three-way exact comparison.
inline std::strong_ordering compare(const QuadraticSurd& a, const QuadraticSurd& b) {
    if (a.radicand < 0 || b.radicand < 0 || a.denom <= 0 || b.denom <= 0)
        throw std::domain_error("malformed surd");
    // Cross-multiply by the positive denominators.
    i128 lhs_off = checked_mul(a.offset, b.denom);
    i128 rhs_off = checked_mul(b.offset, a.denom);
    i128 lhs_rad = checked_mul(checked_mul(b.denom, b.denom), a.radicand);
    i128 rhs_rad = checked_mul(checked_mul(a.denom, a.denom), b.radicand);
    int s = detail::sign_shifted_root_diff(checked_sub(lhs_off, rhs_off), lhs_rad, rhs_rad);
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

inline bool operator<(const QuadraticSurd& a, const QuadraticSurd& b) { return compare(a, b) < 0; }
inline bool operator<=(const QuadraticSurd& a, const QuadraticSurd& b) { return compare(a, b) <= 0; }
inline bool operator>(const QuadraticSurd& a, const QuadraticSurd& b) { return compare(a, b) > 0; }
inline bool operator>=(const QuadraticSurd& a, const QuadraticSurd& b) { return compare(a, b) >= 0; }
inline bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) { return compare(a, b) == 0; }

inline bool operator<(const QuadraticSurd& a, i128 k) { return a < QuadraticSurd::integer(k); }
inline bool operator<(i128 k, const QuadraticSurd& a) { return QuadraticSurd::integer(k) < a; }
inline bool operator==(const QuadraticSurd& a, i128 k) { return a == QuadraticSurd::integer(k); }

/// floor((offset + sqrt(radicand)) / denom). Uses floor((a + y) / c) ==
/// floor((a + floor(y)) / c) for integer a and positive integer c.
inline i128 floor(const QuadraticSurd& s) {
    return floor_div(checked_add(s.offset, isqrt(s.radicand)), s.denom);
}

/// Open interval membership lo < k < hi.
inline bool strictly_between(const QuadraticSurd& lo, i128 k, const QuadraticSurd& hi) {
    return lo < k && k < hi;
}

// ---------------------------------------------------------------------------
// Counting integers in intervals with rational endpoints num/den.
// ---------------------------------------------------------------------------

struct Rational {
    i128 num = 0;
    i128 den = 1;  // > 0
};

inline i128 floor(const Rational& r) { return floor_div(r.num, r.den); }

inline bool is_integral(const Rational& r) { return residue(r.num, r.den).remainder == 0; }

/// |{k in Z : x < k <= y}| for x <= y.
inline i128 count_half_open(const Rational& x, const Rational& y) { return floor(y) - floor(x); }

/// |{k in Z : x < k < y}| for x <= y; y must not be an integer.
inline i128 count_open(const Rational& x, const Rational& y) {
    if (is_integral(y)) throw std::domain_error("open count requires a non-integral upper end");
    return floor(y) - floor(x);
}

} // namespace qclass
