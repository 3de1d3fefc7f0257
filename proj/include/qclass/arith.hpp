#pragma once

// Exact integer kernels: floor square root, floored residue, Kronecker
// symbol, deterministic primality and overflow-checked 128-bit helpers.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace qclass {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

/// Raised when an exactness assertion inside a formula fails. Never expected
/// for valid input; firing means an arithmetic bug.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

template <class T>
inline constexpr bool is_wide_unsigned_v =
    std::is_same_v<T, u128> || (std::is_integral_v<T> && std::is_unsigned_v<T>);

template <class T>
constexpr int bit_length(T x) noexcept {
    int bits = 0;
    while (x != 0) {
        x >>= 1;
        ++bits;
    }
    return bits;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Checked arithmetic on i128. Formula intermediates go through these so an
// out-of-range input fails loudly instead of wrapping.
// ---------------------------------------------------------------------------

inline i128 checked_add(i128 a, i128 b) {
    i128 out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("overflow in addition");
    return out;
}

inline i128 checked_sub(i128 a, i128 b) {
    i128 out;
    if (__builtin_sub_overflow(a, b, &out)) throw std::overflow_error("overflow in subtraction");
    return out;
}

inline i128 checked_mul(i128 a, i128 b) {
    i128 out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("overflow in multiplication");
    return out;
}

/// a / b, throwing InvariantError unless b divides a exactly.
inline i128 exact_div(i128 a, i128 b, const char* what) {
    if (b == 0 || a % b != 0) throw InvariantError(std::string("inexact division: ") + what);
    return a / b;
}

/// Narrow an i128 result to i64, throwing on overflow.
inline i64 narrow(i128 v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw std::overflow_error("value does not fit in 64 bits");
    return static_cast<i64>(v);
}

inline std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 mag = neg ? u128(0) - static_cast<u128>(v) : static_cast<u128>(v);
    std::string out;
    while (mag != 0) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(mag % 10)));
        mag /= 10;
    }
    if (neg) out.insert(out.begin(), '-');
    return out;
}

// ---------------------------------------------------------------------------
// Integer square root
// ---------------------------------------------------------------------------

/// floor(sqrt(x)) by Newton iteration on integers. Works for every unsigned
/// type up to 128 bits.
template <class U>
    requires detail::is_wide_unsigned_v<U>
constexpr U isqrt(U x) noexcept {
    if (x < 2) return x;
    // Initial guess 2^ceil(bits/2) is >= sqrt(x), so the iteration decreases
    // monotonically to the floor.
    U guess = U(1) << ((detail::bit_length(x) + 1) / 2);
    for (;;) {
        U next = (guess + x / guess) >> 1;
        if (next >= guess) return guess;
        guess = next;
    }
}

/// Signed front end; negative input is a domain error.
template <class S>
    requires(std::is_same_v<S, i128> || (std::is_integral_v<S> && std::is_signed_v<S>))
constexpr S isqrt(S x) {
    if (x < 0) throw std::domain_error("isqrt of negative value");
    using U = std::conditional_t<std::is_same_v<S, i128>, u128, std::make_unsigned_t<S>>;
    return static_cast<S>(isqrt(static_cast<U>(x)));
}

// ---------------------------------------------------------------------------
// Floored residue
// ---------------------------------------------------------------------------

struct ResidueDecomposition {
    i128 quotient = 0;
    i128 remainder = 0;

    friend bool operator==(const ResidueDecomposition&, const ResidueDecomposition&) = default;
};

/// x = quotient * q + remainder with 0 <= remainder < q (floored division).
constexpr ResidueDecomposition residue(i128 x, i128 q) {
    if (q <= 0) throw std::domain_error("residue modulus must be positive");
    i128 quot = x / q;
    i128 rem = x % q;
    if (rem < 0) {
        rem += q;
        --quot;
    }
    return {quot, rem};
}

/// floor(x / q) for q > 0.
constexpr i128 floor_div(i128 x, i128 q) { return residue(x, q).quotient; }

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

namespace detail {

constexpr u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 pow_mod(u64 base, u64 exp, u64 m) noexcept {
    u64 result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

constexpr bool strong_probable_prime(u64 n, u64 a, u64 d, int s) noexcept {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace detail

/// Deterministic Miller-Rabin. The first twelve prime bases are a proven
/// witness set for every n < 3.3e24, which covers all of u64.
constexpr bool is_prime(u64 n) noexcept {
    constexpr u64 bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (u64 b : bases) {
        if (n % b == 0) return n == b;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 b : bases) {
        if (!detail::strong_probable_prime(n, b, d, s)) return false;
    }
    return true;
}

constexpr bool is_prime(i64 n) noexcept { return n >= 2 && is_prime(static_cast<u64>(n)); }

// ---------------------------------------------------------------------------
// Kronecker symbol
// ---------------------------------------------------------------------------

/// A value in {-1, 0, 1}.
class KroneckerValue {
public:
    constexpr KroneckerValue() = default;
    constexpr explicit KroneckerValue(int v) : value_(v) {
        if (v < -1 || v > 1) throw std::domain_error("Kronecker value out of range");
    }
    constexpr int value() const noexcept { return value_; }
    constexpr operator int() const noexcept { return value_; }

private:
    int value_ = 0;
};

/// The Kronecker symbol (a/b) for arbitrary integers, including b = 0 and
/// negative b.
constexpr KroneckerValue kronecker(i64 a_in, i64 b_in) {
    i128 a = a_in;
    i128 b = b_in;
    if (b == 0) return KroneckerValue((a == 1 || a == -1) ? 1 : 0);
    if ((a & 1) == 0 && (b & 1) == 0) return KroneckerValue(0);

    int result = 1;
    // (a/2)^v
    int v = 0;
    while ((b & 1) == 0) {
        b >>= 1;
        ++v;
    }
    if (v & 1) {
        int a8 = static_cast<int>(a & 7);
        if (a8 == 3 || a8 == 5) result = -result;
    }
    // (a/-1) is -1 exactly when a < 0.
    if (b < 0) {
        b = -b;
        if (a < 0) result = -result;
    }

    // b is now odd and positive: Jacobi symbol on machine words.
    u64 bj = static_cast<u64>(b);
    u64 aj = a >= 0 ? static_cast<u64>(a) % bj : (bj - static_cast<u64>(-a) % bj) % bj;
    while (aj != 0) {
        while ((aj & 1) == 0) {
            aj >>= 1;
            u64 b8 = bj & 7;
            if (b8 == 3 || b8 == 5) result = -result;
        }
        u64 t = aj;
        aj = bj;
        bj = t;
        if ((aj & 3) == 3 && (bj & 3) == 3) result = -result;
        aj %= bj;
    }
    return KroneckerValue(bj == 1 ? result : 0);
}

} // namespace qclass
