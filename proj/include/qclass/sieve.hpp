#pragma once

// Prime enumeration over [lo, hi]: segmented sieve of Eratosthenes, or
// per-number Miller-Rabin when the range is too sparse to pay for sieving.

#include <algorithm>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "qclass/arith.hpp"

namespace qclass {

namespace detail {

inline std::vector<i64> small_primes_upto(i64 limit) {
    std::vector<i64> out;
    if (limit < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (i64 i = 2; i <= limit; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

// A void callback always continues; a bool callback stops on false.
template <class Fn>
bool call_continue(Fn& fn, i64 x) {
    if constexpr (std::is_void_v<std::invoke_result_t<Fn&, i64>>) {
        fn(x);
        return true;
    } else {
        return static_cast<bool>(fn(x));
    }
}

} // namespace detail

/// Calls fn(p) for every prime p in [lo, hi] in ascending order. A callback
/// returning bool can stop the enumeration by returning false.
template <class Fn>
void for_each_prime(i64 lo, i64 hi, Fn&& fn) {
    lo = std::max<i64>(lo, 2);
    if (hi < lo) return;

    const i64 root = isqrt(hi);
    const i64 span = hi - lo + 1;
    if (span < root) {
        for (i64 x = lo; x <= hi; ++x)
            if (is_prime(x) && !detail::call_continue(fn, x)) return;
        return;
    }

    const auto base = detail::small_primes_upto(root);
    constexpr i64 segment = i64(1) << 18;
    std::vector<char> marks;
    for (i64 start = lo; start <= hi; start += segment) {
        const i64 stop = hi - start < segment ? hi : start + segment - 1;
        marks.assign(static_cast<std::size_t>(stop - start + 1), 1);
        for (i64 q : base) {
            if (q * q > stop) break;
            i64 first = std::max(q * q, (start + q - 1) / q * q);
            for (i64 j = first; j <= stop; j += q) marks[static_cast<std::size_t>(j - start)] = 0;
        }
        for (i64 x = start; x <= stop; ++x)
            if (marks[static_cast<std::size_t>(x - start)] && !detail::call_continue(fn, x)) return;
        if (stop == hi) break;
    }
}

inline std::vector<i64> primes_in_range(i64 lo, i64 hi) {
    std::vector<i64> out;
    for_each_prime(lo, hi, [&](i64 p) { out.push_back(p); });
    return out;
}

/// Primes p = 3 (mod 4) with 7 <= p, inside [lo, hi].
inline std::vector<i64> class_primes_in_range(i64 lo, i64 hi) {
    std::vector<i64> out;
    for_each_prime(std::max<i64>(lo, 7), hi, [&](i64 p) {
        if (p % 4 == 3) out.push_back(p);
    });
    return out;
}

} // namespace qclass
