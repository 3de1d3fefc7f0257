#pragma once

// Quadratic-residue machinery for primes p = 4n - 1: the prime context, the
// boundary floors floor(sqrt(m p)) and floor(1/2 + 1/2 sqrt(4 m p + 3 p - 4)),
// the paired residue closed form, and three routes to sum_{k<p} (k^2 mod p).

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qclass/arith.hpp"
#include "qclass/surd.hpp"

namespace qclass {

/// Rejection of an input that is not a prime p = 4n - 1 >= 7.
class InvalidPrime : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// p = 16k + c. Determined by n mod 4.
enum class ResidueClass { minus1, plus3, plus7, plus11 };

constexpr std::string_view to_string(ResidueClass c) noexcept {
    switch (c) {
    case ResidueClass::minus1: return "16k-1";
    case ResidueClass::plus3: return "16k+3";
    case ResidueClass::plus7: return "16k+7";
    case ResidueClass::plus11: return "16k+11";
    }
    return "?";
}

constexpr i64 class_offset(ResidueClass c) noexcept {
    switch (c) {
    case ResidueClass::minus1: return -1;
    case ResidueClass::plus3: return 3;
    case ResidueClass::plus7: return 7;
    case ResidueClass::plus11: return 11;
    }
    return 0;
}

/// A validated prime p = 4n - 1 >= 7 and the quantities derived from it.
struct PrimeContext {
    i64 p = 0;
    i64 n = 0;
    i64 m_max = 0;             ///< floor(n^2 / p), the last boundary index
    ResidueClass residue_class = ResidueClass::minus1;
    i64 class_k = 0;           ///< p == 16 * class_k + class_offset(residue_class)
    i64 n_sq_residue = 0;      ///< n^2 mod p

    friend bool operator==(const PrimeContext&, const PrimeContext&) = default;
};

/// Residue of n^2 read off the n mod 4 table: M, 5M+1, 9M+4, 13M+9.
constexpr i128 tabulated_n_sq_residue(i128 n, i128 m_max) {
    switch (static_cast<int>(n % 4)) {
    case 0: return m_max;
    case 1: return 5 * m_max + 1;
    case 2: return 9 * m_max + 4;
    default: return 13 * m_max + 9;
    }
}

inline PrimeContext make_context(i64 p) {
    if (p < 2 || !is_prime(p)) throw InvalidPrime("p = " + std::to_string(p) + " is not prime");
    if (p % 4 == 1) throw InvalidPrime("p ≡ 1 (mod 4) not supported");
    if (p % 4 != 3) throw InvalidPrime("p = " + std::to_string(p) + " is not of the form 4n-1");
    if (p < 7) throw InvalidPrime("p = 3 is excluded (n must exceed 1)");

    PrimeContext ctx;
    ctx.p = p;
    ctx.n = (p + 1) / 4;
    i128 n_sq = i128(ctx.n) * ctx.n;
    auto dec = residue(n_sq, p);
    ctx.m_max = narrow(dec.quotient);
    ctx.n_sq_residue = narrow(dec.remainder);

    if (ctx.m_max != ctx.n / 4) throw InvariantError("floor(n^2/p) != floor(n/4)");
    if (tabulated_n_sq_residue(ctx.n, ctx.m_max) != ctx.n_sq_residue)
        throw InvariantError("n^2 mod p disagrees with the n mod 4 table");

    switch (ctx.n % 4) {
    case 0: ctx.residue_class = ResidueClass::minus1; break;
    case 1: ctx.residue_class = ResidueClass::plus3; break;
    case 2: ctx.residue_class = ResidueClass::plus7; break;
    default: ctx.residue_class = ResidueClass::plus11; break;
    }
    ctx.class_k = (p - class_offset(ctx.residue_class)) / 16;
    if (ctx.class_k != ctx.m_max) throw InvariantError("class index differs from floor(n^2/p)");
    return ctx;
}

// ---------------------------------------------------------------------------
// Boundary points
// ---------------------------------------------------------------------------

/// sqrt(m p) as an exact surd.
inline QuadraticSurd rm_value(const PrimeContext& ctx, i64 m) {
    if (m < 0) throw std::domain_error("boundary index must be non-negative");
    return QuadraticSurd::root(checked_mul(m, ctx.p));
}

/// 1/2 + 1/2 sqrt(4 m p + 3 p - 4) as an exact surd.
inline QuadraticSurd qm_value(const PrimeContext& ctx, i64 m) {
    if (m < 0) throw std::domain_error("boundary index must be non-negative");
    i128 disc = checked_sub(checked_add(checked_mul(checked_mul(4, m), ctx.p), checked_mul(3, ctx.p)), 4);
    return {1, disc, 2};
}

inline i64 rm_floor(const PrimeContext& ctx, i64 m) {
    if (m < 0) throw std::domain_error("boundary index must be non-negative");
    return narrow(isqrt(checked_mul(m, ctx.p)));
}

inline i64 qm_floor(const PrimeContext& ctx, i64 m) {
    if (m < 0) throw std::domain_error("boundary index must be non-negative");
    i128 disc = checked_sub(checked_add(checked_mul(checked_mul(4, m), ctx.p), checked_mul(3, ctx.p)), 4);
    return narrow((1 + isqrt(disc)) / 2);
}

/// Floors of both boundary sequences for one prime, materialized once.
struct BoundarySequence {
    PrimeContext ctx;
    std::vector<i64> rm_floors;  ///< m = 0 .. M+1
    std::vector<i64> qm_floors;  ///< m = 0 .. M
};

inline BoundarySequence boundary_sequence(const PrimeContext& ctx) {
    BoundarySequence seq{ctx, {}, {}};
    seq.rm_floors.reserve(static_cast<std::size_t>(ctx.m_max) + 2);
    seq.qm_floors.reserve(static_cast<std::size_t>(ctx.m_max) + 1);
    for (i64 m = 0; m <= ctx.m_max + 1; ++m) seq.rm_floors.push_back(rm_floor(ctx, m));
    for (i64 m = 0; m <= ctx.m_max; ++m) seq.qm_floors.push_back(qm_floor(ctx, m));
    return seq;
}

// ---------------------------------------------------------------------------
// Paired residues
// ---------------------------------------------------------------------------

/// (k^2 mod p) + ((2n-k)^2 mod p) for 0 <= k <= n, by the piecewise closed
/// form in m = floor(k^2 / p). The branch test is an integer inequality.
inline i128 paired_residue_sum(const PrimeContext& ctx, i64 k) {
    if (k < 0 || k > ctx.n) throw std::domain_error("k must lie in [0, n]");
    const i128 p = ctx.p;
    const i128 k_sq = i128(k) * k;
    const i128 m = k_sq / p;
    const i128 base = 2 * k_sq - k + ctx.n;
    if (k_sq - k <= (m + 1) * p - ctx.n - 1) return base - 2 * m * p;
    return base - (2 * m + 1) * p;
}

// ---------------------------------------------------------------------------
// Sum of quadratic residues
// ---------------------------------------------------------------------------

enum class SumMethod { bruteforce, closed_form, floor_sums };

constexpr std::string_view to_string(SumMethod m) noexcept {
    switch (m) {
    case SumMethod::bruteforce: return "bruteforce";
    case SumMethod::closed_form: return "closed-form";
    case SumMethod::floor_sums: return "floor-sums";
    }
    return "?";
}

struct ResidueSumResult {
    i64 p = 0;
    i128 total = 0;  ///< sum_{k=1}^{p-1} (k^2 mod p)
    SumMethod method = SumMethod::bruteforce;
};

/// Direct summation for any odd prime. k^2 mod p is carried incrementally
/// ((k+1)^2 = k^2 + 2k + 1) over the half range; k and p-k share a residue.
inline ResidueSumResult sum_qr_bruteforce(i64 p) {
    if (p < 3 || !is_prime(p)) throw InvalidPrime("p = " + std::to_string(p) + " is not an odd prime");
    const u64 up = static_cast<u64>(p);
    const u64 half = (up - 1) / 2;
    u64 sq = 0;
    u128 half_sum = 0;
    for (u64 k = 1; k <= half; ++k) {
        sq += 2 * k - 1;  // 2k - 1 < p, so one subtraction restores sq < p
        if (sq >= up) sq -= up;
        half_sum += sq;
    }
    return {p, static_cast<i128>(2 * half_sum), SumMethod::bruteforce};
}

/// Closed form built from the boundary floors: the half sum equals
/// (4n^3+3n^2-n)/6 - M p (2n - 1 - 2 floor(Q_{M-1}))
///   - p sum_{m<M} (2m+1)(floor(R_{m+1}) - floor(Q_m))
///   - 2p sum_{m<M} m (floor(Q_m) - floor(R_m)).
inline ResidueSumResult sum_qr_closed_form(const BoundarySequence& seq) {
    const auto& ctx = seq.ctx;
    const i128 p = ctx.p;
    const i128 n = ctx.n;
    const i64 top = ctx.m_max;

    i128 cubic = checked_add(checked_mul(checked_mul(4, n), checked_mul(n, n)), checked_mul(3, checked_mul(n, n)));
    cubic = checked_sub(cubic, n);
    i128 half = exact_div(cubic, 6, "(4n^3+3n^2-n)/6");

    if (top > 0) {
        i128 q_prev = seq.qm_floors[static_cast<std::size_t>(top - 1)];
        half = checked_sub(half, checked_mul(checked_mul(top, p), 2 * n - 1 - 2 * q_prev));
    }
    i128 odd_part = 0;
    i128 even_part = 0;
    for (i64 m = 0; m < top; ++m) {
        const auto idx = static_cast<std::size_t>(m);
        odd_part = checked_add(odd_part, i128(2 * m + 1) * (seq.rm_floors[idx + 1] - seq.qm_floors[idx]));
        even_part = checked_add(even_part, i128(m) * (seq.qm_floors[idx] - seq.rm_floors[idx]));
    }
    half = checked_sub(half, checked_mul(p, odd_part));
    half = checked_sub(half, checked_mul(2 * p, even_part));
    return {ctx.p, checked_mul(2, half), SumMethod::closed_form};
}

inline ResidueSumResult sum_qr_closed_form(const PrimeContext& ctx) {
    return sum_qr_closed_form(boundary_sequence(ctx));
}

/// sum_{m<=M} floor(R_m) + sum_{m<M} floor(Q_m).
inline i128 floor_total(const BoundarySequence& seq, i64 upto) {
    i128 total = 0;
    for (i64 m = 0; m <= upto; ++m) total = checked_add(total, seq.rm_floors[static_cast<std::size_t>(m)]);
    for (i64 m = 0; m < upto; ++m) total = checked_add(total, seq.qm_floors[static_cast<std::size_t>(m)]);
    return total;
}

/// Half sum = p (sum floor(R_m) + sum floor(Q_m)) - M p (2n-1) + p (n^2+n) / 6.
inline ResidueSumResult sum_qr_floor_sums(const BoundarySequence& seq) {
    const auto& ctx = seq.ctx;
    const i128 p = ctx.p;
    const i128 n = ctx.n;
    i128 half = checked_mul(p, floor_total(seq, ctx.m_max));
    half = checked_sub(half, checked_mul(checked_mul(ctx.m_max, p), 2 * n - 1));
    half = checked_add(half, exact_div(checked_mul(p, checked_add(checked_mul(n, n), n)), 6, "p(n^2+n)/6"));
    return {ctx.p, checked_mul(2, half), SumMethod::floor_sums};
}

inline ResidueSumResult sum_qr_floor_sums(const PrimeContext& ctx) {
    return sum_qr_floor_sums(boundary_sequence(ctx));
}

} // namespace qclass
