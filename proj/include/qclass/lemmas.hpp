#pragma once

// Checkable statements about the boundary points R_m = sqrt(m p) and
// Q_m = 1/2 + 1/2 sqrt(4 m p + 3 p - 4) around n, and about r = n^2 mod p.
// Each predicate is decided exactly with surd comparisons. The class-number
// formulas depend on all of them, so they double as regression checks.

#include <string>
#include <vector>

#include "qclass/qres.hpp"
#include "qclass/surd.hpp"

namespace qclass::lemmas {

// ---------------------------------------------------------------------------
// Alternative routes to the paired residue sum
// ---------------------------------------------------------------------------

/// Paired sum from r = k^2 mod p: 2r - k + n when k >= r - 3n + 2,
/// otherwise 2r - k - 3n + 1.
inline i128 paired_sum_from_remainder(const PrimeContext& ctx, i64 k) {
    if (k < 0 || k > ctx.n) throw std::domain_error("k must lie in [0, n]");
    const i128 r = residue(i128(k) * k, ctx.p).remainder;
    const i128 n = ctx.n;
    if (k >= r - 3 * n + 2) return 2 * r - k + n;
    return 2 * r - k - 3 * n + 1;
}

/// Paired sum by locating k between boundary points: for k in (R_m, Q_m]
/// subtract 2mp, for k in (Q_m, R_{m+1}) subtract (2m+1)p.
inline i128 paired_sum_from_bounds(const PrimeContext& ctx, i64 k) {
    if (k < 0 || k > ctx.n) throw std::domain_error("k must lie in [0, n]");
    const i128 base = 2 * i128(k) * k - k + ctx.n;
    if (k == 0) return base;
    for (i64 m = 0;; ++m) {
        if (rm_value(ctx, m) < k && !(qm_value(ctx, m) < k)) return base - 2 * i128(m) * ctx.p;
        if (qm_value(ctx, m) < k && k < rm_value(ctx, m + 1)) return base - (2 * i128(m) + 1) * ctx.p;
        if (!(rm_value(ctx, m + 1) < k)) break;
    }
    throw InvariantError("k is not covered by any boundary interval");
}

// ---------------------------------------------------------------------------
// Residue of n^2
// ---------------------------------------------------------------------------

/// With M > 0: r >= 1, and r = 4n - 9 when n = 11, else r <= 4n - 10.
inline bool n_sq_residue_bound(const PrimeContext& ctx) {
    if (ctx.m_max == 0) return true;
    const i64 r = ctx.n_sq_residue;
    if (r < 1) return false;
    return ctx.n == 11 ? r == 4 * ctx.n - 9 : r <= 4 * ctx.n - 10;
}

// ---------------------------------------------------------------------------
// Placement of n-2 .. n+2 among the boundary points, parts (i) through (xi)
// ---------------------------------------------------------------------------

/// (i) R_m < Q_m < R_{m+1} for every m <= M-1.
inline bool interleaving(const PrimeContext& ctx) {
    for (i64 m = 0; m < ctx.m_max; ++m) {
        if (!(rm_value(ctx, m) < qm_value(ctx, m) && qm_value(ctx, m) < rm_value(ctx, m + 1))) return false;
    }
    return true;
}

/// (ii) R_{M-1} < n-1 < Q_M, when M >= 1.
inline bool n_minus_1_bracket(const PrimeContext& ctx) {
    const i64 top = ctx.m_max;
    return top < 1 || strictly_between(rm_value(ctx, top - 1), ctx.n - 1, qm_value(ctx, top));
}

/// (iii) R_{M-1} < n-2 < Q_{M-1}, when M >= 1.
inline bool n_minus_2_bracket(const PrimeContext& ctx) {
    const i64 top = ctx.m_max;
    return top < 1 || strictly_between(rm_value(ctx, top - 1), ctx.n - 2, qm_value(ctx, top - 1));
}

/// (iv) R_M < n < Q_M.
inline bool n_bracket(const PrimeContext& ctx) {
    return strictly_between(rm_value(ctx, ctx.m_max), ctx.n, qm_value(ctx, ctx.m_max));
}

/// (v) R_M < n+1 < Q_{M+1}.
inline bool n_plus_1_bracket(const PrimeContext& ctx) {
    return strictly_between(rm_value(ctx, ctx.m_max), ctx.n + 1, qm_value(ctx, ctx.m_max + 1));
}

/// (vi) r is never 2n-3 or 2n-2, nor 2n-1 once n > 1.
inline bool excluded_residues(const PrimeContext& ctx) {
    const i64 r = ctx.n_sq_residue;
    const i64 n = ctx.n;
    if (r == 2 * n - 3 || r == 2 * n - 2) return false;
    return n <= 1 || r != 2 * n - 1;
}

/// (vii) n-1 is not in (Q_{M-1}, R_M), when M >= 1.
inline bool n_minus_1_not_in_gap(const PrimeContext& ctx) {
    const i64 top = ctx.m_max;
    return top < 1 || !strictly_between(qm_value(ctx, top - 1), ctx.n - 1, rm_value(ctx, top));
}

/// (viii) n-1 < Q_{M-1} implies n+1 < Q_M, which implies n+1 is not in
/// (Q_M, R_{M+1}); and n-1 < Q_{M-1} exactly when r < 2n-3. Needs M >= 1.
inline bool low_case_chain(const PrimeContext& ctx) {
    const i64 top = ctx.m_max;
    if (top < 1) return true;
    const bool below = ctx.n - 1 < qm_value(ctx, top - 1);
    const bool next_below = ctx.n + 1 < qm_value(ctx, top);
    const bool outside = !strictly_between(qm_value(ctx, top), ctx.n + 1, rm_value(ctx, top + 1));
    if (below && !next_below) return false;
    if (next_below && !outside) return false;
    return below == (ctx.n_sq_residue < 2 * ctx.n - 3);
}

/// (ix) R_M < n-1 implies R_{M+1} < n+1, which implies n+1 is not in
/// (Q_M, R_{M+1}).
inline bool high_case_chain(const PrimeContext& ctx) {
    const i64 top = ctx.m_max;
    const bool above = rm_value(ctx, top) < ctx.n - 1;
    const bool next_above = rm_value(ctx, top + 1) < ctx.n + 1;
    const bool outside = !strictly_between(qm_value(ctx, top), ctx.n + 1, rm_value(ctx, top + 1));
    if (above && !next_above) return false;
    return !next_above || outside;
}

/// (x) Q_M < R_{M+1} exactly when 2n-2 < r.
inline bool top_order(const PrimeContext& ctx) {
    const bool ordered = qm_value(ctx, ctx.m_max) < rm_value(ctx, ctx.m_max + 1);
    return ordered == (2 * ctx.n - 2 < ctx.n_sq_residue);
}

/// (xi) Q_M < n+2 and R_{M+1} < n+2.
inline bool top_below_n_plus_2(const PrimeContext& ctx) {
    return qm_value(ctx, ctx.m_max) < ctx.n + 2 && rm_value(ctx, ctx.m_max + 1) < ctx.n + 2;
}

// ---------------------------------------------------------------------------
// Either/or floor identities
// ---------------------------------------------------------------------------

/// With M >= 1: floor(Q_{M-1}) == floor(R_M) and that common value is n-1 or n-2.
inline bool lower_floor_pair(const BoundarySequence& seq) {
    const i64 top = seq.ctx.m_max;
    if (top < 1) return true;
    const i64 q = seq.qm_floors[static_cast<std::size_t>(top - 1)];
    const i64 r = seq.rm_floors[static_cast<std::size_t>(top)];
    return q == r && (q == seq.ctx.n - 1 || q == seq.ctx.n - 2);
}

/// floor(Q_M) == floor(R_{M+1}) and that common value is n+1 or n.
inline bool upper_floor_pair(const BoundarySequence& seq) {
    const i64 top = seq.ctx.m_max;
    const i64 q = seq.qm_floors[static_cast<std::size_t>(top)];
    const i64 r = seq.rm_floors[static_cast<std::size_t>(top + 1)];
    return q == r && (q == seq.ctx.n + 1 || q == seq.ctx.n);
}

// ---------------------------------------------------------------------------

struct Check {
    const char* name;
    bool holds;
};

/// Evaluate every predicate above for one prime.
inline std::vector<Check> check_all(const BoundarySequence& seq) {
    const auto& ctx = seq.ctx;
    return {
        {"residue-bound", n_sq_residue_bound(ctx)},
        {"interleaving", interleaving(ctx)},
        {"n-1 bracket", n_minus_1_bracket(ctx)},
        {"n-2 bracket", n_minus_2_bracket(ctx)},
        {"n bracket", n_bracket(ctx)},
        {"n+1 bracket", n_plus_1_bracket(ctx)},
        {"excluded residues", excluded_residues(ctx)},
        {"n-1 not in gap", n_minus_1_not_in_gap(ctx)},
        {"low-case chain", low_case_chain(ctx)},
        {"high-case chain", high_case_chain(ctx)},
        {"top order", top_order(ctx)},
        {"top below n+2", top_below_n_plus_2(ctx)},
        {"lower floor pair", lower_floor_pair(seq)},
        {"upper floor pair", upper_floor_pair(seq)},
    };
}

} // namespace qclass::lemmas
