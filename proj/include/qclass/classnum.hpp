#pragma once

// Five independent computations of the class number h(-p) for p = 4n - 1
// and a cross-validation report.

#include <array>
#include <limits>
#include <chrono>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qclass/arith.hpp"
#include "qclass/qres.hpp"

namespace qclass {

enum class Method { theorem, cases, economic, qr_sum, kronecker };

inline constexpr std::array<Method, 5> all_methods = {
    Method::theorem, Method::cases, Method::economic, Method::qr_sum, Method::kronecker};

constexpr std::string_view to_string(Method m) noexcept {
    switch (m) {
    case Method::theorem: return "theorem";
    case Method::cases: return "cases";
    case Method::economic: return "economic";
    case Method::qr_sum: return "qr-sum";
    case Method::kronecker: return "kronecker";
    }
    return "?";
}

constexpr std::size_t index_of(Method m) noexcept { return static_cast<std::size_t>(m); }

/// Small bitset over Method.
class MethodSet {
public:
    constexpr MethodSet() = default;
    constexpr MethodSet(std::initializer_list<Method> ms) {
        for (Method m : ms) insert(m);
    }
    static constexpr MethodSet all() { return {Method::theorem, Method::cases, Method::economic, Method::qr_sum, Method::kronecker}; }

    constexpr void insert(Method m) noexcept { bits_ |= 1u << index_of(m); }
    constexpr void erase(Method m) noexcept { bits_ &= ~(1u << index_of(m)); }
    constexpr bool contains(Method m) const noexcept { return (bits_ >> index_of(m)) & 1u; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr friend bool operator==(MethodSet, MethodSet) = default;

private:
    unsigned bits_ = 0;
};

/// A sub-method failed an internal exactness check.
class MethodError : public std::runtime_error {
public:
    MethodError(Method m, const std::string& what)
        : std::runtime_error("method " + std::string(to_string(m)) + ": " + what), method_(m) {}
    Method method() const noexcept { return method_; }

private:
    Method method_;
};

// ---------------------------------------------------------------------------
// Floor-sum formulas
// ---------------------------------------------------------------------------

/// h = (2M+1)(2n-1) - 2 (sum_{m<=M} floor(R_m) + sum_{m<M} floor(Q_m)) - (n^2+n)/3
inline i64 class_number_theorem(const BoundarySequence& seq) {
    const auto& ctx = seq.ctx;
    const i128 n = ctx.n;
    const i128 top = ctx.m_max;
    i128 h = checked_mul(2 * top + 1, 2 * n - 1);
    h = checked_sub(h, checked_mul(2, floor_total(seq, ctx.m_max)));
    h = checked_sub(h, exact_div(checked_add(checked_mul(n, n), n), 3, "(n^2+n)/3"));
    return narrow(h);
}

/// gamma_k = sum_{m<=k} floor(R_m) + sum_{m<k} floor(Q_m).
inline i128 gamma(const BoundarySequence& seq, i64 k) {
    if (k < 0 || k > seq.ctx.m_max) throw std::domain_error("gamma index out of range");
    return floor_total(seq, k);
}

/// Numerator N of h = N/3 - 2 gamma_k for the residue class of p.
constexpr i128 cases_numerator(ResidueClass c, i128 k) {
    switch (c) {
    case ResidueClass::minus1: return 32 * k * k + 14 * k - 3;
    case ResidueClass::plus3: return 32 * k * k + 18 * k + 1;
    case ResidueClass::plus7: return 32 * k * k + 22 * k + 3;
    case ResidueClass::plus11: return 32 * k * k + 26 * k + 3;
    }
    return 0;
}

inline i64 class_number_cases(const BoundarySequence& seq) {
    const auto& ctx = seq.ctx;
    const i128 k = ctx.class_k;
    const i128 num = checked_sub(cases_numerator(ctx.residue_class, k), checked_mul(6, gamma(seq, ctx.class_k)));
    return narrow(exact_div(num, 3, "case numerator / 3"));
}

/// Intermediate values of the single-sum form, kept for inspection.
struct EconomicTerms {
    i64 beta0 = 0;        ///< 2 floor(Q_0)
    i128 term_sum = 0;    ///< sum_{m=1}^{k} (64m + c - 6 floor(R_m) - 6 floor(Q_m))
    i64 term_offset = 0;  ///< c in the summand: 6, 10, 14, 18
    i64 tail3 = 0;        ///< three times the trailing constant: 3, 13, 15, 21
    i64 h = 0;
};

constexpr i64 economic_term_offset(ResidueClass c) noexcept {
    switch (c) {
    case ResidueClass::minus1: return 6;
    case ResidueClass::plus3: return 10;
    case ResidueClass::plus7: return 14;
    case ResidueClass::plus11: return 18;
    }
    return 0;
}

constexpr i64 economic_tail3(ResidueClass c) noexcept {
    switch (c) {
    case ResidueClass::minus1: return 3;
    case ResidueClass::plus3: return 13;
    case ResidueClass::plus7: return 15;
    case ResidueClass::plus11: return 21;
    }
    return 0;
}

/// 3h = sum_{m=1}^{k} (64m + c - 6 floor(R_m) - 6 floor(Q_m)) - 3 beta0 + tail3.
inline EconomicTerms economic_terms(const BoundarySequence& seq) {
    const auto& ctx = seq.ctx;
    EconomicTerms t;
    t.beta0 = 2 * seq.qm_floors.front();
    t.term_offset = economic_term_offset(ctx.residue_class);
    t.tail3 = economic_tail3(ctx.residue_class);
    for (i64 m = 1; m <= ctx.class_k; ++m) {
        const auto idx = static_cast<std::size_t>(m);
        i128 term = i128(64) * m + t.term_offset - 6 * i128(seq.rm_floors[idx]) - 6 * i128(seq.qm_floors[idx]);
        t.term_sum = checked_add(t.term_sum, term);
    }
    i128 three_h = checked_add(checked_sub(t.term_sum, 3 * i128(t.beta0)), t.tail3);
    t.h = narrow(exact_div(three_h, 3, "economic 3h / 3"));
    return t;
}

inline i64 class_number_economic(const BoundarySequence& seq) { return economic_terms(seq).h; }

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// h = (C(p,2) - sum_{k<p} (k^2 mod p)) / p.
inline i64 class_number_from_qr_sum(const PrimeContext& ctx, const ResidueSumResult& sum) {
    if (sum.p != ctx.p) throw std::invalid_argument("residue sum belongs to a different prime");
    const i128 p = ctx.p;
    const i128 binom = p * (p - 1) / 2;
    return narrow(exact_div(checked_sub(binom, sum.total), p, "(C(p,2) - sum) / p"));
}

/// Which numerator the Kronecker sum uses. The literal (p/r) reading does not
/// produce a multiple of 4p for p = 3 (mod 4); (-p/r), the character of the
/// field discriminant, does.
enum class KroneckerConvention { literal_p, discriminant };

constexpr std::string_view to_string(KroneckerConvention c) noexcept {
    return c == KroneckerConvention::literal_p ? "(p/r)" : "(-p/r)";
}

/// sum_{r=1}^{4p} r * (a/r) with a = p or a = -p.
inline i128 kronecker_weighted_sum(i64 p, KroneckerConvention conv) {
    const i64 a = conv == KroneckerConvention::literal_p ? p : -p;
    if (p <= 0 || p > std::numeric_limits<i64>::max() / 4) throw std::overflow_error("4p out of range");
    const i64 limit = 4 * p;
    i128 total = 0;
    for (i64 r = 1; r <= limit; ++r) {
        total += i128(r) * kronecker(a, r).value();
    }
    return total;
}

inline constexpr KroneckerConvention kronecker_convention = KroneckerConvention::discriminant;

/// h = -1/(4p) sum_{r=1}^{4p} r (-p/r).
inline i64 class_number_kronecker(const PrimeContext& ctx) {
    const i128 sum = kronecker_weighted_sum(ctx.p, kronecker_convention);
    const i128 quot = exact_div(sum, 4 * i128(ctx.p), "Kronecker sum / 4p");
    if (quot >= 0) throw InvariantError("Kronecker sum is not negative");
    return narrow(-quot);
}

// ---------------------------------------------------------------------------
// Cross-validation
// ---------------------------------------------------------------------------

struct ClassNumberReport {
    PrimeContext ctx;
    std::array<std::optional<i64>, 5> h{};           ///< indexed by Method
    std::array<std::optional<i64>, 5> elapsed_us{};  ///< wall time per method
    bool all_agree = false;
    KroneckerConvention convention = kronecker_convention;

    std::optional<i64> value(Method m) const { return h[index_of(m)]; }

    /// The common value when all populated methods agree.
    std::optional<i64> agreed() const {
        if (!all_agree) return std::nullopt;
        for (const auto& v : h)
            if (v) return v;
        return std::nullopt;
    }
};

inline bool populated_values_agree(const std::array<std::optional<i64>, 5>& h) {
    std::optional<i64> first;
    for (const auto& v : h) {
        if (!v) continue;
        if (!first) first = v;
        else if (*first != *v) return false;
    }
    return true;
}

/// Run the requested methods on one prime. Cheap floor formulas run first,
/// then the O(p) residue sum, then the Kronecker oracle.
inline ClassNumberReport validate(const PrimeContext& ctx, MethodSet methods) {
    ClassNumberReport report;
    report.ctx = ctx;

    const bool need_floors = methods.contains(Method::theorem) || methods.contains(Method::cases) ||
                             methods.contains(Method::economic);
    std::optional<BoundarySequence> seq;
    if (need_floors) seq = boundary_sequence(ctx);

    auto run = [&](Method m, auto&& fn) {
        if (!methods.contains(m)) return;
        const auto start = std::chrono::steady_clock::now();
        i64 h = 0;
        try {
            h = fn();
        } catch (const InvariantError& e) {
            throw MethodError(m, e.what());
        } catch (const std::overflow_error& e) {
            throw MethodError(m, e.what());
        }
        if (h < 1) throw MethodError(m, "non-positive class number " + std::to_string(h));
        const auto stop = std::chrono::steady_clock::now();
        report.h[index_of(m)] = h;
        report.elapsed_us[index_of(m)] =
            std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count();
    };

    run(Method::theorem, [&] { return class_number_theorem(*seq); });
    run(Method::cases, [&] { return class_number_cases(*seq); });
    run(Method::economic, [&] { return class_number_economic(*seq); });
    run(Method::qr_sum, [&] { return class_number_from_qr_sum(ctx, sum_qr_bruteforce(ctx.p)); });
    run(Method::kronecker, [&] { return class_number_kronecker(ctx); });

    report.all_agree = populated_values_agree(report.h);
    return report;
}

inline ClassNumberReport validate(const PrimeContext& ctx, bool include_kronecker) {
    MethodSet set = MethodSet::all();
    if (!include_kronecker) set.erase(Method::kronecker);
    return validate(ctx, set);
}

} // namespace qclass
