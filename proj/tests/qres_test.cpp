#include <gtest/gtest.h>

#include "qclass/qres.hpp"
#include "qclass/sieve.hpp"

using namespace qclass;

namespace {

i128 naive_square_residue(i64 k, i64 p) { return i128(k) * k % p; }

// Direct sum of k^2 mod p over the whole range 1..p-1, one division per term.
i128 naive_qr_sum(i64 p) {
    i128 total = 0;
    for (i64 k = 1; k < p; ++k) total += naive_square_residue(k, p);
    return total;
}

} // namespace

TEST(Context, Example103) {
    const auto ctx = make_context(103);
    EXPECT_EQ(ctx.n, 26);
    EXPECT_EQ(ctx.m_max, 6);
    EXPECT_EQ(ctx.residue_class, ResidueClass::plus7);
    EXPECT_EQ(ctx.class_k, 6);
    EXPECT_EQ(ctx.n_sq_residue, 58);
}

TEST(Context, Example43And7) {
    const auto c43 = make_context(43);
    EXPECT_EQ(c43.n, 11);
    EXPECT_EQ(c43.m_max, 2);
    EXPECT_EQ(c43.n_sq_residue, 35);

    const auto c7 = make_context(7);
    EXPECT_EQ(c7.n, 2);
    EXPECT_EQ(c7.m_max, 0);
    EXPECT_EQ(c7.residue_class, ResidueClass::plus7);
    EXPECT_EQ(c7.class_k, 0);
    EXPECT_EQ(c7.n_sq_residue, 4);
}

TEST(Context, Rejections) {
    EXPECT_THROW(make_context(13), InvalidPrime);
    EXPECT_THROW(make_context(3), InvalidPrime);
    EXPECT_THROW(make_context(15), InvalidPrime);
    EXPECT_THROW(make_context(2), InvalidPrime);
    EXPECT_THROW(make_context(0), InvalidPrime);
    EXPECT_THROW(make_context(-7), InvalidPrime);
    try {
        make_context(13);
    } catch (const InvalidPrime& e) {
        EXPECT_STREQ(e.what(), "p ≡ 1 (mod 4) not supported");
    }
}

TEST(Context, InvariantsOverRange) {
    for (i64 p : class_primes_in_range(7, 200'000)) {
        const auto ctx = make_context(p);
        ASSERT_EQ(4 * ctx.n - 1, p);
        ASSERT_EQ(ctx.m_max, ctx.n * ctx.n / p);
        ASSERT_EQ(ctx.m_max, ctx.n / 4);
        ASSERT_EQ(16 * ctx.class_k + class_offset(ctx.residue_class), p);
        ASSERT_EQ(ctx.m_max * p + ctx.n_sq_residue, ctx.n * ctx.n);
    }
}

TEST(Context, LargePrimesStayExact) {
    // Largest prime below 2^63 is 3 (mod 4).
    const auto ctx = make_context(9223372036854775783ll);
    EXPECT_EQ(ctx.n, 2305843009213693946ll);
    EXPECT_EQ(i128(ctx.m_max) * ctx.p + ctx.n_sq_residue, i128(ctx.n) * ctx.n);
}

TEST(Boundary, FloorsExample103) {
    const auto ctx = make_context(103);
    EXPECT_EQ(rm_floor(ctx, 0), 0);
    EXPECT_EQ(rm_floor(ctx, 1), 10);
    EXPECT_EQ(rm_floor(ctx, 6), 24);
    EXPECT_EQ(qm_floor(ctx, 0), 9);
    EXPECT_EQ(qm_floor(ctx, 5), 24);
    EXPECT_EQ(qm_floor(ctx, 6), 26);
    EXPECT_THROW(rm_floor(ctx, -1), std::domain_error);
    EXPECT_THROW(qm_floor(ctx, -1), std::domain_error);
}

TEST(Boundary, SequenceExamples) {
    const auto s103 = boundary_sequence(make_context(103));
    EXPECT_EQ(s103.qm_floors, (std::vector<i64>{9, 13, 17, 20, 22, 24, 26}));
    EXPECT_EQ(s103.rm_floors, (std::vector<i64>{0, 10, 14, 17, 20, 22, 24, 26}));

    const auto s7 = boundary_sequence(make_context(7));
    EXPECT_EQ(s7.qm_floors, (std::vector<i64>{2}));
    EXPECT_EQ(s7.rm_floors, (std::vector<i64>{0, 2}));

    const auto s11 = boundary_sequence(make_context(11));
    EXPECT_EQ(s11.rm_floors, (std::vector<i64>{0, 3}));
}

TEST(Boundary, SequenceInvariants) {
    for (i64 p : class_primes_in_range(7, 30'000)) {
        const auto seq = boundary_sequence(make_context(p));
        const i64 top = seq.ctx.m_max;
        const i64 n = seq.ctx.n;
        ASSERT_EQ(seq.rm_floors.size(), static_cast<std::size_t>(top + 2));
        ASSERT_EQ(seq.qm_floors.size(), static_cast<std::size_t>(top + 1));
        ASSERT_EQ(seq.rm_floors[0], 0);
        if (top >= 2) {
            for (i64 m = 2; m <= top + 1; ++m) ASSERT_LT(seq.rm_floors[m - 1], seq.rm_floors[m]) << p;
        }
        for (i64 m = 1; m <= top; ++m) ASSERT_LE(seq.qm_floors[m - 1], seq.rm_floors[m]) << p;
        if (top >= 1) {
            ASSERT_EQ(seq.qm_floors[top - 1], seq.rm_floors[top]) << p;
            const i64 v = seq.qm_floors[top - 1];
            ASSERT_TRUE(v == n - 1 || v == n - 2) << p;
        }
        ASSERT_EQ(seq.qm_floors[top], seq.rm_floors[top + 1]) << p;
        ASSERT_TRUE(seq.qm_floors[top] == n + 1 || seq.qm_floors[top] == n) << p;
    }
}

// floor((1 + isqrt(D)) / 2) must equal floor((1 + sqrt(D)) / 2). Checked with
// exact surd comparisons: the value v satisfies v <= Q_m < v + 1.
TEST(Boundary, QmFloorReductionIsExact) {
    for (i64 p : class_primes_in_range(7, 10'000)) {
        const auto ctx = make_context(p);
        for (i64 m = 0; m <= ctx.m_max + 1; ++m) {
            const i64 v = qm_floor(ctx, m);
            const auto q = qm_value(ctx, m);
            ASSERT_FALSE(q < v) << p << " " << m;
            ASSERT_TRUE(q < v + 1) << p << " " << m;
            const i64 r = rm_floor(ctx, m);
            ASSERT_FALSE(rm_value(ctx, m) < r);
            ASSERT_TRUE(rm_value(ctx, m) < r + 1);
        }
    }
}

TEST(PairedResidue, Examples) {
    EXPECT_EQ(paired_residue_sum(make_context(103), 26), 116);
    EXPECT_EQ(paired_residue_sum(make_context(7), 0), 2);
    EXPECT_EQ(paired_residue_sum(make_context(103), 10), 113);
}

TEST(PairedResidue, OutOfRange) {
    const auto ctx = make_context(103);
    EXPECT_THROW(paired_residue_sum(ctx, -1), std::domain_error);
    EXPECT_THROW(paired_residue_sum(ctx, 27), std::domain_error);
}

TEST(PairedResidue, MatchesDirectComputation) {
    for (i64 p : class_primes_in_range(7, 10'000)) {
        const auto ctx = make_context(p);
        for (i64 k = 0; k <= ctx.n; ++k) {
            const i128 direct = naive_square_residue(k, p) + naive_square_residue(2 * ctx.n - k, p);
            ASSERT_EQ(paired_residue_sum(ctx, k), direct) << p << " " << k;
        }
    }
}

TEST(ResidueSum, BruteForceExamples) {
    EXPECT_EQ(sum_qr_bruteforce(7).total, 14);
    EXPECT_EQ(sum_qr_bruteforce(13).total, 78);
    EXPECT_EQ(sum_qr_bruteforce(103).total, 4738);
    EXPECT_EQ(sum_qr_bruteforce(103).method, SumMethod::bruteforce);
    EXPECT_THROW(sum_qr_bruteforce(2), InvalidPrime);
    EXPECT_THROW(sum_qr_bruteforce(21), InvalidPrime);
}

TEST(ResidueSum, BruteForceMatchesNaiveDivision) {
    for (i64 p : primes_in_range(3, 5000)) ASSERT_EQ(sum_qr_bruteforce(p).total, naive_qr_sum(p)) << p;
}

TEST(ResidueSum, ClosedFormExamples) {
    EXPECT_EQ(sum_qr_closed_form(make_context(7)).total, 14);
    EXPECT_EQ(sum_qr_closed_form(make_context(103)).total, 4738);
    EXPECT_EQ(sum_qr_closed_form(make_context(11)).total, 44);
    EXPECT_EQ(sum_qr_closed_form(make_context(11)).method, SumMethod::closed_form);
}

TEST(ResidueSum, FloorSumExamples) {
    EXPECT_EQ(sum_qr_floor_sums(make_context(103)).total, 4738);
    EXPECT_EQ(sum_qr_floor_sums(make_context(7)).total, 14);
    EXPECT_EQ(sum_qr_floor_sums(make_context(19)).total, 152);
    EXPECT_EQ(sum_qr_floor_sums(make_context(19)).method, SumMethod::floor_sums);
}

TEST(ResidueSum, ThreeRoutesAgree) {
    for (i64 p : class_primes_in_range(7, 10'000)) {
        const auto seq = boundary_sequence(make_context(p));
        const i128 brute = sum_qr_bruteforce(p).total;
        ASSERT_EQ(sum_qr_closed_form(seq).total, brute) << p;
        ASSERT_EQ(sum_qr_floor_sums(seq).total, brute) << p;
        ASSERT_EQ(brute % 2, 0);
        ASSERT_GT(brute, 0);
        ASSERT_LT(brute, i128(p) * (p - 1));
    }
}

TEST(ResidueSum, OneModFourIsBinomial) {
    for (i64 p : primes_in_range(3, 10'000)) {
        if (p % 4 != 1) continue;
        ASSERT_EQ(sum_qr_bruteforce(p).total, i128(p) * (p - 1) / 2) << p;
    }
}
