#include <gtest/gtest.h>

#include <utility>

#include "qclass/classnum.hpp"
#include "qclass/sieve.hpp"

using namespace qclass;

namespace {

// Number of reduced primitive forms ax^2 + bxy + cy^2 with b^2 - 4ac = -p.
// For prime p every form of that discriminant is primitive.
i64 reduced_form_count(i64 p) {
    i64 count = 0;
    for (i64 a = 1; 3 * a * a <= p; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            const i64 num = b * b + p;
            if (num % (4 * a) != 0) continue;
            const i64 c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;
            ++count;
        }
    }
    return count;
}

// Frozen from the reduced-form count above (computed independently in Python).
const std::pair<i64, i64> known_class_numbers[] = {
    {7, 1},    {11, 1},   {19, 1},   {23, 3},   {31, 3},  {43, 1},   {47, 5},  {59, 3},  {67, 1},
    {71, 7},   {79, 5},   {83, 3},   {103, 5},  {107, 3}, {127, 5},  {131, 5}, {139, 3}, {151, 7},
    {163, 1},  {167, 11}, {179, 5},  {191, 13}, {199, 9}, {211, 3},  {223, 7}, {227, 5}, {239, 15},
    {251, 7},  {263, 13}, {271, 11}, {283, 3},  {307, 3}, {311, 19}, {331, 3}, {347, 5}, {359, 19},
    {367, 9},  {379, 3},  {383, 17},
};

} // namespace

TEST(Theorem, Examples) {
    EXPECT_EQ(class_number_theorem(boundary_sequence(make_context(103))), 5);
    EXPECT_EQ(class_number_theorem(boundary_sequence(make_context(7))), 1);
    EXPECT_EQ(class_number_theorem(boundary_sequence(make_context(23))), 3);
}

TEST(Cases, Examples) {
    const auto s103 = boundary_sequence(make_context(103));
    EXPECT_EQ(gamma(s103, 6), 212);
    EXPECT_EQ(cases_numerator(ResidueClass::plus7, 6), 1287);  // 3 * 429
    EXPECT_EQ(class_number_cases(s103), 5);
    EXPECT_EQ(class_number_cases(boundary_sequence(make_context(7))), 1);
    EXPECT_EQ(class_number_cases(boundary_sequence(make_context(19))), 1);
    EXPECT_THROW(gamma(s103, 7), std::domain_error);
}

TEST(Economic, Example799999) {
    const auto t = economic_terms(boundary_sequence(make_context(799999)));
    EXPECT_EQ(t.beta0, 1550);
    EXPECT_EQ(t.term_sum, 6216);
    EXPECT_EQ(t.term_offset, 6);
    EXPECT_EQ(t.tail3, 3);
    EXPECT_EQ(t.h, 523);
}

TEST(Economic, Example103AndSmall) {
    const auto seq = boundary_sequence(make_context(103));
    const auto t = economic_terms(seq);
    // Per-term values -60, -44, -16, 18, 58, 98.
    i128 expected = 0;
    const i64 terms[] = {-60, -44, -16, 18, 58, 98};
    for (i64 m = 1; m <= 6; ++m) {
        const i64 term = 64 * m + 14 - 6 * seq.rm_floors[m] - 6 * seq.qm_floors[m];
        EXPECT_EQ(term, terms[m - 1]);
        expected += term;
    }
    EXPECT_EQ(t.term_sum, 54);
    EXPECT_EQ(t.term_sum, expected);
    EXPECT_EQ(t.beta0, 18);
    EXPECT_EQ(t.h, 5);

    const auto t7 = economic_terms(boundary_sequence(make_context(7)));
    EXPECT_EQ(t7.term_sum, 0);
    EXPECT_EQ(t7.beta0, 4);
    EXPECT_EQ(t7.h, 1);
}

TEST(QrSum, Examples) {
    const auto c103 = make_context(103);
    EXPECT_EQ(class_number_from_qr_sum(c103, {103, 4738, SumMethod::bruteforce}), 5);
    EXPECT_EQ(class_number_from_qr_sum(make_context(7), {7, 14, SumMethod::bruteforce}), 1);
    EXPECT_EQ(class_number_from_qr_sum(make_context(11), {11, 44, SumMethod::bruteforce}), 1);
    EXPECT_THROW(class_number_from_qr_sum(c103, {103, 4739, SumMethod::bruteforce}), InvariantError);
    EXPECT_THROW(class_number_from_qr_sum(c103, {107, 4738, SumMethod::bruteforce}), std::invalid_argument);
}

TEST(Kronecker, Examples) {
    EXPECT_EQ(class_number_kronecker(make_context(7)), 1);
    EXPECT_EQ(class_number_kronecker(make_context(103)), 5);
    EXPECT_EQ(class_number_kronecker(make_context(163)), 1);
}

// Taking the numerator literally as p does not give a multiple of 4p.
TEST(Kronecker, LiteralNumeratorFails) {
    EXPECT_EQ(kronecker_weighted_sum(7, KroneckerConvention::literal_p), 12);
    EXPECT_EQ(kronecker_weighted_sum(7, KroneckerConvention::discriminant), -28);
    int divisible = 0;
    for (i64 p : class_primes_in_range(7, 500))
        divisible += kronecker_weighted_sum(p, KroneckerConvention::literal_p) % (4 * p) == 0;
    EXPECT_EQ(divisible, 0);
}

TEST(Kronecker, SumDivisibleByFourP) {
    for (i64 p : class_primes_in_range(7, 2000)) {
        const i128 s = kronecker_weighted_sum(p, KroneckerConvention::discriminant);
        ASSERT_EQ(s % (4 * i128(p)), 0) << p;
        ASSERT_LT(s, 0) << p;
    }
}

TEST(Oracles, KroneckerMatchesReducedForms) {
    for (const auto& [p, h] : known_class_numbers) {
        ASSERT_EQ(reduced_form_count(p), h) << p;
        ASSERT_EQ(class_number_kronecker(make_context(p)), h) << p;
    }
    for (i64 p : class_primes_in_range(7, 6000)) ASSERT_EQ(class_number_kronecker(make_context(p)), reduced_form_count(p)) << p;
}

TEST(Formulas, AgreeWithReducedFormsToOneHundredThousand) {
    for (i64 p : class_primes_in_range(7, 100'000)) {
        const auto seq = boundary_sequence(make_context(p));
        const i64 h = reduced_form_count(p);
        ASSERT_GE(h, 1);
        ASSERT_EQ(class_number_theorem(seq), h) << p;
        ASSERT_EQ(class_number_cases(seq), h) << p;
        ASSERT_EQ(class_number_economic(seq), h) << p;
    }
}

TEST(Validate, Example103) {
    const auto r = validate(make_context(103), true);
    for (Method m : all_methods) {
        ASSERT_TRUE(r.value(m).has_value()) << to_string(m);
        EXPECT_EQ(*r.value(m), 5) << to_string(m);
        EXPECT_TRUE(r.elapsed_us[index_of(m)].has_value());
    }
    EXPECT_TRUE(r.all_agree);
    EXPECT_EQ(r.agreed(), 5);
    EXPECT_EQ(r.convention, KroneckerConvention::discriminant);
}

TEST(Validate, Example799999WithoutOracle) {
    const auto r = validate(make_context(799999), false);
    EXPECT_FALSE(r.value(Method::kronecker).has_value());
    for (Method m : {Method::theorem, Method::cases, Method::economic, Method::qr_sum}) EXPECT_EQ(r.value(m), 523);
    EXPECT_TRUE(r.all_agree);
}

TEST(Validate, Example11) {
    const auto r = validate(make_context(11), true);
    for (Method m : all_methods) EXPECT_EQ(r.value(m), 1);
    EXPECT_TRUE(r.all_agree);
}

TEST(Validate, SubsetOnly) {
    const auto r = validate(make_context(23), MethodSet{Method::economic});
    EXPECT_EQ(r.value(Method::economic), 3);
    EXPECT_FALSE(r.value(Method::theorem).has_value());
    EXPECT_TRUE(r.all_agree);
}

TEST(Validate, AgreementFlag) {
    std::array<std::optional<i64>, 5> h{};
    EXPECT_TRUE(populated_values_agree(h));
    h[0] = 3;
    h[3] = 3;
    EXPECT_TRUE(populated_values_agree(h));
    h[4] = 4;
    EXPECT_FALSE(populated_values_agree(h));
}

TEST(Validate, FiveWayAgreementSmallRange) {
    for (i64 p : class_primes_in_range(7, 5000)) {
        const auto r = validate(make_context(p), true);
        ASSERT_TRUE(r.all_agree) << p;
        ASSERT_GE(*r.agreed(), 1);
    }
}

TEST(MethodSetTest, Basics) {
    MethodSet s{Method::cases, Method::kronecker};
    EXPECT_TRUE(s.contains(Method::cases));
    EXPECT_FALSE(s.contains(Method::theorem));
    s.erase(Method::cases);
    EXPECT_FALSE(s.contains(Method::cases));
    EXPECT_FALSE(s.empty());
    s.erase(Method::kronecker);
    EXPECT_TRUE(s.empty());
}
