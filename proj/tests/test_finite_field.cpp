#include <gtest/gtest.h>

#include <ominus/finite_field.hpp>

#include "oracles.hpp"

using namespace ominus;

namespace {

oracle::RefField ref(const FieldCtx& f) { return {f.r(), f.modulus(), f.a_param()}; }

}  // namespace

TEST(FiniteField, DefaultModuliAndParameters) {
    const FieldCtx f1 = make_field(1);
    EXPECT_EQ(f1.q(), 2u);
    EXPECT_EQ(f1.modulus(), 0b10u);
    EXPECT_EQ(f1.a_param(), 1u);
    EXPECT_EQ(make_field(2).modulus(), 0b111u);
    EXPECT_EQ(make_field(3).modulus(), 0xBu);
    EXPECT_EQ(make_field(4).modulus(), 0x13u);
    EXPECT_EQ(make_field(8).modulus(), 0x11Bu);
}

TEST(FiniteField, RejectsBadModuli) {
    EXPECT_NO_THROW(make_field(3, 0b1011));
    EXPECT_THROW(make_field(3, 0b1001), DomainError);  // z^3 + 1 has the root 1
    EXPECT_THROW(make_field(3, 0x13), DomainError);    // wrong degree
    EXPECT_THROW(make_field(0), DomainError);
    EXPECT_THROW(make_field(17), DomainError);
}

TEST(FiniteField, AParamMustHaveTraceOne) {
    // tr(1) = r mod 2: admissible in GF(8), not in GF(4).
    EXPECT_EQ(make_field(3, std::nullopt, 1).a_param(), 1u);
    EXPECT_THROW(make_field(2, std::nullopt, 1), DomainError);
    EXPECT_EQ(make_field(2, std::nullopt, 2).a_param(), 2u);
    EXPECT_THROW(make_field(2, std::nullopt, 4), DomainError);
}

TEST(FiniteField, MultiplicationMatchesShiftAndAdd) {
    for (unsigned r = 1; r <= 8; ++r)
        for (std::uint32_t mod : irreducible_moduli(r)) {
            const FieldCtx f = make_field(r, mod);
            const auto o = ref(f);
            for (Elem x = 0; x < f.q(); ++x)
                for (Elem y = 0; y < f.q(); ++y) ASSERT_EQ(f.mul(x, y), o.mul(x, y)) << f.describe();
        }
}

TEST(FiniteField, GF4Examples) {
    const FieldCtx f = make_field(2);
    const Elem w = 2, w2 = 3;
    EXPECT_EQ(f.mul(w, w), w2);
    EXPECT_EQ(f.mul(w, w2), 1u);
    EXPECT_EQ(f.inv(w), w2);
    EXPECT_EQ(f.pow(w, 3), 1u);
    EXPECT_EQ(f.trace(1), 0);
    EXPECT_EQ(f.trace(w), 1);
    EXPECT_EQ(f.lambda(w), -1);
    EXPECT_EQ(f.theta_subgroup(), (std::vector<Elem>{0, 1}));
}

TEST(FiniteField, InverseAndPow) {
    for (unsigned r = 1; r <= 10; ++r) {
        const FieldCtx f = make_field(r);
        for (Elem x = 1; x < f.q(); ++x) {
            ASSERT_EQ(f.mul(x, f.inv(x)), 1u);
            ASSERT_EQ(f.pow(x, f.q() - 1), 1u);
        }
        EXPECT_THROW(f.inv(0), DomainError);
        EXPECT_EQ(f.pow(0, 0), 1u);
    }
}

TEST(FiniteField, TraceMatchesFrobeniusSum) {
    for (unsigned r = 1; r <= 10; ++r) {
        const FieldCtx f = make_field(r);
        const auto o = ref(f);
        unsigned zeros = 0;
        for (Elem x = 0; x < f.q(); ++x) {
            ASSERT_EQ(f.trace(x), o.trace(x));
            ASSERT_EQ(f.trace(f.square(x)), f.trace(x));
            zeros += f.trace(x) == 0;
        }
        EXPECT_EQ(zeros, f.q() / 2);
        EXPECT_EQ(f.trace(0), 0);
        EXPECT_EQ(f.trace(f.a_param()), 1);
    }
}

TEST(FiniteField, CharacterIsAdditiveAndSumsToZero) {
    for (unsigned r = 1; r <= 6; ++r) {
        const FieldCtx f = make_field(r);
        int sum = 0;
        for (Elem x = 0; x < f.q(); ++x) {
            sum += f.lambda(x);
            for (Elem y = 0; y < f.q(); ++y) ASSERT_EQ(f.lambda(x ^ y), f.lambda(x) * f.lambda(y));
        }
        EXPECT_EQ(sum, 0);
        EXPECT_EQ(f.lambda(0), 1);
    }
}

TEST(FiniteField, FrobeniusIsARingMap) {
    for (unsigned r = 1; r <= 8; ++r) {
        const FieldCtx f = make_field(r);
        for (Elem x = 0; x < f.q(); ++x)
            for (Elem y = 0; y < f.q(); ++y) {
                ASSERT_EQ(f.square(x ^ y), f.square(x) ^ f.square(y));
                ASSERT_EQ(f.square(f.mul(x, y)), f.mul(f.square(x), f.square(y)));
            }
    }
}

TEST(FiniteField, ThetaSubgroupIsTraceKernel) {
    EXPECT_EQ(make_field(1).theta_subgroup(), (std::vector<Elem>{0}));
    for (unsigned r = 1; r <= 10; ++r) {
        const FieldCtx f = make_field(r);
        const auto th = f.theta_subgroup();
        EXPECT_EQ(th.size(), f.q() / 2);
        for (Elem x : th) EXPECT_EQ(f.trace(x), 0);
        EXPECT_FALSE(std::binary_search(th.begin(), th.end(), f.a_param()));
    }
}

TEST(FiniteField, DefaultModulusIsIrreducibleUpTo16) {
    for (unsigned r = 1; r <= 16; ++r) {
        const std::uint32_t m = default_modulus(r);
        EXPECT_EQ(detail::poly_degree(m), static_cast<int>(r));
        // no factor of degree 1..r/2
        for (std::uint64_t d = 2; detail::poly_degree(d) <= static_cast<int>(r) / 2; ++d)
            ASSERT_NE(detail::poly_mod(m, d), 0u) << "r=" << r << " factor " << d;
    }
}

TEST(FiniteField, IrreducibleCountsMatchNecklaceFormula) {
    // number of irreducible binary polynomials of degree r
    const std::vector<std::size_t> expected{0, 2, 1, 2, 3, 6, 9, 18, 30};
    // degree 1 counts z and z+1; the library lists moduli usable for GF(2^r)
    for (unsigned r = 2; r <= 8; ++r) EXPECT_EQ(irreducible_moduli(r).size(), expected[r]) << r;
}

TEST(FiniteField, ContextsAreSharedAndComparable) {
    const FieldCtx a = make_field(4);
    const FieldCtx b = a;
    EXPECT_TRUE(a == b);
    EXPECT_FALSE(a == make_field(4, 0x19));
    EXPECT_FALSE(a == make_field(4, std::nullopt, trace_one_elements(a)[1]));
    EXPECT_TRUE(a.contains(15));
    EXPECT_FALSE(a.contains(16));
}
