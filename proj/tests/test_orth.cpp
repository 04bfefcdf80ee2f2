#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace bjseq;
using namespace bjseq::test;

TEST(OrthLinf, Examples) {
    EXPECT_TRUE(orth_linf(constant(1), e(1)).holds());
    EXPECT_TRUE(orth_linf(e(1), e(1)).fails());
    EXPECT_TRUE(orth_linf(periodic({1, -1}), constant(1)).holds());
    EXPECT_TRUE(orth_linf(SequenceRep{}, e(1)).holds());
}

TEST(OrthLinf, Complex) {
    auto x = SequenceRep::finite({Scalar::complex(1, 0), cx(0, 1)}, Field::Complex);
    auto y = SequenceRep::finite({cx(0, 1), Scalar::complex(-1, 0)}, Field::Complex);
    // Products conj(x_n) y_n are i and i: no convex combination vanishes.
    EXPECT_TRUE(orth_linf(x, y).fails());
    auto z = SequenceRep::finite({cx(0, 1), Scalar::complex(1, 0)}, Field::Complex);
    // Products i and -i.
    EXPECT_TRUE(orth_linf(x, z).holds());
}

TEST(OrthLinfEnum, Examples) {
    EXPECT_TRUE(orth_linf_real_enum(e(1), e(2)).holds());
    EXPECT_TRUE(orth_linf_real_enum(fin({1, 1}), fin({1, -1})).holds());
    EXPECT_TRUE(orth_linf_real_enum(fin({1}), fin({1})).fails());
    auto z = SequenceRep::finite({cx(1, 1)}, Field::Complex);
    EXPECT_THROW(orth_linf_real_enum(z, z), DomainError);
}

TEST(OrthC, Examples) {
    EXPECT_TRUE(orth_c(constant(1), geo(1, q(1, 2))).holds());
    EXPECT_TRUE(orth_c(constant(1, {2}), e(1)).fails());
    EXPECT_TRUE(orth_c(fin({1, -1}), fin({1, 1})).holds());
    EXPECT_THROW(orth_c(periodic({1, -1}), e(1)), DomainError);
}

TEST(OrthC, NormOnlyALimit) {
    SequenceRep x = add_scaled(constant(2), Scalar(1), geo(-1, q(1, 2)));
    EXPECT_TRUE(orth_c(x, e(1)).holds());
    EXPECT_TRUE(oracle_orth(SpaceId::c(), x, e(1)).holds());
    EXPECT_TRUE(orth_c(x, constant(1)).fails());
    EXPECT_TRUE(orth_linf_real_enum(x, e(1)).holds());
    EXPECT_TRUE(orth_linf_real_enum(x, constant(1)).fails());
}

TEST(OrthC0, Examples) {
    EXPECT_TRUE(orth_c0(e(1), e(2)).holds());
    EXPECT_TRUE(orth_c0(fin({1, 1}), fin({1, -1})).holds());
    EXPECT_TRUE(orth_c0(geo(1, q(1, 2)), geo(1, q(1, 2))).fails());
    EXPECT_THROW(orth_c0(constant(1), e(1)), DomainError);
}

TEST(OrthL1, Examples) {
    EXPECT_TRUE(orth_l1(e(1), e(2)).holds());
    EXPECT_TRUE(orth_l1(fin({1, 1}), fin({1, 1})).fails());
    EXPECT_TRUE(orth_l1(fin({2}), fin({1, 3})).holds());
    EXPECT_THROW(orth_l1(constant(1), e(1)), DomainError);
}

TEST(OrthL1Partition, Examples) {
    EXPECT_TRUE(orth_l1_real_partition(fin({1, 1}), fin({1, -1})).holds());
    EXPECT_TRUE(orth_l1_real_partition(fin({1, -1}), fin({1, 1})).holds());
    EXPECT_TRUE(orth_l1_real_partition(fin({1, 0}), fin({1, 1})).holds());
    auto z = SequenceRep::finite({cx(1, 1)}, Field::Complex);
    EXPECT_THROW(orth_l1_real_partition(z, z), DomainError);
}

TEST(OrthLp, Examples) {
    EXPECT_TRUE(orth_lp(fin({1, 1}), fin({1, -1}), 3).holds());
    Verdict v = orth_lp(fin({2, 1}), fin({1, -4}), 3);
    EXPECT_TRUE(v.holds());
    EXPECT_EQ(v.mode, Mode::Exact);
    EXPECT_TRUE(orth_lp(fin({2, 1}), fin({1, 0}), 3).fails());
    EXPECT_TRUE(orth_lp(fin({1, -4}), fin({2, 1}), 3).fails());
    EXPECT_THROW(orth_lp(e(1), e(2), 1), DomainError);
}

TEST(OrthLp, RationalExponent) {
    // phi(x) = (4^{1/2}, 1) = (2, 1) for p = 3/2 and x = (4, 1); y = (1, -2) balances it.
    EXPECT_TRUE(orth_lp(fin({4, 1}), fin({1, -2}), q(3, 2)).holds());
    EXPECT_TRUE(orth_lp(fin({4, 1}), fin({1, -1}), q(3, 2)).fails());
}

TEST(OrthLp, GeometricTails) {
    // x = (1/2^k), y = e1 - 2 e2: F = (1/2)^2 * 1 + (1/4)^2 * (-2) = 1/4 - 1/8 != 0.
    EXPECT_TRUE(orth_lp(geo(1, q(1, 2)), fin({1, -2}), 3).fails());
    // y = e1 - 4 e2: 1/4 - 4/16 = 0.
    EXPECT_TRUE(orth_lp(geo(1, q(1, 2)), fin({1, -4}), 3).holds());
}

TEST(BirkhoffJames, Dispatch) {
    EXPECT_TRUE(birkhoff_james(SpaceId::c00(), e(1), e(2)).holds());
    EXPECT_TRUE(birkhoff_james(SpaceId::l1(), fin({1, 1}), fin({1, 1})).fails());
    EXPECT_TRUE(birkhoff_james(SpaceId::linf(), constant(1), e(1)).holds());
    EXPECT_TRUE(birkhoff_james(SpaceId::lp(3), SequenceRep{}, e(1)).holds());
    EXPECT_THROW(birkhoff_james(SpaceId::c00(), geo(1, q(1, 2)), e(1)), DomainError);
}

TEST(BirkhoffJames, Homogeneous) {
    Sampler smp(23);
    for (auto s : {SpaceId::linf(), SpaceId::c0(), SpaceId::l1(), SpaceId::lp(3)}) {
        for (int i = 0; i < 100; ++i) {
            SequenceRep x = smp.sequence(s), y = smp.sequence(s);
            Verdict v = birkhoff_james(s, x, y);
            Verdict w = birkhoff_james(s, scale(x, Scalar(-3)), scale(y, Scalar(q(2, 5))));
            EXPECT_EQ(v.outcome, w.outcome) << s.name();
        }
    }
}

TEST(Equivalence, LinfHullMatchesEnumeration) {
    Sampler smp(101);
    for (int i = 0; i < 300; ++i) {
        SequenceRep x = smp.sequence(SpaceId::linf()), y = smp.sequence(SpaceId::linf());
        EXPECT_EQ(orth_linf(x, y).outcome, orth_linf_real_enum(x, y).outcome);
    }
}

TEST(Equivalence, L1NormFormMatchesPartition) {
    Sampler smp(202);
    for (int i = 0; i < 300; ++i) {
        SequenceRep x = smp.sequence(SpaceId::l1()), y = smp.sequence(SpaceId::l1());
        EXPECT_EQ(orth_l1(x, y).outcome, orth_l1_real_partition(x, y).outcome);
    }
}
