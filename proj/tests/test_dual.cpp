#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"

using namespace bjseq;
using namespace bjseq::test;

namespace {

const SequenceRep& rep(const SupportFunctional& f) { return std::get<SequenceRep>(f.rep); }

}  // namespace

TEST(LpSupport, UnitVector) {
    SupportFunctional f = lp_support_functional(e(1), 3);
    EXPECT_EQ(rep(f), e(1));
    EXPECT_EQ(f.dual_space().p, q(3, 2));
}

TEST(LpSupport, IrrationalNorm) {
    SequenceRep x = fin({2, 1});
    SupportFunctional f = lp_support_functional(x, 3);
    double c = std::pow(9.0, 2.0 / 3.0);
    EXPECT_NEAR(rep(f).at(1).center().real(), 4.0 / c, 1e-15);
    EXPECT_NEAR(rep(f).at(2).center().real(), 1.0 / c, 1e-15);
    EXPECT_NEAR(f.apply(x).center().real(), std::cbrt(9.0), 1e-12);
    NormValue d = f.dual_norm();
    EXPECT_NEAR(d.lo(), 1.0, 1e-12);
    EXPECT_NEAR(d.hi(), 1.0, 1e-12);
}

TEST(LpSupport, CarriesTheSign) {
    SupportFunctional f = lp_support_functional(e(2, -5), 3);
    EXPECT_EQ(rep(f), e(2, -1));
    EXPECT_THROW(lp_support_functional(SequenceRep{}, 3), DomainError);
}

TEST(LpSupport, GeometricTail) {
    SupportFunctional f = lp_support_functional(geo(1, q(1, 2)), 3);
    EXPECT_NEAR(f.apply(geo(1, q(1, 2))).center().real(), norm(geo(1, q(1, 2)), SpaceId::lp(3)).lo(), 1e-12);
    EXPECT_NEAR(f.dual_norm().lo(), 1.0, 1e-12);
}

TEST(LpSupport, ComplexEntries) {
    auto x = SequenceRep::finite({cx(3, 4), Scalar::complex(0, 0), cx(0, -5)}, Field::Complex);
    SupportFunctional f = lp_support_functional(x, 3);
    Scalar v = f.apply(x);
    EXPECT_NEAR(v.center().real(), norm(x, SpaceId::lp(3)).lo(), 1e-12);
    EXPECT_NEAR(v.center().imag(), 0.0, 1e-12);
}

TEST(L1Support, Examples) {
    EXPECT_TRUE(l1_is_support_functional(fin({1, -1}), fin({1, -1})).holds());
    EXPECT_TRUE(l1_is_support_functional(fin({1, 0}), fin({1, q(1, 2)})).holds());
    EXPECT_TRUE(l1_is_support_functional(fin({1, 0}), fin({1, 2})).fails());
    EXPECT_THROW(l1_is_support_functional(SequenceRep{}, e(1)), DomainError);
}

TEST(L1Support, GeometricTails) {
    EXPECT_TRUE(l1_is_support_functional(geo(1, q(-1, 2)), periodic({-1, 1})).holds());
    EXPECT_TRUE(l1_is_support_functional(geo(1, q(1, 2)), constant(1)).holds());
    EXPECT_TRUE(l1_is_support_functional(geo(1, q(1, 2)), constant(-1)).fails());
    EXPECT_TRUE(l1_is_support_functional(fin({2}), constant(1, {1})).holds());
}

TEST(L1Support, SignFunctionalIsASupportFunctional) {
    Sampler smp(31);
    for (int i = 0; i < 200; ++i) {
        SequenceRep a = smp.sequence(SpaceId::l1());
        if (a.is_zero() || !a.single_atom()) continue;
        SupportFunctional f = l1_sign_functional(a);
        EXPECT_TRUE(l1_is_support_functional(a, rep(f)).holds());
        EXPECT_EQ(f.apply(a), Scalar(norm(a, SpaceId::l1()).value));
    }
}

TEST(LinfSupport, Examples) {
    SupportFunctional f = linf_smooth_support_functional(fin({2, 1}));
    auto c = std::get<CoordinateFunctional>(f.rep);
    EXPECT_EQ(c.index, 1u);
    EXPECT_EQ(c.weight, Scalar(1));
    SupportFunctional g = linf_smooth_support_functional(geo(1, q(1, 2), {-3}));
    auto d = std::get<CoordinateFunctional>(g.rep);
    EXPECT_EQ(d.index, 1u);
    EXPECT_EQ(d.weight, Scalar(-1));
    EXPECT_THROW(linf_smooth_support_functional(constant(1, {1})), DomainError);
}

TEST(LimitFunctional, UsedWhenTheNormIsOnlyALimit) {
    SequenceRep x = add_scaled(constant(-2), Scalar(1), geo(1, q(1, 2)));
    SupportFunctional f = support_functional(SpaceId::c(), x);
    ASSERT_TRUE(std::holds_alternative<LimitFunctional>(f.rep));
    EXPECT_EQ(f.apply(x), Scalar(2));
    EXPECT_EQ(f.apply(constant(5, {7})), Scalar(-5));
    EXPECT_EQ(f.dual_norm().value, 1);
}

TEST(LimitFunctional, PeriodicTailsAttainAtAnIndex) {
    SupportFunctional f = support_functional(SpaceId::linf(), periodic({q(1, 2), -1}, {q(1, 3)}));
    auto c = std::get<CoordinateFunctional>(f.rep);
    EXPECT_EQ(c.index, 3u);
    EXPECT_EQ(c.weight, Scalar(-1));
}

TEST(Kernel, ProjectionIsOrthogonal) {
    Sampler smp(77);
    for (auto s : {SpaceId::linf(), SpaceId::c(), SpaceId::c0(), SpaceId::l1(), SpaceId::lp(3)}) {
        for (int i = 0; i < 60; ++i) {
            SequenceRep x = smp.sequence(s), y = smp.sequence(s);
            if (x.is_zero() || !x.single_atom()) continue;
            SequenceRep z = project_to_kernel(s, x, y);
            EXPECT_FALSE(birkhoff_james(s, x, z).fails()) << s.name();
        }
    }
}
