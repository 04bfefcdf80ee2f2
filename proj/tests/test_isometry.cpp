#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"

using namespace bjseq;
using namespace bjseq::test;

namespace {

Scalar inv_sqrt2(int sign = 1) {
    return Scalar::approx({sign * std::sqrt(0.5), 0.0}, 2e-16, Field::Real);
}

FiniteMatrixOperator rotation45() {
    return FiniteMatrixOperator({{inv_sqrt2(), inv_sqrt2(-1)}, {inv_sqrt2(), inv_sqrt2()}});
}

}  // namespace

TEST(SignedPermutation, Apply) {
    EXPECT_EQ(sp_apply(SignedPermutation::swap(1, 2), e(1)), e(2));
    EXPECT_EQ(sp_apply(SignedPermutation::weight(1, Scalar(-1)), constant(1, {3})), constant(1, {-3}));
    SequenceRep x = periodic({1, 2}, {5, 6, 7});
    EXPECT_EQ(sp_apply(SignedPermutation::identity(), x), x);
}

TEST(SignedPermutation, ApplyMovesTailEntries) {
    // Swapping 1 and 3 pulls the first tail term into the prefix.
    SequenceRep x = geo(1, q(1, 2), {8});
    SequenceRep y = sp_apply(SignedPermutation::swap(1, 3), x);
    for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(y.at(n), x.at(n == 1 ? 3 : n == 3 ? 1 : n));
}

TEST(SignedPermutation, ComposeAndInvert) {
    auto s = SignedPermutation::swap(1, 2);
    EXPECT_EQ(sp_compose(s, s), SignedPermutation::identity());
    auto w = SignedPermutation::weight(1, Scalar::complex(0, 1));
    EXPECT_EQ(sp_invert(w), SignedPermutation::weight(1, Scalar::complex(0, -1)));
    EXPECT_EQ(sp_compose(SignedPermutation::identity(), w), w);
}

TEST(SignedPermutation, ComposeMatchesSequentialApplication) {
    Sampler smp(12);
    for (int i = 0; i < 100; ++i) {
        auto a = random_signed_permutation(smp, 5), b = random_signed_permutation(smp, 5);
        SequenceRep x = smp.sequence(SpaceId::linf());
        EXPECT_EQ(sp_apply(sp_compose(a, b), x), sp_apply(a, sp_apply(b, x)));
        EXPECT_EQ(sp_apply(sp_invert(a), sp_apply(a, x)), x);
    }
}

TEST(SignedPermutation, RejectsNonUnimodularWeights) {
    EXPECT_THROW(SignedPermutation::weight(1, Scalar(2)), ValidationError);
    EXPECT_THROW(SignedPermutation({{1, 2}}, {}), ValidationError);
}

TEST(VerifyIsometry, Examples) {
    EXPECT_TRUE(verify_isometry(SignedPermutation::swap(1, 2), SpaceId::l1(), 100, 1).violations.empty());
    EXPECT_TRUE(verify_isometry(SignedPermutation::weight(3, Scalar(-1)), SpaceId::linf(), 100, 1).violations.empty());
    SignedPermutation t({{1, 2}, {2, 1}}, {{1, Scalar::complex(0, 1)}});
    SamplerConfig cfg;
    cfg.field = Field::Complex;
    IsometryReport r = verify_isometry(t, SpaceId::lp(3), 100, 1, cfg);
    EXPECT_EQ(r.samples, 100u);
    EXPECT_TRUE(r.violations.empty());
}

TEST(VerifyIsometry, IrrationalNormsCompareExactly) {
    // ||x||_{3/2} is rarely rational; equal moduli still decide the comparison exactly.
    SignedPermutation t({{1, 3}, {2, 1}, {3, 2}}, {{2, Scalar(-1)}});
    IsometryReport r = verify_isometry(t, SpaceId::lp(Rational(3, 2)), 100, 5);
    EXPECT_EQ(r.exact_checks, 100u);
    EXPECT_TRUE(r.violations.empty());
    // A scaled map is caught by the enclosures, not by the moduli check.
    SequenceRep x = fin({1, 2}), y = fin({2, 2});
    EXPECT_FALSE(detail::same_moduli(x, y));
    EXPECT_TRUE(detail::same_moduli(x, fin({-2, 1})));
    EXPECT_FALSE(detail::same_moduli(geo(1, q(1, 2)), geo(1, q(1, 3))));
}

TEST(Falsify, Rotation) {
    FalsifyResult r = falsify_matrix_isometry(rotation45(), SpaceId::lp(3), 1000, 1);
    ASSERT_EQ(r.status, FalsifyStatus::Witness);
    EXPECT_EQ(*r.witness, e(1));
    double expect = std::cbrt(2.0) / std::sqrt(2.0);
    EXPECT_NEAR(r.norm_mx.mid(), expect, 1e-12);
    EXPECT_NEAR(r.norm_x.mid(), 1.0, 1e-12);
}

TEST(Falsify, RotationIsAnIsometryOfL2) {
    FalsifyResult r = falsify_matrix_isometry(rotation45(), SpaceId::lp(2), 300, 1);
    EXPECT_EQ(r.status, FalsifyStatus::Inconclusive);
    EXPECT_FALSE(r.witness.has_value());
}

TEST(Falsify, IdentityPasses) {
    FiniteMatrixOperator id({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}});
    EXPECT_EQ(falsify_matrix_isometry(id, SpaceId::l1(), 10, 1).status, FalsifyStatus::Pass);
}

TEST(Falsify, Shear) {
    FiniteMatrixOperator shear({{Scalar(1), Scalar(1)}, {Scalar(0), Scalar(1)}});
    FalsifyResult r = falsify_matrix_isometry(shear, SpaceId::l1(), 1000, 1);
    ASSERT_EQ(r.status, FalsifyStatus::Witness);
    EXPECT_EQ(*r.witness, e(2));
    EXPECT_NEAR(r.norm_mx.mid(), 2.0, 1e-12);
    EXPECT_EQ(falsify_matrix_isometry(shear, SpaceId::linf(), 1000, 1).status, FalsifyStatus::Witness);
}

TEST(MatrixIsSignedPermutation, Examples) {
    EXPECT_TRUE(matrix_is_signed_permutation(FiniteMatrixOperator({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}})));
    FiniteMatrixOperator m({{Scalar::complex(0, 0), Scalar::complex(0, 1)}, {Scalar::complex(1, 0), Scalar::complex(0, 0)}});
    EXPECT_TRUE(matrix_is_signed_permutation(m));
    EXPECT_FALSE(matrix_is_signed_permutation(rotation45()));
    EXPECT_FALSE(matrix_is_signed_permutation(FiniteMatrixOperator({{Scalar(2), Scalar(0)}, {Scalar(0), Scalar(1)}})));
}

TEST(SymmetryTransport, Examples) {
    EXPECT_TRUE(symmetry_transport_check(SignedPermutation::swap(1, 2), SpaceId::lp(3), e(1)).holds());
    EXPECT_TRUE(is_left_symmetric(SpaceId::lp(3), e(2)).holds());
    EXPECT_TRUE(symmetry_transport_check(SignedPermutation::swap(1, 2), SpaceId::linf(), periodic({1, -1})).holds());
    EXPECT_TRUE(symmetry_transport_check(SignedPermutation::weight(1, Scalar(-1)), SpaceId::c0(), e(1)).holds());
}

TEST(SymmetryTransport, RandomPermutationsPreserveClassification) {
    Sampler smp(19);
    for (auto s : {SpaceId::linf(), SpaceId::c(), SpaceId::c0(), SpaceId::l1(), SpaceId::lp(3)}) {
        for (const auto& x : curated_corpus(s, 30, 2)) {
            auto t = random_signed_permutation(smp, 6);
            EXPECT_TRUE(symmetry_transport_check(t, s, x).holds()) << s.name();
        }
    }
}
