#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace bjseq;
using namespace bjseq::test;

TEST(Rational, ParsesFractionsAndDecimals) {
    EXPECT_EQ(parse_rational("6/4"), q(3, 2));
    EXPECT_EQ(parse_rational("-0.125"), q(-1, 8));
    EXPECT_EQ(parse_rational(" 7 "), q(7));
    EXPECT_THROW(parse_rational("1/0"), ValidationError);
    EXPECT_THROW(parse_rational("abc"), ValidationError);
    EXPECT_EQ(to_string(q(4, 2)), "2/1");
}

TEST(Scalar, Sgn) {
    EXPECT_TRUE(sgn(Scalar(0)).is_zero());
    EXPECT_EQ(sgn(Scalar(q(-7, 3))), Scalar(-1));
    Scalar s = sgn(cx(3, 4));
    EXPECT_TRUE(s.is_exact());
    EXPECT_EQ(s, cx(3, 4, 5));
}

TEST(Scalar, SgnWithIrrationalModulusIsApproximate) {
    Scalar s = sgn(cx(1, 1));
    EXPECT_FALSE(s.is_exact());
    EXPECT_NEAR(s.center().real(), std::sqrt(0.5), 1e-15);
    EXPECT_LE(s.radius(), 1e-14);
}

TEST(Scalar, ModSq) {
    EXPECT_TRUE(mod_sq(Scalar(0)).is_zero());
    EXPECT_EQ(mod_sq(Scalar(q(-2, 3))), Scalar(q(4, 9)));
    EXPECT_EQ(mod_sq(cx(1, 1)), Scalar(2));
}

TEST(Scalar, CompareMod) {
    EXPECT_EQ(compare_mod(Scalar(1), Scalar(-1)), Ordering::Equal);
    EXPECT_EQ(compare_mod(Scalar(q(1, 2)), Scalar(q(2, 3))), Ordering::Less);
    EXPECT_EQ(compare_mod(cx(3, 4), Scalar(5)), Ordering::Equal);
    Scalar a = Scalar::approx({1.0, 0.0}, 1e-14, Field::Real);
    EXPECT_EQ(compare_mod(a, Scalar(1)), Ordering::Indeterminate);
}

TEST(Scalar, ExactArithmeticStaysExact) {
    Scalar z = cx(1, 2) * cx(3, -1) / cx(0, 1);
    EXPECT_TRUE(z.is_exact());
    EXPECT_EQ(z, cx(5, -5));
    EXPECT_EQ(pow(Scalar(q(1, 2)), 3), Scalar(q(1, 8)));
}

TEST(Scalar, ApproxArithmeticEnclosesTheTruth) {
    Scalar a = Scalar::approx({0.1, 0.0}, 1e-17, Field::Real);
    Scalar s = a * Scalar(3) + Scalar(q(1, 10));
    EXPECT_FALSE(s.is_exact());
    CInterval e = s.enclosure();
    EXPECT_LE(e.re.lo, 0.4);
    EXPECT_GE(e.re.hi, 0.4);
}

TEST(Interval, OutwardRounding) {
    Interval third = Interval(1.0) / Interval(3.0);
    EXPECT_LT(third.lo, third.hi);
    Interval s = third + third + third;
    EXPECT_LE(s.lo, 1.0);
    EXPECT_GE(s.hi, 1.0);
    Interval r = sqrt(Interval(2.0));
    EXPECT_LE(r.lo * r.lo, 2.0);
    EXPECT_GE(r.hi * r.hi, 2.0);
}

TEST(Verdict, ExactVerdictsAreNeverIndeterminate) {
    EXPECT_TRUE(Verdict::exact(true).holds());
    EXPECT_TRUE(Verdict::exact(false).fails());
    EXPECT_EQ(Verdict::exact(true).mode, Mode::Exact);
}

TEST(Verdict, BandVerdict) {
    EXPECT_TRUE(band_verdict(Interval(1e-3, 2e-3), 1e-12).holds());
    EXPECT_TRUE(band_verdict(Interval(-2e-3, -1e-3), 1e-12).fails());
    EXPECT_TRUE(band_verdict(Interval(-1e-13, 1e-13), 1e-12).indeterminate());
}
