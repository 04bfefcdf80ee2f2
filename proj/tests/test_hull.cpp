#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace bjseq;
using namespace bjseq::test;

TEST(Hull, RealExamples) {
    EXPECT_TRUE(contains_zero_conv({Scalar(1), Scalar(-1)}).holds());
    Verdict v = contains_zero_conv({Scalar(1), Scalar(2)});
    EXPECT_TRUE(v.fails());
    EXPECT_DOUBLE_EQ(v.margin, 1.0);
    EXPECT_TRUE(contains_zero_conv({Scalar(0)}).holds());
}

TEST(Hull, ComplexTriangle) {
    std::vector<Scalar> pts{cx(1, 1), cx(1, -1), Scalar::complex(-1, 0)};
    // 0 = (1/4)(1+i) + (1/4)(1-i) + (1/2)(-1)
    Scalar combo = Scalar(q(1, 4)) * pts[0] + Scalar(q(1, 4)) * pts[1] + Scalar(q(1, 2)) * pts[2];
    EXPECT_TRUE(combo.is_zero());
    Verdict v = contains_zero_conv(pts);
    EXPECT_TRUE(v.holds());
    EXPECT_EQ(v.mode, Mode::Exact);
}

TEST(Hull, ComplexSegmentsAndRays) {
    EXPECT_TRUE(contains_zero_conv({cx(1, 1), cx(-2, -2)}).holds());
    EXPECT_TRUE(contains_zero_conv({cx(1, 1), cx(-2, -1)}).fails());
    EXPECT_TRUE(contains_zero_conv({cx(1, 0), cx(0, 1), cx(1, 1)}).fails());
    EXPECT_TRUE(contains_zero_conv({cx(1, 0), cx(-1, 1), cx(-1, -1)}).holds());
}

TEST(Hull, EmptyIsInvalid) { EXPECT_THROW(contains_zero_conv({}), ValidationError); }

TEST(Hull, ApproximatePoints) {
    Scalar a = Scalar::approx({1.0, 0.0}, 1e-15, Field::Real);
    Scalar b = Scalar::approx({-1.0, 0.0}, 1e-15, Field::Real);
    Verdict v = contains_zero_conv({a, b});
    EXPECT_TRUE(v.holds());
    EXPECT_EQ(v.mode, Mode::Approx);
    Scalar t = Scalar::approx({1e-15, 0.0}, 2e-15, Field::Real);
    EXPECT_TRUE(contains_zero_conv({t}).indeterminate());
}

// Brute force: 0 is in the hull iff no direction separates the points strictly.
TEST(Hull, MatchesAngularGapTest) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int t = 0; t < 500; ++t) {
        std::vector<Scalar> pts;
        int k = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) pts.push_back(cx(d(rng), d(rng)));
        bool separated = false;
        for (int a = 0; a < 3600 && !separated; ++a) {
            double th = a * M_PI / 1800.0;
            separated = std::all_of(pts.begin(), pts.end(), [&](const Scalar& s) {
                return s.center().real() * std::cos(th) + s.center().imag() * std::sin(th) > 1e-9;
            });
        }
        Verdict v = contains_zero_conv(pts);
        EXPECT_EQ(v.fails(), separated);
        EXPECT_FALSE(v.indeterminate());
    }
}
