#include <sextic/mordell.hpp>

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace sextic;

namespace {

CurvePoint pt(long x, long y) { return CurvePoint::affine(Rational(x), Rational(y)); }

std::vector<CurvePoint> from_oracle(const std::vector<oracle::QPoint>& pts) {
    std::vector<CurvePoint> out;
    for (const auto& q : pts) out.push_back(q.inf ? CurvePoint::infinity() : CurvePoint::affine(q.x, q.y));
    std::sort(out.begin(), out.end(), point_less);
    return out;
}

}  // namespace

TEST(MordellCurve, RejectsZero) { EXPECT_THROW(MordellCurve(Integer(0)), std::invalid_argument); }

TEST(Add, Examples) {
    const MordellCurve E(Integer(-2500));
    const CurvePoint P = pt(50, 350);
    EXPECT_EQ(add(E, P, CurvePoint::infinity()), P);
    EXPECT_EQ(add(E, P, P), CurvePoint::affine(make_rational(725, 49), make_rational(9325, 343)));
    EXPECT_TRUE(add(E, P, pt(50, -350)).infinite);
}

TEST(Add, DoublingMatchesOracle) {
    const MordellCurve E(Integer(-2500));
    const auto Q = oracle::qadd({false, 50, 350}, {false, 50, 350});
    const CurvePoint D = add(E, pt(50, 350), pt(50, 350));
    EXPECT_EQ(D.x, Q.x);
    EXPECT_EQ(D.y, Q.y);
    EXPECT_TRUE(on_curve(E, D));
}

TEST(Add, TwoTorsionDoublesToInfinity) {
    const MordellCurve E(Integer(8));
    EXPECT_TRUE(add(E, pt(-2, 0), pt(-2, 0)).infinite);
}

TEST(Multiply, Examples) {
    const MordellCurve E375(Integer(-375));
    EXPECT_TRUE(multiply(E375, Integer(0), pt(10, 25)).infinite);
    EXPECT_EQ(multiply(E375, Integer(1), pt(10, 25)), pt(10, 25));
    const MordellCurve E(Integer(-2500));
    EXPECT_EQ(multiply(E, Integer(2), pt(50, 350)),
              CurvePoint::affine(make_rational(725, 49), make_rational(9325, 343)));
    EXPECT_EQ(multiply(E, Integer(-1), pt(50, 350)), pt(50, -350));
}

TEST(Multiply, MatchesRepeatedAddition) {
    const MordellCurve E(Integer(-375));
    for (long n = -7; n <= 7; ++n) {
        const auto want = oracle::qmul(n, {false, 10, 25});
        const CurvePoint got = multiply(E, Integer(n), pt(10, 25));
        ASSERT_EQ(got.infinite, want.inf) << n;
        if (!got.infinite) {
            EXPECT_EQ(got.x, want.x) << n;
            EXPECT_EQ(got.y, want.y) << n;
        }
    }
}

TEST(Torsion, NamedCurves) {
    EXPECT_EQ(torsion_points(MordellCurve(Integer(1))),
              (std::vector<CurvePoint>{CurvePoint::infinity(), pt(-1, 0), pt(0, -1), pt(0, 1), pt(2, -3), pt(2, 3)}));
    EXPECT_EQ(torsion_points(MordellCurve(Integer(16))),
              (std::vector<CurvePoint>{CurvePoint::infinity(), pt(0, -4), pt(0, 4)}));
    EXPECT_EQ(torsion_points(MordellCurve(Integer(-375))), std::vector<CurvePoint>{CurvePoint::infinity()});
    EXPECT_EQ(torsion_points(MordellCurve(Integer(-432))),
              (std::vector<CurvePoint>{CurvePoint::infinity(), pt(12, -36), pt(12, 36)}));
}

TEST(Torsion, C1CurveForUnitPair) {
    // y^2 = x^3 + 64: (0, +-8) of order 3, (-4, 0) of order 2, (8, +-24) of order 6
    const auto T = torsion_points(MordellCurve(Integer(64)));
    EXPECT_EQ(T, from_oracle(oracle::torsion_brute(64, 1000)));
    EXPECT_EQ(T.size(), 6u);
}

TEST(Torsion, MatchesBruteForce) {
    for (long c : {1L, -1L, 2L, -2L, 8L, 27L, -27L, 64L, -432L, 9L, 25L, 36L, 49L, -375L, -2500L, -116L, 17L, -11L}) {
        EXPECT_EQ(torsion_points(MordellCurve(Integer(c))), from_oracle(oracle::torsion_brute(c, 1000))) << c;
    }
}

TEST(Torsion, NonTorsionIntegralPointIsExcluded) {
    // (50, 350) is integral on c = -2500 but has infinite order
    const MordellCurve E(Integer(-2500));
    EXPECT_FALSE(is_torsion(E, pt(50, 350)));
    EXPECT_EQ(torsion_points(E), std::vector<CurvePoint>{CurvePoint::infinity()});
}

TEST(Scale, RoundTrip) {
    const MordellCurve E(Integer(9));
    const CurvePoint P = pt(-2, 1);
    const CurvePoint Q = scale_up(P, Integer(2));
    EXPECT_TRUE(on_curve(MordellCurve(Integer(9 * 64)), Q));
    EXPECT_EQ(scale_down(Q, Integer(2)), P);
    EXPECT_TRUE(on_curve(E, P));
}

TEST(ReduceModP, Examples) {
    const MordellCurve E(Integer(-2500));
    EXPECT_EQ(reduce_mod_p(E, pt(50, 350), 43), ModPoint::affine(7, 6));
    EXPECT_TRUE(reduce_mod_p(E, CurvePoint::infinity(), 43).infinite);
    EXPECT_TRUE(
        reduce_mod_p(E, CurvePoint::affine(make_rational(725, 49), make_rational(9325, 343)), 7).infinite);
    EXPECT_THROW(reduce_mod_p(E, pt(50, 350), 5), std::invalid_argument);
    EXPECT_THROW(reduce_mod_p(E, pt(50, 350), 3), std::invalid_argument);
}

TEST(PointOrder, Examples) {
    const MordellCurve E(Integer(-2500));
    EXPECT_EQ(point_order_mod_p(E, ModPoint::affine(7, 6), 43), 7u);
    EXPECT_EQ(point_order_mod_p(E, ModPoint::infinity(), 43), 1u);

    const MordellCurve E375(Integer(-375));
    const ReducedCurve R(E375, 19);
    const std::uint64_t group = R.points().size();
    const std::uint64_t ord = point_order_mod_p(E375, reduce_mod_p(E375, pt(10, 25), 19), 19);
    EXPECT_EQ(group % ord, 0u);

    // order by the oracle's own walk
    EXPECT_EQ(ord, oracle::cyclic_mod_p({false, 10, 25}, 19).size());
}

TEST(ReducedCurve, PointCountHasseBound) {
    for (std::uint64_t p : {7u, 13u, 19u, 43u, 97u}) {
        const ReducedCurve R(MordellCurve(Integer(-2500)), p);
        const auto n = static_cast<double>(R.points().size());
        EXPECT_LE(std::abs(n - static_cast<double>(p) - 1), 2 * std::sqrt(static_cast<double>(p))) << p;
        for (const auto& P : R.points()) EXPECT_TRUE(R.contains(P));
    }
}
