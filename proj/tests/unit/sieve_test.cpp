#include <sextic/sieve.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"

using namespace sextic;

namespace {

const FactsDB& facts() {
    static const FactsDB db = FactsDB::bundled();
    return db;
}

bool is_listed(const std::vector<DivisorPair>& v, long d1, long d2) {
    return std::any_of(v.begin(), v.end(), [&](const DivisorPair& p) { return p.d1 == d1 && p.d2 == d2; });
}

// The three case (i) conditions written out from scratch.
bool case_i_by_hand(long d1, long d2) {
    static const std::set<std::pair<long, long>> allowed = {{1, 1}, {1, 7}, {1, 8}, {4, 2}, {4, 4},
                                                            {4, 7}, {7, 1}, {7, 4}, {7, 5}};
    if (!allowed.count({((d2 % 9) + 9) % 9, ((d1 % 9) + 9) % 9})) return false;
    if (std::gcd(2 * d1, d2) != 1) return false;
    for (auto [p, e] : oracle::trial_factor(d1))
        if (p != 2 && oracle::legendre_by_squares(3 * d2, p) != 1) return false;
    for (auto [p, e] : oracle::trial_factor(d2))
        if (p != 2 && p % 3 != 1) return false;
    return true;
}

}  // namespace

TEST(SieveProblem, TauNu) {
    auto p = make_sieve_problem(Integer(560));
    EXPECT_EQ(p.tau, 0u);
    EXPECT_EQ(p.nu, 5);
    p = make_sieve_problem(Integer(3));
    EXPECT_EQ(p.tau, 1u);
    EXPECT_EQ(p.nu, 6);
    p = make_sieve_problem(Integer(-27 * 4));
    EXPECT_EQ(p.tau, 3u);
    EXPECT_EQ(p.nu, 2);
    EXPECT_THROW(make_sieve_problem(Integer(0)), std::invalid_argument);
}

TEST(CaseI, Examples) {
    EXPECT_TRUE(case_i_pairs(Integer(560)).empty());
    const auto one = case_i_pairs(Integer(1));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].d1, 1);
    EXPECT_EQ(one[0].d2, 1);
    EXPECT_THROW(case_i_pairs(Integer(0)), std::invalid_argument);
}

TEST(CaseI, MatchesHandEnumeration) {
    for (long D : {7L, -7L, 13L, 16L, 28L, -43L, 172L, 496L, 688L, 91L, -91L}) {
        const auto got = case_i_pairs(Integer(D));
        for (const auto& pr : divisor_pairs(Integer(D))) {
            const long d1 = pr.d1.get_si(), d2 = pr.d2.get_si();
            EXPECT_EQ(is_listed(got, d1, d2), case_i_by_hand(d1, d2)) << D << ": " << d1 << "," << d2;
        }
    }
}

TEST(CaseII, Examples) {
    const auto pairs = case_ii_pairs(Integer(560));
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0].d1, 560);
    EXPECT_EQ(pairs[0].d2, 1);

    // D = 3: pairs of D / 3 = 1
    const auto three = case_ii_pairs(Integer(3));
    ASSERT_EQ(three.size(), 1u);
    EXPECT_EQ(three[0].d1, 1);
    EXPECT_THROW(case_ii_pairs(Integer(0)), std::invalid_argument);
}

TEST(CaseII, SubsetOfDivisorPairs) {
    for (long D : {560L, 688L, 336L, 496L, -21L * 16, 91L}) {
        const auto prob = make_sieve_problem(Integer(D));
        Integer rest = D;
        for (unsigned i = 0; i < prob.tau; ++i) rest /= 3;
        for (const auto& pr : case_ii_pairs(Integer(D))) {
            EXPECT_EQ(pr.d1 * pr.d2, rest);
            EXPECT_GT(pr.d2, 0);
            for (auto [p, e] : oracle::trial_factor(pr.d2.get_si())) {
                if (p != 2) EXPECT_EQ(p % 3, 1);
            }
        }
    }
}

TEST(OmegaForms, Coefficients) {
    const auto f = omega_forms(Integer(1), Integer(0));
    EXPECT_EQ(f.f1, (std::array<Integer, 7>{0, 6, -15, 0, 15, -6, 0}));
    EXPECT_EQ(f.F2(1, 0), 1);
    EXPECT_EQ(omega_forms(Integer(3), Integer(1)).F2(1, 0), 1);
    EXPECT_THROW(omega_forms(Integer(1), Integer(1), Integer(7)), std::invalid_argument);
    EXPECT_NO_THROW(omega_forms(Integer(3), Integer(1), Integer(7)));
}

TEST(OmegaForms, FOneAtTwoOne) {
    // 6*32 - 15*16 + 15*2 - 6*2 = 192 - 240 + 30 - 12 = -30 is a slip:
    // 15 a^2 b^4 at (2, 1) is 60, and a = 2b is a root of F1
    EXPECT_EQ(omega_forms(Integer(1), Integer(0)).F1(2, 1), 0);
}

TEST(OmegaForms, UnitFormFactorization) {
    const auto f = omega_forms(Integer(1), Integer(0));
    for (long a = -6; a <= 6; ++a)
        for (long b = -6; b <= 6; ++b) {
            const Integer A(a), B(b);
            EXPECT_EQ(f.F1(A, B), 3 * A * B * (A - B) * (A + B) * (2 * A - B) * (A - 2 * B)) << a << "," << b;
        }
}

TEST(OmegaForms, ComponentsAgainstDirectExpansion) {
    for (long m = -3; m <= 3; ++m)
        for (long n = -3; n <= 3; ++n) {
            const auto f = omega_forms(Integer(m), Integer(n));
            for (auto [a, b] : {std::pair{2L, 5L}, {-1L, 3L}, {4L, -7L}}) {
                const auto [re, om] = oracle::omega_expand(m, n, a, b);
                EXPECT_EQ(f.F1(a, b), om);
                EXPECT_EQ(f.F2(a, b) + 2 * f.F1(a, b), re);
            }
        }
}

TEST(OmegaRepresentations, Seven) {
    const auto reps = omega_representations(Integer(7));
    EXPECT_EQ(reps.size(), 12u);
    for (const auto& [m, n] : reps) EXPECT_EQ(m * m - m * n + n * n, 7);
    EXPECT_TRUE(omega_representations(Integer(5)).empty());
    EXPECT_EQ(omega_representations(Integer(1)).size(), 6u);
    // only (+-1, 0) survive the normalization
    const auto norm = normalized_representations(Integer(1), 0);
    EXPECT_EQ(norm.size(), 2u);
    for (const auto& [m, n] : norm) EXPECT_EQ(n, 0);
    EXPECT_EQ(normalized_representations(Integer(1), 2).size(), 6u);
}

TEST(C1C2, PairsOf140) {
    const auto pairs = c1c2_pairs(Integer(140));
    const std::vector<C1C2Pair> want = {{1, 140}, {4, 35}, {5, 28}, {7, 20}, {20, 7}, {28, 5}, {35, 4}, {140, 1}};
    EXPECT_EQ(pairs, want);
    EXPECT_EQ(std::count(pairs.begin(), pairs.end(), C1C2Pair{2, 70}), 0);
}

TEST(C1C2, CurveOneForUnitPair) {
    EXPECT_EQ(c1_curve(Integer(1)).c(), 64);
    EXPECT_EQ(torsion_points(c1_curve(Integer(1))).size(), 6u);
}

TEST(C1C2, MapsLandOnCurves) {
    // u(u-1) = 2 c1 w^3: u = 2, w = 1 gives c1 = 1; u = -1, w = 1 also
    EXPECT_TRUE(on_curve(c1_curve(Integer(1)), c1_map(Integer(1), Rational(2), Rational(1))));
    EXPECT_TRUE(on_curve(c1_curve(Integer(1)), c1_map(Integer(1), Rational(-1), Rational(1))));
    // (u+1)(2u-1)(u-2) = 2 c2 w^3: u = 3 gives 4*5*1 = 20 = 2*10*1
    const Rational T = 2 * Rational(3) - 1;
    EXPECT_TRUE(on_curve(c2_curve(Integer(10)), c2_map(Integer(10), T, Rational(1))));
    EXPECT_EQ(u_from_c2_point(Integer(10), c2_map(Integer(10), T, Rational(1))), Rational(3));
    EXPECT_EQ(u_from_c1_point(Integer(1), c1_map(Integer(1), Rational(2), Rational(1))), Rational(2));
    EXPECT_TRUE(c2_map(Integer(10), Rational(0), Rational(1)).infinite);
}

TEST(C1C2, RandomMapsLandOnCurves) {
    // pick u, then c1 and w with u(u-1) = 2 c1 w^3 by taking w = 1
    for (long a = -9; a <= 9; ++a) {
        const Rational u(a);
        const Rational lhs1 = u * (u - 1);
        if (lhs1 == 0 || lhs1.get_num() % 2 != 0) continue;
        const Integer c1 = lhs1.get_num() / 2;
        if (c1 <= 0) continue;
        EXPECT_TRUE(on_curve(c1_curve(c1), c1_map(c1, u, Rational(1)))) << a;
    }
}

TEST(URejection, Reasons) {
    EXPECT_NE(u_rejection(std::nullopt, true), "");
    EXPECT_NE(u_rejection(Rational(0), false), "");  // F1 vanishes
    EXPECT_NE(u_rejection(Rational(2), false), "");
    EXPECT_EQ(u_rejection(make_rational(5, 3), true), "");
    EXPECT_NE(u_rejection(make_rational(5, 1), true), "");  // a + b = 6
    EXPECT_EQ(u_rejection(make_rational(5, 1), false), "");
    EXPECT_NE(u_rejection(make_rational(4, 3), true), "");  // ab even
}

TEST(EliminateC1C2, OneForty) {
    const auto res = eliminate_c1c2(Integer(140), facts());
    ASSERT_TRUE(res.eliminated()) << *res.failure;
    ASSERT_EQ(res.steps.size(), 8u);
    for (const auto& s : res.steps) {
        EXPECT_NE(s.curve, 0) << s.pair.c1;
        EXPECT_EQ(s.local_prime, 0u);
        for (const auto& [T, why] : s.pullbacks) EXPECT_NE(why, "admissible");
    }
    EXPECT_THROW(eliminate_c1c2(Integer(0), facts()), std::invalid_argument);
}

TEST(EliminateC1C2, MissingFactsFail) {
    const auto res = eliminate_c1c2(Integer(140), FactsDB());
    // without facts only the p-adic test remains, which is not enough here
    EXPECT_FALSE(res.eliminated());
}

TEST(EliminateC1C2, EightyFourNeedsSevenAdic) {
    const auto res = eliminate_c1c2(Integer(84), facts());
    ASSERT_TRUE(res.eliminated()) << *res.failure;
    const auto it = std::find_if(res.steps.begin(), res.steps.end(),
                                 [](const C1C2Step& s) { return s.pair == C1C2Pair{3, 28}; });
    ASSERT_NE(it, res.steps.end());
    EXPECT_EQ(it->curve, 0);
    EXPECT_EQ(it->local_prime, 7u);
    EXPECT_TRUE(c1c2_locally_unsolvable({3, 28}, 7, true));
}

TEST(C1C2Local, NeverKillsRealPairs) {
    // u = a/b with a, b odd gives an actual point on both equations once
    // c1, c2 absorb the non-cube parts: use w = 1
    for (long a = -15; a <= 15; a += 2)
        for (long b = 1; b <= 15; b += 2) {
            if (std::gcd(a, b) != 1 || (a + b) % 3 == 0) continue;
            const Integer A(a), B(b);
            const Integer g1 = A * B * (A - B), g2 = (A + B) * (2 * A - B) * (A - 2 * B);
            if (g1 == 0 || g2 == 0) continue;
            // u(u-1) = g1 / b^3 and (u+1)(2u-1)(u-2) = g2 / b^3; b^3 is a cube so
            // the pair (g1/2, g2/2) is realised exactly when the values are even
            if (g1 % 2 != 0 || g2 % 2 != 0 || g1 < 0 || g2 < 0) continue;
            const C1C2Pair pr{g1 / 2, g2 / 2};
            for (std::uint64_t p : {2u, 3u, 5u, 7u, 13u})
                EXPECT_FALSE(c1c2_locally_unsolvable(pr, p, true)) << a << "/" << b << " at " << p;
        }
    EXPECT_THROW(c1c2_locally_unsolvable({1, 1}, 9, true), std::invalid_argument);
}

TEST(C1C2Constant, FiveSixty) {
    const auto prob = make_sieve_problem(Integer(560));
    const auto N = c1c2_constant(prob, {Integer(560), Integer(1), Integer(1)});
    ASSERT_TRUE(N);
    EXPECT_EQ(*N, 140);
}

TEST(Sieve221, FiveSixtyFullyEliminated) {
    const auto res = sieve_221(Integer(560), facts());
    EXPECT_TRUE(res.eliminated()) << res.summary();
    EXPECT_TRUE(res.case_i.empty());
    ASSERT_EQ(res.case_ii.size(), 1u);
    ASSERT_EQ(res.eliminations.size(), 1u);
    EXPECT_EQ(res.eliminations[0].N, 140);
    EXPECT_TRUE(res.local_kills.empty());
}

TEST(Sieve221, AnalogueSurvivors) {
    // the survivors II(43,1), II(21,1), II(-31,1) of k = -43, -21, 31
    for (long D : {688L, 336L, -496L}) {
        const auto res = sieve_221(Integer(D), facts());
        EXPECT_TRUE(res.eliminated()) << res.summary();
        EXPECT_FALSE(res.local_kills.empty()) << D;
    }
}

TEST(Sieve221, NonzeroNIsResidual) {
    // D = 7: case (ii) keeps (d1, d2) = (1, 7), and 7 = m^2 - mn + n^2 needs n != 0
    const auto res = sieve_221(Integer(7), facts());
    EXPECT_FALSE(res.eliminated());
    EXPECT_TRUE(std::any_of(res.residuals.begin(), res.residuals.end(),
                            [](const std::string& r) { return r.find("n != 0") != std::string::npos; }))
        << res.summary();
}

TEST(QuarticLocal, FortyThreeSixteenDiesModSixteen) {
    const auto prob = make_sieve_problem(Integer(688));
    EXPECT_TRUE(quartic_locally_unsolvable(prob, {Integer(16), Integer(43), Integer(1)}, true, 16));
    EXPECT_FALSE(quartic_locally_unsolvable(make_sieve_problem(Integer(560)), {Integer(560), Integer(1), Integer(1)},
                                            true, 16));
    EXPECT_THROW(quartic_locally_unsolvable(prob, {Integer(16), Integer(43), Integer(1)}, true, 1),
                 std::invalid_argument);
}
