#pragma once

// Necessary-condition sieve for D Y1^6 + Y2^6 = X^3: the two divisibility
// cases by 3, the omega forms F1/F2 and the c1 c2 elimination through
// Mordell curves of rank 0.

#include "sextic/facts.hpp"
#include "sextic/mordell.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sextic {

struct SieveProblem {
    Integer D;
    unsigned tau = 0;  // 3^tau exactly divides D
    int nu = 0;
};

SieveProblem make_sieve_problem(const Integer& D);

// Pairs (d1, d2) with d1 d2 = D, d2 > 0, passing the case (i) conditions.
std::vector<DivisorPair> case_i_pairs(const Integer& D);
// Pairs (d1, d2) with d1 d2 = D / 3^tau, d2 > 0, passing the case (ii) conditions.
std::vector<DivisorPair> case_ii_pairs(const Integer& D);

// (m + n w)(a + b w)^6 = (F2 + 2 F1)(a, b) + F1(a, b) w with w^2 + w + 1 = 0.
struct OmegaForm {
    Integer m;
    Integer n;
    std::array<Integer, 7> f1;  // coefficient of a^(6-i) b^i
    std::array<Integer, 7> f2;

    Integer F1(const Integer& a, const Integer& b) const;
    Integer F2(const Integer& a, const Integer& b) const;
};

OmegaForm omega_forms(const Integer& m, const Integer& n);
// Throws std::invalid_argument unless m^2 - mn + n^2 = d2.
OmegaForm omega_forms(const Integer& m, const Integer& n, const Integer& d2);

// All (m, n) with m^2 - mn + n^2 = d2.
std::vector<std::pair<Integer, Integer>> omega_representations(const Integer& d2);
// Those meeting m != 0, n = 0 (mod 3) when tau != 2; all of them otherwise.
std::vector<std::pair<Integer, Integer>> normalized_representations(const Integer& d2, unsigned tau);

struct C1C2Pair {
    Integer c1;
    Integer c2;

    bool operator==(const C1C2Pair&) const = default;
};

std::vector<C1C2Pair> c1c2_pairs(const Integer& N);

// u(u-1) = 2 c1 w^3 lies on y^2 = x^3 + 64 c1^2 via (8 c1 w, 8 c1 (2u - 1)).
MordellCurve c1_curve(const Integer& c1);
CurvePoint c1_map(const Integer& c1, const Rational& u, const Rational& w);
// T^3 - 9T = 8 c2 w^3 (T = 2u - 1) lies on y^2 = x^3 + 64 c2^2 via
// (-8 c2 w / T, 24 c2 / T); T = 0 goes to infinity.
MordellCurve c2_curve(const Integer& c2);
CurvePoint c2_map(const Integer& c2, const Rational& T, const Rational& w);

// u recovered from a point of either model; nullopt means u = infinity.
std::optional<Rational> u_from_c1_point(const Integer& c1, const CurvePoint& P);
std::optional<Rational> u_from_c2_point(const Integer& c2, const CurvePoint& P);

// Whether u = a/b could come from a genuine solution: b != 0, F1(a, b) != 0,
// and when normalized also ab odd and a + b != 0 (mod 3). Empty string when
// admissible, otherwise the reason.
std::string u_rejection(const std::optional<Rational>& u, bool normalized);

struct C1C2Step {
    C1C2Pair pair;
    int curve = 0;        // 1 or 2: which model had rank 0
    Integer reduced_c;
    std::uint64_t local_prime = 0;  // set when the pair died p-adically instead
    std::vector<std::pair<CurvePoint, std::string>> pullbacks;
};

struct C1C2Result {
    Integer N;
    std::vector<C1C2Step> steps;
    std::optional<std::string> failure;

    bool eliminated() const { return !failure; }
};

// No u in P^1(Q_p) with u(u-1) = 2 c1 w1^3 and (u+1)(2u-1)(u-2) = 2 c2 w2^3
// (with u = a/b, ab odd and 3 not dividing a + b when normalized). Residue
// classes whose values are too divisible by p to decide count as solvable.
bool c1c2_locally_unsolvable(const C1C2Pair& pr, std::uint64_t p, bool normalized);

// A pair is eliminated by the first rank-0 model whose torsion gives no
// admissible u, or failing that by a p-adic obstruction.
C1C2Result eliminate_c1c2(const Integer& N, const FactsDB& facts, bool normalized = true);

// The product constant N for a case (ii) survivor with n = 0.
std::optional<Integer> c1c2_constant(const SieveProblem& prob, const DivisorPair& pair);

// The quartic for a case (i) or case (ii) pair has no solutions mod m that
// respect the coprimality conditions at the primes dividing m.
bool quartic_locally_unsolvable(const SieveProblem& prob, const DivisorPair& pair, bool case_ii, unsigned m);

struct Sieve221Result {
    SieveProblem problem;
    std::vector<DivisorPair> case_i;
    std::vector<DivisorPair> case_ii;
    std::vector<C1C2Result> eliminations;
    std::vector<std::string> local_kills;
    std::vector<std::string> residuals;

    bool eliminated() const { return residuals.empty(); }
    std::string summary() const;
};

Sieve221Result sieve_221(const Integer& D, const FactsDB& facts);

}  // namespace sextic
