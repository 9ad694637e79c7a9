#pragma once

// Descent from x^6 + k y^6 = z^2 to the equations A y1^6 + B y2^6 = y3^3,
// their covering Mordell curves, local tests and rank-0 elimination.

#include "sextic/facts.hpp"
#include "sextic/mordell.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sextic {

enum class EqType { I, II, III, IV };
enum class Cover { E1, E2, E3 };

std::string to_string(EqType t);
std::string to_string(Cover c);

// Variables as bits of a monomial mask.
inline constexpr unsigned kVarX = 1;
inline constexpr unsigned kVarY1 = 2;
inline constexpr unsigned kVarY2 = 4;

// gcd(coef_a * vars_a, coef_b * vars_b) = 1, vars being products of unknowns.
struct Coprimality {
    Integer coef_a;
    unsigned vars_a;
    Integer coef_b;
    unsigned vars_b;

    bool operator==(const Coprimality&) const = default;
};

// x_coef * x^3 = y1_coef * y1^6 + d2 * y2^6, where
//   I:   2x^3 = d1 y1^6 + d2 y2^6,      d1 d2 = -k,   y = y1 y2
//   II:   x^3 = 16 d1 y1^6 + d2 y2^6,   d1 d2 = -k,   y = 2 y1 y2
//   III:  x^3 = d1 y1^6 + d2 y2^6,      d1 d2 = -k/4, y = y1 y2
//   IV:   x^3 = 32 d1 y1^6 + d2 y2^6,   d1 d2 = -k/2, y = 2 y1 y2
// and (A, B) is the pair with A y1^6 + B y2^6 = y3^3 (y3 = 2x for type I).
struct DescentEquation {
    EqType type;
    Integer k;
    Integer d1;
    Integer d2;
    Integer A;
    Integer B;
    Integer x_coef;
    Integer y1_coef;
    std::vector<Coprimality> conditions;

    std::string to_string() const;
    // Short key such as "II(35,1)".
    std::string label() const;

    bool operator==(const DescentEquation&) const = default;
};

DescentEquation make_equation(EqType type, const Integer& k, const Integer& d1, const Integer& d2);

struct Solution {
    Integer x;
    Integer y1;
    Integer y2;

    bool operator==(const Solution&) const = default;
};

bool equation_holds(const DescentEquation& eq, const Solution& s);
bool conditions_hold(const DescentEquation& eq, const Solution& s);

struct DropRecord {
    DescentEquation eq;
    Integer p;
    unsigned modulus;
};

std::vector<DescentEquation> generate_S(const Integer& k, std::vector<DropRecord>* dropped = nullptr);

// Raw model c and its sixth-power-free reduction raw = reduced * t^6.
struct CoverModel {
    Cover cover;
    MordellCurve raw;
    MordellCurve reduced;
    Integer t;
};

MordellCurve covering_curve(const DescentEquation& eq, Cover which);
CoverModel cover_model(const DescentEquation& eq, Cover which);

Integer y3_of(const DescentEquation& eq, const Solution& s);

// Point on the raw covering model; requires y1 y2 != 0.
CurvePoint map_to_cover(const DescentEquation& eq, const Solution& s, Cover which);

// Covering maps from C_k to y^2 = x^3 + k and y^2 = x^3 + k^2.
CurvePoint map_to_E1(const Rational& X, const Rational& Y);
CurvePoint map_to_E2(const Integer& k, const Rational& X, const Rational& Y);

// The point (X, Y) of C_k given by a solution, Y >= 0.
struct SexticPoint {
    Rational X;
    Rational Y;
};
std::optional<SexticPoint> point_from_solution(const DescentEquation& eq, const Solution& s);

// Members of S which have a solution producing X, or -X when none produces X.
struct Located {
    std::size_t index;
    Solution solution;
};
std::vector<Located> locate_in_S(const std::vector<DescentEquation>& S, const Rational& X, const Rational& Y);

// Exhaustive residue check modulo m honoring the coprimality conditions at
// the primes dividing m.
bool locally_unsolvable(const DescentEquation& eq, unsigned m);

enum class Method { LocalModM, RankZeroE1, RankZeroE2, RankZeroE3, Sieve221, Congruence };
std::string to_string(Method m);

struct PullbackStep {
    CurvePoint point;     // torsion point on the reduced model
    std::string outcome;  // why it was rejected, or "solution"
};

struct EliminationCertificate {
    Method method = Method::LocalModM;
    unsigned modulus = 0;
    std::uint64_t residues_checked = 0;
    Integer curve_c;
    Integer scale_t;
    std::vector<PullbackStep> trace;
    std::vector<Solution> solutions;
    std::string payload;

    std::string summary() const;
};

std::optional<EliminationCertificate> eliminate_locally(const DescentEquation& eq,
                                                        const std::vector<unsigned>& moduli = {7, 8, 9, 13});

// Rational points on the covering curve that pull back to (y1 : y2).
std::vector<Solution> pullback(const DescentEquation& eq, Cover which, const CurvePoint& reduced_point,
                               std::string* why_not = nullptr);

std::optional<EliminationCertificate> eliminate_by_rank0(const DescentEquation& eq, const FactsDB& facts);

// Re-derives a local or rank-0 certificate from scratch.
bool recheck(const DescentEquation& eq, const EliminationCertificate& cert, const FactsDB& facts);

}  // namespace sextic
