#pragma once

// Impossibility certificates from the residues of Mordell-Weil group
// elements modulo primes.
//
// A solution of A y1^6 + B y2^6 = y3^3 gives a point on E1 whose second
// coordinate is a * (y1/y2)^3 for a known constant a (on E2 the roles of y1
// and y2 swap). If no residue of the reduced group has that shape, and the
// reduction to infinity (p | y2) contradicts the equation mod p, there is no
// solution.

#include "sextic/descent.hpp"
#include "sextic/facts.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sextic {

struct ResidueShape {
    Rational a;         // multiplier
    unsigned e = 3;     // exponent, 3 or 6
};

enum class CertificateKind { SinglePrime, MultiPrimeSieve, ParityMod };

std::string to_string(CertificateKind k);

struct CongruenceCertificate {
    CertificateKind kind = CertificateKind::SinglePrime;
    std::string equation;   // human readable equation
    Cover cover = Cover::E1;
    MordellCurve curve{1};
    std::vector<CurvePoint> generators;
    std::vector<std::uint64_t> primes;
    std::vector<ModPoint> residues;  // single prime: image of the whole group
    ResidueShape shape;
    std::uint64_t sieve_modulus = 0;  // multi-prime: coefficients taken mod this
    std::vector<std::string> trace;

    std::string summary() const;
};

std::vector<ModPoint> multiples_residue_set(const MordellCurve& E, const CurvePoint& P, std::uint64_t p);

// Subgroup of E(F_p) generated by the reductions of gens.
std::vector<ModPoint> subgroup_residue_set(const MordellCurve& E, const std::vector<CurvePoint>& gens,
                                           std::uint64_t p);

bool shape_solvable(const ResidueShape& shape, std::uint64_t r, std::uint64_t p);

// Shape of the relevant coordinate of the cover point on the reduced model.
ResidueShape cover_shape(const DescentEquation& eq, Cover which);

// Whether the equation mod p has a solution with the cover's denominator
// variable divisible by p and the other one a unit.
bool infinity_case_possible(const DescentEquation& eq, Cover which, std::uint64_t p);

// Single-prime certificate using the generators of fact (the full
// Mordell-Weil group modulo torsion) and the torsion subgroup.
std::optional<CongruenceCertificate> certify_impossible(const DescentEquation& eq, const CurveFact& fact,
                                                        std::uint64_t p);

// Tries every good prime up to max_prime on the E1 and E2 covers.
std::optional<CongruenceCertificate> search_certificate(const DescentEquation& eq, const FactsDB& facts,
                                                        std::uint64_t max_prime = 100);

struct SieveOptions {
    std::uint64_t modulus = 2520;    // coefficients of the generators are taken mod this
    std::uint64_t max_prime = 2000;
    std::uint64_t max_cells = 50'000'000;
};

// Several primes at once: a point n1 P1 + ... + nr Pr + T is ruled out at p
// when its reduction has the wrong shape; with each generator order at p
// dividing the modulus the condition only depends on n_i mod modulus, so the
// allowed coefficient classes can be intersected across primes.
std::optional<CongruenceCertificate> sieve_certificate(const DescentEquation& eq, const CurveFact& fact, Cover which,
                                                       const SieveOptions& opts = {});

struct ParityRow {
    unsigned n;
    bool num_odd;
    bool den_odd;
};

struct ParityProfile {
    std::vector<ParityRow> rows;
    std::vector<unsigned> violations;  // n = 1, 2, 4, 5 mod 6 without odd/odd Y

    bool clean() const { return violations.empty(); }
};

ParityProfile parity_profile(const MordellCurve& E, const CurvePoint& P, unsigned n_max);

// Elimination of 80 y1^6 + 3 y2^6 = x^3 on y^2 = x^3 - 375: parity of the
// multiples n P with n not divisible by 3, and residues mod 19 for 3 | n.
// Throws std::runtime_error when a step is inconclusive.
CongruenceCertificate certify_80_3(const FactsDB& facts, unsigned n_max = 200);

}  // namespace sextic
