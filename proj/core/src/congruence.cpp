#include "sextic/congruence.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sextic {

std::string to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::SinglePrime: return "single-prime";
        case CertificateKind::MultiPrimeSieve: return "multi-prime sieve";
        case CertificateKind::ParityMod: return "parity + residues";
    }
    return "?";
}

std::string CongruenceCertificate::summary() const {
    std::string s = to_string(kind) + " on y^2 = x^3 + " + curve.c().get_str() + " (" + to_string(cover) + "), primes";
    for (auto p : primes) s += " " + std::to_string(p);
    if (sieve_modulus) s += ", coefficients mod " + std::to_string(sieve_modulus);
    return s;
}

std::vector<ModPoint> multiples_residue_set(const MordellCurve& E, const CurvePoint& P, std::uint64_t p) {
    return subgroup_residue_set(E, {P}, p);
}

std::vector<ModPoint> subgroup_residue_set(const MordellCurve& E, const std::vector<CurvePoint>& gens,
                                           std::uint64_t p) {
    const ReducedCurve R(E, p);
    std::set<ModPoint> seen{ModPoint::infinity()};
    std::vector<ModPoint> frontier{ModPoint::infinity()};
    std::vector<ModPoint> reduced;
    for (const auto& g : gens) reduced.push_back(reduce_mod_p(E, g, p));
    while (!frontier.empty()) {
        std::vector<ModPoint> next;
        for (const auto& Q : frontier)
            for (const auto& g : reduced) {
                ModPoint S = R.add(Q, g);
                if (seen.insert(S).second) next.push_back(S);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

bool shape_solvable(const ResidueShape& shape, std::uint64_t r, std::uint64_t p) {
    auto a = rational_mod(shape.a, p);
    if (!a) throw std::invalid_argument("shape multiplier not a unit mod p");
    r %= p;
    for (std::uint64_t t = 0; t < p; ++t)
        if (mulmod(*a, powmod(t, shape.e, p), p) == r) return true;
    return false;
}

ResidueShape cover_shape(const DescentEquation& eq, Cover which) {
    if (which == Cover::E3) throw std::invalid_argument("cover_shape: E3 has no cube shape");
    const CoverModel model = cover_model(eq, which);
    const Integer& lead = which == Cover::E1 ? eq.A : eq.B;
    return {make_rational(lead * lead, Integer(model.t * model.t * model.t)), 3};
}

bool infinity_case_possible(const DescentEquation& eq, Cover which, std::uint64_t p) {
    const std::uint64_t xc = mod_u64(eq.x_coef, p);
    const std::uint64_t ac = mod_u64(eq.y1_coef, p);
    const std::uint64_t bc = mod_u64(eq.d2, p);
    // E1's denominator is y2, E2's is y1
    const std::uint64_t coef = which == Cover::E1 ? ac : bc;
    std::vector<bool> is_lhs(p, false);
    for (std::uint64_t x = 0; x < p; ++x) is_lhs[mulmod(xc, powmod(x, 3, p), p)] = true;
    for (std::uint64_t u = 1; u < p; ++u)
        if (is_lhs[mulmod(coef, powmod(u, 6, p), p)]) return true;
    return false;
}

namespace {

std::optional<Cover> cover_for(const DescentEquation& eq, const Integer& c) {
    for (Cover w : {Cover::E1, Cover::E2})
        if (cover_model(eq, w).reduced.c() == c) return w;
    return std::nullopt;
}

bool usable_prime(const MordellCurve& E, const ResidueShape& shape, std::uint64_t p) {
    return good_reduction(E, p) && mod_u64(shape.a.get_num(), p) != 0 && mod_u64(shape.a.get_den(), p) != 0;
}

// Torsion subgroup is cyclic for these curves; returns a generator (or
// infinity) and its order.
std::pair<CurvePoint, unsigned> torsion_generator(const MordellCurve& E) {
    const auto tors = torsion_points(E);
    for (const auto& T : tors) {
        unsigned ord = 1;
        for (CurvePoint Q = T; !Q.infinite; Q = add(E, Q, T)) ++ord;
        if (ord == tors.size()) return {T, ord};
    }
    return {CurvePoint::infinity(), 1};
}

std::vector<bool> shape_table(const ResidueShape& shape, std::uint64_t p) {
    std::vector<bool> ok(p, false);
    const std::uint64_t a = *rational_mod(shape.a, p);
    for (std::uint64_t t = 0; t < p; ++t) ok[mulmod(a, powmod(t, shape.e, p), p)] = true;
    return ok;
}

}  // namespace

std::optional<CongruenceCertificate> certify_impossible(const DescentEquation& eq, const CurveFact& fact,
                                                        std::uint64_t p) {
    if (!fact.verified) return std::nullopt;
    const auto which = cover_for(eq, fact.c);
    if (!which) return std::nullopt;
    const MordellCurve E(fact.c);
    const ResidueShape shape = cover_shape(eq, *which);
    if (!usable_prime(E, shape, p)) return std::nullopt;

    std::vector<CurvePoint> gens = fact.generators;
    const auto [T, h] = torsion_generator(E);
    if (h > 1) gens.push_back(T);

    const auto residues = subgroup_residue_set(E, gens, p);
    const auto ok = shape_table(shape, p);
    CongruenceCertificate cert;
    cert.kind = CertificateKind::SinglePrime;
    cert.equation = eq.to_string();
    cert.cover = *which;
    cert.curve = E;
    cert.generators = gens;
    cert.primes = {p};
    cert.residues = residues;
    cert.shape = shape;
    for (const auto& R : residues) {
        if (R.infinite) continue;
        if (ok[R.y]) return std::nullopt;
    }
    cert.trace.push_back(std::to_string(residues.size() - 1) + " finite residues, none with second coordinate " +
                         shape.a.get_str() + "*t^3 mod " + std::to_string(p));
    if (infinity_case_possible(eq, *which, p)) return std::nullopt;
    cert.trace.push_back(std::string("reduction to infinity needs p | ") + (*which == Cover::E1 ? "y2" : "y1") +
                         ", impossible mod " + std::to_string(p) + " with the other variable a unit");
    return cert;
}

std::optional<CongruenceCertificate> search_certificate(const DescentEquation& eq, const FactsDB& facts,
                                                        std::uint64_t max_prime) {
    for (Cover which : {Cover::E1, Cover::E2}) {
        const CurveFact* fact = facts.find(cover_model(eq, which).reduced.c());
        if (!fact || fact->rank == 0) continue;
        for (std::uint64_t p = 5; p <= max_prime; ++p) {
            if (!is_prime(p)) continue;
            if (auto cert = certify_impossible(eq, *fact, p)) return cert;
        }
    }
    return std::nullopt;
}

std::optional<CongruenceCertificate> sieve_certificate(const DescentEquation& eq, const CurveFact& fact, Cover which,
                                                       const SieveOptions& opts) {
    if (!fact.verified || which == Cover::E3) return std::nullopt;
    if (cover_model(eq, which).reduced.c() != fact.c) return std::nullopt;
    const MordellCurve E(fact.c);
    const ResidueShape shape = cover_shape(eq, which);
    const auto [T, h] = torsion_generator(E);
    const std::uint64_t M = opts.modulus;

    // coordinate i < r: coefficient of generator i mod M; last: torsion index mod h
    const std::size_t r = fact.generators.size();
    std::vector<std::uint64_t> mods(r, M);
    mods.push_back(h);
    std::uint64_t cells = 1;
    for (auto m : mods) {
        if (cells > opts.max_cells / m) return std::nullopt;
        cells *= m;
    }

    std::vector<std::uint64_t> alive(cells);
    for (std::uint64_t i = 0; i < cells; ++i) alive[i] = i;

    CongruenceCertificate cert;
    cert.kind = CertificateKind::MultiPrimeSieve;
    cert.equation = eq.to_string();
    cert.cover = which;
    cert.curve = E;
    cert.generators = fact.generators;
    if (h > 1) cert.generators.push_back(T);
    cert.shape = shape;
    cert.sieve_modulus = M;

    for (std::uint64_t p = 5; p <= opts.max_prime && !alive.empty(); ++p) {
        if (!is_prime(p) || !usable_prime(E, shape, p)) continue;
        const ReducedCurve R(E, p);
        std::vector<ModPoint> g;
        std::vector<std::uint64_t> ord;
        bool fits = true;
        for (const auto& P : fact.generators) {
            g.push_back(reduce_mod_p(E, P, p));
            ord.push_back(R.order(g.back()));
            if (M % ord.back() != 0) fits = false;
        }
        if (!fits) continue;
        g.push_back(reduce_mod_p(E, T, p));
        ord.push_back(h);

        // allowed[j] over the mixed radix (ord_0, ..., ord_r)
        std::uint64_t span = 1;
        for (auto o : ord) span *= o;
        const auto shape_ok = shape_table(shape, p);
        const bool inf_ok = infinity_case_possible(eq, which, p);
        std::vector<char> allowed(span);
        std::vector<std::uint64_t> digit(ord.size(), 0);
        std::vector<ModPoint> partial(ord.size() + 1, ModPoint::infinity());
        for (std::uint64_t j = 0; j < span; ++j) {
            // partial[i] = sum over coordinates >= i; recompute from the changed digit down
            std::size_t changed = 0;
            if (j > 0) {
                std::size_t i = 0;
                while (++digit[i] == ord[i]) digit[i++] = 0;
                changed = i;
            }
            for (std::size_t i = changed + 1; i-- > 0;)
                partial[i] = R.add(partial[i + 1], R.multiply(digit[i], g[i]));
            const ModPoint& Q = partial[0];
            allowed[j] = Q.infinite ? inf_ok : shape_ok[Q.y];
        }

        const std::size_t before = alive.size();
        std::erase_if(alive, [&](std::uint64_t cell) {
            std::uint64_t idx = 0, stride = 1;
            for (std::size_t i = 0; i < mods.size(); ++i) {
                const std::uint64_t c = cell % mods[i];
                cell /= mods[i];
                idx += (c % ord[i]) * stride;
                stride *= ord[i];
            }
            return !allowed[idx];
        });
        if (alive.size() != before) {
            cert.primes.push_back(p);
            cert.trace.push_back("p = " + std::to_string(p) + ": " + std::to_string(alive.size()) + " of " +
                                 std::to_string(cells) + " coefficient classes remain");
        }
    }
    if (!alive.empty()) return std::nullopt;
    return cert;
}

ParityProfile parity_profile(const MordellCurve& E, const CurvePoint& P, unsigned n_max) {
    ParityProfile prof;
    CurvePoint Q = P;
    for (unsigned n = 1; n <= n_max; ++n) {
        if (Q.infinite) throw std::invalid_argument("parity_profile: point has finite order");
        const bool num_odd = mpz_odd_p(Q.y.get_num_mpz_t());
        const bool den_odd = mpz_odd_p(Q.y.get_den_mpz_t());
        prof.rows.push_back({n, num_odd, den_odd});
        const unsigned r = n % 6;
        if ((r == 1 || r == 2 || r == 4 || r == 5) && !(num_odd && den_odd)) prof.violations.push_back(n);
        Q = add(E, Q, P);
    }
    return prof;
}

CongruenceCertificate certify_80_3(const FactsDB& facts, unsigned n_max) {
    const Integer c = -375;
    const CurveFact* fact = facts.find(c);
    if (!fact || fact->rank != 1) throw std::runtime_error("certify_80_3: no verified rank-1 fact for y^2 = x^3 - 375");
    const MordellCurve E(c);
    if (torsion_points(E).size() != 1) throw std::runtime_error("certify_80_3: torsion is not trivial");

    const DescentEquation eq = make_equation(EqType::II, -15, 5, 3);
    if (cover_model(eq, Cover::E1).reduced.c() != c) throw std::logic_error("certify_80_3: cover mismatch");
    const ResidueShape shape = cover_shape(eq, Cover::E1);
    const CurvePoint& P = fact->generators.front();

    CongruenceCertificate cert;
    cert.kind = CertificateKind::ParityMod;
    cert.equation = eq.to_string();
    cert.cover = Cover::E1;
    cert.curve = E;
    cert.generators = {P};
    cert.shape = shape;

    // y2 is odd and prime to 5, so the second coordinate 100 y1^3 / y2^3 has
    // a numerator divisible by 4
    if (shape.a != 100) throw std::logic_error("certify_80_3: unexpected shape");
    const auto prof = parity_profile(E, P, n_max);
    if (!prof.clean()) throw std::runtime_error("certify_80_3: parity profile has violations");
    cert.primes.push_back(2);
    cert.trace.push_back("n P for n = 1, 2, 4, 5 mod 6 up to " + std::to_string(n_max) +
                         ": second coordinate odd over odd, but the shape needs an even numerator");

    const std::uint64_t p = 19;
    const auto residues = multiples_residue_set(E, multiply(E, 3, P), p);
    const auto ok = shape_table(shape, p);
    for (const auto& R : residues)
        if (!R.infinite && ok[R.y]) throw std::runtime_error("certify_80_3: residue mod 19 has the shape");
    if (infinity_case_possible(eq, Cover::E1, p))
        throw std::runtime_error("certify_80_3: 19 | y2 is not contradictory");
    cert.primes.push_back(p);
    cert.residues = residues;
    cert.trace.push_back("multiples of 3P mod 19: " + std::to_string(residues.size() - 1) +
                         " finite residues, none of the shape 100 t^3; 19 | y2 impossible");
    return cert;
}

}  // namespace sextic
